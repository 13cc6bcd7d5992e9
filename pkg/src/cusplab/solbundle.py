"""Torus bundles over the circle: geometry, eigen lattices and k-arithmeticity.

A (2,1)-torus bundle with monodromy A in SL(2, Z) is Euclidean, Nil or Sol.
In the Sol case the eigenvalue beta = (t + sqrt(t^2 - 4))/2 generates a real
quadratic field k and the eigen lattice M = Z<c, beta - a> is a rank-2 module
in k on which multiplication by beta has matrix exactly A.  (Sol itself is the
group R^2 x R with law (x1 + e^t1 x2, y1 + e^-t1 y2, t1 + t2).)
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd, lcm

from .dedekind import Monodromy
from .errors import DomainError, PresentationError, UnsupportedError
from .exactnum import QuadIrr
from .intlinalg import IntMatrix, bareiss_det, hnf, integer_solve
from .intmath import squarefree_part
from .quadfield import FieldData, field_data


class GeometryClass(str, enum.Enum):
    EUCLIDEAN = "Euclidean"
    NIL = "Nil"
    SOL = "Sol"

    def __str__(self):
        return self.value


def classify_geometry(A: Monodromy) -> GeometryClass:
    t = abs(A.trace)
    if t < 2 or (A.b == 0 and A.c == 0):
        return GeometryClass.EUCLIDEAN
    if t == 2:
        return GeometryClass.NIL
    return GeometryClass.SOL


# -- modules -------------------------------------------------------------------

@dataclass(frozen=True)
class LatticeModule:
    """The Z-module Z*mu1 + Z*mu2 inside k; the basis order carries orientation."""

    d: int
    basis: tuple[QuadIrr, QuadIrr]

    def __post_init__(self):
        mu1, mu2 = self.basis
        if mu1.d != self.d or mu2.d != self.d:
            raise DomainError("module basis does not lie in Q(sqrt(d))")
        if not mu1 or not mu2 or (mu2 / mu1).is_rational():
            raise DomainError("module basis is not linearly independent over Q")

    @classmethod
    def ring_of_integers(cls, d: int) -> LatticeModule:
        fd = field_data(d)
        return cls(d, (fd.one(), fd.omega))

    @property
    def field(self) -> FieldData:
        return field_data(self.d)

    def coords(self, x: QuadIrr) -> tuple[Fraction, Fraction]:
        """Rational (u, v) with x = u*mu1 + v*mu2."""
        (a1, b1), (a2, b2) = (m.rational_parts() for m in self.basis)
        a, b = x.rational_parts()
        det = a1 * b2 - a2 * b1
        return (a * b2 - a2 * b) / det, (a1 * b - a * b1) / det

    def contains(self, x: QuadIrr) -> bool:
        u, v = self.coords(x)
        return u.denominator == 1 and v.denominator == 1

    def action_matrix(self, x: QuadIrr) -> list[list[Fraction]]:
        """Matrix A of multiplication by x: x*mu_j = sum_i A[i][j] mu_i."""
        c1 = self.coords(x * self.basis[0])
        c2 = self.coords(x * self.basis[1])
        return [[c1[0], c2[0]], [c1[1], c2[1]]]

    def stabilized_by(self, unit: QuadIrr) -> bool:
        if abs(unit.norm()) != 1:
            return False
        return all(e.denominator == 1 for row in self.action_matrix(unit) for e in row)

    def monodromy(self, unit: QuadIrr) -> Monodromy:
        m = self.action_matrix(unit)
        if any(e.denominator != 1 for row in m for e in row):
            raise DomainError(f"{unit} does not stabilize the module")
        return Monodromy(int(m[0][0]), int(m[0][1]), int(m[1][0]), int(m[1][1]))

    def embedding_det(self) -> QuadIrr:
        """det [sigma_j(mu_i)] = mu1*mu2' - mu1'*mu2, a rational multiple of sqrt(d)."""
        mu1, mu2 = self.basis
        return mu1 * mu2.conj() - mu1.conj() * mu2

    def scale(self, c) -> LatticeModule:
        if not isinstance(c, QuadIrr):
            c = QuadIrr.rational(c, self.d)
        return LatticeModule(self.d, (c * self.basis[0], c * self.basis[1]))

    def ok_coordinates(self) -> list[list[Fraction]]:
        """Rows = basis elements, columns = coordinates in (1, omega)."""
        fd = self.field
        return [list(fd.to_basis(m)) for m in self.basis]

    def canonical(self) -> LatticeModule:
        """Positive rational rescaling into O_k with content 1."""
        rows = self.ok_coordinates()
        den = lcm(*(x.denominator for r in rows for x in r))
        g = 0
        for r in rows:
            for x in r:
                g = gcd(g, int(x * den))
        lam = Fraction(den, g)
        return self if lam == 1 else self.scale(lam)

    def is_integral(self) -> bool:
        return all(x.denominator == 1 for r in self.ok_coordinates() for x in r)

    def hnf_key(self) -> tuple:
        """Basis-independent description of the underlying set."""
        rows = self.ok_coordinates()
        den = lcm(*(x.denominator for r in rows for x in r))
        # columns are the basis vectors so column-HNF spans the same lattice
        m = IntMatrix.from_rows([[int(rows[0][0] * den), int(rows[1][0] * den)],
                                 [int(rows[0][1] * den), int(rows[1][1] * den)]])
        h, _ = hnf(m)
        return den, h.entries

    def same_lattice(self, other: LatticeModule) -> bool:
        return self.d == other.d and self.hnf_key() == other.hnf_key()

    def index_in_Ok(self) -> int:
        if not self.is_integral():
            raise DomainError("module is not contained in O_k")
        den, (p11, _, _, p22) = self.hnf_key()
        return p11 * p22

    def __str__(self):
        return f"Z<{self.basis[0]}, {self.basis[1]}>"


@dataclass(frozen=True)
class EigenData:
    d: int
    beta: QuadIrr
    module: LatticeModule


def eigen_data(A: Monodromy) -> EigenData:
    g = classify_geometry(A)
    if g is not GeometryClass.SOL:
        raise DomainError(f"not a Sol monodromy ({g})")
    t = A.trace
    d, f = squarefree_part(t * t - 4)
    beta = QuadIrr(t, f, 2, d)
    M = LatticeModule(d, (QuadIrr.rational(A.c, d), beta - A.a)).canonical()
    return EigenData(d, beta, M)


def stabilizer_unit(M: LatticeModule, max_exponent: int = 100_000) -> tuple[QuadIrr, int]:
    """Smallest power eps_+^m fixing M, and m."""
    eps = field_data(M.d).eps_plus
    u = eps
    for m in range(1, max_exponent + 1):
        if M.stabilized_by(u):
            return u, m
        u = u * eps
    raise RuntimeError(f"no stabilizing power of {eps} found below {max_exponent}")


def unit_exponent(u: QuadIrr, gen: QuadIrr, max_exponent: int = 100_000) -> int:
    """j >= 1 with gen**j == u, for units u, gen > 1."""
    x = gen
    for j in range(1, max_exponent + 1):
        if x == u:
            return j
        if x > u:
            break
        x = x * gen
    raise DomainError(f"{u} is not a positive power of {gen}")


@dataclass(frozen=True)
class ArithmeticityReport:
    geometry: GeometryClass
    trace: int
    d: int | None = None
    beta: QuadIrr | None = None
    totally_positive: bool | None = None
    variety_type: str = "not-applicable"
    module: LatticeModule | None = None
    module_index_in_Ok: int | None = None
    unit_exponent: int | None = None
    stabilizer_exponent: int | None = None
    k_arithmetic: bool = False

    def as_dict(self) -> dict:
        return {
            "geometry": str(self.geometry),
            "trace": self.trace,
            "d": self.d,
            "beta": None if self.beta is None else str(self.beta),
            "totally_positive": self.totally_positive,
            "type": self.variety_type,
            "k_arithmetic": self.k_arithmetic,
            "module": None if self.module is None else [str(m) for m in self.module.basis],
            "module_index_in_Ok": self.module_index_in_Ok,
            "unit_exponent": self.unit_exponent,
            "stabilizer_exponent": self.stabilizer_exponent,
        }


def positive_unit(beta: QuadIrr) -> QuadIrr:
    """The totally positive element > 1 among +-beta^(+-1)."""
    u = beta if beta.sign(1) > 0 else -beta
    return u if u > 1 else u.inverse()


def arithmeticity_report(A: Monodromy) -> ArithmeticityReport:
    geom = classify_geometry(A)
    if geom is not GeometryClass.SOL:
        return ArithmeticityReport(geom, A.trace)
    ed = eigen_data(A)
    M = ed.module
    tp = ed.beta.sign(1) > 0 and ed.beta.sign(2) > 0
    eps_M, m = stabilizer_unit(M)
    return ArithmeticityReport(
        geometry=geom,
        trace=A.trace,
        d=ed.d,
        beta=ed.beta,
        totally_positive=tp,
        variety_type="standard" if tp else "generalized",
        module=M,
        module_index_in_Ok=M.index_in_Ok(),
        unit_exponent=unit_exponent(positive_unit(ed.beta), eps_M),
        stabilizer_exponent=m,
        k_arithmetic=tp,
    )


# -- presentations ------------------------------------------------------------------

@dataclass(frozen=True)
class Relator:
    """ybar_k^-1 x_j ybar_k = x_1^e_1 ... x_n^e_n."""

    j: int
    k: int
    exponents: tuple[int, ...]


@dataclass(frozen=True)
class PresentationData:
    fiber_rank: int
    base_rank: int
    holonomy: dict[int, tuple[tuple[int, ...], ...]]
    relators: tuple[Relator, ...]

    def holonomy_matrix(self, k: int) -> tuple[tuple[int, ...], ...]:
        return self.holonomy[k]

    def monodromy(self, k: int = 1) -> Monodromy:
        if self.fiber_rank != 2:
            raise UnsupportedError(f"unsupported rank: fiber_rank {self.fiber_rank} (only 2)")
        return Monodromy.from_rows(self.holonomy[k])


def _gen_index(tok: str, letter: str, bound: int, line: int) -> int:
    if len(tok) < 2 or tok[0] != letter or not tok[1:].isdigit():
        raise PresentationError(f"expected generator {letter}1..{letter}{bound}, got {tok!r}", line)
    i = int(tok[1:])
    if not 1 <= i <= bound:
        raise PresentationError(f"generator {tok} out of range 1..{bound}", line)
    return i


def _int(tok: str, line: int) -> int:
    try:
        return int(tok)
    except ValueError:
        raise PresentationError(f"expected an integer, got {tok!r}", line) from None


def parse_presentation(text: str) -> PresentationData:
    """Parse the line-based presentation format.

    Lines (``#`` starts a comment; ``/`` may stand in for a newline)::

        fiber_rank N
        base_rank M
        holonomy yK a11 a12 ... aNN      # row-major N x N
        rel xJ yK e1 ... eN              # optional
    """
    lines = text.splitlines()
    if len(lines) <= 1 and "/" in text:
        lines = text.split("/")
    n = m = None
    hol: dict[int, tuple[tuple[int, ...], ...]] = {}
    rels: dict[tuple[int, int], tuple[tuple[int, ...], int]] = {}
    for lineno, raw in enumerate(lines, 1):
        toks = raw.split("#", 1)[0].split()
        if not toks:
            continue
        kw, args = toks[0], toks[1:]
        if kw in ("fiber_rank", "base_rank"):
            if len(args) != 1:
                raise PresentationError(f"{kw} takes one integer", lineno)
            v = _int(args[0], lineno)
            if v < 1:
                raise PresentationError(f"{kw} must be positive", lineno)
            if kw == "fiber_rank":
                n = v
            else:
                m = v
        elif kw == "holonomy":
            if n is None or m is None:
                raise PresentationError("holonomy before fiber_rank/base_rank", lineno)
            if len(args) != 1 + n * n:
                raise PresentationError(f"holonomy needs a generator and {n * n} entries", lineno)
            k = _gen_index(args[0], "y", m, lineno)
            vals = [_int(t, lineno) for t in args[1:]]
            rows = tuple(tuple(vals[i * n:(i + 1) * n]) for i in range(n))
            if bareiss_det([list(r) for r in rows]) != 1:
                raise PresentationError(f"non-unimodular holonomy for y{k} (det != 1)", lineno)
            hol[k] = rows
        elif kw == "rel":
            if n is None or m is None:
                raise PresentationError("rel before fiber_rank/base_rank", lineno)
            if len(args) != 2 + n:
                raise PresentationError(f"rel needs xJ yK and {n} exponents", lineno)
            j = _gen_index(args[0], "x", n, lineno)
            k = _gen_index(args[1], "y", m, lineno)
            rels[(j, k)] = (tuple(_int(t, lineno) for t in args[2:]), lineno)
        elif kw in ("finite_extension", "virtual"):
            raise UnsupportedError("unsupported: finite holonomy extension")
        else:
            raise PresentationError(f"unknown keyword {kw!r}", lineno)
    if n is None or m is None:
        raise PresentationError("missing fiber_rank or base_rank")
    for k in range(1, m + 1):
        if k not in hol:
            raise PresentationError(f"missing holonomy for y{k}")
    mats = [IntMatrix.from_rows(hol[k]) for k in range(1, m + 1)]
    for i in range(m):
        for j in range(i + 1, m):
            if mats[i] @ mats[j] != mats[j] @ mats[i]:
                raise PresentationError(f"holonomy of y{i + 1} and y{j + 1} do not commute")
    relators = []
    for k in range(1, m + 1):
        for j in range(1, n + 1):
            expected = tuple(hol[k][i][j - 1] for i in range(n))
            if (j, k) in rels:
                got, lineno = rels[(j, k)]
                if got != expected:
                    raise PresentationError(
                        f"relator for x{j}, y{k} is inconsistent with the holonomy "
                        f"(expected exponents {' '.join(map(str, expected))})", lineno)
            relators.append(Relator(j, k, expected))
    return PresentationData(n, m, hol, tuple(relators))


# -- representations into k x| units -------------------------------------------------

def sd_mul(g, h):
    """(alpha, beta)(alpha', beta') = (alpha + beta alpha', beta beta')."""
    return g[0] + g[1] * h[0], g[1] * h[1]


def sd_inv(g):
    binv = g[1].inverse()
    return -binv * g[0], binv


@dataclass(frozen=True)
class Representation:
    d: int
    alphas: tuple[QuadIrr, ...]
    gammas: tuple[QuadIrr, ...]
    betas: tuple[QuadIrr, ...]
    target: str
    fiber_index: int | None = field(default=None, compare=False)

    def x(self, j: int):
        return self.alphas[j - 1], QuadIrr(1, 0, 1, self.d)

    def y(self, k: int):
        return self.gammas[k - 1], self.betas[k - 1]

    def fiber_module(self) -> LatticeModule:
        return LatticeModule(self.d, (self.alphas[0], self.alphas[1]))

    def as_dict(self) -> dict:
        return {
            "d": self.d,
            "target": self.target,
            "x": [[str(a), "1"] for a in self.alphas],
            "y": [[str(g), str(b)] for g, b in zip(self.gammas, self.betas)],
            "fiber_index_in_Ok": self.fiber_index,
        }


def verify_relators(rep: Representation, P: PresentationData) -> bool:
    one = QuadIrr(1, 0, 1, rep.d)
    for r in P.relators:
        y = rep.y(r.k)
        lhs = sd_mul(sd_mul(sd_inv(y), rep.x(r.j)), y)
        rhs = (sum((e * a for e, a in zip(r.exponents, rep.alphas)), QuadIrr(0, 0, 1, rep.d)), one)
        if lhs != rhs:
            return False
    return True


def relator_system(P: PresentationData, d: int, beta: QuadIrr) -> IntMatrix:
    """Integer system in the (1, omega)-coordinates of alpha_1..alpha_n.

    Each relator gives alpha_j - beta * sum_i e_i alpha_i = 0 in k, i.e. two
    rational equations; beta in O_k makes all coefficients integral.
    """
    fd = field_data(d)
    bw = [fd.to_basis(beta * fd.one()), fd.to_basis(beta * fd.omega)]
    B = [[int(bw[0][0]), int(bw[1][0])], [int(bw[0][1]), int(bw[1][1])]]
    n = P.fiber_rank
    rows = []
    for r in P.relators:
        for comp in range(2):
            row = [0] * (2 * n)
            row[2 * (r.j - 1) + comp] += 1
            for i, e in enumerate(r.exponents):
                for s in range(2):
                    row[2 * i + s] -= e * B[comp][s]
            rows.append(row)
    return IntMatrix.from_rows(rows)


def _fiber_index(d: int, alphas) -> int | None:
    try:
        M = LatticeModule(d, (alphas[0], alphas[1]))
    except DomainError:
        return None
    return M.index_in_Ok() if M.is_integral() else None


def clear_denominators(rep: Representation) -> tuple[Representation, int]:
    """Scale translations by an integer lambda so every image lies in O_k; beta is unchanged."""
    fd = field_data(rep.d)
    dens = [x.denominator for a in rep.alphas + rep.gammas for x in fd.to_basis(a)]
    lam = lcm(*dens)
    alphas = tuple(lam * a for a in rep.alphas)
    gammas = tuple(lam * g for g in rep.gammas)
    return Representation(rep.d, alphas, gammas, rep.betas, rep.target,
                          _fiber_index(rep.d, alphas)), lam


def build_representation(P: PresentationData) -> Representation:
    if P.fiber_rank != 2:
        raise UnsupportedError(f"unsupported rank: fiber_rank {P.fiber_rank} (only 2 is implemented)")
    if P.base_rank != 1:
        raise UnsupportedError(f"unsupported rank: base_rank {P.base_rank} (only 1 is implemented)")
    A = P.monodromy(1)
    geom = classify_geometry(A)
    if geom is not GeometryClass.SOL:
        raise DomainError(f"not a Sol monodromy ({geom})")
    ed = eigen_data(A)
    d, beta = ed.d, ed.beta
    # The relator forces beta^-1 alpha_j = sum_i A_ij alpha_i, so the alphas form
    # a basis on which beta^-1 = beta' acts by A: the conjugate eigen lattice.
    M = LatticeModule(d, (QuadIrr.rational(A.c, d), beta.conj() - A.a)).canonical()
    target = "standard" if beta.sign(1) > 0 else "generalized"
    rep = Representation(d, M.basis, (QuadIrr(0, 0, 1, d),), (beta,), target)
    rep, _ = clear_denominators(rep)
    sysm = relator_system(P, d, beta)
    fd = field_data(d)
    x = [int(c) for a in rep.alphas for c in fd.to_basis(a)]
    sol = integer_solve(sysm, [0] * sysm.rows)
    if sol is None or any(sysm.apply(x)) or len(sol.kernel) != 2:
        raise AssertionError("representation does not solve the relator system")
    if not verify_relators(rep, P):
        raise AssertionError("representation fails relator verification")
    return rep
