"""Cusp invariants of a pair (M, V): volume, trace dual, signature defect, L-values.

The signature defect is computed two independent ways:

* from the Rademacher function of the matrix A by which the generator of V
  acts on M:  delta = -psi(A)/3;
* from the purely periodic minus continued fraction ((b_0, ..., b_{r-1})) of
  mu2/mu1, which encodes the cusp resolution cycle:
  delta = (m/3) * sum(3 - b_k), m = [stabilizer of M : V].
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .dedekind import Monodromy, rademacher_psi
from .errors import DomainError, UnsupportedError
from .exactnum import QuadIrr, SurdValue
from .intmath import sign
from .solbundle import (GeometryClass, LatticeModule, classify_geometry, eigen_data,
                        stabilizer_unit, unit_exponent)


@dataclass(frozen=True)
class CuspDatum:
    M: LatticeModule
    eps_V: QuadIrr
    m: int

    def __post_init__(self):
        e = self.eps_V
        if e.d != self.M.d:
            raise DomainError("unit and module live in different fields")
        if e.norm() != 1 or e.sign(2) <= 0 or not e > 1:
            raise DomainError(f"{e} is not a totally positive unit > 1")
        if not self.M.stabilized_by(e):
            raise DomainError(f"{e} does not stabilize {self.M}")
        if self.m < 1:
            raise DomainError("stabilizer exponent must be positive")

    @property
    def d(self) -> int:
        return self.M.d


def cusp_datum(M: LatticeModule, eps_V: QuadIrr | None = None) -> CuspDatum:
    """Build (M, V); V defaults to the full totally positive stabilizer of M."""
    eps_M, _ = stabilizer_unit(M)
    if eps_V is None:
        return CuspDatum(M, eps_M, 1)
    if not M.stabilized_by(eps_V):
        raise DomainError(f"{eps_V} does not stabilize {M}")
    return CuspDatum(M, eps_V, unit_exponent(eps_V, eps_M))


def standard_cusp(d: int) -> CuspDatum:
    """M = O_k with basis (1, omega), V = all totally positive units."""
    M = LatticeModule.ring_of_integers(d)
    return CuspDatum(M, M.field.eps_plus, 1)


# -- lattices ---------------------------------------------------------------------

def volume(M: LatticeModule) -> SurdValue:
    det = M.embedding_det()  # purely irrational: q*sqrt(d)/r
    return SurdValue(Fraction(abs(det.q), det.r), M.d)


def dual_module(M: LatticeModule) -> LatticeModule:
    """Trace dual {x : Tr(x M) in Z}, basis ordered (mu2*, mu1*).

    With Tr(mu_i* mu_j) = delta_ij the swap makes the unit action on M* the
    matrix J A^T J, which has the same psi as A; the map is an involution.
    """
    mu1, mu2 = M.basis
    t11, t12, t22 = (mu1 * mu1).trace(), (mu1 * mu2).trace(), (mu2 * mu2).trace()
    det = t11 * t22 - t12 * t12
    d1 = (t22 * mu1 - t12 * mu2) / det
    d2 = (-t12 * mu1 + t11 * mu2) / det
    return LatticeModule(M.d, (d2, d1))


# -- minus continued fractions ------------------------------------------------------

def _is_reduced(w: QuadIrr) -> bool:
    # w > 1 > w' > 0
    wc = w.conj()
    return (w - 1).sign(1) > 0 and wc.sign(1) > 0 and (1 - wc).sign(1) > 0


def reduced_cycle(w: QuadIrr) -> tuple[tuple[int, ...], tuple[QuadIrr, ...]]:
    """Cycle ((b_k)) of the minus continued fraction of w and the reduced w_k."""
    if w.is_rational():
        raise DomainError("minus continued fraction of a rational number does not cycle")
    while not _is_reduced(w):
        w = 1 / (w.ceil() - w)
    start = w
    bs, ws = [], []
    while True:
        b = w.ceil()
        bs.append(b)
        ws.append(w)
        w = 1 / (b - w)
        if w == start:
            return tuple(bs), tuple(ws)


def minus_cf_cycle(w: QuadIrr) -> tuple[int, ...]:
    return reduced_cycle(w)[0]


# -- signature defect ------------------------------------------------------------

@dataclass(frozen=True)
class LValueAt1:
    """L(M, V, 1) = pi2_coefficient * pi^2."""

    pi2_coefficient: SurdValue
    approx: float

    def __str__(self):
        return f"{self.pi2_coefficient}*pi^2"


@dataclass(frozen=True)
class DeltaResult:
    delta: Fraction
    psi: int
    cycle: tuple[int, ...]
    route_agreement: bool
    implied_signature: Fraction
    l_at_1: LValueAt1
    integral: bool
    delta_rademacher: Fraction
    delta_cycle: Fraction
    monodromy: Monodromy

    @property
    def delta_reversed(self) -> Fraction:
        return -self.delta

    def as_dict(self) -> dict:
        return {
            "delta": str(self.delta),
            "delta_reversed": str(self.delta_reversed),
            "psi": self.psi,
            "cycle": list(self.cycle),
            "route_agreement": self.route_agreement,
            "implied_signature": str(self.implied_signature),
            "integral": self.integral,
            "monodromy": self.monodromy.tolist(),
            "l_at_1": str(self.l_at_1),
            "l_at_1_approx": self.l_at_1.approx,
        }


def _l_value(delta: Fraction, vol: SurdValue) -> LValueAt1:
    # delta = -vol/pi^2 * L(M,V,1)
    coef = (vol.inverse() * (-delta))
    return LValueAt1(coef, float(coef) * math.pi ** 2)


def delta(cd: CuspDatum) -> DeltaResult:
    A = cd.M.monodromy(cd.eps_V)
    psi = rademacher_psi(A)
    d_rad = Fraction(-psi, 3)
    mu1, mu2 = cd.M.basis
    cycle = minus_cf_cycle(mu2 / mu1)
    d_cyc = Fraction(cd.m * sum(3 - b for b in cycle), 3)
    return DeltaResult(
        delta=d_rad,
        psi=psi,
        cycle=cycle,
        route_agreement=d_rad == d_cyc,
        implied_signature=d_rad,
        l_at_1=_l_value(d_rad, volume(cd.M)),
        integral=d_rad.denominator == 1,
        delta_rademacher=d_rad,
        delta_cycle=d_cyc,
        monodromy=A,
    )


def l_value_at_1(cd: CuspDatum) -> LValueAt1:
    return delta(cd).l_at_1


# -- Shimizu partial sums -----------------------------------------------------------

def _lattice_points(M: LatticeModule, x1: float, x2: float):
    """Candidates x*mu1 + y*mu2 with |sigma_1| <= x1 and |sigma_2| <= x2 (padded)."""
    mu1, mu2 = M.basis
    a1, a2 = mu1.approx(1), mu2.approx(1)
    b1, b2 = mu1.approx(2), mu2.approx(2)
    det = a1 * b2 - a2 * b1
    # (x, y) = inverse embedding matrix applied to (s1, s2)
    xr = (abs(b2) * x1 + abs(a2) * x2) / abs(det)
    for x in range(-math.floor(xr) - 1, math.floor(xr) + 2):
        lo, hi = -math.inf, math.inf
        for coef_x, coef_y, bound in ((a1, a2, x1), (b1, b2, x2)):
            if coef_y == 0:
                continue
            u = (-bound - coef_x * x) / coef_y
            v = (bound - coef_x * x) / coef_y
            lo, hi = max(lo, min(u, v)), min(hi, max(u, v))
        if lo > hi + 2:
            continue
        for y in range(math.floor(lo) - 1, math.ceil(hi) + 2):
            yield x * mu1 + y * mu2


def l_series_partial(cd: CuspDatum, s: int, norm_bound: int) -> Fraction:
    """Sum of sign(N b) |N b|^-s over V-orbits of nonzero b in M with |N b| <= bound.

    Orbit representatives are taken in the cone 1 <= |s1(b)/s2(b)| < eps_V^2.
    """
    if s < 2:
        raise UnsupportedError("partial sums need s >= 2 (conditional convergence below)")
    if norm_bound < 0:
        raise DomainError("norm bound must be non-negative")
    if norm_bound == 0:
        return Fraction(0)
    e = cd.eps_V
    e2 = e * e
    root = math.sqrt(norm_bound)
    x1 = e.approx(1) * root * (1 + 1e-9) + 1e-9
    x2 = root * (1 + 1e-9) + 1e-9
    total = Fraction(0)
    seen = set()
    for b in _lattice_points(cd.M, x1, x2):
        if not b or b in seen:
            continue
        seen.add(b)
        n = b.norm()
        if abs(n) > norm_bound:
            continue
        g = b * b / n  # sigma_1(g) = sigma_1(b)/sigma_2(b)
        if g.sign(1) < 0:
            g = -g
        if (g - 1).sign(1) < 0 or (e2 - g).sign(1) <= 0:
            continue
        total += sign(n) / Fraction(abs(n)) ** s
    return total


# -- bounding obstruction ---------------------------------------------------------

@dataclass(frozen=True)
class ObstructionVerdict:
    verdict: str
    d: int
    delta: Fraction
    delta_reversed: Fraction
    variety_type: str
    scope: str
    detail: DeltaResult

    def as_dict(self) -> dict:
        return {
            "verdict": self.verdict,
            "d": self.d,
            "delta": str(self.delta),
            "delta_reversed": str(self.delta_reversed),
            "type": self.variety_type,
            "scope": self.scope,
        }


def cusp_of_monodromy(A: Monodromy) -> tuple[CuspDatum, str]:
    """Cusp datum whose unit acts by A (or by -A when trace < -2)."""
    g = classify_geometry(A)
    if g is not GeometryClass.SOL:
        raise DomainError(f"not a Sol monodromy ({g})")
    kind = "standard" if A.trace > 2 else "generalized"
    # psi(-A) = psi(A), so the generalized case reuses the positive-trace datum
    Ap = A if A.trace > 2 else -A
    ed = eigen_data(Ap)
    return cusp_datum(ed.module, ed.beta), kind


def bounding_obstruction(x: Monodromy | CuspDatum) -> ObstructionVerdict:
    if isinstance(x, CuspDatum):
        cd, kind = x, "standard"
    else:
        cd, kind = cusp_of_monodromy(x)
    res = delta(cd)
    verdict = "INCONCLUSIVE" if res.integral else "OBSTRUCTED"
    scope = "standard" if kind == "standard" else "standard-case theorem only"
    return ObstructionVerdict(verdict, cd.d, res.delta, res.delta_reversed, kind, scope, res)
