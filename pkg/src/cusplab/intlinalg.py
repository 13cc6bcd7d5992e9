"""Exact integer linear algebra: Hermite/Smith normal forms and Z-solutions.

Everything is fraction-free elimination over Python ints; sizes in this
package never exceed a few rows, so no modular tricks are used.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence


@dataclass(frozen=True)
class IntMatrix:
    rows: int
    cols: int
    entries: tuple[int, ...]

    def __post_init__(self):
        if self.rows < 0 or self.cols < 0 or len(self.entries) != self.rows * self.cols:
            raise ValueError("matrix dimensions do not match entry count")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]]) -> IntMatrix:
        rows = [list(r) for r in rows]
        ncols = len(rows[0]) if rows else 0
        if any(len(r) != ncols for r in rows):
            raise ValueError("ragged rows")
        return cls(len(rows), ncols, tuple(int(x) for r in rows for x in r))

    @classmethod
    def identity(cls, n: int) -> IntMatrix:
        return cls.from_rows([[int(i == j) for j in range(n)] for i in range(n)])

    def __getitem__(self, ij: tuple[int, int]) -> int:
        i, j = ij
        return self.entries[i * self.cols + j]

    def tolist(self) -> list[list[int]]:
        c = self.cols
        return [list(self.entries[i * c:(i + 1) * c]) for i in range(self.rows)]

    def transpose(self) -> IntMatrix:
        return IntMatrix.from_rows([list(col) for col in zip(*self.tolist())]) if self.rows else IntMatrix(0, 0, ())

    def __matmul__(self, other: IntMatrix) -> IntMatrix:
        if self.cols != other.rows:
            raise ValueError("dimension mismatch")
        b = other.tolist()
        return IntMatrix.from_rows(
            [[sum(r[k] * b[k][j] for k in range(self.cols)) for j in range(other.cols)]
             for r in self.tolist()])

    def apply(self, v: Sequence[int]) -> list[int]:
        return [sum(r[k] * v[k] for k in range(self.cols)) for r in self.tolist()]

    def det(self) -> int:
        if self.rows != self.cols:
            raise ValueError("determinant of a non-square matrix")
        return bareiss_det(self.tolist())

    def __str__(self):
        return "[" + ", ".join(str(r) for r in self.tolist()) + "]"


def bareiss_det(a: list[list[int]]) -> int:
    n = len(a)
    if n == 0:
        return 1
    m = [row[:] for row in a]
    sgn, prev = 1, 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for i in range(k + 1, n):
                if m[i][k]:
                    m[k], m[i] = m[i], m[k]
                    sgn = -sgn
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
        prev = m[k][k]
    return sgn * m[n - 1][n - 1]


# -- column operations (act on a list-of-rows matrix and its transform) --------

def _col_swap(m, i, j):
    for r in m:
        r[i], r[j] = r[j], r[i]


def _col_addmul(m, dst, src, k):
    # col[dst] += k * col[src]
    for r in m:
        r[dst] += k * r[src]


def _col_neg(m, j):
    for r in m:
        r[j] = -r[j]


def _row_swap(m, i, j):
    m[i], m[j] = m[j], m[i]


def _row_addmul(m, dst, src, k):
    rs, rd = m[src], m[dst]
    for j in range(len(rd)):
        rd[j] += k * rs[j]


def _row_neg(m, i):
    m[i] = [-x for x in m[i]]


def hnf(M: IntMatrix) -> tuple[IntMatrix, IntMatrix]:
    """Column-style Hermite normal form: returns (H, U) with H = M U, U unimodular.

    H is in column echelon form, pivots positive, entries to the left of a
    pivot reduced into [0, pivot).
    """
    h = M.tolist()
    n = M.cols
    u = IntMatrix.identity(n).tolist()
    k = 0
    for i in range(M.rows):
        if k >= n:
            break
        # gcd-eliminate row i over columns k..n-1
        while True:
            nz = [j for j in range(k, n) if h[i][j]]
            if not nz:
                break
            p = min(nz, key=lambda j: abs(h[i][j]))
            if p != k:
                _col_swap(h, p, k)
                _col_swap(u, p, k)
            done = True
            for j in range(k + 1, n):
                if h[i][j]:
                    q = h[i][j] // h[i][k]
                    _col_addmul(h, j, k, -q)
                    _col_addmul(u, j, k, -q)
                    if h[i][j]:
                        done = False
            if done:
                break
        if h[i][k] == 0:
            continue
        if h[i][k] < 0:
            _col_neg(h, k)
            _col_neg(u, k)
        piv = h[i][k]
        for j in range(k):
            q = h[i][j] // piv
            if q:
                _col_addmul(h, j, k, -q)
                _col_addmul(u, j, k, -q)
        k += 1
    return IntMatrix.from_rows(h), IntMatrix.from_rows(u)


def snf(M: IntMatrix) -> tuple[IntMatrix, IntMatrix, IntMatrix]:
    """Smith normal form: returns (S, U, V) with U M V = S, U and V unimodular."""
    s = M.tolist()
    m, n = M.rows, M.cols
    U = IntMatrix.identity(m).tolist()
    V = IntMatrix.identity(n).tolist()
    for t in range(min(m, n)):
        while True:
            nz = [(i, j) for i in range(t, m) for j in range(t, n) if s[i][j]]
            if not nz:
                break
            pi, pj = min(nz, key=lambda ij: abs(s[ij[0]][ij[1]]))
            if pi != t:
                _row_swap(s, pi, t)
                _row_swap(U, pi, t)
            if pj != t:
                _col_swap(s, pj, t)
                _col_swap(V, pj, t)
            piv = s[t][t]
            clean = True
            for i in range(t + 1, m):
                if s[i][t]:
                    q = s[i][t] // piv
                    _row_addmul(s, i, t, -q)
                    _row_addmul(U, i, t, -q)
                    clean = clean and s[i][t] == 0
            for j in range(t + 1, n):
                if s[t][j]:
                    q = s[t][j] // piv
                    _col_addmul(s, j, t, -q)
                    _col_addmul(V, j, t, -q)
                    clean = clean and s[t][j] == 0
            if not clean:
                continue
            # pivot must divide the rest of the block
            bad = next(((i, j) for i in range(t + 1, m) for j in range(t + 1, n)
                        if s[i][j] % piv), None)
            if bad is None:
                break
            _row_addmul(s, t, bad[0], 1)
            _row_addmul(U, t, bad[0], 1)
        if t < m and t < n and s[t][t] < 0:
            _row_neg(s, t)
            _row_neg(U, t)
    return IntMatrix.from_rows(s), IntMatrix.from_rows(U), IntMatrix.from_rows(V)


def hnf_smith(M: IntMatrix) -> tuple[IntMatrix, IntMatrix, tuple[IntMatrix, IntMatrix]]:
    H, _ = hnf(M)
    S, U, V = snf(M)
    return H, S, (U, V)


@dataclass(frozen=True)
class IntSolution:
    particular: tuple[int, ...]
    kernel: tuple[tuple[int, ...], ...]


def integer_solve(A: IntMatrix, b: Sequence[int]) -> IntSolution | None:
    """All x in Z^n with A x = b, as particular solution plus kernel basis; None if empty."""
    if len(b) != A.rows:
        raise ValueError("right-hand side has the wrong length")
    S, U, V = snf(A)
    c = U.apply(list(b))
    y = [0] * A.cols
    rank = 0
    for i in range(min(A.rows, A.cols)):
        if S[i, i] == 0:
            break
        rank += 1
        if c[i] % S[i, i]:
            return None
        y[i] = c[i] // S[i, i]
    if any(c[i] for i in range(rank, A.rows)):
        return None
    x = V.apply(y)
    vt = V.transpose().tolist()
    kernel = tuple(tuple(vt[j]) for j in range(rank, A.cols))
    return IntSolution(tuple(x), kernel)
