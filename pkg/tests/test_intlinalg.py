import random

import pytest
from hypothesis import given, strategies as st

from cusplab.intlinalg import IntMatrix, hnf, hnf_smith, integer_solve, snf


def rand_matrix(rng, rows, cols, lo=-9, hi=9):
    return IntMatrix.from_rows([[rng.randint(lo, hi) for _ in range(cols)] for _ in range(rows)])


def is_column_hnf(H):
    k = 0
    for i in range(H.rows):
        if k >= H.cols:
            break
        if any(H[i, j] for j in range(k + 1, H.cols)):
            return False
        if H[i, k] == 0:
            continue
        if H[i, k] < 0 or any(not 0 <= H[i, j] < H[i, k] for j in range(k)):
            return False
        k += 1
    return all(H[i, j] == 0 for j in range(k, H.cols) for i in range(H.rows))


def is_smith(S):
    diag = [S[i, i] for i in range(min(S.rows, S.cols))]
    off = [S[i, j] for i in range(S.rows) for j in range(S.cols) if i != j]
    if any(off) or any(x < 0 for x in diag):
        return False
    nz = [x for x in diag if x]
    if diag[:len(nz)] != nz:
        return False
    return all(b % a == 0 for a, b in zip(nz, nz[1:]))


def test_examples():
    S, U, V = snf(IntMatrix.from_rows([[2, 0], [0, 3]]))
    assert S.tolist() == [[1, 0], [0, 6]]
    I = IntMatrix.identity(3)
    assert snf(I) == (I, I, I)
    H, U = hnf(IntMatrix.from_rows([[0, 1], [1, 0]]))
    assert H == IntMatrix.identity(2)


def test_hnf_smith_bundle():
    M = IntMatrix.from_rows([[4, 6], [2, 8]])
    H, S, (U, V) = hnf_smith(M)
    assert H == hnf(M)[0] and U @ M @ V == S


def test_random_normal_forms():
    rng = random.Random(7)
    for _ in range(1000):
        M = rand_matrix(rng, rng.randint(1, 4), rng.randint(1, 4))
        H, U = hnf(M)
        assert M @ U == H and abs(U.det()) == 1 and is_column_hnf(H)
        S, L, R = snf(M)
        assert L @ M @ R == S and abs(L.det()) == 1 and abs(R.det()) == 1 and is_smith(S)


def test_det_matches_snf():
    rng = random.Random(11)
    for _ in range(300):
        n = rng.randint(1, 4)
        M = rand_matrix(rng, n, n)
        S, _, _ = snf(M)
        prod = 1
        for i in range(n):
            prod *= S[i, i]
        assert abs(M.det()) == prod


@pytest.mark.parametrize("rows,b,particular,kernel", [
    ([[2]], [4], (2,), ()),
    ([[2]], [3], None, None),
])
def test_solve_examples(rows, b, particular, kernel):
    sol = integer_solve(IntMatrix.from_rows(rows), b)
    if particular is None:
        assert sol is None
    else:
        assert sol.particular == particular and sol.kernel == kernel


def test_solve_kernel_example():
    sol = integer_solve(IntMatrix.from_rows([[1, -1]]), [0])
    assert len(sol.kernel) == 1 and sol.kernel[0] in ((1, 1), (-1, -1))


@given(st.integers(1, 4), st.integers(1, 4), st.integers(0, 10**6))
def test_solve_is_complete(rows, cols, seed):
    rng = random.Random(seed)
    A = rand_matrix(rng, rows, cols, -5, 5)
    x0 = [rng.randint(-5, 5) for _ in range(cols)]
    b = A.apply(x0)
    sol = integer_solve(A, b)
    assert sol is not None and A.apply(list(sol.particular)) == b
    for k in sol.kernel:
        assert not any(A.apply(list(k)))
    # x0 lies in particular + Z-span(kernel)
    diff = [x - p for x, p in zip(x0, sol.particular)]
    if sol.kernel:
        K = IntMatrix.from_rows([list(col) for col in zip(*sol.kernel)])
        assert integer_solve(K, diff) is not None
    else:
        assert not any(diff)
