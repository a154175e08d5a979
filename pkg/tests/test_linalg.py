from fractions import Fraction
from itertools import permutations

import pytest
from hypothesis import given, settings, strategies as st

from blowtree.linalg import SingularMatrixError, det_bareiss, det_cofactor, inertia, solve


def leibniz(a):
    n = len(a)
    total = 0
    for perm in permutations(range(n)):
        inv = sum(1 for i in range(n) for j in range(i + 1, n) if perm[i] > perm[j])
        term = -1 if inv & 1 else 1
        for i, j in enumerate(perm):
            term *= a[i][j]
        total += term
    return total


square = st.integers(0, 5).flatmap(
    lambda n: st.lists(st.lists(st.integers(-5, 5), min_size=n, max_size=n), min_size=n, max_size=n)
)


@given(square)
def test_determinants_match_leibniz(a):
    want = leibniz(a)
    assert det_cofactor(a) == want
    assert det_bareiss(a) == want


def test_empty_determinant_is_one():
    assert det_cofactor([]) == 1
    assert det_bareiss([]) == 1


def test_solve_exact():
    x = solve([[2, 1], [1, 3]], [1, 2])
    assert x == [Fraction(1, 5), Fraction(3, 5)]


def test_solve_needs_pivoting():
    assert solve([[0, 1], [1, 0]], [3, 4]) == [4, 3]


def test_solve_singular():
    with pytest.raises(SingularMatrixError):
        solve([[1, 2], [2, 4]], [1, 1])


@given(square)
def test_solve_roundtrip(a):
    if det_bareiss(a) == 0:
        return
    rhs = list(range(1, len(a) + 1))
    x = solve(a, rhs)
    assert [sum(r * v for r, v in zip(row, x)) for row in a] == rhs


def sym(rows):
    n = len(rows)
    return [[rows[min(i, j)][max(i, j)] for j in range(n)] for i in range(n)]


def test_inertia_diagonal():
    assert inertia([[3, 0, 0], [0, -2, 0], [0, 0, 0]]) == (1, 1, 1)


def test_inertia_zero_diagonal_block():
    # [[0,1],[1,0]] has eigenvalues +1 and -1
    assert inertia([[0, 1], [1, 0]]) == (1, 0, 1)
    assert inertia([[0, 2, 0], [2, 0, 0], [0, 0, 0]]) == (1, 1, 1)


def test_inertia_rejects_asymmetric():
    with pytest.raises(ValueError):
        inertia([[1, 2], [0, 1]])


@settings(max_examples=200)
@given(st.integers(1, 6).flatmap(
    lambda n: st.lists(st.lists(st.integers(-4, 4), min_size=n, max_size=n), min_size=n, max_size=n)))
def test_inertia_matches_leading_minor_signs_after_shift(rows):
    """Cross-check with Sylvester's criterion on a positive-definite shift:
    A + cI is positive definite for c larger than the Gershgorin radius."""
    a = sym(rows)
    n = len(a)
    pos, zero, neg = inertia(a)
    assert pos + zero + neg == n
    c = max(sum(abs(x) for x in row) for row in a) + 1
    shifted = [[a[i][j] + (c if i == j else 0) for j in range(n)] for i in range(n)]
    assert inertia(shifted) == (n, 0, 0)
    # determinant sign and zero count agree with the inertia
    d = det_bareiss(a)
    assert (d == 0) == (zero > 0)
    if d:
        assert (d < 0) == (neg % 2 == 1)


def test_inertia_invariant_under_congruence():
    a = [[2, -1, 0], [-1, 0, 3], [0, 3, -1]]
    p = [[1, 2, 0], [0, 1, -1], [0, 0, 1]]  # unimodular
    pt = [list(r) for r in zip(*p)]
    mul = lambda x, y: [[sum(x[i][k] * y[k][j] for k in range(3)) for j in range(3)] for i in range(3)]
    assert inertia(mul(mul(pt, a), p)) == inertia(a)
