"""Scalars, exact matrices and Smith normal form."""
from fractions import Fraction
from itertools import permutations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from dtcoh.exact import (
    ExactMatrix,
    GaussianRational,
    I,
    charpoly_coeffs,
    cokernel,
    int_det,
    int_matmul,
    mat_det,
    mat_inverse,
    mat_kernel,
    mat_rank,
    parse_scalar,
    pivot_columns,
    scalar_to_json,
    smith_normal_form,
    solve,
)


def leibniz_det(rows):
    """Permutation-expansion determinant, used as an independent oracle."""
    n = len(rows)
    total = Fraction(0)
    for perm in permutations(range(n)):
        inversions = sum(1 for i in range(n) for j in range(i + 1, n) if perm[i] > perm[j])
        term = Fraction((-1) ** inversions)
        for i, j in enumerate(perm):
            term *= rows[i][j]
        total += term
    return total


small = st.integers(-4, 4)


def square(n):
    return st.lists(st.lists(small, min_size=n, max_size=n), min_size=n, max_size=n)


sizes = st.integers(1, 4)
square_any = sizes.flatmap(square)
rect_any = st.tuples(st.integers(1, 4), st.integers(1, 4)).flatmap(
    lambda s: st.lists(st.lists(small, min_size=s[1], max_size=s[1]), min_size=s[0], max_size=s[0])
)


# -- scalars -------------------------------------------------------------------

def test_gaussian_arithmetic():
    z = GaussianRational(1, 2)
    assert z * z.conjugate() == 5
    assert (z / z) == 1
    assert I * I == -1
    assert GaussianRational(3, 0) == Fraction(3)
    assert hash(GaussianRational(3, 0)) == hash(Fraction(3))
    assert 1 / GaussianRational(0, 2) == GaussianRational(0, Fraction(-1, 2))


def test_scalar_json_roundtrip():
    for x in (Fraction(-3, 7), GaussianRational(Fraction(1, 2), -4)):
        assert parse_scalar(scalar_to_json(x)) == x
    with pytest.raises(ValueError):
        parse_scalar("1/0")
    with pytest.raises(ValueError):
        parse_scalar(True)


# -- matrices ------------------------------------------------------------------

@given(square_any)
def test_det_matches_leibniz(rows):
    assert mat_det(ExactMatrix(rows)) == leibniz_det(rows)


@given(square_any, st.data())
def test_det_multiplicative(rows, data):
    n = len(rows)
    other = data.draw(square(n))
    a, b = ExactMatrix(rows), ExactMatrix(other)
    assert mat_det(a @ b) == mat_det(a) * mat_det(b)


@given(square_any)
def test_inverse(rows):
    m = ExactMatrix(rows)
    if mat_det(m) == 0:
        with pytest.raises(ZeroDivisionError):
            mat_inverse(m)
    else:
        assert m @ mat_inverse(m) == ExactMatrix.identity(m.rows)


@given(rect_any)
def test_rank_nullity_and_kernel(rows):
    m = ExactMatrix(rows)
    kernel = mat_kernel(m)
    assert mat_rank(m) + len(kernel) == m.cols
    for v in kernel:
        assert not any(m.apply(v))
    assert len(pivot_columns(m)) == mat_rank(m)
    assert mat_rank(m) == mat_rank(m.T)


@given(rect_any, st.data())
def test_solve_consistent_systems(rows, data):
    m = ExactMatrix(rows)
    x = data.draw(st.lists(small, min_size=m.cols, max_size=m.cols))
    b = m.apply(x)
    y = solve(m, b)
    assert y is not None and m.apply(y) == b


@given(square_any)
def test_charpoly_by_evaluation(rows):
    m = ExactMatrix(rows)
    e = charpoly_coeffs(m)
    n = m.rows
    for t in (Fraction(1), Fraction(-2), Fraction(1, 3)):
        shifted = [[(1 if i == j else 0) + t * rows[i][j] for j in range(n)] for i in range(n)]
        assert sum(ek * t**k for k, ek in enumerate(e)) == leibniz_det(shifted)


def test_gaussian_matrix_det():
    m = ExactMatrix([[I, 1], [1, I]])
    assert mat_det(m) == -2
    assert mat_rank(ExactMatrix([[1, I], [I, -1]])) == 1


def test_det_non_square():
    with pytest.raises(ValueError):
        mat_det(ExactMatrix([[1, 2]]))


def test_matrix_json_roundtrip():
    m = ExactMatrix([[Fraction(1, 2), I], [0, -3]])
    assert ExactMatrix.from_json(m.to_json()) == m


# -- Smith normal form ---------------------------------------------------------

@given(rect_any)
def test_snf_properties(rows):
    u, d, v = smith_normal_form(rows)
    assert int_matmul(int_matmul(u, rows), v) == d
    assert abs(int_det(u)) == 1 and abs(int_det(v)) == 1
    diag = [d[i][i] for i in range(min(len(d), len(d[0])))]
    assert all(x >= 0 for x in diag)
    assert all(d[i][j] == 0 for i in range(len(d)) for j in range(len(d[0])) if i != j)
    nonzero = [x for x in diag if x]
    assert diag[: len(nonzero)] == nonzero  # zeros come last
    assert all(b % a == 0 for a, b in zip(nonzero, nonzero[1:]))


@given(rect_any)
def test_first_invariant_factor_is_entry_gcd(rows):
    from math import gcd

    _, d, _ = smith_normal_form(rows)
    g = 0
    for r in rows:
        for x in r:
            g = gcd(g, x)
    assert d[0][0] == g


def test_snf_small_cases():
    assert smith_normal_form([[2], [2]])[1] == [[2], [0]]
    assert smith_normal_form([[3], [5]])[1] == [[1], [0]]
    assert cokernel([[2], [4], [6]]) == (2, [2])
    assert cokernel([[1], [1]]) == (1, [])
    assert int_det([[2, 1], [7, 4]]) == 1
