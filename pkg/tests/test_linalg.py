from fractions import Fraction

import sympy
from hypothesis import given, settings, strategies as st

from bidouble_k7 import linalg

small = st.integers(-6, 6)
fractions = st.builds(Fraction, st.integers(-9, 9), st.integers(1, 5))


def matrices(rows, cols, elements=small):
    return st.lists(st.lists(elements, min_size=cols, max_size=cols), min_size=rows, max_size=rows)


@st.composite
def any_matrix(draw, elements=small):
    r = draw(st.integers(1, 5))
    c = draw(st.integers(1, 5))
    return draw(matrices(r, c, elements))


@st.composite
def square(draw, elements=small):
    n = draw(st.integers(1, 5))
    return draw(matrices(n, n, elements))


@given(square(fractions))
@settings(max_examples=80, deadline=None)
def test_determinant_matches_sympy(m):
    assert linalg.determinant(m) == Fraction(str(sympy.Matrix(m).det()))


@given(any_matrix(fractions))
@settings(max_examples=80, deadline=None)
def test_rank_matches_sympy(m):
    assert linalg.rank(m, len(m[0])) == sympy.Matrix(m).rank()


@given(any_matrix())
@settings(max_examples=60, deadline=None)
def test_rref_matches_sympy(m):
    rows, pivots = linalg.rref(m, len(m[0]))
    ref, piv = sympy.Matrix(m).rref()
    assert tuple(pivots) == piv
    for i, row in enumerate(rows[: len(piv)]):
        assert row == [Fraction(str(x)) for x in ref.row(i)]


@given(any_matrix())
@settings(max_examples=60, deadline=None)
def test_nullspace_is_kernel_of_right_size(m):
    ncols = len(m[0])
    basis = linalg.nullspace(m, ncols)
    assert len(basis) == ncols - linalg.rank(m, ncols)
    for v in basis:
        assert all(sum(a * x for a, x in zip(row, v)) == 0 for row in m)
    if basis:
        assert linalg.rank(basis, ncols) == len(basis)


@given(square(), st.lists(small, min_size=5, max_size=5))
@settings(max_examples=60, deadline=None)
def test_solve_returns_solution_or_none(m, rhs):
    rhs = rhs[: len(m)]
    x = linalg.solve(m, rhs)
    if x is None:
        augmented = [row + [r] for row, r in zip(m, rhs)]
        assert linalg.rank(augmented, len(m) + 1) > linalg.rank(m, len(m))
    else:
        assert [sum(a * v for a, v in zip(row, x)) for row in m] == rhs


def test_singular_determinant_is_zero():
    assert linalg.determinant([[1, 2], [2, 4]]) == 0
    assert linalg.determinant([[0, 1], [1, 0]]) == -1
