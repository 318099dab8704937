from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from bidouble_k7.construction import free_point, w_configuration
from bidouble_k7.lattice import (
    BlowupConfiguration,
    IncompatibleLattice,
    adjunction_genus,
    canonical_class,
    format_rational,
    intersect,
    parse_class_spec,
    parse_rational,
)

W = w_configuration(free_point(2, 3))
coeff = st.integers(-8, 8)
classes = st.builds(
    lambda d, m: W.make(d, m), coeff, st.lists(coeff, min_size=8, max_size=8)
)


@given(classes, classes, classes, st.integers(-4, 4))
@settings(max_examples=100, deadline=None)
def test_intersection_is_symmetric_bilinear(a, b, c, k):
    assert intersect(a, b) == intersect(b, a)
    assert intersect(a + b, c) == intersect(a, c) + intersect(b, c)
    assert intersect(k * a, b) == k * intersect(a, b)


@given(classes)
@settings(max_examples=100, deadline=None)
def test_adjunction_parity(d):
    # D^2 + K.D is always even on a blowup of the plane
    assert adjunction_genus(d).denominator == 1


@given(classes)
@settings(max_examples=50, deadline=None)
def test_spec_round_trip(d):
    assert parse_class_spec(d.spec(), W) == d


def test_canonical_degree_and_exceptional_curves():
    k = canonical_class(W)
    assert intersect(k, k) == 1
    for i, lab in enumerate(W.labels):
        e = W.exceptional(i)
        assert (intersect(e, e), intersect(k, e)) == (-1, -1)
        s = W.strict_exceptional(i)
        expected = -1 - len(W.children(i))
        assert intersect(s, s) == expected
    # total transforms of distinct centres are orthogonal
    for i in range(len(W)):
        for j in range(i + 1, len(W)):
            assert intersect(W.exceptional(i), W.exceptional(j)) == 0


def test_configuration_json_round_trip():
    again = BlowupConfiguration.from_json(W.to_json())
    assert again == W
    assert again.to_json() == W.to_json()


def test_gram_matrix_is_diagonal():
    g = W.gram_matrix()
    assert g[0][0] == 1 and all(g[i][i] == -1 for i in range(1, 9))
    assert sum(abs(g[i][j]) for i in range(9) for j in range(9) if i != j) == 0


@pytest.mark.parametrize("text", ["1.5", "1/0", "", "a", "2/x"])
def test_parse_rational_rejects(text):
    with pytest.raises(ValueError):
        parse_rational(text)


def test_parse_rational_refuses_floats():
    with pytest.raises(ValueError):
        parse_rational(0.5)


@given(st.fractions())
def test_rational_text_round_trip(x):
    assert parse_rational(format_rational(x)) == x


def test_class_spec_length_checked():
    with pytest.raises(ValueError, match="multiplicities"):
        parse_class_spec("6;2,2,2", W)
    with pytest.raises(ValueError, match="malformed"):
        parse_class_spec("six;2", W)


def test_mixing_lattices_is_an_error():
    other = w_configuration(free_point(3, 5))
    with pytest.raises(IncompatibleLattice):
        W.line() + other.line()


def test_infinitely_near_parent():
    assert W.parent_of(W.index("E1'")) == W.index("E1")
    assert W.parent_of(W.index("E")) is None
    assert Fraction(intersect(W.strict_exceptional("E1"), W.exceptional("E1'"))) == 1
