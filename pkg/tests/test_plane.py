from fractions import Fraction

from hypothesis import given, settings, strategies as st

from bidouble_k7 import linalg
from bidouble_k7.construction import conic_form, free_point, w_configuration, w_classes
from bidouble_k7.lattice import Proper, BlowupConfiguration
from bidouble_k7.plane import PlaneForm, class_basis, class_dim, monomials
from conftest import random_admissible_points

forms = st.builds(
    lambda d, cs: PlaneForm(d, tuple(Fraction(c) for c in cs[: len(monomials(d))])
                            + (Fraction(0),) * max(0, len(monomials(d)) - len(cs))),
    st.integers(0, 3),
    st.lists(st.integers(-5, 5), min_size=10, max_size=10),
)


@given(forms, forms)
@settings(max_examples=60, deadline=None)
def test_product_then_divide(f, g):
    if g.is_zero():
        return
    assert (f * g).divide(g) == f


@given(forms, st.tuples(*[st.fractions(max_denominator=5)] * 3))
@settings(max_examples=60, deadline=None)
def test_euler_identity(f, pt):
    # sum x_k df/dx_k = deg f * f
    lhs = sum(pt[k] * f.partial(k)(pt) for k in range(3))
    assert lhs == f.degree * f(pt)


def test_points_impose_independent_conditions():
    pts = [(1, 0, 0), (0, 1, 0), (0, 0, 1), (1, 1, 1), (1, 2, 3)]
    cfg = BlowupConfiguration(
        "five", tuple(Proper(tuple(Fraction(c) for c in p), f"e{i}") for i, p in enumerate(pts))
    )
    # conics through five general points: one
    assert class_dim(cfg.make(2, (1, 1, 1, 1, 1)), cfg) == 1
    # cubics singular at one point and through four: 10 - 3 - 4
    assert class_dim(cfg.make(3, (2, 1, 1, 1, 1)), cfg) == 3


def test_unique_conics_through_five_centres():
    w = w_configuration(free_point(2, 3))
    named = w_classes(w)
    for i in (1, 2, 3):
        others = [j for j in (1, 2, 3) if j != i]
        d = 2 * named["L"] - named[f"E{i}"]
        for j in others:
            d = d - named[f"E{j}"] - named[f"E{j}'"]
        basis = class_basis(d, w)
        assert len(basis) == 1
        assert basis[0].normalized() == conic_form(i).normalized()
        # the conic is not tangent to p_i p0 at p_i
        assert class_dim(d - named[f"E{i}'"], w) == 0


def cubic_determinant_rows(alpha, beta):
    return [
        [alpha - beta, alpha**2 * (beta - 1), beta**2 * (alpha - 1)],
        [Fraction(1), 2 * alpha * (beta - 1), beta**2],
        [Fraction(-1), alpha**2, 2 * beta * (alpha - 1)],
    ]


def test_cubic_scheme_empty_at_random_points():
    for alpha, beta, _ in random_admissible_points(seed=7, count=20):
        w = w_configuration(free_point(alpha, beta))
        named = w_classes(w)
        assert class_dim(-named["K"] - named["E"], w) == 0
        det = linalg.determinant(cubic_determinant_rows(alpha, beta))
        assert det == 2 * alpha * beta * (alpha - 1) * (beta - 1) * (alpha - beta)
        assert det != 0


def test_negative_degree_has_no_sections():
    w = w_configuration(free_point(2, 3))
    assert class_basis(w.make(-1, (0,) * 8), w) == []
    assert class_dim(w.make(-1, (0,) * 8), w) == 0
