from fractions import Fraction

from hypothesis import given, settings, strategies as st

from bidouble_k7 import polys
from bidouble_k7.polys import BinaryForm

coeffs = st.lists(st.fractions(max_denominator=4, min_value=-5, max_value=5), min_size=1, max_size=5)


@given(coeffs, coeffs)
@settings(max_examples=80, deadline=None)
def test_division_identity(a, b):
    if not polys.trim(b) or polys.trim(b) == [0]:
        return
    q, r = polys.divmod_poly(a, b)
    if polys.trim(b) == [Fraction(0)]:
        return
    prod = [Fraction(0)] * (len(q) + len(b))
    for i, x in enumerate(q):
        for j, y in enumerate(b):
            prod[i + j] += x * y
    total = [
        (prod[i] if i < len(prod) else 0) + (r[i] if i < len(r) else 0)
        for i in range(max(len(prod), len(r)))
    ]
    assert polys.trim(total) == polys.trim(a)
    assert polys.degree(r) < polys.degree(b) or polys.degree(r) <= 0


def test_squarefree_and_coprime():
    # (s - t)^2 (s + t)
    f = BinaryForm.make([Fraction(c) for c in (1, -1, -1, 1)], 3)
    assert not f.is_squarefree()
    g = BinaryForm.make([Fraction(c) for c in (-1, 0, 1)], 2)
    assert g.is_squarefree()
    assert not f.coprime_to(g)
    h = BinaryForm.make([Fraction(c) for c in (1, 0, 1)], 2)
    assert h.coprime_to(g)
