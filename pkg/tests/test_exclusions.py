import sympy

from bidouble_k7.exclusions import (
    CurveData,
    FibrationData,
    exclusion_branches,
    gram_matrix,
    index_bound,
    ramification_available,
    ramification_needed,
)

GAMMA = CurveData("gamma'", -1, 1, 1)
E = CurveData("e'", -4, 6, 2)
FIB = FibrationData()


def test_index_bounds():
    assert index_bound(7, GAMMA, FIB) == 2
    assert index_bound(7, E, FIB) == 9


def test_riemann_hurwitz_counts():
    assert (ramification_needed(2, FIB), ramification_available(2, GAMMA)) == (5, 4)
    assert (ramification_needed(8, FIB), ramification_available(8, E)) == (20, 18)
    assert (ramification_needed(6, FIB), ramification_available(6, E)) == (15, 14)
    assert ramification_needed(4, FIB) <= ramification_available(4, E)


def test_gram_determinants_against_sympy():
    for n, expected in ((4, -128), (2, -96)):
        m = gram_matrix(7, GAMMA, E, 2, 0, n, FIB)
        assert sympy.Matrix(m).det() == expected
        assert sympy.Matrix(m).rank() == 4


def test_all_branches_close():
    branches = exclusion_branches(7, 1, GAMMA, E, 2)
    assert all(b.closed for b in branches)
    closed = {(b.curve, b.value): b.reason for b in branches}
    assert closed[("gamma'", 2)] == "Riemann-Hurwitz"
    assert closed[("e'", 8)] == closed[("e'", 6)] == "Riemann-Hurwitz"
    assert closed[("e'", 4)] == closed[("e'", 2)] == "Gram matrix rank exceeds b2"
    assert closed[("2gamma'+e'", 0)] == "Zariski lemma coefficient"
    odd = sorted(v for (c, v), r in closed.items() if r.startswith("odd"))
    assert odd == [1, 1, 3, 5, 7, 9]


def test_open_branch_reported():
    # a genus-3 gamma' would survive the Riemann-Hurwitz count for degree 2
    loose = CurveData("gamma'", -1, 1, 3)
    branches = exclusion_branches(7, 1, loose, E, 2)
    assert any(not b.closed for b in branches)
