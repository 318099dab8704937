from fractions import Fraction

import pytest

from bidouble_k7.cover import (
    BRANCH,
    TRANSVERSE,
    CoverData,
    InconsistentCoverData,
    UnsupportedCurve,
    bicanonical_class,
    intermediate_cover,
    pullback_curve_invariants,
    pullback_intersection,
    surface_invariants,
    validate_cover_data,
)
from bidouble_k7.lattice import intersect


def test_class_identities(surface):
    cd = surface.cover
    diag = validate_cover_data(cd)
    assert all(diag.identities.values())
    for i in range(3):
        assert 2 * cd.ell[i] == cd.delta_class(i + 1) + cd.delta_class(i + 2)
    assert [d.spec() for d in (cd.delta_class(0), cd.delta_class(1), cd.delta_class(2))] == [
        "4;4,0,2,0,2,0,0,1", "6;2,2,2,2,2,2,4,1", "6;2,2,2,2,2,2,2,3",
    ]
    products = diag.to_dict()["branch_products"]
    assert products == {"D1*D2": 7, "D1*D3": 5, "D2*D3": 1}


def test_invariants(surface):
    inv = surface_invariants(surface.cover, surface.catalog)
    assert (inv.KV_sq, inv.contracted, inv.KS_sq, inv.KS_sq_second_route) == (-5, 12, 7, 7)
    assert (inv.chi, inv.pg, inv.q) == (1, 0, 0)
    assert inv.eigen_h0_2K == (6, 1, 1, 0)
    assert inv.invariant_direct == 6
    assert sum(inv.eigen_h0_2K) == inv.KS_sq + inv.chi
    assert bicanonical_class(surface.cover).spec() == "10;6,2,4,2,4,2,4,3"


def test_holomorphic_euler_characteristic_formula(surface):
    # chi = 4 chi(O_W) + sum (L^2 + K.L)/2, recomputed by hand
    k = surface.cover.canonical()
    total = 4 + sum(Fraction(intersect(l, l) + intersect(k, l), 2) for l in surface.cover.ell)
    assert total == 1


def test_pullbacks(surface):
    cd, cat = surface.cover, surface.catalog
    g = pullback_curve_invariants(cat["Gamma"], BRANCH, cd)
    assert (g.self_int, g.k_degree, g.genus) == (-1, 1, 1)
    e = pullback_curve_invariants(cat["E"], TRANSVERSE, cd)
    assert (e.self_int, e.k_degree, e.genus, e.components) == (-4, 6, 2, 1)
    assert pullback_intersection(cat["Gamma"], BRANCH, cat["E"], TRANSVERSE, cd) == 2


def test_pullback_role_checks(surface):
    cd, cat = surface.cover, surface.catalog
    with pytest.raises(UnsupportedCurve):
        pullback_curve_invariants(cat["E"], BRANCH, cd)
    with pytest.raises(UnsupportedCurve):
        pullback_curve_invariants(cat["Gamma"], TRANSVERSE, cd)
    with pytest.raises(ValueError):
        pullback_curve_invariants(cat["Gamma"], "sideways", cd)


def test_pullback_genus_two_routes(surface):
    # every branch component away from the (-2)-curves: Riemann-Hurwitz == adjunction
    cd = surface.cover
    for _, c in cd.components():
        if c.self_int == -2:
            continue
        try:
            inv = pullback_curve_invariants(c, BRANCH, cd)
        except UnsupportedCurve:
            continue
        assert inv.genus == 1 + (inv.self_int + inv.k_degree) / 2


def test_intermediate_covers(surface):
    cd, cat = surface.cover, surface.catalog
    v = [intermediate_cover(i, cd, cat) for i in (1, 2, 3)]
    assert [x.fixed_points for x in v] == [9, 9, 7]
    assert [x.nodes for x in v] == [x.nodes_from_catalog for x in v] == [1, 5, 7]
    v2 = intermediate_cover(2, cd, cat, plurigenera_up_to=6)
    assert v2.plurigenera == {1: 0, 2: 1, 3: 0, 4: 1, 5: 0, 6: 1}


def test_inconsistent_data_rejected(surface):
    cd = surface.cover
    bad = CoverData(cd.delta, (cd.ell[0], cd.ell[1], cd.ell[1]), cd.config)
    with pytest.raises(InconsistentCoverData):
        validate_cover_data(bad)


def test_fiber_meets_branch_locus_in_four(surface):
    n = surface.catalog
    f = n["F_b"].divisor
    assert intersect(f, surface.cover.delta_class(0) + surface.cover.delta_class(1)) == 4
