import json

import pytest

from bidouble_k7.construction import free_point, w_classes, w_configuration
from bidouble_k7.curves import (
    ConfigurationNotGeneric,
    brute_force_negative_classes,
    certify_minus2_set,
    certify_negative_curves,
    enumerate_negative_classes,
    exceptional_coefficients,
    is_effective_exceptional,
    picard_number_from_fibers,
    singular_fiber_decompositions,
)
from bidouble_k7.lattice import intersect
from bidouble_k7.nodal_cubic import four_line_configuration, quintic_configuration


@pytest.mark.parametrize("config", [quintic_configuration(), four_line_configuration()],
                         ids=["quintic", "four-lines"])
@pytest.mark.parametrize("target", [(-1, -1), (-2, 0)])
def test_enumeration_matches_brute_force_on_presets(config, target):
    assert enumerate_negative_classes(config, *target) == brute_force_negative_classes(config, *target)


def test_enumeration_matches_brute_force_on_w():
    w = w_configuration(free_point(2, 3))
    found = enumerate_negative_classes(w, -2, 0)
    assert found == brute_force_negative_classes(w, -2, 0)
    assert len(found) == 148


def test_minus_one_classes_of_degree_one_surface():
    w = w_configuration(free_point(2, 3))
    # the (-1)-classes of a degree-1 surface are the 240 roots-shifted vectors of E8
    assert len(enumerate_negative_classes(w, -1, -1)) == 240


def test_six_minus2_curves(surface):
    cert = certify_minus2_set(surface.config)
    named = w_classes(surface.config)
    assert [c.name for c in cert.curves] == ["C1", "C1'", "C2", "C2'", "C3", "C3'"]
    assert all(c.divisor == named[c.name] for c in cert.curves)
    assert all(r.reason for r in cert.rejections)
    assert len(cert.rejections) == 148 - 6


def test_special_point_raises():
    # on the conic c1 a seventh (-2)-curve appears
    w = w_configuration(free_point(3, "3/2"))
    with pytest.raises(ConfigurationNotGeneric):
        certify_minus2_set(w)


def test_certificates_reverify(surface):
    for c in surface.catalog:
        assert c.check_certificate(surface.config), c.name


def test_catalog_json_is_deterministic(surface):
    text = surface.catalog.to_json()
    assert text == surface.catalog.to_json()
    data = json.loads(text)
    assert {c["name"] for c in data["curves"]} >= {"B2", "B3", "Gamma", "F_b"}


def test_exceptional_effectivity():
    w = w_configuration(free_point(2, 3))
    s1 = w.strict_exceptional("E1")
    assert exceptional_coefficients(s1, w) == [0, 1, 0, 0, 0, 0, 0, 0]
    assert is_effective_exceptional(s1, w)
    assert is_effective_exceptional(w.exceptional("E1"), w)
    assert not is_effective_exceptional(-w.exceptional("E1'"), w)
    assert not is_effective_exceptional(w.exceptional("E1'") - w.exceptional("E1"), w)


def test_fibre_decompositions(surface):
    named = w_classes(surface.config)
    f = singular_fiber_decompositions(named["F"], surface.catalog)
    assert sorted(d.pattern() for d in f) == [
        "C1 + C1' + 2E1'", "C2 + C2' + 2E2'", "C3 + C3' + 2E3'", "E + Gamma",
    ]
    assert picard_number_from_fibers(f) == 9
    m = singular_fiber_decompositions(named["M"], surface.catalog)
    assert sorted(d.pattern() for d in m) == [
        "B2 + B3", "C1 + C1' + 2Theta1", "C2 + C2' + 2Theta2", "C3 + C3' + 2Theta3",
    ]
    for d in f + m:
        total = surface.config.zero()
        for name, mult in d.components:
            total = total + mult * surface.catalog[name].divisor
        assert total == (named["F"] if d in f else named["M"])


def test_minus1_curves_certified(surface):
    minus2 = certify_minus2_set(surface.config).curves
    minus1 = certify_negative_curves(surface.config, -1, -1, known=minus2).curves
    assert len(minus1) == 41
    named = w_classes(surface.config)
    divisors = {c.divisor for c in minus1}
    for name in ("B2", "B3", "Gamma", "Theta1", "Theta2", "Theta3"):
        assert named[name] in divisors
    for c in minus1:
        assert all(intersect(c.divisor, n.divisor) >= 0 for n in minus2)
