import json

from bidouble_k7.construction import fiber_parameter, free_point
from bidouble_k7.verifier import (
    FAIL,
    PASS,
    SKIPPED,
    claim_ids,
    verify,
    verify_all,
    verify_section6,
)
from conftest import random_admissible_points


def test_claim_ids_unique():
    ids = claim_ids()
    assert len(ids) == len(set(ids)) == 56


def test_standard_report_passes_and_is_deterministic():
    a = verify_all(2, 3)
    b = verify_all(2, 3)
    assert a.passed and a.overall == "pass"
    assert a.to_json() == b.to_json()
    data = json.loads(a.to_json())
    assert set(data) == {"parameters", "claims", "summary"}
    assert data["parameters"] == {"p": ["1", "2", "3"], "b": ["3", "1"]}
    assert data["summary"]["pass"] == 56


def test_explicit_fiber_is_recorded():
    report = verify_all(2, 3, b=5)
    assert report.passed
    assert report.to_dict()["parameters"]["b"] == ["5", "1"]


def test_random_points_and_fibres():
    for alpha, beta, b in random_admissible_points(seed=11, count=3):
        report = verify(free_point(alpha, beta), b)
        failed = [c.claim_id for c in report.claims if c.status != PASS]
        assert not failed, (alpha, beta, b, failed)


def test_line_violation_skips_surface_claims():
    report = verify_all(1, 5)
    assert report.overall == "skipped"
    cond = report.claim("cond.I_II")
    assert cond.status == FAIL and "x1=x2" in json.dumps(cond.witness)
    skipped = [c for c in report.claims if c.status == SKIPPED]
    assert skipped and all("line" in c.message for c in skipped)
    # the preset claims do not depend on the free point and still run
    assert report.claim("hyperelliptic.all_closed").status == SKIPPED
    assert report.claim("presets.quintic_conic").status == PASS


def test_conic_violation_runs_and_fails():
    report = verify_all(3, "3/2")
    assert report.claim("cond.I_II").status == FAIL
    assert report.claim("surface.minus2_curves").status == FAIL
    assert report.overall == "fail"


def test_singular_fibre_fails_fibre_claims():
    report = verify(free_point(2, 3), fiber_parameter(2))
    assert report.claim("cond.A_B").status == FAIL
    assert not report.passed


def test_section6_report():
    report = verify_section6()
    assert report.passed
    assert all(c.claim_id.startswith("presets.") for c in report.claims)


def test_exclusions_from_invariants(surface):
    from bidouble_k7.cover import BRANCH, TRANSVERSE, pullback_curve_invariants, surface_invariants
    from bidouble_k7.verifier import verify_section4_exclusions

    cd, cat = surface.cover, surface.catalog
    claims = verify_section4_exclusions(
        surface_invariants(cd, cat),
        pullback_curve_invariants(cat["Gamma"], BRANCH, cd),
        pullback_curve_invariants(cat["E"], TRANSVERSE, cd),
        2,
    )
    assert len(claims) == 14
    assert all(c.status == PASS for c in claims)
    assert len({c.claim_id for c in claims}) == 14
