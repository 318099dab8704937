import random

import pytest
from hypothesis import given, settings, strategies as st

from bidouble_k7.construction import w_classes
from bidouble_k7.lattice import canonical_class
from bidouble_k7.plane import class_dim
from bidouble_k7.riemann_roch import (
    ReductionNotForced,
    h0,
    replay_reduction,
    riemann_roch_chi,
)


def suite_classes(surface):
    """Every class whose h0 the verification report depends on."""
    k = canonical_class(surface.config)
    ell = surface.cover.ell
    delta = [surface.cover.delta_class(i) for i in range(3)]
    n = w_classes(surface.config)
    out = {"-2K": -2 * k, "-K": -k, "2K+Delta": 2 * k + delta[0] + delta[1] + delta[2]}
    for i in range(3):
        out[f"K+L{i + 1}"] = k + ell[i]
        out[f"2K+L{(i + 1) % 3 + 1}+L{(i + 2) % 3 + 1}"] = 2 * k + ell[(i + 1) % 3] + ell[(i + 2) % 3]
        for m in range(1, 5):
            out[f"{m}K+{m}L{i + 1}"] = m * k + m * ell[i]
            out[f"{m}K+{m - 1}L{i + 1}"] = m * k + (m - 1) * ell[i]
    out["-K-Gamma"] = -k - n["Gamma"]
    out["-K-E"] = -k - n["E"]
    out["-2K-Gamma"] = -2 * k - n["Gamma"]
    out["-2K-E"] = -2 * k - n["E"]
    return out


def test_reduction_order_independent(surface):
    for name, d in suite_classes(surface).items():
        expected = h0(d, surface.catalog, surface.config).value
        for seed in range(10):
            got = h0(d, surface.catalog, surface.config, rng=random.Random(seed)).value
            assert got == expected, (name, seed)


def test_known_values(surface):
    classes = suite_classes(surface)
    values = {name: h0(d, surface.catalog, surface.config).value for name, d in classes.items()}
    assert values["-2K"] == 4
    assert values["-K"] == 2
    assert values["2K+Delta"] == 6
    assert [values[f"K+L{i}"] for i in (1, 2, 3)] == [0, 0, 0]
    assert [values["2K+L2+L3"], values["2K+L3+L1"], values["2K+L1+L2"]] == [1, 1, 0]
    assert values["-K-Gamma"] == 0 and values["-K-E"] == 0
    assert values["-2K-Gamma"] == 1 and values["-2K-E"] == 1


def proximity_consistent(config):
    """Classes whose plane conditions are exactly the sections: parent >= child >= 0."""
    def ok(d):
        if any(a < 0 for a in d.mults):
            return False
        for i in range(len(config)):
            parent = config.parent_of(i)
            if parent is not None and d.mults[parent] < d.mults[i]:
                return False
        return True
    return ok


@given(st.integers(1, 6), st.lists(st.integers(0, 3), min_size=8, max_size=8))
@settings(max_examples=40, deadline=None)
def test_h0_matches_interpolation(surface, degree, mults):
    d = surface.config.make(degree, mults)
    if not proximity_consistent(surface.config)(d):
        return
    assert h0(d, surface.catalog, surface.config).value == class_dim(d, surface.config)


@given(st.integers(0, 5), st.lists(st.integers(-1, 3), min_size=8, max_size=8),
       st.sampled_from(["C1", "C1'", "E", "Gamma", "B2", "Theta2", "F_b"]))
@settings(max_examples=40, deadline=None)
def test_h0_monotone_in_effective_curves(surface, degree, mults, name):
    d = surface.config.make(degree, mults)
    bigger = d + surface.catalog[name].divisor
    assert h0(d, surface.catalog, surface.config).value <= h0(bigger, surface.catalog, surface.config).value


@given(st.integers(0, 6), st.lists(st.integers(-1, 3), min_size=8, max_size=8))
@settings(max_examples=40, deadline=None)
def test_riemann_roch_lower_bound(surface, degree, mults):
    d = surface.config.make(degree, mults)
    k = canonical_class(surface.config)
    if h0(k - d, surface.catalog, surface.config).value == 0:
        assert h0(d, surface.catalog, surface.config).value >= riemann_roch_chi(d)


def test_chi_values(surface):
    k = canonical_class(surface.config)
    assert riemann_roch_chi(surface.config.zero()) == 1
    assert riemann_roch_chi(-2 * k) == 4
    assert riemann_roch_chi(k) == 1


def test_replay_accepts_forced_steps(surface):
    k = canonical_class(surface.config)
    trace = replay_reduction(k + surface.cover.ell[0], ["C3", "C3'"], surface.catalog, surface.config)
    assert trace.terminal.spec() == "2;0,1,1,1,1,1,0,1"
    assert class_dim(trace.terminal, surface.config) == 0


def test_replay_rejects_unforced_step(surface):
    k = canonical_class(surface.config)
    with pytest.raises(ReductionNotForced):
        replay_reduction(-2 * k, ["Gamma"], surface.catalog, surface.config)


def test_trace_serializes(surface):
    k = canonical_class(surface.config)
    res = h0(k + surface.cover.ell[1], surface.catalog, surface.config)
    data = res.trace.to_dict()
    assert data["start"] == (k + surface.cover.ell[1]).spec()
    assert data["status"] in ("visibly-empty", "exceptional", "interpolation")
