import random
from fractions import Fraction

import pytest

from bidouble_k7.construction import (
    check_conditions_A_B,
    check_conditions_I_II,
    choose_fiber,
    fiber_parameter,
    free_point,
    w_configuration,
)
from bidouble_k7.cover import standard_cover_data
from bidouble_k7.curves import build_standard_catalog


class Surface:
    """The eight-point surface at a free point with its certified catalog."""

    def __init__(self, alpha, beta, b=None):
        self.p = free_point(alpha, beta)
        self.config = w_configuration(self.p)
        self.b = b if b is not None else choose_fiber(self.p)
        self.catalog = build_standard_catalog(self.config, self.b)
        self.cover = standard_cover_data(self.catalog, self.config)

    def cls(self, spec: str):
        from bidouble_k7.lattice import parse_class_spec

        return parse_class_spec(spec, self.config)


@pytest.fixture(scope="session")
def surface():
    return Surface(2, 3)


def random_admissible_points(seed: int, count: int, size: int = 9):
    """Free points passing (I)/(II) with random fibres passing (A)/(B)."""
    rng = random.Random(seed)
    out = []
    while len(out) < count:
        alpha = Fraction(rng.randint(-size, size), rng.randint(1, 4))
        beta = Fraction(rng.randint(-size, size), rng.randint(1, 4))
        p = free_point(alpha, beta)
        if not check_conditions_I_II(p):
            continue
        b = fiber_parameter(Fraction(rng.randint(-size, size), rng.randint(1, 4)))
        if not check_conditions_A_B(p, b):
            continue
        out.append((alpha, beta, b))
    return out


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if not RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(RESULTS):
        title, status = RESULTS[n]
        terminalreporter.write_line(f"criterion {n:2d}: {status:4s}  {title}")
