"""Section counts by fixed-part reduction followed by interpolation."""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction

from .curves import CurveCatalog, NamedCurve, EXCEPTIONAL, is_effective_exceptional
from .lattice import BlowupConfiguration, DivisorClass, intersect
from .plane import class_dim

STEP_CAP = 200


class ReductionDidNotTerminate(RuntimeError):
    def __init__(self, trace: "ReductionTrace"):
        super().__init__(f"reduction did not terminate after {len(trace.steps)} steps")
        self.trace = trace


@dataclass(frozen=True)
class ReductionStep:
    curve: str
    before: DivisorClass
    product: int  # before . curve, always negative


@dataclass
class ReductionTrace:
    start: DivisorClass
    steps: list[ReductionStep] = field(default_factory=list)
    terminal: DivisorClass | None = None
    status: str = ""  # "visibly-empty", "exceptional", "interpolation"

    def subtracted(self) -> list[str]:
        return [s.curve for s in self.steps]

    def to_dict(self) -> dict:
        return {
            "start": self.start.spec(),
            "steps": [
                {"curve": s.curve, "before": s.before.spec(), "product": s.product}
                for s in self.steps
            ],
            "terminal": self.terminal.spec() if self.terminal is not None else None,
            "status": self.status,
        }


@dataclass(frozen=True)
class H0Result:
    value: int
    trace: ReductionTrace


def reduction_curves(catalog: CurveCatalog, config: BlowupConfiguration) -> list[NamedCurve]:
    """Catalog curves plus every irreducible exceptional curve not already there."""
    curves = list(catalog)
    have = {c.divisor for c in curves}
    for i, lab in enumerate(config.labels):
        s = config.strict_exceptional(i)
        if s not in have:
            curves.append(NamedCurve.make(f"S{lab}", s, EXCEPTIONAL))
            have.add(s)
    return curves


def h0(
    d: DivisorClass,
    catalog: CurveCatalog,
    config: BlowupConfiguration,
    rng: random.Random | None = None,
) -> H0Result:
    """Dimension of ``H^0(W, O(d))``.

    While some known irreducible curve ``N`` has ``d.N < 0`` it lies in the
    base locus and is removed.  The remainder is decided directly: negative
    degree is empty, degree zero is effective exactly when it is a
    nonnegative combination of exceptional curves, and positive degree goes
    to plane interpolation.  ``rng`` picks among the negative curves at
    random instead of taking the first; the answer must not depend on it.
    """
    if d.config_id != config.name or catalog.config_id != config.name:
        raise ValueError("class, catalog and configuration disagree")
    curves = reduction_curves(catalog, config)
    trace = ReductionTrace(d)
    cur = d
    while cur.degree > 0:
        negative = [c for c in curves if intersect(cur, c.divisor) < 0]
        if not negative:
            break
        if len(trace.steps) >= STEP_CAP:
            raise ReductionDidNotTerminate(trace)
        c = rng.choice(negative) if rng is not None else negative[0]
        trace.steps.append(ReductionStep(c.name, cur, intersect(cur, c.divisor)))
        cur = cur - c.divisor
    trace.terminal = cur
    if cur.degree < 0:
        trace.status = "visibly-empty"
        return H0Result(0, trace)
    if cur.degree == 0:
        if is_effective_exceptional(cur, config):
            trace.status = "exceptional"
            return H0Result(1, trace)
        trace.status = "visibly-empty"
        return H0Result(0, trace)
    trace.status = "interpolation"
    return H0Result(class_dim(cur, config), trace)


def riemann_roch_chi(d: DivisorClass) -> Fraction:
    """``chi(O(d)) = 1 + (d^2 - K.d) / 2`` on a rational surface."""
    k = DivisorClass(d.config_id, -3, (-1,) * len(d.mults))
    return 1 + Fraction(intersect(d, d) - intersect(k, d), 2)



class ReductionNotForced(ValueError):
    def __init__(self, curve: str, product: int):
        super().__init__(f"reduction step {curve} is not forced (product {product} >= 0)")


def replay_reduction(
    d: DivisorClass, curve_names: list[str], catalog: CurveCatalog, config: BlowupConfiguration
) -> ReductionTrace:
    """Check a prescribed sequence of fixed-component removals.

    Every named curve must meet the current class negatively when it is
    removed, so it really is a fixed component.
    """
    curves = {c.name: c for c in reduction_curves(catalog, config)}
    trace = ReductionTrace(d)
    cur = d
    for name in curve_names:
        c = curves[name]
        product = intersect(cur, c.divisor)
        if product >= 0:
            raise ReductionNotForced(name, product)
        trace.steps.append(ReductionStep(name, cur, product))
        cur = cur - c.divisor
    trace.terminal = cur
    return trace
