"""Negative curves: enumeration, certification and fibre decompositions."""
from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Iterator, Sequence

from . import linalg
from .construction import (
    P0,
    check_conditions_A_B,
    check_conditions_I_II,
    fiber_parameter,
    fiber_point,
    free_point_of,
    interpolate_class,
    w_classes,
)
from .lattice import (
    BlowupConfiguration,
    DivisorClass,
    adjunction_genus,
    canonical_class,
    intersect,
    line_through,
)
from .plane import PlaneForm, class_dim, conditions_from_class, satisfies

EXCEPTIONAL = "exceptional-by-construction"
INTERPOLATED = "interpolated"
LATTICE_FORCED = "lattice-forced"


class ConfigurationNotGeneric(ValueError):
    def __init__(self, detail: str):
        super().__init__(f"configuration not generic: {detail}")


@dataclass(frozen=True)
class NamedCurve:
    name: str
    divisor: DivisorClass
    self_int: int
    k_degree: int
    certificate: str
    form: PlaneForm | None = None

    @classmethod
    def make(
        cls, name: str, divisor: DivisorClass, certificate: str, form: PlaneForm | None = None
    ) -> "NamedCurve":
        k = DivisorClass(divisor.config_id, -3, (-1,) * len(divisor.mults))
        return cls(name, divisor, intersect(divisor, divisor), intersect(k, divisor), certificate, form)

    def __post_init__(self):
        k = DivisorClass(self.divisor.config_id, -3, (-1,) * len(self.divisor.mults))
        if self.self_int != intersect(self.divisor, self.divisor) or self.k_degree != intersect(k, self.divisor):
            raise ValueError(f"{self.name}: stored invariants disagree with the class")
        if self.certificate == INTERPOLATED and self.form is None:
            raise ValueError(f"{self.name}: interpolated certificate needs a form")

    def check_certificate(self, config: BlowupConfiguration) -> bool:
        if self.certificate == INTERPOLATED:
            assert self.form is not None
            return (
                self.form.degree == self.divisor.degree
                and not self.form.is_zero()
                and satisfies(self.form, conditions_from_class(self.divisor), config)
            )
        if self.certificate == EXCEPTIONAL:
            return any(
                config.strict_exceptional(i) == self.divisor for i in range(len(config))
            )
        return True

    def to_dict(self) -> dict:
        d = {
            "name": self.name,
            "class": self.divisor.spec(),
            "self_int": self.self_int,
            "k_degree": self.k_degree,
            "certificate": self.certificate,
        }
        if self.form is not None:
            d["form"] = self.form.to_dict()
        return d


@dataclass
class CurveCatalog:
    config_id: str
    curves: list[NamedCurve] = field(default_factory=list)

    def __post_init__(self):
        names = [c.name for c in self.curves]
        if len(set(names)) != len(names):
            raise ValueError("catalog curve names must be unique")
        for c in self.curves:
            if c.divisor.config_id != self.config_id:
                raise ValueError(f"{c.name} lives on another configuration")

    def __iter__(self) -> Iterator[NamedCurve]:
        return iter(self.curves)

    def __len__(self) -> int:
        return len(self.curves)

    def __contains__(self, name: str) -> bool:
        return any(c.name == name for c in self.curves)

    def __getitem__(self, name: str) -> NamedCurve:
        for c in self.curves:
            if c.name == name:
                return c
        raise KeyError(name)

    def add(self, curve: NamedCurve) -> None:
        if curve.name in self:
            raise ValueError(f"duplicate curve name {curve.name}")
        if curve.divisor.config_id != self.config_id:
            raise ValueError(f"{curve.name} lives on another configuration")
        self.curves.append(curve)

    def sorted(self) -> "CurveCatalog":
        return CurveCatalog(
            self.config_id, sorted(self.curves, key=lambda c: (c.divisor.sort_key(), c.name))
        )

    def intersection_table(self) -> dict[str, dict[str, int]]:
        return {a.name: {b.name: intersect(a.divisor, b.divisor) for b in self} for a in self}

    def to_dict(self) -> dict:
        return {"config_id": self.config_id, "curves": [c.to_dict() for c in self]}

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True)


# -- enumeration -----------------------------------------------------------

def degree_bound(n: int, self_int: int, k_degree: int) -> int:
    """Largest degree allowed by Cauchy-Schwarz for ``n`` centres.

    A class ``x L - sum a_i E_i`` with the given invariants has
    ``sum a_i = 3x + k`` and ``sum a_i^2 = x^2 - s``, and
    ``(sum a_i)^2 <= n sum a_i^2``.
    """
    if n >= 9:
        raise ValueError("Cauchy-Schwarz gives no degree bound with 9 or more centers")
    x, best = 0, 0
    # the quadratic (9 - n) x^2 + 6 k x + k^2 + n s is eventually positive
    while True:
        x += 1
        if (3 * x + k_degree) ** 2 <= n * (x * x - self_int):
            best = x
        elif x > 3 * abs(k_degree) + 3 * abs(self_int) + 3:
            return best


def _vectors(n: int, total: int, squares: int, cap: int) -> Iterator[tuple[int, ...]]:
    """Nonnegative vectors of length ``n`` with given sum and sum of squares."""
    if n == 0:
        if total == 0 and squares == 0:
            yield ()
        return
    for a in range(min(cap, total) + 1):
        rest_t, rest_s = total - a, squares - a * a
        if rest_s < 0:
            break
        # rest needs rest_t^2 <= (n-1) rest_s and rest_t <= rest_s
        if n - 1 == 0:
            if rest_t == 0 and rest_s == 0:
                yield (a,)
            continue
        if rest_t * rest_t > (n - 1) * rest_s or rest_t > rest_s:
            continue
        for tail in _vectors(n - 1, rest_t, rest_s, cap):
            yield (a,) + tail


def enumerate_negative_classes(
    config: BlowupConfiguration,
    self_int_target: int,
    k_degree_target: int,
    max_degree: int | None = None,
) -> list[DivisorClass]:
    """Every class with the given ``D^2`` and ``K.D`` that could be a curve.

    Degree-zero solutions are the differences ``E_i - E_j`` and the ``E_i``
    themselves; positive-degree solutions have nonnegative multiplicities.
    """
    if self_int_target not in (-1, -2) or k_degree_target not in (-1, 0):
        raise ValueError("only (-1)- and (-2)-classes are enumerated")
    n = len(config)
    if n > 9:
        raise ValueError("at most 9 centers supported")
    bound = degree_bound(n, self_int_target, k_degree_target) if max_degree is None else max_degree
    out: list[DivisorClass] = []
    k = canonical_class(config)
    # degree zero: sum a = k, sum a^2 = -s
    for mults in _signed_unit_vectors(n, k_degree_target, -self_int_target):
        d = config.make(0, mults)
        out.append(d)
    for x in range(1, bound + 1):
        total = 3 * x + k_degree_target
        squares = x * x - self_int_target
        for mults in _vectors(n, total, squares, x):
            d = config.make(x, mults)
            assert intersect(d, d) == self_int_target and intersect(k, d) == k_degree_target
            out.append(d)
    return sorted(out, key=DivisorClass.sort_key)


def _signed_unit_vectors(n: int, total: int, squares: int) -> Iterator[tuple[int, ...]]:
    # entries in {-1, 0, 1} suffice for sum of squares <= 2
    for mults in itertools.product((-1, 0, 1), repeat=n):
        if sum(mults) == total and sum(a * a for a in mults) == squares:
            yield mults


def brute_force_negative_classes(
    config: BlowupConfiguration, self_int_target: int, k_degree_target: int
) -> list[DivisorClass]:
    """Oracle: scan every coefficient vector inside the Cauchy-Schwarz box."""
    n = len(config)
    bound = degree_bound(n, self_int_target, k_degree_target)
    k = canonical_class(config)
    out = []
    for x in range(0, bound + 1):
        top = int((x * x - self_int_target) ** 0.5) + 1
        lo = -top if x == 0 else 0
        for mults in itertools.product(range(lo, top + 1), repeat=n):
            d = config.make(x, mults)
            if intersect(d, d) == self_int_target and intersect(k, d) == k_degree_target:
                out.append(d)
    return sorted(out, key=DivisorClass.sort_key)


# -- certification ---------------------------------------------------------

def exceptional_coefficients(d: DivisorClass, config: BlowupConfiguration) -> list[int]:
    """Coefficients of a degree-zero class on the strict exceptional curves."""
    if d.degree != 0:
        raise ValueError("only degree-zero classes are supported on exceptional curves")
    # d = sum c_i E_i (total) = sum e_i S_i  with  c_i = e_i - e_parent(i)
    c = [-a for a in d.mults]
    e = [0] * len(c)
    for i in range(len(c)):
        parent = config.parent_of(i)
        e[i] = c[i] + (e[parent] if parent is not None else 0)
    return e


def is_effective_exceptional(d: DivisorClass, config: BlowupConfiguration) -> bool:
    return all(x >= 0 for x in exceptional_coefficients(d, config))


@dataclass(frozen=True)
class Rejection:
    divisor: DivisorClass
    reason: str

    def to_dict(self) -> dict:
        return {"class": self.divisor.spec(), "reason": self.reason}


@dataclass
class Certification:
    curves: list[NamedCurve]
    rejections: list[Rejection]


def certify_negative_curves(
    config: BlowupConfiguration,
    self_int_target: int,
    k_degree_target: int,
    known: Sequence[NamedCurve] = (),
    max_degree: int | None = None,
) -> Certification:
    """Decide which enumerated classes are irreducible curves.

    Degree zero: a strict exceptional curve, by construction.  Otherwise a
    class is rejected when it meets an accepted curve negatively (that curve
    would be a fixed component) or when interpolation shows it is empty;
    the survivors are effective and meet every known curve nonnegatively.
    """
    accepted: list[NamedCurve] = []
    rejected: list[Rejection] = []
    pool = list(known)
    for d in enumerate_negative_classes(config, self_int_target, k_degree_target, max_degree):
        if d.degree == 0:
            strict = [i for i in range(len(config)) if config.strict_exceptional(i) == d]
            if strict:
                curve = NamedCurve.make(f"S{config.labels[strict[0]]}", d, EXCEPTIONAL)
                accepted.append(curve)
                pool.append(curve)
            else:
                rejected.append(Rejection(d, "degree 0 and not a strict exceptional curve"))
            continue
        blocker = next(
            (n for n in pool if n.divisor != d and intersect(d, n.divisor) < 0), None
        )
        if blocker is not None:
            rejected.append(
                Rejection(d, f"meets {blocker.name} negatively ({intersect(d, blocker.divisor)})")
            )
            continue
        dim = class_dim(d, config)
        if dim == 0:
            rejected.append(Rejection(d, "interpolation: linear system is empty"))
            continue
        form = interpolate_class(config, d) if dim == 1 else None
        cert = INTERPOLATED if form is not None else LATTICE_FORCED
        curve = NamedCurve.make(f"N[{d.spec()}]", d, cert, form)
        accepted.append(curve)
        pool.append(curve)
    return Certification(accepted, rejected)


def certify_minus2_set(config: BlowupConfiguration) -> Certification:
    """The six (-2)-curves of the eight-point surface, with rejection witnesses.

    Raises :class:`ConfigurationNotGeneric` when any further class turns out
    effective, which happens exactly when the free point is special.
    """
    named = w_classes(config)
    expected = {named[n]: n for n in ("C1", "C1'", "C2", "C2'", "C3", "C3'")}
    cert = certify_negative_curves(config, -2, 0)
    curves = []
    for c in cert.curves:
        if c.divisor not in expected:
            raise ConfigurationNotGeneric(f"unexpected effective (-2)-class {c.divisor.spec()}")
        curves.append(NamedCurve(expected[c.divisor], c.divisor, c.self_int, c.k_degree,
                                 c.certificate, c.form))
    found = {c.divisor for c in curves}
    missing = [n for d, n in expected.items() if d not in found]
    if missing:
        raise ConfigurationNotGeneric(f"missing (-2)-curves {missing}")
    order = list(expected.values())
    curves.sort(key=lambda c: order.index(c.name))
    return Certification(curves, cert.rejections)


def fiber_line_form(b: Sequence[Fraction]) -> PlaneForm:
    line = line_through(P0, fiber_point(b))
    return PlaneForm(1, line)


def build_standard_catalog(
    config: BlowupConfiguration,
    b: Sequence[Fraction] | Fraction | int | str | None,
    check_fiber: bool = True,
) -> CurveCatalog:
    """Certified curves of the eight-point surface for the fibre ``F_b``.

    With ``check_fiber`` off, ``F_b`` is included without testing (A)/(B).
    """
    p = free_point_of(config)
    cond = check_conditions_I_II(p)
    if not cond:
        raise ConfigurationNotGeneric("; ".join(cond.violations))
    bb = tuple(Fraction(x) for x in b) if isinstance(b, (tuple, list)) else fiber_parameter(b)
    named = w_classes(config)
    minus2 = certify_minus2_set(config)
    forms = {n: interpolate_class(config, named[n]) for n in ("Gamma", "B2", "B3")}
    ab = check_conditions_A_B(p, bb, (forms["B2"], forms["B3"])) if check_fiber else None
    if ab is not None and not ab:
        raise ConfigurationNotGeneric("; ".join(ab.violations))
    cat = CurveCatalog(config.name, list(minus2.curves))
    for lab in ("E0", "E1'", "E2'", "E3'", "E"):
        cat.add(NamedCurve.make(lab, named[lab], EXCEPTIONAL))
    cat.add(NamedCurve.make("Gamma", named["Gamma"], INTERPOLATED, forms["Gamma"]))
    cat.add(NamedCurve.make("F_b", named["F"], INTERPOLATED, fiber_line_form(bb)))
    cat.add(NamedCurve.make("B2", named["B2"], INTERPOLATED, forms["B2"]))
    cat.add(NamedCurve.make("B3", named["B3"], INTERPOLATED, forms["B3"]))
    for j in (1, 2, 3):
        t = named[f"Theta{j}"]
        cat.add(NamedCurve.make(f"Theta{j}", t, INTERPOLATED, interpolate_class(config, t)))
    return cat.sorted()


# -- fibres ----------------------------------------------------------------

@dataclass(frozen=True)
class FiberDecomposition:
    components: tuple[tuple[str, int], ...]

    @property
    def n_components(self) -> int:
        return len(self.components)

    def pattern(self) -> str:
        return " + ".join(n if m == 1 else f"{m}{n}" for n, m in self.components)


def singular_fiber_decompositions(
    fiber_class: DivisorClass, catalog: CurveCatalog, cap: int = 4
) -> list[FiberDecomposition]:
    """Reducible or multiple fibres made of catalog curves.

    Components must be orthogonal to the fibre class.  Positive-degree
    components are searched with multiplicity at most ``cap``; the
    exceptional remainder is then solved exactly.
    """
    if intersect(fiber_class, fiber_class) != 0:
        raise ValueError("precondition: fiber class must have self-intersection 0")
    ortho = [c for c in catalog if intersect(c.divisor, fiber_class) == 0]
    positive = [c for c in ortho if c.divisor.degree > 0]
    flat = [c for c in ortho if c.divisor.degree == 0]
    results: set[FiberDecomposition] = set()
    explored = 0

    def finish(chosen: list[tuple[NamedCurve, int]], rest: DivisorClass) -> None:
        for extra in _solve_exceptional(rest, flat, cap):
            comps = [(c.name, m) for c, m in chosen if m] + extra
            if len(comps) == 1 and comps[0][1] == 1:
                continue
            results.add(FiberDecomposition(tuple(sorted(comps))))

    def search(i: int, rest: DivisorClass, chosen: list[tuple[NamedCurve, int]]) -> None:
        nonlocal explored
        explored += 1
        if explored > 1_000_000:
            raise RuntimeError("fiber decomposition search exceeded its cap")
        if rest.degree == 0:
            finish(chosen, rest)
            return
        if i == len(positive):
            return
        c = positive[i]
        for m in range(0, cap + 1):
            r = rest - c.divisor * m
            if r.degree < 0:
                break
            search(i + 1, r, chosen + [(c, m)])

    search(0, fiber_class, [])
    return sorted(results, key=lambda d: d.components)


def _solve_exceptional(
    rest: DivisorClass, flat: list[NamedCurve], cap: int
) -> list[list[tuple[str, int]]]:
    if rest.is_zero():
        return [[]]
    if not flat:
        return []
    n = len(rest.mults)
    matrix = [[c.divisor.mults[r] for c in flat] for r in range(n)]
    if linalg.rank(matrix, len(flat)) == len(flat):
        sol = linalg.solve(matrix, rest.mults)
        if sol is None or any(x < 0 or x > cap or x.denominator != 1 for x in sol):
            return []
        return [[(c.name, int(x)) for c, x in zip(flat, sol) if x]]
    out = []
    for ms in itertools.product(range(cap + 1), repeat=len(flat)):
        total = rest * 0
        for c, m in zip(flat, ms):
            total = total + c.divisor * m
        if total == rest:
            out.append([(c.name, m) for c, m in zip(flat, ms) if m])
    return out


def picard_number_from_fibers(decomps: Iterable[FiberDecomposition]) -> int:
    """``2 + sum (components - 1)`` for a genus-0 fibration with these singular fibres."""
    return 2 + sum(d.n_components - 1 for d in decomps)


def genus_zero_curves_ok(catalog: CurveCatalog) -> bool:
    return all(adjunction_genus(c.divisor) == 0 for c in catalog)
