"""The eight-point weak Del Pezzo surface of degree one and its parameters.

Centres, in class-spec order: ``p0, p1, p1', p2, p2', p3, p3', p`` with
``p0 = (1:1:1)``, ``p_j`` the coordinate points, ``p_j'`` infinitely near
``p_j`` in the direction of the line ``p_j p0``, and ``p = (1:alpha:beta)``
the free point.

Fibres of the pencil of lines through ``p0`` are parametrized by
``(s : t)``: the fibre is the line through ``p0`` and ``(s : t : 0)``.  The
lines ``p0 p1``, ``p0 p2``, ``p0 p3`` are ``(1:0)``, ``(0:1)``, ``(1:1)``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .lattice import (
    BlowupConfiguration,
    DivisorClass,
    InfinitelyNear,
    Point,
    Proper,
    format_rational,
    line_through,
    parse_rational,
    normalize_point,
)
from .plane import (
    PlaneForm,
    conditions_from_class,
    direction_frame,
    find_unique_member,
    tangent_cone,
)
from .polys import BinaryForm, gcd

ONE, ZERO = Fraction(1), Fraction(0)
P0: Point = (ONE, ONE, ONE)
P1: Point = (ONE, ZERO, ZERO)
P2: Point = (ZERO, ONE, ZERO)
P3: Point = (ZERO, ZERO, ONE)
COORD_POINTS = (P1, P2, P3)

LABELS = ("E0", "E1", "E1'", "E2", "E2'", "E3", "E3'", "E")


def free_point(alpha: Fraction | int | str, beta: Fraction | int | str) -> Point:
    return normalize_point((1, alpha, beta))


def point_text(p: Sequence[Fraction]) -> str:
    return "(" + ":".join(format_rational(x) for x in p) + ")"


def w_configuration(p: Sequence[Fraction]) -> BlowupConfiguration:
    p = normalize_point(p)
    centers: list = [Proper(P0, "E0")]
    for j, pj in enumerate(COORD_POINTS, start=1):
        centers.append(Proper(pj, f"E{j}"))
        centers.append(InfinitelyNear(len(centers) - 1, line_through(pj, P0), f"E{j}'"))
    centers.append(Proper(p, "E"))
    return BlowupConfiguration(f"W{point_text(p)}", tuple(centers))


def free_point_of(config: BlowupConfiguration) -> Point:
    return config.centers[7].point  # type: ignore[union-attr]


def conic_form(i: int) -> PlaneForm:
    """``x_i (x_{i+1} + x_{i+2}) - x_{i+1} x_{i+2}`` with indices mod 3."""
    a, b, c = (i - 1) % 3, i % 3, (i + 1) % 3
    terms: dict[tuple[int, int, int], Fraction] = {}

    def mono(*idx: int) -> tuple[int, int, int]:
        e = [0, 0, 0]
        for k in idx:
            e[k] += 1
        return tuple(e)  # type: ignore[return-value]

    for key, v in ((mono(a, b), 1), (mono(a, c), 1), (mono(b, c), -1)):
        terms[key] = terms.get(key, ZERO) + v
    return PlaneForm.from_terms(2, terms)


def _linear(coeffs: Sequence[int]) -> PlaneForm:
    return PlaneForm(1, tuple(Fraction(c) for c in coeffs))


def condition_curves() -> list[tuple[str, PlaneForm]]:
    """The nine curves a free point must avoid: six lines, three conics."""
    out = []
    for i in (1, 2, 3):
        c = [0, 0, 0]
        c[i % 3] = 1
        c[(i + 1) % 3] = -1
        out.append((f"line p0p{i}: x{i % 3 + 1}=x{(i + 1) % 3 + 1}", _linear(c)))
    for i in (1, 2, 3):
        c = [0, 0, 0]
        c[i - 1] = 1
        out.append((f"line p{i % 3 + 1}p{(i + 1) % 3 + 1}: x{i}=0", _linear(c)))
    for i in (1, 2, 3):
        out.append((f"conic c{i}", conic_form(i)))
    return out


@dataclass
class ConditionCheck:
    ok: bool
    violations: list[str] = field(default_factory=list)

    def __bool__(self) -> bool:
        return self.ok


def check_conditions_I_II(p: Sequence[Fraction]) -> ConditionCheck:
    p = normalize_point(p)
    bad = [name for name, f in condition_curves() if f(p) == 0]
    return ConditionCheck(not bad, bad)


# -- the pencil through p0 -------------------------------------------------

def fiber_point(b: Sequence[Fraction]) -> Point:
    """Second point ``(s : t : 0)`` spanning the fibre line with ``p0``."""
    s, t = (Fraction(x) for x in b)
    if s == 0 and t == 0:
        raise ValueError("fiber parameter (0:0) is not a point of P^1")
    return (s, t, ZERO)


def fiber_parameter(rational: Fraction | int | str | None) -> tuple[Fraction, Fraction]:
    """``b`` as a point of P^1; ``None`` is the point at infinity ``(1:0)``."""
    if rational is None:
        return (ONE, ZERO)
    return (parse_rational(rational), ONE)


def fiber_of_point(q: Sequence[Fraction]) -> tuple[Fraction, Fraction]:
    """Parameter of the fibre line through ``p0`` and ``q`` (``q != p0``)."""
    q = normalize_point(q)
    line = line_through(P0, q)
    # the line meets x3 = 0 at (l2 : -l1 : 0)
    s, t = line[1], -line[0]
    lead = s if s != 0 else t
    return (s / lead, t / lead)


def singular_fiber_parameters(p: Sequence[Fraction]) -> dict[str, tuple[Fraction, Fraction]]:
    return {
        "p0p1": fiber_of_point(P1),
        "p0p2": fiber_of_point(P2),
        "p0p3": fiber_of_point(P3),
        "p0p": fiber_of_point(p),
    }


def _same_point(a: Sequence[Fraction], b: Sequence[Fraction]) -> bool:
    return a[0] * b[1] == a[1] * b[0]


# -- the two (-1)-curves B2, B3 --------------------------------------------

def w_classes(config: BlowupConfiguration) -> dict[str, DivisorClass]:
    """Named classes on W used throughout."""
    L = config.line()
    E = {lab: config.exceptional(lab) for lab in LABELS}
    K = DivisorClass(config.name, -3, (-1,) * len(config))
    out: dict[str, DivisorClass] = {"L": L, "K": K}
    out.update(E)
    for j in (1, 2, 3):
        out[f"C{j}"] = L - E["E0"] - E[f"E{j}"] - E[f"E{j}'"]
        out[f"C{j}'"] = E[f"E{j}"] - E[f"E{j}'"]
    out["Gamma"] = L - E["E0"] - E["E"]
    out["F"] = L - E["E0"]
    out["B2"] = -2 * K - out["Gamma"]
    out["B3"] = -2 * K - E["E"]
    out["M"] = out["B2"] + out["B3"]
    for j in (1, 2, 3):
        out[f"Theta{j}"] = (out["M"] - out[f"C{j}"] - out[f"C{j}'"]).halve()
    return out


class CatalogConstructionFailed(ValueError):
    def __init__(self, detail: str):
        super().__init__(f"catalog construction failed: {detail}")


def interpolate_class(config: BlowupConfiguration, d: DivisorClass) -> PlaneForm:
    try:
        return find_unique_member(d.degree, conditions_from_class(d), config)
    except ValueError as exc:
        raise CatalogConstructionFailed(f"{d.spec()}: {exc}") from None


def branch_forms(config: BlowupConfiguration) -> tuple[PlaneForm, PlaneForm]:
    """Plane equations of ``B2`` (a quintic) and ``B3`` (a sextic)."""
    cl = w_classes(config)
    return interpolate_class(config, cl["B2"]), interpolate_class(config, cl["B3"])


def restrict_to_fiber(form: PlaneForm, mult_at_p0: int, b: Sequence[Fraction]):
    """Restriction to the fibre line, with the forced zero at ``p0`` removed."""
    return form.restrict(P0, fiber_point(b)).drop_zero_root(mult_at_p0)


def check_conditions_A_B(
    p: Sequence[Fraction],
    b: Sequence[Fraction],
    forms: tuple[PlaneForm, PlaneForm] | None = None,
) -> ConditionCheck:
    p = normalize_point(p)
    b = fiber_parameter(b) if not isinstance(b, (tuple, list)) else tuple(Fraction(x) for x in b)
    bad: list[str] = []
    for name, q in singular_fiber_parameters(p).items():
        if _same_point(q, b):
            bad.append(f"singular fiber {name}")
    if bad:
        return ConditionCheck(False, bad)
    if forms is None:
        forms = branch_forms(w_configuration(p))
    b2, b3 = forms
    r2 = restrict_to_fiber(b2, 1, b)
    r3 = restrict_to_fiber(b3, 2, b)
    if not r2.is_squarefree():
        bad.append("F_b tangent to B2")
    if not r3.is_squarefree():
        bad.append("F_b tangent to B3")
    if not r2.coprime_to(r3):
        bad.append("F_b passes through a point of B2 and B3")
    return ConditionCheck(not bad, bad)


# -- transversality of Gamma + E + B2 + B3 ---------------------------------

@dataclass
class NodeCheck:
    ok: bool
    detail: dict[str, bool]


def gamma_e_transversality(
    p: Sequence[Fraction], forms: tuple[PlaneForm, PlaneForm]
) -> tuple[NodeCheck, NodeCheck]:
    """Transversality of ``B2 + B3`` along ``Gamma`` and along ``E``.

    On ``Gamma`` (the line ``p0 p``) the restrictions of the two equations,
    with the forced zeros at ``p0`` and ``p`` removed, must have distinct
    roots and must not vanish at ``p`` itself (that root would be the point
    ``Gamma ∩ E``).  On ``E`` the same is asked of the tangent cones at ``p``,
    which must also avoid the direction of ``Gamma``.
    """
    p = normalize_point(p)
    b2, b3 = forms
    # Gamma: lam p0 + mu p; mu = 0 is p0, lam = 0 is p
    g2 = b2.restrict(P0, p).drop_zero_root(1)
    g3 = b3.restrict(P0, p).drop_zero_root(2)
    g2 = _drop_infinity(g2, 1)
    g3 = _drop_infinity(g3, 3)
    on_gamma = {
        "B2|Gamma squarefree": g2.is_squarefree(),
        "B3|Gamma squarefree": g3.is_squarefree(),
        "B2, B3 disjoint on Gamma": g2.coprime_to(g3),
        "Gamma∩E not on B2": not g2.vanishes_at(ZERO, ONE),
        "Gamma∩E not on B3": not g3.vanishes_at(ZERO, ONE),
    }
    gamma_line = line_through(P0, p)
    frame = direction_frame(p, gamma_line)
    e2 = tangent_cone(b2, frame, 1)
    e3 = tangent_cone(b3, frame, 3)
    # direction of Gamma is r = 0, i.e. t = 0
    on_e = {
        "B2|E squarefree": e2.is_squarefree(),
        "B3|E squarefree": e3.is_squarefree(),
        "B2, B3 disjoint on E": e2.coprime_to(e3),
        "Gamma∩E not on B2": not e2.vanishes_at(ONE, ZERO),
        "Gamma∩E not on B3": not e3.vanishes_at(ONE, ZERO),
    }
    return NodeCheck(all(on_gamma.values()), on_gamma), NodeCheck(all(on_e.values()), on_e)


def _drop_infinity(g: BinaryForm, m: int) -> BinaryForm:
    """Divide a binary form by ``lam**m``; the root at infinity must be there."""
    if g.infinity_order < m:
        raise ValueError("form does not vanish to the required order at infinity")
    return BinaryForm(g.coeffs, g.n - m)


def branch_node_point(p: Sequence[Fraction], forms: tuple[PlaneForm, PlaneForm] | None = None) -> Point:
    """The plane point over which ``B2`` and ``B3`` meet.

    ``B2 . B3 = 1``, so the point is unique and rational.  It is found on the
    fibre through it: the resultant of the two restricted equations, as a
    polynomial in the pencil parameter, has one linear factor that is not a
    singular fibre.
    """
    import sympy

    p = normalize_point(p)
    if forms is None:
        forms = branch_forms(w_configuration(p))
    s, u = sympy.symbols("s u")

    def restricted(form: PlaneForm, m: int):
        x = (1 + u * s, 1 + u, sympy.Integer(1))
        expr = sum(
            sympy.Rational(c.numerator, c.denominator) * x[0] ** a * x[1] ** b2_ * x[2] ** c3
            for (a, b2_, c3), c in form.terms().items()
        )
        poly = sympy.Poly(sympy.expand(expr), u)
        q, r = sympy.div(poly, sympy.Poly(u**m, u))
        assert r.is_zero
        return q

    r2 = restricted(forms[0], 1)
    r3 = restricted(forms[1], 2)
    res = sympy.Poly(sympy.resultant(r2.as_expr(), r3.as_expr(), u), s)
    known = [q for q in singular_fiber_parameters(p).values() if q[1] != 0]
    known_roots = {q[0] / q[1] for q in known}
    for factor, _ in sympy.factor_list(res.as_expr())[1]:
        fp = sympy.Poly(factor, s)
        if fp.degree() != 1:
            continue
        root = -fp.all_coeffs()[1] / fp.all_coeffs()[0]
        root = Fraction(int(sympy.numer(root)), int(sympy.denom(root)))
        if root in known_roots:
            continue
        b = (root, ONE)
        g2 = restrict_to_fiber(forms[0], 1, b)
        g3 = restrict_to_fiber(forms[1], 2, b)
        common = gcd(list(g2.coeffs), list(g3.coeffs))
        if len(common) == 2:
            mu = -common[0] / common[1]
            q = tuple(a + mu * c for a, c in zip(P0, fiber_point(b)))
            return normalize_point(q)
    raise CatalogConstructionFailed("no rational intersection point of B2 and B3 found")



def choose_fiber(
    p: Sequence[Fraction], forms: tuple[PlaneForm, PlaneForm] | None = None, limit: int = 60
) -> tuple[Fraction, Fraction]:
    """First small integer ``b`` (tried as 2, 3, -1, 4, -2, ...) whose fibre passes (A) and (B)."""
    forms = forms or branch_forms(w_configuration(p))
    order = [2, 3, -1]
    for k in range(4, limit):
        order += [k, -(k - 2)]
    for k in order:
        b = fiber_parameter(k)
        if check_conditions_A_B(p, b, forms):
            return b
    raise CatalogConstructionFailed("no admissible fiber among small integer parameters")
