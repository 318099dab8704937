"""Two six-point blowups modelling the resolved four-nodal cubic surface.

``quintic_configuration`` blows up ``p, p1, p2, p3`` and two infinitely near
points ``p1', p2'`` along the lines ``p_k p``; it carries a bidouble plane
whose branch data are normalized here.  ``four_line_configuration`` blows up
the six pairwise intersections of four general lines.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .curves import (
    CurveCatalog,
    NamedCurve,
    certify_negative_curves,
    exceptional_coefficients,
)
from .lattice import (
    BlowupConfiguration,
    DivisorClass,
    InfinitelyNear,
    Proper,
    canonical_class,
    intersect,
    line_through,
    normalize_point,
)
from .plane import PlaneForm, class_basis

ONE = Fraction(1)
ZERO = Fraction(0)
P = (ONE, ONE, ONE)
P1, P2, P3 = (ONE, ZERO, ZERO), (ZERO, ONE, ZERO), (ZERO, ZERO, ONE)


def quintic_configuration() -> BlowupConfiguration:
    return BlowupConfiguration(
        "quintic-plane",
        (
            Proper(P, "E"),
            Proper(P1, "E1"),
            Proper(P2, "E2"),
            Proper(P3, "E3"),
            InfinitelyNear(1, line_through(P1, P), "E1'"),
            InfinitelyNear(2, line_through(P2, P), "E2'"),
        ),
    )


def _cls(config: BlowupConfiguration, degree: int, **mults: int) -> DivisorClass:
    m = [0] * len(config)
    for lab, a in mults.items():
        m[config.index(lab.replace("_", "'"))] = a
    return config.make(degree, m)


def quintic_classes(config: BlowupConfiguration) -> dict[str, DivisorClass]:
    """Named classes on the quintic-plane blowup (``E1_`` stands for ``E1'``)."""
    c = lambda d, **m: _cls(config, d, **m)  # noqa: E731
    return {
        "T1": c(1, E1=1, E1_=1, E=1),
        "T2": c(1, E2=1, E2_=1, E=1),
        "T3": c(1, E3=1, E=1),
        "T4": c(1, E=1),
        "N1": config.strict_exceptional("E1"),
        "N2": config.strict_exceptional("E2"),
        "Cconic": c(2, E1=1, E1_=1, E2=1, E2_=1, E3=1),
        "C1": c(2, E1=1, E1_=1, E2=1, E2_=1),
        "C2": c(2, E1=1, E1_=1, E2=1, E2_=1),
        "Gamma": c(3, E1=1, E1_=1, E2=1, E2_=1, E3=2, E=1),
        "E1'": config.strict_exceptional("E1'"),
        "E2'": config.strict_exceptional("E2'"),
        "E3": config.strict_exceptional("E3"),
        "E": config.strict_exceptional("E"),
        "quintic": c(5, E1=2, E1_=2, E2=2, E2_=2, E3=3, E=1),
    }


@dataclass
class QuinticCheck:
    dim: int
    conic: PlaneForm
    quotients: list[PlaneForm | None]

    @property
    def all_divisible(self) -> bool:
        return bool(self.quotients) and all(q is not None for q in self.quotients)


def quintic_splits_off_conic(config: BlowupConfiguration | None = None) -> QuinticCheck:
    """Every member of the quintic system contains the conic through the five points."""
    config = config or quintic_configuration()
    named = quintic_classes(config)
    conic_basis = class_basis(named["Cconic"], config)
    if len(conic_basis) != 1:
        raise ValueError("preset construction failure: conic not unique")
    conic = conic_basis[0]
    basis = class_basis(named["quintic"], config)
    return QuinticCheck(len(basis), conic, [f.divide(conic) for f in basis])


def minus_curves(config: BlowupConfiguration) -> tuple[list[NamedCurve], list[NamedCurve]]:
    """Certified (-2)- and (-1)-curves of a six-point blowup."""
    minus2 = certify_negative_curves(config, -2, 0).curves
    minus1 = certify_negative_curves(config, -1, -1, known=minus2).curves
    return minus2, minus1


def pullback_branch_data(config: BlowupConfiguration) -> list[DivisorClass]:
    """Total transforms of the three plane branch curves, written as printed."""
    n = quintic_classes(config)
    e = lambda lab: config.exceptional(lab)  # noqa: E731
    d1 = n["Cconic"] + n["Gamma"] + 2 * (e("E1") + e("E1'") + e("E2") + e("E2'")) + 3 * e("E3") + e("E")
    d2 = (
        n["T1"] + n["C1"] + n["C2"] + n["N1"] + 2 * e("E1'") + e("E")
        + 2 * (e("E1") + e("E1'") + e("E2") + e("E2'"))
    )
    d3 = n["T2"] + n["T3"] + n["T4"] + n["N2"] + 2 * e("E2'") + e("E3") + 3 * e("E")
    return [d1, d2, d3]


def normalize_branch_data(
    config: BlowupConfiguration,
    pulled_back: list[list[tuple[str, DivisorClass]]],
    totals: list[DivisorClass],
) -> list[list[str]]:
    """Normalized branch divisors of a bidouble cover after blowing up.

    ``pulled_back[i]`` lists the non-exceptional components of the i-th
    pulled-back branch curve (each with multiplicity one); ``totals[i]`` is
    its full total transform.  Each exceptional curve goes by the parities
    of its multiplicities ``(m1, m2, m3)``: one odd entry keeps it in that
    divisor, two odd entries move it to the third one, otherwise it drops.
    """
    out = [[name for name, _ in comps] for comps in pulled_back]
    residues = []
    for comps, total in zip(pulled_back, totals):
        rest = total
        for _, d in comps:
            rest = rest - d
        if rest.degree != 0:
            raise ValueError("components do not account for the total transform")
        residues.append(exceptional_coefficients(rest, config))
    for j, lab in enumerate(config.labels):
        odd = [i for i in range(3) if residues[i][j] % 2]
        if len(odd) == 1:
            out[odd[0]].append(f"S{lab}")
        elif len(odd) == 2:
            out[3 - sum(odd)].append(f"S{lab}")
    return out


def four_line_configuration() -> BlowupConfiguration:
    a, b, c, d = (ONE, ZERO, ZERO), (ZERO, ONE, ZERO), (ZERO, ZERO, ONE), (ONE, ONE, ONE)

    def meet(u, v):
        return normalize_point(line_through(u, v))  # line coefficients are dual points

    points = [meet(a, c), meet(a, d), meet(b, d), meet(b, c), meet(a, b), meet(c, d)]
    return BlowupConfiguration(
        "four-lines", tuple(Proper(pt, f"e{i + 1}") for i, pt in enumerate(points))
    )


def four_line_l2(config: BlowupConfiguration) -> DivisorClass:
    return config.make(6, (2, 2, 2, 2, 3, 3))


def four_line_catalog(config: BlowupConfiguration) -> CurveCatalog:
    minus2, minus1 = minus_curves(config)
    return CurveCatalog(config.name, minus2 + minus1).sorted()


def anticanonical(config: BlowupConfiguration) -> DivisorClass:
    return -canonical_class(config)


def disjoint(classes: list[DivisorClass]) -> bool:
    return all(
        intersect(classes[i], classes[j]) == 0
        for i in range(len(classes))
        for j in range(i + 1, len(classes))
    )
