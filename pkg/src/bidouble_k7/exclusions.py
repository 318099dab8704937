"""Arithmetic that rules out a hyperelliptic genus-3 fibration on the cover.

If the bicanonical map had degree 2, the surface would carry a fibration
``f`` with general fibre ``Phi`` of genus 3, ``K.Phi = 4``, and five double
fibres.  Given two curves (here the preimages of ``Gamma`` and ``E``) with
known invariants, every possible value of ``Phi.curve`` is closed off by one
of: the Hodge index theorem, parity from the double fibres, Riemann-Hurwitz
on the restricted map, or a Gram matrix whose rank exceeds ``b_2``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import floor

from . import linalg


@dataclass(frozen=True)
class CurveData:
    name: str
    self_int: int
    k_degree: int
    genus: int


@dataclass(frozen=True)
class FibrationData:
    k_degree: int = 4  # K.Phi
    double_fibers: int = 5


@dataclass
class Branch:
    """One value (or family of values) of ``Phi.C`` and why it is impossible."""

    curve: str
    value: int | None
    reason: str
    closed: bool
    witness: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            "curve": self.curve,
            "value": self.value,
            "reason": self.reason,
            "closed": self.closed,
            "witness": self.witness,
        }


def index_bound(k_sq: int, c: CurveData, fib: FibrationData) -> int:
    """Largest ``n = Phi.C`` allowed by ``K^2 (C + Phi)^2 <= (K.(C + Phi))^2``."""
    rhs = Fraction((c.k_degree + fib.k_degree) ** 2, k_sq)
    # (C + Phi)^2 = C^2 + 2n since Phi^2 = 0
    return floor((rhs - c.self_int) / 2)


def ramification_needed(n: int, fib: FibrationData) -> Fraction:
    """Lower bound for ``deg R`` of ``f|_C`` of degree ``n``.

    Over a double fibre every point of ``C`` has even multiplicity, so at
    least ``n/2`` ramification is concentrated there.
    """
    return Fraction(n, 2) * fib.double_fibers


def ramification_available(n: int, c: CurveData) -> int:
    """``deg R`` forced by Riemann-Hurwitz for a degree-``n`` map to a line."""
    return 2 * c.genus - 2 + 2 * n


def gram_matrix(
    k_sq: int, a: CurveData, b: CurveData, ab: int, phi_a: int, phi_b: int, fib: FibrationData
) -> list[list[int]]:
    """Intersection matrix of ``K, a, b, Phi``."""
    return [
        [k_sq, a.k_degree, b.k_degree, fib.k_degree],
        [a.k_degree, a.self_int, ab, phi_a],
        [b.k_degree, ab, b.self_int, phi_b],
        [fib.k_degree, phi_a, phi_b, 0],
    ]


def _single_curve_branches(
    k_sq: int, c: CurveData, fib: FibrationData
) -> tuple[list[Branch], list[int]]:
    """Close what parity and Riemann-Hurwitz can; return the survivors."""
    bound = index_bound(k_sq, c, fib)
    branches = [
        Branch(c.name, None, "index theorem", True, {"bound": bound})
    ]
    survivors = []
    for n in range(bound, 0, -1):
        if n % 2:
            branches.append(Branch(c.name, n, "odd degree on a fibration with double fibres", True))
            continue
        need, have = ramification_needed(n, fib), ramification_available(n, c)
        if need > have:
            branches.append(
                Branch(
                    c.name, n, "Riemann-Hurwitz", True,
                    {"needed": str(need), "available": have},
                )
            )
        else:
            survivors.append(n)
    survivors.append(0)
    return branches, survivors


def exclusion_branches(
    k_sq: int,
    chi: int,
    gamma: CurveData,
    e: CurveData,
    gamma_e: int,
    fib: FibrationData = FibrationData(),
) -> list[Branch]:
    """All branches of the case analysis; the fibration exists only if one stays open."""
    b2 = 12 * chi - k_sq - 2  # e(S) = 12 chi - K^2 and q = 0
    out, gamma_left = _single_curve_branches(k_sq, gamma, fib)
    e_branches, e_left = _single_curve_branches(k_sq, e, fib)
    out += e_branches
    nonzero_gamma = [n for n in gamma_left if n]
    if nonzero_gamma:
        out.append(Branch(gamma.name, nonzero_gamma[0], "no argument applies", False))
    for n in e_left:
        if n == 0:
            continue
        for g in [x for x in gamma_left if x == 0]:
            m = gram_matrix(k_sq, gamma, e, gamma_e, g, n, fib)
            det = linalg.determinant(m)
            out.append(
                Branch(
                    e.name, n, "Gram matrix rank exceeds b2", det != 0 and b2 < 4,
                    {"matrix": m, "determinant": str(det), "b2": b2},
                )
            )
    # both products vanish: a combination of the two curves would be numerically
    # a multiple of Phi; Zariski forces the coefficient r
    combo_sq = 4 * gamma.self_int + 4 * gamma_e + e.self_int
    r = Fraction(2 * gamma.k_degree + e.k_degree, fib.k_degree)
    out.append(
        Branch(
            f"2{gamma.name}+{e.name}", 0, "Zariski lemma coefficient",
            combo_sq == 0 and r == 2,
            {"self_int": combo_sq, "r": str(r)},
        )
    )
    return out
