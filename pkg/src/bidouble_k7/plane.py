"""Plane curves through fat points, proper and infinitely near.

Forms of degree ``d`` in ``x1, x2, x3`` are coefficient vectors indexed by
the monomials ``x1^a x2^b x3^c`` (``a + b + c = d``) in descending
lexicographic order of ``(a, b, c)``::

    d = 2:  x1^2, x1 x2, x1 x3, x2^2, x2 x3, x3^2

A multiplicity condition at a proper centre becomes the vanishing of the
Taylor coefficients of order below the multiplicity in a local frame.  A
condition at an infinitely near centre substitutes the blowup chart
``(s, r) = (s, s t)``, where the prescribed direction is ``t = 0``, divides
by ``s`` to the parent multiplicity and asks for vanishing at ``s = t = 0``.
Every condition is linear in the coefficients and exact.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

from . import linalg
from .lattice import (
    BlowupConfiguration,
    DivisorClass,
    InfinitelyNear,
    Point,
    Proper,
    format_rational,
    parse_rational,
)
from .polys import BinaryForm

Frame = tuple[Point, Point, Point]


class InvalidScheme(ValueError):
    def __init__(self, detail: str):
        super().__init__(f"invalid multiplicity scheme: {detail}")


class NotUnique(ValueError):
    def __init__(self, dim: int):
        super().__init__(f"not unique: linear system has dimension {dim}")
        self.dim = dim


@lru_cache(maxsize=None)
def monomials(degree: int) -> tuple[tuple[int, int, int], ...]:
    out = []
    for a in range(degree, -1, -1):
        for b in range(degree - a, -1, -1):
            out.append((a, b, degree - a - b))
    return tuple(out)


def n_monomials(degree: int) -> int:
    return (degree + 1) * (degree + 2) // 2


_VARS = ("x1", "x2", "x3")


@dataclass(frozen=True)
class PlaneForm:
    degree: int
    coeffs: tuple[Fraction, ...]

    def __post_init__(self):
        if self.degree < 0:
            raise ValueError("negative degree")
        if len(self.coeffs) != n_monomials(self.degree):
            raise ValueError(
                f"degree {self.degree} form needs {n_monomials(self.degree)} coefficients"
            )
        object.__setattr__(self, "coeffs", tuple(Fraction(c) for c in self.coeffs))

    @classmethod
    def from_dict(cls, data: dict) -> "PlaneForm":
        return cls(int(data["degree"]), tuple(parse_rational(c) for c in data["coeffs"]))

    @classmethod
    def from_terms(cls, degree: int, terms: dict[tuple[int, int, int], Fraction | int]) -> "PlaneForm":
        idx = {m: i for i, m in enumerate(monomials(degree))}
        c = [Fraction(0)] * n_monomials(degree)
        for m, v in terms.items():
            c[idx[m]] += Fraction(v)
        return cls(degree, tuple(c))

    def to_dict(self) -> dict:
        return {"degree": self.degree, "coeffs": [format_rational(c) for c in self.coeffs]}

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def terms(self) -> dict[tuple[int, int, int], Fraction]:
        return {m: c for m, c in zip(monomials(self.degree), self.coeffs) if c != 0}

    def __call__(self, point: Sequence[Fraction]) -> Fraction:
        total = Fraction(0)
        for (a, b, c), k in self.terms().items():
            total += k * point[0] ** a * point[1] ** b * point[2] ** c
        return total

    def normalized(self) -> "PlaneForm":
        lead = next((c for c in self.coeffs if c != 0), None)
        if lead is None:
            return self
        return PlaneForm(self.degree, tuple(c / lead for c in self.coeffs))

    def __mul__(self, other: "PlaneForm") -> "PlaneForm":
        out: dict[tuple[int, int, int], Fraction] = {}
        for m1, c1 in self.terms().items():
            for m2, c2 in other.terms().items():
                key = (m1[0] + m2[0], m1[1] + m2[1], m1[2] + m2[2])
                out[key] = out.get(key, Fraction(0)) + c1 * c2
        return PlaneForm.from_terms(self.degree + other.degree, out)

    def __sub__(self, other: "PlaneForm") -> "PlaneForm":
        return PlaneForm(self.degree, tuple(a - b for a, b in zip(self.coeffs, other.coeffs)))

    def partial(self, k: int) -> "PlaneForm":
        """Derivative with respect to the variable ``x_{k+1}``."""
        if self.degree == 0:
            return PlaneForm(0, (Fraction(0),))
        out: dict[tuple[int, int, int], Fraction] = {}
        for m, c in self.terms().items():
            if m[k]:
                key = tuple(e - (i == k) for i, e in enumerate(m))
                out[key] = out.get(key, Fraction(0)) + c * m[k]  # type: ignore[index]
        return PlaneForm.from_terms(self.degree - 1, out)

    def divide(self, divisor: "PlaneForm") -> "PlaneForm | None":
        """Exact quotient, or None when ``divisor`` does not divide ``self``."""
        qdeg = self.degree - divisor.degree
        if qdeg < 0:
            return None
        basis = monomials(qdeg)
        cols = [divisor * PlaneForm.from_terms(qdeg, {m: 1}) for m in basis]
        matrix = [[col.coeffs[r] for col in cols] for r in range(n_monomials(self.degree))]
        sol = linalg.solve(matrix, self.coeffs)
        if sol is None:
            return None
        return PlaneForm(qdeg, tuple(sol))

    def expand(self, frame: Frame) -> dict[tuple[int, int], Fraction]:
        """Coefficients of ``f(P + s v1 + r v2)`` as ``{(i, j): c}`` for ``s^i r^j``."""
        out: dict[tuple[int, int], Fraction] = {}
        for m, k in self.terms().items():
            for key, v in _monomial_expansion(m, frame).items():
                out[key] = out.get(key, Fraction(0)) + k * v
        return {key: v for key, v in out.items() if v != 0}

    def restrict(self, a: Sequence[Fraction], b: Sequence[Fraction]) -> BinaryForm:
        """The binary form ``f(lam a + mu b)``."""
        zero = (Fraction(0),) * 3
        exp = self.expand((tuple(a), tuple(b), zero))
        c = [Fraction(0)] * (self.degree + 1)
        for (i, _), v in exp.items():
            c[i] += v
        return BinaryForm.make(c, self.degree)

    def __str__(self) -> str:
        parts = []
        for (a, b, c), k in self.terms().items():
            mono = "*".join(
                v if e == 1 else f"{v}^{e}" for v, e in zip(_VARS, (a, b, c)) if e
            )
            coef = format_rational(k)
            if not mono:
                parts.append(coef)
            elif k == 1:
                parts.append(mono)
            elif k == -1:
                parts.append("-" + mono)
            else:
                parts.append(f"{coef}*{mono}")
        return " + ".join(parts).replace("+ -", "- ") or "0"


def _binom_powers(p: Fraction, s: Fraction, r: Fraction, e: int) -> dict[tuple[int, int], Fraction]:
    out = {(0, 0): Fraction(1)}
    for _ in range(e):
        nxt: dict[tuple[int, int], Fraction] = {}
        for (i, j), v in out.items():
            for (di, dj), w in (((0, 0), p), ((1, 0), s), ((0, 1), r)):
                if w:
                    key = (i + di, j + dj)
                    nxt[key] = nxt.get(key, Fraction(0)) + v * w
        out = nxt
    return out


@lru_cache(maxsize=200_000)
def _monomial_expansion(m: tuple[int, int, int], frame: Frame) -> dict[tuple[int, int], Fraction]:
    p, v1, v2 = frame
    out = {(0, 0): Fraction(1)}
    for k in range(3):
        factor = _binom_powers(p[k], v1[k], v2[k], m[k])
        nxt: dict[tuple[int, int], Fraction] = {}
        for (i, j), a in out.items():
            for (di, dj), b in factor.items():
                key = (i + di, j + dj)
                nxt[key] = nxt.get(key, Fraction(0)) + a * b
        out = nxt
    return out


def _unit(k: int) -> Point:
    return tuple(Fraction(int(i == k)) for i in range(3))  # type: ignore[return-value]


def proper_frame(point: Point) -> Frame:
    """Local affine frame ``P + s e_i + r e_j`` at a proper point."""
    k = next(i for i, x in enumerate(point) if x != 0)
    i, j = [t for t in range(3) if t != k]
    return (point, _unit(i), _unit(j))


def direction_frame(point: Point, line: Point) -> Frame:
    """Frame at ``point`` whose first axis runs along ``line``."""
    k = next(i for i, x in enumerate(point) if x != 0)
    i, j = [t for t in range(3) if t != k]
    li, lj = line[i], line[j]
    v1 = tuple(lj * a - li * b for a, b in zip(_unit(i), _unit(j)))
    v2 = _unit(j) if lj != 0 else _unit(i)
    return (point, v1, v2)  # type: ignore[return-value]


def center_frame(config: BlowupConfiguration, index: int) -> Frame:
    """Frame used for the conditions at ``index``.

    For a parent with infinitely near children the first axis follows the
    first child's direction; the children are handled in their own frames.
    """
    c = config.centers[index]
    if isinstance(c, InfinitelyNear):
        parent = config.centers[c.parent]
        return direction_frame(parent.point, c.direction)  # type: ignore[union-attr]
    return proper_frame(c.point)


@dataclass(frozen=True)
class MultiplicityCondition:
    center: int
    mult: int


def conditions_from_class(d: DivisorClass) -> list[MultiplicityCondition]:
    if any(a < 0 for a in d.mults):
        raise InvalidScheme(f"negative multiplicity in {d.spec()}")
    return [MultiplicityCondition(i, a) for i, a in enumerate(d.mults) if a > 0]


def _scheme(conditions: Sequence[MultiplicityCondition], config: BlowupConfiguration) -> dict[int, int]:
    mult: dict[int, int] = {}
    for c in conditions:
        if not 0 <= c.center < len(config):
            raise InvalidScheme(f"center index {c.center} out of range")
        if c.mult < 0:
            raise InvalidScheme(f"negative multiplicity at center {c.center}")
        mult[c.center] = max(mult.get(c.center, 0), c.mult)
    for i, m in mult.items():
        parent = config.parent_of(i)
        if parent is None or m == 0:
            continue
        pm = mult.get(parent, 0)
        if pm == 0:
            raise InvalidScheme(f"center {i} is infinitely near center {parent} of multiplicity 0")
        if pm < m:
            raise InvalidScheme(f"proximity fails: {pm} at center {parent} < {m} at center {i}")
    return mult


def condition_matrix(
    degree: int,
    conditions: Sequence[MultiplicityCondition],
    config: BlowupConfiguration,
) -> list[list[Fraction]]:
    mult = _scheme(conditions, config)
    monos = monomials(degree)
    rows: list[list[Fraction]] = []
    for i in sorted(mult):
        m = mult[i]
        if m == 0:
            continue
        c = config.centers[i]
        if isinstance(c, Proper):
            frame = proper_frame(c.point)
            wanted = [(a, b) for a in range(m) for b in range(m - a)]
        else:
            frame = center_frame(config, i)
            pm = mult[c.parent]
            # s^K t^B comes from s^(K + pm - B) r^B
            wanted = [
                (k + pm - b, b) for k in range(m) for b in range(m - k) if k + pm - b >= 0
            ]
        exps = [_monomial_expansion(mono, frame) for mono in monos]
        for key in wanted:
            rows.append([e.get(key, Fraction(0)) for e in exps])
    return rows


def linear_system_dim(
    degree: int,
    conditions: Sequence[MultiplicityCondition],
    config: BlowupConfiguration,
) -> int:
    """Vector-space dimension of forms satisfying all conditions."""
    if degree < 0:
        return 0
    rows = condition_matrix(degree, conditions, config)
    n = n_monomials(degree)
    return n - (linalg.rank(rows, n) if rows else 0)


def system_basis(
    degree: int,
    conditions: Sequence[MultiplicityCondition],
    config: BlowupConfiguration,
) -> list[PlaneForm]:
    n = n_monomials(degree)
    rows = condition_matrix(degree, conditions, config)
    if not rows:
        return [PlaneForm.from_terms(degree, {m: 1}) for m in monomials(degree)]
    return [PlaneForm(degree, tuple(v)).normalized() for v in linalg.nullspace(rows, n)]


def find_unique_member(
    degree: int,
    conditions: Sequence[MultiplicityCondition],
    config: BlowupConfiguration,
) -> PlaneForm:
    basis = system_basis(degree, conditions, config)
    if len(basis) != 1:
        raise NotUnique(len(basis))
    return basis[0]


def satisfies(form: PlaneForm, conditions: Sequence[MultiplicityCondition], config: BlowupConfiguration) -> bool:
    rows = condition_matrix(form.degree, conditions, config)
    return all(sum(r * c for r, c in zip(row, form.coeffs)) == 0 for row in rows)


def class_dim(d: DivisorClass, config: BlowupConfiguration) -> int:
    return linear_system_dim(d.degree, conditions_from_class(d), config)


def class_basis(d: DivisorClass, config: BlowupConfiguration) -> list[PlaneForm]:
    """A basis of the plane forms cutting out members of the class ``d``."""
    if d.degree < 0:
        return []
    return system_basis(d.degree, conditions_from_class(d), config)


def tangent_cone(form: PlaneForm, frame: Frame, mult: int) -> BinaryForm:
    """Degree-``mult`` part of ``form`` at ``frame[0]`` as a binary form in ``(s, r)``.

    Roots of the cone are the points where the strict transform meets the
    exceptional curve, in the direction coordinate ``[s : r]``.
    """
    exp = form.expand(frame)
    if any(i + j < mult for (i, j) in exp):
        raise ValueError("form has lower multiplicity than claimed")
    c = [Fraction(0)] * (mult + 1)
    for (i, j), v in exp.items():
        if i + j == mult:
            # dehomogenize at s = 1, variable t = r / s
            c[j] += v
    return BinaryForm.make(c, mult)
