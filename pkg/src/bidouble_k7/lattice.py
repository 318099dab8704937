"""Divisor classes on blowups of the projective plane.

A class is stored in the total-transform basis ``L, E_1, ..., E_n`` as

    D = degree * L - sum(mults[i] * E_i)

so the intersection form is diagonal, ``diag(1, -1, ..., -1)``.  Blowup
centres are either proper points of the plane or points infinitely near an
earlier centre, given by a line through the parent (the tangent direction).
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence, Union

Point = tuple[Fraction, Fraction, Fraction]


class IncompatibleLattice(ValueError):
    """Raised when classes from different configurations are combined."""

    def __init__(self, a: str, b: str):
        super().__init__(f"incompatible lattice: {a!r} vs {b!r}")


def parse_rational(text: str | int | Fraction) -> Fraction:
    """Parse ``"n"`` or ``"n/d"`` exactly.  Floats are refused."""
    if isinstance(text, bool) or isinstance(text, float):
        raise ValueError(f"malformed rational: {text!r}")
    if isinstance(text, (int, Fraction)):
        return Fraction(text)
    s = str(text).strip()
    try:
        num, _, den = s.partition("/")
        if not den:
            return Fraction(int(num))
        d = int(den)
        if d == 0:
            raise ZeroDivisionError
        return Fraction(int(num), d)
    except (ValueError, ZeroDivisionError):
        raise ValueError(f"malformed rational: {text!r}") from None


def format_rational(x: Fraction | int) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def normalize_point(coords: Sequence[Fraction | int | str]) -> Point:
    """Scale homogeneous coordinates so the first nonzero entry is 1."""
    v = [parse_rational(c) for c in coords]
    if len(v) != 3:
        raise ValueError("a plane point needs three homogeneous coordinates")
    lead = next((x for x in v if x != 0), None)
    if lead is None:
        raise ValueError("the zero vector is not a point")
    return tuple(x / lead for x in v)  # type: ignore[return-value]


def cross(a: Sequence[Fraction], b: Sequence[Fraction]) -> Point:
    return (
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    )


def line_through(a: Sequence[Fraction], b: Sequence[Fraction]) -> Point:
    """Coefficients of the line joining two distinct points."""
    return normalize_point(cross(a, b))


def dot(a: Sequence[Fraction], b: Sequence[Fraction]) -> Fraction:
    return sum((x * y for x, y in zip(a, b)), Fraction(0))


@dataclass(frozen=True)
class Proper:
    point: Point
    label: str = ""

    def __post_init__(self):
        object.__setattr__(self, "point", normalize_point(self.point))


@dataclass(frozen=True)
class InfinitelyNear:
    """A point on the exceptional curve over ``parent``.

    ``direction`` holds the coefficients of a line through the parent point;
    the new centre is the tangent direction of that line.
    """

    parent: int
    direction: Point
    label: str = ""

    def __post_init__(self):
        object.__setattr__(self, "direction", normalize_point(self.direction))


Center = Union[Proper, InfinitelyNear]


@dataclass(frozen=True)
class BlowupConfiguration:
    name: str
    centers: tuple[Center, ...] = field(default_factory=tuple)

    def __post_init__(self):
        object.__setattr__(self, "centers", tuple(self.centers))
        seen: set[Point] = set()
        for i, c in enumerate(self.centers):
            if isinstance(c, Proper):
                if c.point in seen:
                    raise ValueError(f"center {i} repeats a proper point")
                seen.add(c.point)
            else:
                if not 0 <= c.parent < i:
                    raise ValueError(f"center {i}: parent must precede it")
                parent = self.centers[c.parent]
                if not isinstance(parent, Proper):
                    raise ValueError(
                        f"center {i}: only one level of infinitely near points is supported"
                    )
                if dot(c.direction, parent.point) != 0:
                    raise ValueError(f"center {i}: direction line misses the parent point")
                if any(
                    isinstance(o, InfinitelyNear)
                    and o.parent == c.parent
                    and o.direction == c.direction
                    for o in self.centers[:i]
                ):
                    raise ValueError(f"center {i} repeats an infinitely near point")

    def __len__(self) -> int:
        return len(self.centers)

    @property
    def labels(self) -> list[str]:
        return [c.label or f"E{i}" for i, c in enumerate(self.centers)]

    def index(self, label: str) -> int:
        return self.labels.index(label)

    def children(self, i: int) -> list[int]:
        return [
            j
            for j, c in enumerate(self.centers)
            if isinstance(c, InfinitelyNear) and c.parent == i
        ]

    def parent_of(self, i: int) -> int | None:
        c = self.centers[i]
        return c.parent if isinstance(c, InfinitelyNear) else None

    # basis classes

    def zero(self) -> "DivisorClass":
        return DivisorClass(self.name, 0, (0,) * len(self))

    def line(self) -> "DivisorClass":
        return DivisorClass(self.name, 1, (0,) * len(self))

    def exceptional(self, i: int | str) -> "DivisorClass":
        """Total transform of centre ``i`` (index or label)."""
        if isinstance(i, str):
            i = self.index(i)
        m = [0] * len(self)
        m[i] = -1
        return DivisorClass(self.name, 0, tuple(m))

    def strict_exceptional(self, i: int | str) -> "DivisorClass":
        """Strict transform of the exceptional curve over centre ``i``."""
        if isinstance(i, str):
            i = self.index(i)
        d = self.exceptional(i)
        for j in self.children(i):
            d = d - self.exceptional(j)
        return d

    def make(self, degree: int, mults: Sequence[int]) -> "DivisorClass":
        return DivisorClass(self.name, degree, tuple(mults))

    def basis(self) -> list["DivisorClass"]:
        return [self.line()] + [self.exceptional(i) for i in range(len(self))]

    def gram_matrix(self) -> list[list[int]]:
        b = self.basis()
        return [[intersect(x, y) for y in b] for x in b]

    # serialization

    def to_dict(self) -> dict:
        centers = []
        for c in self.centers:
            if isinstance(c, Proper):
                d = {"type": "proper", "coords": [format_rational(x) for x in c.point]}
            else:
                d = {
                    "type": "near",
                    "parent": c.parent,
                    "line": [format_rational(x) for x in c.direction],
                }
            if c.label:
                d["label"] = c.label
            centers.append(d)
        return {"name": self.name, "centers": centers}

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True)

    @classmethod
    def from_dict(cls, data: dict) -> "BlowupConfiguration":
        centers: list[Center] = []
        for i, c in enumerate(data["centers"]):
            kind = c.get("type")
            label = c.get("label", "")
            if kind == "proper":
                centers.append(Proper(normalize_point(c["coords"]), label))
            elif kind == "near":
                centers.append(InfinitelyNear(int(c["parent"]), normalize_point(c["line"]), label))
            else:
                raise ValueError(f"center {i}: unknown type {kind!r}")
        return cls(str(data["name"]), tuple(centers))

    @classmethod
    def from_json(cls, text: str) -> "BlowupConfiguration":
        return cls.from_dict(json.loads(text))


@dataclass(frozen=True)
class DivisorClass:
    config_id: str
    degree: int
    mults: tuple[int, ...]

    def _check(self, other: "DivisorClass") -> None:
        if self.config_id != other.config_id or len(self.mults) != len(other.mults):
            raise IncompatibleLattice(self.config_id, other.config_id)

    def __add__(self, other: "DivisorClass") -> "DivisorClass":
        self._check(other)
        return DivisorClass(
            self.config_id,
            self.degree + other.degree,
            tuple(a + b for a, b in zip(self.mults, other.mults)),
        )

    def __sub__(self, other: "DivisorClass") -> "DivisorClass":
        return self + (-other)

    def __neg__(self) -> "DivisorClass":
        return DivisorClass(self.config_id, -self.degree, tuple(-a for a in self.mults))

    def __mul__(self, k: int) -> "DivisorClass":
        if not isinstance(k, int):
            return NotImplemented
        return DivisorClass(self.config_id, k * self.degree, tuple(k * a for a in self.mults))

    __rmul__ = __mul__

    def dot(self, other: "DivisorClass") -> int:
        return intersect(self, other)

    def is_zero(self) -> bool:
        return self.degree == 0 and not any(self.mults)

    def halve(self) -> "DivisorClass":
        """Exact half of a 2-divisible class."""
        if self.degree % 2 or any(a % 2 for a in self.mults):
            raise ValueError(f"class {self.spec()} is not divisible by 2")
        return DivisorClass(self.config_id, self.degree // 2, tuple(a // 2 for a in self.mults))

    def spec(self) -> str:
        """Class-spec text ``"degree;m0,m1,..."``."""
        return f"{self.degree};" + ",".join(str(a) for a in self.mults)

    def sort_key(self) -> tuple:
        return (self.degree, self.mults)

    def __str__(self) -> str:
        return self.spec()


def parse_class_spec(text: str, config: BlowupConfiguration) -> DivisorClass:
    """Parse ``"x;a0,a1,..."`` into ``x L - sum a_i E_i``."""
    try:
        deg_text, _, mults_text = text.partition(";")
        degree = int(deg_text.strip())
        mults = tuple(int(t) for t in mults_text.split(",")) if mults_text.strip() else ()
    except ValueError:
        raise ValueError(f"malformed class spec: {text!r}") from None
    if len(mults) != len(config):
        raise ValueError(
            f"class spec {text!r} has {len(mults)} multiplicities, "
            f"configuration {config.name!r} has {len(config)} centers"
        )
    return DivisorClass(config.name, degree, mults)


def intersect(a: DivisorClass, b: DivisorClass) -> int:
    a._check(b)
    return a.degree * b.degree - sum(x * y for x, y in zip(a.mults, b.mults))


def canonical_class(config: BlowupConfiguration) -> DivisorClass:
    return DivisorClass(config.name, -3, (-1,) * len(config))


def adjunction_genus(c: DivisorClass) -> Fraction:
    k = canonical_class_like(c)
    return 1 + Fraction(intersect(c, c) + intersect(k, c), 2)


def canonical_class_like(c: DivisorClass) -> DivisorClass:
    return DivisorClass(c.config_id, -3, (-1,) * len(c.mults))


def class_combination(terms: Iterable[tuple[int, DivisorClass]]) -> DivisorClass:
    terms = list(terms)
    if not terms:
        raise ValueError("empty combination has no lattice")
    total = terms[0][1] * 0
    for k, d in terms:
        total = total + d * k
    return total
