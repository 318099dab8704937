"""Small exact polynomial helpers.

Univariate polynomials are coefficient lists, lowest degree first.  A binary
form of degree ``n`` in ``(lam, mu)`` is stored as its dehomogenization
``g(1, t)`` together with ``n``; the gap between ``n`` and the actual degree
is the multiplicity of the root at ``lam = 0``.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

Poly = list[Fraction]


def trim(p: Sequence[Fraction]) -> Poly:
    p = [Fraction(x) for x in p]
    while p and p[-1] == 0:
        p.pop()
    return p


def degree(p: Sequence[Fraction]) -> int:
    return len(trim(p)) - 1


def derivative(p: Sequence[Fraction]) -> Poly:
    return trim([k * p[k] for k in range(1, len(p))])


def divmod_poly(a: Sequence[Fraction], b: Sequence[Fraction]) -> tuple[Poly, Poly]:
    a, b = trim(a), trim(b)
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    q = [Fraction(0)] * max(len(a) - len(b) + 1, 0)
    r = list(a)
    lead = b[-1]
    while len(r) >= len(b) and r:
        shift = len(r) - len(b)
        f = r[-1] / lead
        q[shift] = f
        for i, c in enumerate(b):
            r[shift + i] -= f * c
        r = trim(r)
    return trim(q), r


def gcd(a: Sequence[Fraction], b: Sequence[Fraction]) -> Poly:
    """Monic gcd; the zero polynomial if both inputs vanish."""
    a, b = trim(a), trim(b)
    while b:
        a, b = b, divmod_poly(a, b)[1]
    if not a:
        return a
    return [c / a[-1] for c in a]


def evaluate(p: Sequence[Fraction], x: Fraction) -> Fraction:
    acc = Fraction(0)
    for c in reversed(p):
        acc = acc * x + c
    return acc


@dataclass(frozen=True)
class BinaryForm:
    coeffs: tuple[Fraction, ...]  # g(1, t), lowest first
    n: int

    @classmethod
    def make(cls, coeffs: Sequence[Fraction], n: int) -> "BinaryForm":
        c = tuple(trim(coeffs))
        if len(c) - 1 > n:
            raise ValueError("binary form coefficients exceed its degree")
        return cls(c, n)

    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def infinity_order(self) -> int:
        return self.n - (len(self.coeffs) - 1)

    def order_at_zero(self) -> int:
        """Multiplicity of the root ``t = 0`` (i.e. ``mu = 0``)."""
        return next(i for i, c in enumerate(self.coeffs) if c != 0)

    def drop_zero_root(self, m: int) -> "BinaryForm":
        """Divide by ``mu**m``; the root must be there."""
        if any(self.coeffs[:m]):
            raise ValueError("form does not vanish to the required order")
        return BinaryForm(self.coeffs[m:], self.n - m)

    def vanishes_at(self, lam: Fraction, mu: Fraction) -> bool:
        if lam == 0:
            return self.infinity_order > 0
        return evaluate(list(self.coeffs), Fraction(mu) / lam) == 0

    def is_squarefree(self) -> bool:
        if self.is_zero():
            return False
        if self.infinity_order > 1:
            return False
        p = list(self.coeffs)
        return degree(gcd(p, derivative(p))) <= 0

    def coprime_to(self, other: "BinaryForm") -> bool:
        if self.is_zero() or other.is_zero():
            return False
        if self.infinity_order > 0 and other.infinity_order > 0:
            return False
        return degree(gcd(list(self.coeffs), list(other.coeffs))) <= 0

    def __mul__(self, other: "BinaryForm") -> "BinaryForm":
        a, b = self.coeffs, other.coeffs
        out = [Fraction(0)] * (len(a) + len(b) - 1) if a and b else []
        for i, x in enumerate(a):
            for j, y in enumerate(b):
                out[i + j] += x * y
        return BinaryForm.make(out, self.n + other.n)
