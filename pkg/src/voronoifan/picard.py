"""Divisor classes aM - bD on the perfect cone compactification.

The Picard group (tensor Q) is spanned by M and D, and the cone of curves by
C1 and C2, with M.C1 = 1/12, D.C1 = 1, M.C2 = 0 and D.C2 < 0. At level n the
boundary pulls back as pi^* D = n D^(n), so aM - bD^(n) is handled through
its level-one image aM - (b/n)D.

Ampleness is a > (12/n) b > 0, consistent with the nef threshold a >= 12
for aM - D.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import isqrt

M_DOT_C1 = Fraction(1, 12)
D_DOT_C1 = Fraction(1)
M_DOT_C2 = Fraction(0)

POSITIVE, ZERO, NEGATIVE = "positive", "zero", "negative"


class LevelError(ValueError):
    pass


@dataclass(frozen=True)
class DivisorClass:
    """aM - bD (n = 1) or aM - bD^(n) (n >= 2) on genus-g moduli."""

    a: Fraction
    b: Fraction
    g: int = 2
    n: int = 1

    def __init__(self, a, b, g: int = 2, n: int = 1):
        if g < 2 or n < 1:
            raise ValueError("need g >= 2 and n >= 1")
        object.__setattr__(self, "a", Fraction(a))
        object.__setattr__(self, "b", Fraction(b))
        object.__setattr__(self, "g", int(g))
        object.__setattr__(self, "n", int(n))

    def scaled(self, c) -> "DivisorClass":
        return DivisorClass(self.a * c, self.b * c, self.g, self.n)


def pullback_level(d: DivisorClass) -> DivisorClass:
    """Rewrite aM - bD^(n) as the level-one class aM - (b/n)D (rationally)."""
    return DivisorClass(d.a, d.b / d.n, d.g, 1)


def intersect_C1(d: DivisorClass) -> Fraction:
    if d.n != 1:
        raise LevelError("convert level-n classes with pullback_level first")
    return d.a * M_DOT_C1 - d.b * D_DOT_C1


def intersect_C2_sign(d: DivisorClass) -> str:
    """Sign of (aM - bD).C2 = -b (D.C2); only the sign of D.C2 is known."""
    if d.b > 0:
        return POSITIVE
    if d.b == 0:
        return ZERO
    return NEGATIVE


def _threshold(d: DivisorClass) -> Fraction:
    return Fraction(12, d.n)


def is_nef(d: DivisorClass) -> bool:
    return d.b >= 0 and d.a >= _threshold(d) * d.b


def is_ample(d: DivisorClass) -> bool:
    return d.b > 0 and d.a > _threshold(d) * d.b


def canonical_class(g: int, n: int = 1) -> DivisorClass:
    """K = (g+1)M - D^(n) (level n), i.e. pi^*((g+1)M - D/n)."""
    return DivisorClass(g + 1, 1, g, n)


def slope(d: DivisorClass) -> Fraction:
    if d.b <= 0:
        raise ValueError("slope is undefined for b <= 0")
    return d.a / d.b


def finitely_generated(a) -> bool:
    """Slope threshold for finite generation over Z."""
    return Fraction(a) > 12


def product_coefficients(p: int, s) -> tuple[int, Fraction, Fraction]:
    """Smallest n with n^2 > p s, then b = s / n^2 and c = 1 - p b."""
    s = Fraction(s)
    if p < 1 or s <= 0:
        raise ValueError("need p >= 1 and s > 0")
    ps = p * s
    n = max(1, isqrt(ps.numerator // ps.denominator))
    while n * n <= ps:
        n += 1
    while n > 1 and (n - 1) ** 2 > ps:
        n -= 1
    b = s / (n * n)
    return n, b, 1 - p * b
