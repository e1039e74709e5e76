"""Tai's fractional-part sum over the units of Z/m and its two lower bounds."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from math import gcd

ZERO_AS_ONE = "zero-as-one"
ZERO_AS_ZERO = "zero-as-zero"
MAX_R = 16


def totient(m: int) -> int:
    return sum(1 for k in range(1, m + 1) if gcd(k, m) == 1)


@dataclass(frozen=True)
class TaiProblem:
    m: int
    convention: str = ZERO_AS_ONE

    def __post_init__(self):
        if self.m < 3:
            raise ValueError("m must be at least 3")
        if self.convention not in (ZERO_AS_ONE, ZERO_AS_ZERO):
            raise ValueError(f"unknown convention {self.convention!r}")

    @property
    def r(self) -> int:
        return totient(self.m) // 2

    @property
    def pairs(self) -> list[tuple[int, int]]:
        """The sets {u, m - u} partitioning the units, smaller element first."""
        return [(u, self.m - u) for u in range(1, (self.m + 1) // 2) if gcd(u, self.m) == 1]

    def frac(self, s: int) -> Fraction:
        v = Fraction(s % self.m, self.m)
        if v == 0 and self.convention == ZERO_AS_ONE:
            return Fraction(1)
        return v

    def evaluate(self, ts) -> Fraction:
        """Sum over i <= j of {(t_i + t_j) / m}."""
        ts = list(ts)
        return sum((self.frac(ts[i] + ts[j]) for i in range(len(ts)) for j in range(i, len(ts))),
                   Fraction(0))


def _choices(p: TaiProblem, reverse: bool = False):
    pairs = p.pairs
    if len(pairs) > MAX_R:
        raise ValueError(f"r={len(pairs)} exceeds the enumeration guard {MAX_R}")
    signs = list(product((0, 1), repeat=len(pairs)))
    if reverse:
        signs.reverse()
    for s in signs:
        yield sorted(pair[k] for pair, k in zip(pairs, s))


def min_fractional_sum(p: TaiProblem | int, *, reverse: bool = False) -> tuple[Fraction, list[int]]:
    """Exact minimum over all 2^r choices of one representative per pair, and
    the lexicographically least minimizer (sorted)."""
    if isinstance(p, int):
        p = TaiProblem(p)
    best = None
    for ts in _choices(p, reverse):
        key = (p.evaluate(ts), ts)
        if best is None or key < best:
            best = key
    return best


def _r(m: int) -> int:
    if m < 3:
        raise ValueError("m must be at least 3")
    return totient(m) // 2


def bound_original(m: int) -> Fraction:
    r = _r(m)
    return Fraction(r * (r + 1) ** 2, 4 * m)


def bound_refined(m: int) -> Fraction:
    r = _r(m)
    return (Fraction(r ** 3) + Fraction(3, 2) * r ** 2 + Fraction(r, 2)) / (4 * m)


@dataclass(frozen=True)
class ScanRow:
    m: int
    bound: Fraction
    minimum: Fraction
    minimizer: tuple[int, ...]

    @property
    def relation(self) -> str:
        """How the exact minimum compares with 1: '<', '=', '>'."""
        return "=" if self.minimum == 1 else (">" if self.minimum > 1 else "<")


def exceptional_scan(m_max: int, convention: str = ZERO_AS_ONE) -> list[ScanRow]:
    """Every 3 <= m <= m_max whose refined bound is below 1, with the true minimum."""
    if m_max < 3:
        raise ValueError("m_max must be at least 3")
    rows = []
    for m in range(3, m_max + 1):
        b = bound_refined(m)
        if b < 1:
            val, ts = min_fractional_sum(TaiProblem(m, convention))
            rows.append(ScanRow(m, b, val, tuple(ts)))
    return rows
