"""Pure-Python kernels. Exact throughout; used when the compiled core is
missing or disabled, and as the reference the compiled core is tested against.
"""
from __future__ import annotations

from fractions import Fraction
from itertools import product
from math import isqrt

BACKEND = "python"


def _ldl(gram):
    """q(x) = sum_i d[i] * (x_i + sum_{j>i} mu[i][j] x_j)^2."""
    n = len(gram)
    a = [[Fraction(v) for v in row] for row in gram]
    d = [Fraction(0)] * n
    mu = [[Fraction(0)] * n for _ in range(n)]
    for i in range(n):
        d[i] = a[i][i]
        if d[i] <= 0:
            raise ValueError("form is not positive definite")
        for j in range(i + 1, n):
            mu[i][j] = a[i][j] / d[i]
        for j in range(i + 1, n):
            for k in range(i + 1, n):
                a[j][k] -= mu[i][j] * a[i][k]
    return d, mu


def _floor_sqrt(r: Fraction) -> int:
    """floor(sqrt(r)) for r >= 0, exactly."""
    return isqrt(r.numerator * r.denominator) // r.denominator if r > 0 else 0


def _interval(c: Fraction, r2: Fraction) -> tuple[int, int]:
    """Integers k with (k + c)^2 <= r2."""
    s = _floor_sqrt(r2)
    lo = int(-c - s) - 2
    while (lo + c) ** 2 > r2 and lo + c < 0:
        lo += 1
    hi = int(-c + s) + 2
    while (hi + c) ** 2 > r2 and hi + c > 0:
        hi -= 1
    return lo, hi


def short_vectors(gram, bound) -> list[tuple[int, ...]]:
    """All nonzero x (one per +-pair, first nonzero coordinate positive) with
    x^T G x <= bound; G integral positive definite."""
    n = len(gram)
    bound = Fraction(bound)
    if bound <= 0:
        return []
    d, mu = _ldl(gram)
    x = [0] * n
    out = []

    def rec(i, remaining, all_zero_above):
        c = sum((mu[i][j] * x[j] for j in range(i + 1, n)), Fraction(0))
        lo, hi = _interval(c, remaining / d[i])
        if all_zero_above:
            lo = max(lo, 0)
        for k in range(lo, hi + 1):
            rest = remaining - d[i] * (k + c) ** 2
            if rest < 0:
                continue
            x[i] = k
            if i == 0:
                if not (all_zero_above and k == 0):
                    out.append(tuple(x))
            else:
                rec(i - 1, rest, all_zero_above and k == 0)
        x[i] = 0

    rec(n - 1, bound, True)
    res = []
    for v in out:
        first = next(c for c in v if c)
        res.append(v if first > 0 else tuple(-c for c in v))
    res.sort()
    return res


def box_scan(lo, hi, height, level, ineqs, eqs) -> list[tuple[int, ...]]:
    """Integer points x in the box with height.x <= level, F x >= 0, E x = 0, x != 0."""
    out = []
    for x in product(*(range(a, b + 1) for a, b in zip(lo, hi))):
        if not any(x):
            continue
        if sum(h * v for h, v in zip(height, x)) > level:
            continue
        if any(sum(e * v for e, v in zip(row, x)) != 0 for row in eqs):
            continue
        if any(sum(f * v for f, v in zip(row, x)) < 0 for row in ineqs):
            continue
        out.append(x)
    return out


def adjacent_pairs(masks, pos, neg, need) -> list[tuple[int, int]]:
    """Pairs (p, n) whose common zero set (bitmask) has at least ``need`` rows
    and lies in no other ray's zero set."""
    out = []
    for p in pos:
        mp = masks[p]
        for n in neg:
            z = mp & masks[n]
            if z.bit_count() < need:
                continue
            if any(t != p and t != n and (m & z) == z for t, m in enumerate(masks)):
                continue
            out.append((p, n))
    return out
