"""Exact two-phase simplex (Bland's rule) over the rationals.

Problems are small and dense (membership tests, facet certificates), so a
plain tableau with ``Fraction`` entries is enough.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence


class MalformedProgram(ValueError):
    pass


@dataclass(frozen=True)
class LinearProgram:
    """minimize c.x  s.t.  A_eq x = b_eq,  A_ub x <= b_ub,  x_j >= 0 unless free[j]."""

    c: tuple[Fraction, ...]
    a_eq: tuple[tuple[Fraction, ...], ...] = ()
    b_eq: tuple[Fraction, ...] = ()
    a_ub: tuple[tuple[Fraction, ...], ...] = ()
    b_ub: tuple[Fraction, ...] = ()
    free: tuple[bool, ...] = ()

    def __init__(self, c, a_eq=(), b_eq=(), a_ub=(), b_ub=(), free=()):
        conv = lambda rows: tuple(tuple(Fraction(v) for v in r) for r in rows)  # noqa: E731
        c = tuple(Fraction(v) for v in c)
        n = len(c)
        a_eq, a_ub = conv(a_eq), conv(a_ub)
        b_eq, b_ub = tuple(map(Fraction, b_eq)), tuple(map(Fraction, b_ub))
        free = tuple(bool(f) for f in free) or (False,) * n
        if len(free) != n or len(a_eq) != len(b_eq) or len(a_ub) != len(b_ub):
            raise MalformedProgram("inconsistent dimensions")
        if any(len(r) != n for r in a_eq + a_ub):
            raise MalformedProgram("constraint row length differs from objective length")
        for name, val in zip(("c", "a_eq", "b_eq", "a_ub", "b_ub", "free"),
                             (c, a_eq, b_eq, a_ub, b_ub, free)):
            object.__setattr__(self, name, val)

    @property
    def n(self) -> int:
        return len(self.c)


@dataclass(frozen=True)
class LPResult:
    status: str  # "optimal" | "infeasible" | "unbounded"
    point: tuple[Fraction, ...] | None = None
    value: Fraction | None = None
    certificate: tuple[Fraction, ...] | None = field(default=None)
    ray: tuple[Fraction, ...] | None = None


def _standard_form(p: LinearProgram):
    """Columns: x (or x+ / x- for free vars), then one slack per <= row."""
    cols = []  # (original index, sign)
    for j in range(p.n):
        cols.append((j, 1))
        if p.free[j]:
            cols.append((j, -1))
    nslack = len(p.a_ub)
    rows, rhs = [], []
    for r, b in zip(p.a_eq, p.b_eq):
        rows.append([r[j] * s for j, s in cols] + [Fraction(0)] * nslack)
        rhs.append(b)
    for k, (r, b) in enumerate(zip(p.a_ub, p.b_ub)):
        rows.append([r[j] * s for j, s in cols] + [Fraction(int(k == t)) for t in range(nslack)])
        rhs.append(b)
    cost = [p.c[j] * s for j, s in cols] + [Fraction(0)] * nslack
    return cols, rows, rhs, cost


class _Tableau:
    def __init__(self, rows, rhs, basis):
        self.t = [list(r) + [b] for r, b in zip(rows, rhs)]
        self.basis = list(basis)

    def pivot(self, i, j):
        t = self.t
        inv = 1 / t[i][j]
        t[i] = [v * inv for v in t[i]]
        for k in range(len(t)):
            if k != i and t[k][j] != 0:
                f = t[k][j]
                t[k] = [a - f * b for a, b in zip(t[k], t[i])]
        self.basis[i] = j

    def reduced_costs(self, cost):
        ncol = len(cost)
        red = list(cost)
        for i, bj in enumerate(self.basis):
            cb = cost[bj]
            if cb:
                row = self.t[i]
                for j in range(ncol):
                    red[j] -= cb * row[j]
        return red

    def run(self, cost, allowed):
        """Bland's rule simplex; returns None at optimum or the entering column if unbounded."""
        while True:
            red = self.reduced_costs(cost)
            enter = next((j for j in allowed if red[j] < 0), None)
            if enter is None:
                return None
            best = None
            for i, row in enumerate(self.t):
                if row[enter] > 0:
                    ratio = row[-1] / row[enter]
                    key = (ratio, self.basis[i])
                    if best is None or key < best[0]:
                        best = (key, i)
            if best is None:
                return enter
            self.pivot(best[1], enter)


def lp_solve(p: LinearProgram) -> LPResult:
    cols, rows, rhs, cost = _standard_form(p)
    m, n = len(rows), len(cost)
    flip = [b < 0 for b in rhs]
    rows = [[-v for v in r] if f else list(r) for r, f in zip(rows, flip)]
    rhs = [-b if f else b for b, f in zip(rhs, flip)]

    # phase 1 with one artificial per row
    art_rows = [r + [Fraction(int(i == k)) for k in range(m)] for i, r in enumerate(rows)]
    tab = _Tableau(art_rows, rhs, range(n, n + m))
    phase1_cost = [Fraction(0)] * n + [Fraction(1)] * m
    tab.run(phase1_cost, range(n + m))
    infeas = sum((tab.t[i][-1] for i, bj in enumerate(tab.basis) if bj >= n), Fraction(0))
    if infeas > 0:
        red = tab.reduced_costs(phase1_cost)
        pi = [1 - red[n + k] for k in range(m)]
        y = [(p_i if f else -p_i) for p_i, f in zip(pi, flip)]
        return LPResult("infeasible", certificate=tuple(y))

    # drive remaining artificials out of the basis, dropping redundant rows
    i = 0
    while i < len(tab.t):
        if tab.basis[i] >= n:
            j = next((j for j in range(n) if tab.t[i][j] != 0), None)
            if j is None:
                del tab.t[i]
                del tab.basis[i]
                continue
            tab.pivot(i, j)
        i += 1
    tab.t = [row[:n] + [row[-1]] for row in tab.t]

    enter = tab.run(cost, range(n))
    if enter is not None:
        d = [Fraction(0)] * n
        d[enter] = Fraction(1)
        for i, bj in enumerate(tab.basis):
            d[bj] = -tab.t[i][enter]
        return LPResult("unbounded", ray=tuple(_to_original(p, cols, d)))
    x = [Fraction(0)] * n
    for i, bj in enumerate(tab.basis):
        x[bj] = tab.t[i][-1]
    point = _to_original(p, cols, x)
    value = sum((c * v for c, v in zip(p.c, point)), Fraction(0))
    return LPResult("optimal", point=tuple(point), value=value)


def _to_original(p, cols, x):
    out = [Fraction(0)] * p.n
    for (j, s), v in zip(cols, x):
        out[j] += s * v
    return out


def _dot(a: Sequence, b: Sequence) -> Fraction:
    return sum((Fraction(u) * v for u, v in zip(a, b)), Fraction(0))


def verify(p: LinearProgram, res: LPResult) -> bool:
    """Re-check a result by exact substitution."""
    if res.status == "optimal":
        x = res.point
        return (all(_dot(r, x) == b for r, b in zip(p.a_eq, p.b_eq))
                and all(_dot(r, x) <= b for r, b in zip(p.a_ub, p.b_ub))
                and all(f or v >= 0 for f, v in zip(p.free, x))
                and res.value == _dot(p.c, x))
    if res.status == "unbounded":
        d = res.ray
        return (all(_dot(r, d) == 0 for r in p.a_eq)
                and all(_dot(r, d) <= 0 for r in p.a_ub)
                and all(f or v >= 0 for f, v in zip(p.free, d))
                and _dot(p.c, d) < 0)
    # Farkas: y^T [A_eq; A_ub] >= 0 on sign-constrained vars, = 0 on free ones,
    # multipliers of <= rows nonnegative, and y^T b < 0.
    y = res.certificate
    rows = p.a_eq + p.a_ub
    ne = len(p.a_eq)
    if any(v < 0 for v in y[ne:]):
        return False
    for j in range(p.n):
        s = sum((y[i] * rows[i][j] for i in range(len(rows))), Fraction(0))
        if (p.free[j] and s != 0) or s < 0:
            return False
    return _dot(y, p.b_eq + p.b_ub) < 0
