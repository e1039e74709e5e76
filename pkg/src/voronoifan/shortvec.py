"""Minimal vectors and short vectors of positive definite forms."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import floor, lcm

from . import kernels
from .exactcore import IntVector, QuadForm, require_positive_definite


@dataclass(frozen=True)
class MinVecSet:
    minimum: Fraction
    reps: tuple[IntVector, ...]

    @property
    def kissing(self) -> int:
        return 2 * len(self.reps)

    @property
    def p(self) -> int:
        """Half the kissing number."""
        return len(self.reps)


def _integral(q: QuadForm) -> tuple[list[list[int]], int]:
    den = 1
    for row in q.gram:
        for v in row:
            den = lcm(den, v.denominator)
    return [[int(v * den) for v in row] for row in q.gram], den


def vectors_below(q: QuadForm, bound, *, backend: str | None = None) -> list[IntVector]:
    """One representative per +-pair of the nonzero x with q(x) <= bound,
    sorted, first nonzero coordinate positive."""
    require_positive_definite(q)
    bound = Fraction(bound)
    if bound <= 0:
        return []
    gram, den = _integral(q)
    vecs = kernels.short_vectors(gram, floor(bound * den), backend=backend)
    return [IntVector(v) for v in vecs]


def minimal_vectors(q: QuadForm, *, backend: str | None = None) -> MinVecSet:
    require_positive_definite(q)
    # the minimum is at most the smallest diagonal entry
    cands = vectors_below(q, min(q.gram[i][i] for i in range(q.g)), backend=backend)
    values = [(q(v), v) for v in cands]
    m = min(val for val, _ in values)
    return MinVecSet(m, tuple(v for val, v in values if val == m))
