"""Toric singularity certificates for cones of the perfect fan.

A cone whose generators all lie on an affine hyperplane z = 1 of a linear
functional z (here z = pair(q, .) / m(q) for the perfect form q) is
Q-Gorenstein; it is canonical when no lattice point of the cone has z < 1 and
terminal when the only lattice points with z <= 1 are the generators.
"""
from __future__ import annotations

import os
from dataclasses import dataclass
from fractions import Fraction
from math import ceil, floor, lcm
from typing import Sequence

from . import kernels, linalg
from .cones import PolyCone
from .exactcore import (QuadForm, SymLatticePoint, definiteness, pair,
                        sym_coords_index)
from .perfection import perfect_cone
from .shortvec import minimal_vectors

DEFAULT_BUDGET = 10 ** 8

SMOOTH = "smooth"
TERMINAL = "terminal"
CANONICAL = "canonical-not-terminal"
NOT_CANONICAL = "not-canonical"


class BudgetExceeded(RuntimeError):
    pass


def scan_budget() -> int:
    return int(os.environ.get("VORONOI_BUDGET", DEFAULT_BUDGET))


def height_coords(q: QuadForm) -> list[Fraction]:
    """z as a vector on coordinates: pair(q, B) = h . coords(B)."""
    return [q.gram[i][j] * (1 if i == j else 2) for i, j in sym_coords_index(q.g)]


@dataclass(frozen=True)
class ToricCone:
    cone: PolyCone
    height_form: QuadForm  # scaled so that every generator has z = 1

    def __post_init__(self):
        if any(self.z(gen) != 1 for gen in self.cone.generators):
            raise ValueError("height functional is not 1 on every generator")

    @classmethod
    def of_perfect_form(cls, q: QuadForm) -> "ToricCone":
        m = minimal_vectors(q).minimum
        return cls(perfect_cone(q), q.scaled(1 / m))

    def z(self, b: SymLatticePoint) -> Fraction:
        return pair(self.height_form, b)

    def face(self, members: Sequence[int]) -> "ToricCone":
        return ToricCone(self.cone.face(members), self.height_form)


def gorenstein_height(cone: PolyCone) -> QuadForm | None:
    """A symmetric matrix H with pair(H, gen) = 1 on all generators, or None."""
    vecs = [gen.coords() for gen in cone.generators]
    sol = linalg.solve(vecs, [1] * len(vecs))
    if sol is None:
        return None
    g = cone.g
    H = [[Fraction(0)] * g for _ in range(g)]
    for (i, j), v in zip(sym_coords_index(g), sol):
        if i == j:
            H[i][i] = v
        else:
            H[i][j] = H[j][i] = v / 2
    return QuadForm(H)


def _integer_height(tc: ToricCone) -> tuple[list[int], int]:
    h = height_coords(tc.height_form)
    den = 1
    for v in h:
        den = lcm(den, v.denominator)
    return [int(v * den) for v in h], den


def lattice_points_below(tc: ToricCone, level, *, strict: bool = False,
                         backend: str | None = None) -> list[SymLatticePoint]:
    """Nonzero lattice points B of the cone with z(B) <= level (< level if strict)."""
    level = Fraction(level)
    if not 0 < level <= 2:
        raise ValueError("level must lie in (0, 2]")
    g = tc.cone.g
    verts = [[level * c for c in gen.coords()] for gen in tc.cone.generators]
    lo = [min(0, floor(min(v[k] for v in verts))) for k in range(len(verts[0]))]
    hi = [max(0, ceil(max(v[k] for v in verts))) for k in range(len(verts[0]))]
    size = 1
    for a, b in zip(lo, hi):
        size *= b - a + 1
    if size > scan_budget():
        raise BudgetExceeded(f"box of {size} points exceeds budget {scan_budget()}")
    h, den = _integer_height(tc)
    bound = level * den
    ibound = ceil(bound) - 1 if strict else floor(bound)
    ineqs = [f.normal for f in tc.cone.facets]
    pts = kernels.box_scan(lo, hi, h, ibound, ineqs, list(tc.cone.equations), backend=backend)
    return [SymLatticePoint.from_coords(g, p) for p in sorted(pts)]


def is_smooth(cone: PolyCone) -> bool:
    """Simplicial with generators part of a lattice basis."""
    if not cone.is_simplicial:
        return False
    return all(d == 1 for d in linalg.smith_invariants([gen.coords() for gen in cone.generators]))


def classify_singularity(tc: ToricCone) -> str:
    if is_smooth(tc.cone):
        return SMOOTH
    gens = {gen.coords() for gen in tc.cone.generators}
    low = lattice_points_below(tc, 1)
    if {p.coords() for p in low} == gens:
        return TERMINAL
    if any(tc.z(p) < 1 for p in low):
        return NOT_CANONICAL
    return CANONICAL


def verify_minima_rank1(q: QuadForm, box: int, *, backend: str | None = None) -> bool:
    """Every nonzero PSD lattice B with |B_ij| <= box and pair(q, B) <= m(q) has rank 1."""
    m = minimal_vectors(q).minimum
    h = height_coords(q)
    den = 1
    for v in h:
        den = lcm(den, v.denominator)
    hi = [int(v * den) for v in h]
    d = len(hi)
    pts = kernels.box_scan([-box] * d, [box] * d, hi, floor(m * den), [], [], backend=backend)
    for p in pts:
        b = SymLatticePoint.from_coords(q.g, p)
        kind = definiteness(b.entries)
        if kind.positive_semidefinite and kind.rank != 1:
            return False
    return True
