"""Rational polyhedral cones in the space of symmetric matrices.

A symmetric g x g matrix B is identified with its coordinate vector
(B11, B12, ..., B1g, B22, ..., Bgg). A facet normal is stored both as a
primitive integer vector y in the dual coordinates, so that
pair(R, B) = y . coords(B), and as the rational symmetric matrix R.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Sequence

from . import kernels, linalg
from .exactcore import QuadForm, SymLatticePoint, rank1, sym_coords_index
from .lp import LinearProgram, lp_solve


def _dot(a, b):
    return sum(x * y for x, y in zip(a, b))


def double_description(rows: Sequence[Sequence[int]]) -> list[tuple[tuple[int, ...], int]]:
    """Extreme rays of the pointed cone {y : A y >= 0}, A of full column rank.

    Returns (primitive integer ray, bitmask of rows vanishing on it).
    """
    rows = [tuple(int(v) for v in r) for r in rows]
    k = len(rows[0])
    # initial full-rank subsystem, greedily in row order
    basis_idx: list[int] = []
    for i, r in enumerate(rows):
        if linalg.rank([rows[j] for j in basis_idx] + [r]) > len(basis_idx):
            basis_idx.append(i)
            if len(basis_idx) == k:
                break
    if len(basis_idx) < k:
        raise ValueError("constraint matrix is not of full column rank")
    inv = linalg.inverse([rows[i] for i in basis_idx])
    rays = []
    for j in range(k):
        vec = tuple(linalg.primitive_integer([inv[i][j] for i in range(k)]))
        rays.append(vec)
    masks = []
    for vec in rays:
        m = 0
        for i in basis_idx:
            if _dot(rows[i], vec) == 0:
                m |= 1 << i
        masks.append(m)

    for i, a in enumerate(rows):
        if i in basis_idx:
            continue
        bit = 1 << i
        vals = [_dot(a, r) for r in rays]
        pos = [t for t, v in enumerate(vals) if v > 0]
        neg = [t for t, v in enumerate(vals) if v < 0]
        zer = [t for t, v in enumerate(vals) if v == 0]
        new_rays = [rays[t] for t in pos + zer]
        new_masks = [masks[t] for t in pos] + [masks[t] | bit for t in zer]
        if neg:
            for p, n in kernels.adjacent_pairs(masks, pos, neg, k - 2):
                vp, vn = vals[p], vals[n]
                combo = [vp * x - vn * y for x, y in zip(rays[n], rays[p])]
                new_rays.append(tuple(linalg.primitive_integer(combo)))
                new_masks.append((masks[p] & masks[n]) | bit)
        rays, masks = new_rays, new_masks
    return list(zip(rays, masks))


def coords_to_normal(g: int, y: Sequence[int]) -> QuadForm:
    """Symmetric matrix R with pair(R, B) = y . coords(B)."""
    R = [[Fraction(0)] * g for _ in range(g)]
    for (i, j), v in zip(sym_coords_index(g), y):
        if i == j:
            R[i][i] = Fraction(v)
        else:
            R[i][j] = R[j][i] = Fraction(v, 2)
    return QuadForm(R)


def normal_to_coords(R: QuadForm) -> tuple[int, ...]:
    y = [R.gram[i][j] * (1 if i == j else 2) for i, j in sym_coords_index(R.g)]
    return tuple(linalg.primitive_integer(y))


@dataclass(frozen=True)
class Facet:
    normal: tuple[int, ...]  # primitive, dual coordinates
    members: tuple[int, ...]  # indices of generators on the facet


@dataclass(frozen=True)
class PolyCone:
    g: int
    generators: tuple[SymLatticePoint, ...]
    facets: tuple[Facet, ...]
    equations: tuple[tuple[int, ...], ...] = ()
    roots: tuple[tuple[int, ...], ...] | None = field(default=None, compare=False)

    @classmethod
    def from_generators(cls, gens: Sequence[SymLatticePoint], roots=None) -> "PolyCone":
        gens = tuple(gens)
        if not gens:
            raise ValueError("empty cone")
        g = gens[0].g
        vecs = [b.coords() for b in gens]
        d = len(vecs[0])
        eqs = tuple(tuple(linalg.primitive_integer(v)) for v in linalg.nullspace(vecs, d))
        # coordinates on which span(vecs) projects injectively
        _, cols = linalg.row_echelon(vecs)
        sub = [[v[c] for c in cols] for v in vecs]
        facets = []
        for ray, mask in double_description(sub):
            y = [0] * d
            for c, v in zip(cols, ray):
                y[c] = v
            members = tuple(i for i in range(len(gens)) if mask >> i & 1)
            facets.append(Facet(tuple(y), members))
        facets.sort(key=lambda f: f.normal)
        return cls(g, gens, tuple(facets), eqs, tuple(map(tuple, roots)) if roots else None)

    @classmethod
    def from_roots(cls, roots: Sequence[Sequence[int]]) -> "PolyCone":
        return cls.from_generators([rank1(x) for x in roots], roots)

    @property
    def dim(self) -> int:
        return len(self.generators[0].coords()) - len(self.equations)

    @property
    def ambient_dim(self) -> int:
        return self.g * (self.g + 1) // 2

    @property
    def is_full_dimensional(self) -> bool:
        return not self.equations

    @property
    def is_simplicial(self) -> bool:
        return len(self.generators) == self.dim

    def facet_normal(self, k: int) -> QuadForm:
        return coords_to_normal(self.g, self.facets[k].normal)

    @cached_property
    def facet_normals(self) -> tuple[QuadForm, ...]:
        return tuple(self.facet_normal(k) for k in range(len(self.facets)))

    def contains(self, b: SymLatticePoint) -> bool:
        x = b.coords()
        return (all(_dot(e, x) == 0 for e in self.equations)
                and all(_dot(f.normal, x) >= 0 for f in self.facets))

    def violated_facets(self, b: SymLatticePoint) -> list[int]:
        x = b.coords()
        return [k for k, f in enumerate(self.facets) if _dot(f.normal, x) < 0]

    def decompose(self, b: SymLatticePoint) -> tuple[Fraction, ...] | None:
        """Nonnegative lambda with b = sum lambda_i gen_i (minimizing sum lambda), or None."""
        vecs = [gen.coords() for gen in self.generators]
        x = b.coords()
        prog = LinearProgram(c=[1] * len(vecs), a_eq=linalg.transpose(vecs), b_eq=x)
        res = lp_solve(prog)
        return res.point if res.status == "optimal" else None

    def face(self, members: Sequence[int]) -> "PolyCone":
        return PolyCone.from_generators([self.generators[i] for i in members],
                                        [self.roots[i] for i in members] if self.roots else None)

    def faces(self) -> list[tuple[int, ...]]:
        """Member sets of all nonempty faces (including the cone itself)."""
        full = tuple(range(len(self.generators)))
        seen = {full}
        frontier = [full]
        while frontier:
            nxt = []
            for face in frontier:
                sub = self.face(face) if face != full else self
                for f in sub.facets:
                    members = tuple(face[i] for i in f.members)
                    if members and members not in seen:
                        seen.add(members)
                        nxt.append(members)
            frontier = nxt
        return sorted(seen, key=lambda s: (len(s), s))

    def interior_point(self) -> SymLatticePoint:
        g = self.g
        tot = [[0] * g for _ in range(g)]
        for gen in self.generators:
            for i in range(g):
                for j in range(g):
                    tot[i][j] += gen.entries[i][j]
        return SymLatticePoint(tot)


def interior_rank(c: PolyCone) -> int:
    """Rank of a relative-interior point (the sum of the generators)."""
    if not c.generators:
        raise ValueError("empty cone")
    return linalg.rank(c.interior_point().entries)
