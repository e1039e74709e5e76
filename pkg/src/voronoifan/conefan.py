"""The perfect cone fan as a decomposition of the positive semidefinite cone."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from . import linalg
from .cones import interior_rank, normal_to_coords
from .exactcore import (IntVector, QuadForm, SymLatticePoint, UnimodularMap,
                        conjugate_point, definiteness, pair, rank1,
                        require_positive_definite, transform)
from .isometry import is_equivalent
from .lp import LinearProgram, lp_solve
from .perfection import PerfectFormRecord, catalog, perfection_rank, root_form_A
from .shortvec import minimal_vectors

__all__ = ["ConeMembershipCertificate", "locate_cone", "cocore_height", "direct_sum",
           "extend", "interior_rank", "PropertyViolation"]

MAX_WALK = 10_000


class PropertyViolation(AssertionError):
    """A structural identity that must hold failed on re-enumeration."""


@dataclass(frozen=True)
class ConeMembershipCertificate:
    record: PerfectFormRecord
    twist: UnimodularMap  # located form has Gram twist^T G_record twist
    generators: tuple[IntVector, ...]  # minimal vectors of the located form
    coefficients: tuple[Fraction, ...]
    path: tuple[tuple[str, int], ...]  # (class id, facet index) crossings

    @property
    def form(self) -> QuadForm:
        return transform(self.record.form, self.twist)

    def support(self) -> dict[IntVector, Fraction]:
        return {x: c for x, c in zip(self.generators, self.coefficients) if c}

    def verify(self, b: SymLatticePoint) -> bool:
        if any(c < 0 for c in self.coefficients):
            return False
        g = b.g
        tot = [[Fraction(0)] * g for _ in range(g)]
        for x, c in zip(self.generators, self.coefficients):
            for i in range(g):
                for j in range(g):
                    tot[i][j] += c * x[i] * x[j]
        form = self.form
        m = minimal_vectors(form).minimum
        return (tot == [list(map(Fraction, r)) for r in b.entries]
                and all(form(x) == m for x in self.generators))


@lru_cache(maxsize=None)
def _seed(g: int) -> tuple[PerfectFormRecord, UnimodularMap]:
    a = root_form_A(g)
    for rec in catalog(g):
        u = is_equivalent(rec.form, a)
        if u is not None:
            return rec, u
    raise RuntimeError(f"A_{g} root form not found in the catalog")  # pragma: no cover


def _check_input(b: SymLatticePoint) -> None:
    if not any(v for row in b.entries for v in row):
        raise ValueError("zero matrix")
    if not definiteness(b.entries).positive_semidefinite:
        raise ValueError(f"matrix {b} is not positive semidefinite")


def locate_cone(b: SymLatticePoint) -> ConeMembershipCertificate:
    """Walk the fan from the A_g cone to a maximal cone containing b.

    At each cone, if some facet normal R has pair(R, b) < 0, the walk crosses
    the one with the lexicographically least normal (in b's frame).
    """
    _check_input(b)
    g = b.g
    recs = {r.class_id: r for r in catalog(g)}
    rec, u = _seed(g)
    path = []
    for _ in range(MAX_WALK):
        # work in the record's frame: pair(U^T R U, b) = pair(R, U b U^T)
        bb = conjugate_point(b, u).coords()
        violated = [k for k, f in enumerate(rec.cone.facets)
                    if sum(x * y for x, y in zip(f.normal, bb)) < 0]
        if not violated:
            break
        k = min(violated, key=lambda k: normal_to_coords(transform(rec.facet_normal(k), u)))
        link = rec.neighbors[k]
        path.append((rec.class_id, k))
        rec, u = recs[link.target], link.witness @ u
    else:  # pragma: no cover - the walk strictly decreases pair(q, b)
        raise RuntimeError("cone walk did not terminate")
    uinv = u.inverse()
    gens = tuple(uinv.apply(y).canonical_sign() for y in rec.minvecs.reps)
    lam = _decompose(gens, b)
    return ConeMembershipCertificate(rec, u, gens, lam, tuple(path))


def _decompose(gens, b: SymLatticePoint) -> tuple[Fraction, ...]:
    vecs = [rank1(x).coords() for x in gens]
    prog = LinearProgram(c=[1] * len(vecs), a_eq=linalg.transpose(vecs), b_eq=b.coords())
    res = lp_solve(prog)
    if res.status != "optimal":  # pragma: no cover - facet test already passed
        raise RuntimeError("membership LP disagrees with the facet test")
    return res.point


def cocore_height(b: SymLatticePoint) -> Fraction:
    """pair(q, b) / m(q) for a perfect form q whose cone contains b."""
    cert = locate_cone(b)
    form = cert.form
    return pair(form, b) / minimal_vectors(form).minimum


def direct_sum(q1: QuadForm, q2: QuadForm, check: bool = True) -> QuadForm:
    """Block-diagonal sum; with equal minima the minimal vectors are the union."""
    require_positive_definite(q1)
    require_positive_definite(q2)
    g1, g2 = q1.g, q2.g
    n = g1 + g2
    G = [[Fraction(0)] * n for _ in range(n)]
    for i in range(g1):
        for j in range(g1):
            G[i][j] = q1.gram[i][j]
    for i in range(g2):
        for j in range(g2):
            G[g1 + i][g1 + j] = q2.gram[i][j]
    out = QuadForm(G)
    if check:
        m1, m2 = minimal_vectors(q1), minimal_vectors(q2)
        m = min(m1.minimum, m2.minimum)
        expect = set()
        if m1.minimum == m:
            expect |= {IntVector(tuple(x) + (0,) * g2) for x in m1.reps}
        if m2.minimum == m:
            expect |= {IntVector((0,) * g1 + tuple(x)).canonical_sign() for x in m2.reps}
        got = minimal_vectors(out)
        if got.minimum != m or set(got.reps) != expect:
            raise PropertyViolation("minimal vectors of the direct sum are not the union")
    return out


def extend(q: QuadForm) -> QuadForm:
    """f + m(f) x_{r+1}^2; its minimal vectors are those of f plus e_{r+1}."""
    require_positive_definite(q)
    mv = minimal_vectors(q)
    r = q.g
    G = [list(row) + [Fraction(0)] for row in q.gram] + [[Fraction(0)] * r + [mv.minimum]]
    f1 = QuadForm(G)
    got = minimal_vectors(f1)
    expect = {IntVector(tuple(x) + (0,)) for x in mv.reps} | {IntVector((0,) * r + (1,))}
    if got.minimum != mv.minimum or set(got.reps) != expect:
        raise PropertyViolation("min(f1) != min(f) + {e_(r+1)}")
    if perfection_rank(f1) != perfection_rank(q) + 1:
        raise PropertyViolation("perfection rank did not increase by exactly one")
    return f1
