"""Perfect forms, their cones, Voronoi's neighbouring step and the
enumeration of perfect forms up to GL_g(Z)."""
from __future__ import annotations

import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import lcm
from typing import Sequence

import numpy as np

from . import linalg
from .cones import PolyCone
from .exactcore import (QuadForm, UnimodularMap, definiteness, rank1, sym_coords_index,
                        transform)
from .isometry import canonical_gram, is_equivalent, min_basis_form, stabilizer_chain
from .shortvec import MinVecSet, minimal_vectors, vectors_below

log = logging.getLogger(__name__)

MAX_GENUS = 7


class NotPerfect(ValueError):
    pass


class ContiguityError(RuntimeError):
    """The neighbouring step produced a form that failed its certificate."""


def root_form_A(g: int) -> QuadForm:
    """Gram matrix of the root lattice A_g (tridiagonal 2, -1)."""
    return QuadForm([[2 if i == j else (-1 if abs(i - j) == 1 else 0) for j in range(g)]
                     for i in range(g)])


def perfection_rank(q: QuadForm) -> int:
    """Dimension of the span of x x^T over the minimal vectors."""
    mv = minimal_vectors(q)
    return linalg.rank([rank1(x).coords() for x in mv.reps])


def is_perfect(q: QuadForm) -> bool:
    return perfection_rank(q) == q.g * (q.g + 1) // 2


def perfect_cone(q: QuadForm) -> PolyCone:
    if not is_perfect(q):
        raise NotPerfect(f"form {q} is not perfect")
    return PolyCone.from_roots(minimal_vectors(q).reps)


def normalize_scale(q: QuadForm) -> tuple[QuadForm, Fraction]:
    """Scale to minimum 2, then clear denominators. Returns (form, factor)."""
    m = minimal_vectors(q).minimum
    c = Fraction(2) / m
    den = 1
    for row in q.gram:
        for v in row:
            den = lcm(den, (c * v).denominator)
    c *= den
    return q.scaled(c), c


def invariant_key(q: QuadForm, mv: MinVecSet | None = None) -> tuple:
    """(g, det, minimum, kissing, sorted |x^T G y| over pairs of minimal vectors)."""
    mv = mv or minimal_vectors(q)
    reps = mv.reps
    prods = sorted(abs(q.bilinear(reps[i], reps[j]))
                   for i in range(len(reps)) for j in range(i + 1, len(reps)))
    return (q.g, q.det(), mv.minimum, mv.kissing, tuple(prods))


def _new_below(f: QuadForm, m: Fraction):
    """None if f is not positive definite, else the vectors with f(v) < m."""
    if not definiteness(f).positive_definite:
        return None
    return [v for v in vectors_below(f, m) if f(v) < m]


def contiguous_form(q: QuadForm, R: QuadForm) -> tuple[QuadForm, Fraction]:
    """The perfect form q + rho R across the facet of sigma(q) with normal R."""
    mv = minimal_vectors(q)
    m = mv.minimum
    if definiteness(R).positive_semidefinite:
        raise ContiguityError("facet lies on the boundary of the positive cone")
    lo, hi = Fraction(0), Fraction(1)
    while True:
        f = q + R.scaled(hi)
        below = _new_below(f, m)
        if below is None:
            hi = (lo + hi) / 2
        elif below:
            break
        else:
            lo, hi = hi, 2 * hi
    while below:
        rho = min((m - q(v)) / R(v) for v in below)
        f = q + R.scaled(rho)
        below = _new_below(f, m)
        hi = rho
    rho = hi
    f = q + R.scaled(rho)
    _certify(q, mv, R, f, rho)
    return f, rho


def _certify(q, mv, R, f, rho):
    fm = minimal_vectors(f)
    if fm.minimum != mv.minimum:
        raise ContiguityError("neighbour has a different minimum")
    on_facet = {x for x in mv.reps if R(x) == 0}
    shared = set(fm.reps) & set(mv.reps)
    if shared != on_facet:
        raise ContiguityError("shared minimal vectors differ from the facet generators")
    if not set(fm.reps) - set(mv.reps):
        raise ContiguityError("no new minimal vectors")
    if linalg.rank([rank1(x).coords() for x in fm.reps]) != f.g * (f.g + 1) // 2:
        raise ContiguityError("neighbour is not perfect")
    if rho <= 0:
        raise ContiguityError("nonpositive step")


@dataclass(frozen=True)
class NeighborLink:
    """Across facet ``facet``: q + rho R_facet = (1/scale) U^T G_target U."""

    facet: int
    target: str | None  # class id, None for a boundary facet
    rho: Fraction | None = None
    scale: Fraction | None = None
    witness: UnimodularMap | None = None


@dataclass
class PerfectFormRecord:
    class_id: str
    form: QuadForm
    minvecs: MinVecSet
    cone: PolyCone
    invariant_key: tuple
    neighbors: list[NeighborLink] = field(default_factory=list)
    aut_order: int | None = None

    @property
    def g(self) -> int:
        return self.form.g

    @property
    def kissing(self) -> int:
        return self.minvecs.kissing

    def facet_normal(self, k: int) -> QuadForm:
        return self.cone.facet_normal(k)


def make_record(class_id: str, form: QuadForm) -> PerfectFormRecord:
    mv = minimal_vectors(form)
    cone = PolyCone.from_roots(mv.reps)
    if not cone.is_full_dimensional:
        raise NotPerfect(f"form {form} is not perfect")
    return PerfectFormRecord(class_id, form, mv, cone, invariant_key(form, mv))


def neighbor(rec: PerfectFormRecord, facet_index: int) -> QuadForm:
    if not 0 <= facet_index < len(rec.cone.facets):
        raise IndexError(f"facet index {facet_index} out of range")
    return contiguous_form(rec.form, rec.facet_normal(facet_index))[0]


def _act_on_normal(g: int, y: Sequence[int], gam) -> tuple[int, ...]:
    """Dual coordinates of gam^T R gam, computed on the integer matrix 2R."""
    M = [[0] * g for _ in range(g)]
    for (i, j), v in zip(sym_coords_index(g), y):
        if i == j:
            M[i][i] = 2 * v
        else:
            M[i][j] = M[j][i] = v
    N = linalg.matmul(linalg.transpose(gam), linalg.matmul(M, gam))
    return tuple(N[i][j] // 2 if i == j else N[i][j] for i, j in sym_coords_index(g))


def _normal_matrix(g: int, gam) -> np.ndarray:
    """The integer matrix of R -> gam^T R gam on dual coordinates."""
    d = g * (g + 1) // 2
    cols = [_act_on_normal(g, [int(k == c) for k in range(d)], gam) for c in range(d)]
    return np.array(cols, dtype=np.int64).T


def facet_orbits(form: QuadForm, cone: PolyCone, generators=None):
    """Partition facets under Aut(form). Returns, per facet, (rep, phi) with
    R_facet = phi^T R_rep phi and phi an automorphism of the form."""
    if generators is None:
        generators = stabilizer_chain(form)[1]
    g = form.g
    normals = np.array([f.normal for f in cone.facets], dtype=np.int64)
    index = {row.tobytes(): k for k, row in enumerate(normals)}
    # each generator as a permutation of the facets
    perms = []
    for gam in generators:
        images = np.ascontiguousarray(normals @ _normal_matrix(g, gam).T)
        perms.append([index[row.tobytes()] for row in images])
    ident = [[int(i == j) for j in range(g)] for i in range(g)]
    assign: dict[int, tuple[int, list]] = {}
    for start in range(len(cone.facets)):
        if start in assign:
            continue
        assign[start] = (start, ident)
        stack = [start]
        while stack:
            a = stack.pop()
            phi_a = assign[a][1]
            for gam, perm in zip(generators, perms):
                b = perm[a]
                if b not in assign:
                    assign[b] = (start, linalg.matmul(phi_a, gam))
                    stack.append(b)
    return [assign[k] for k in range(len(cone.facets))]


def _contiguous_task(args):
    gram, normal = args
    f, rho = contiguous_form(QuadForm(gram), QuadForm(normal))
    return f.gram, rho


def enumerate_perfect(g: int, jobs: int = 1) -> list[PerfectFormRecord]:
    """All perfect forms of rank g up to GL_g(Z), with a closure certificate.

    Classes are explored breadth-first from the A_g root form; every facet of
    every class gets a neighbour link to a listed class with a witness map.
    """
    if not 1 <= g <= MAX_GENUS:
        raise ValueError(f"g={g} outside the supported range 1..{MAX_GENUS}")
    seed, _ = normalize_scale(root_form_A(g))
    found: list[PerfectFormRecord] = [make_record("tmp0", seed)]
    links: list[list[NeighborLink]] = []
    auts: list[int] = []
    pool = ProcessPoolExecutor(jobs) if jobs > 1 else None
    try:
        i = 0
        while i < len(found):
            rec = found[i]
            sizes, gens = stabilizer_chain(rec.form)
            order = 1
            for s in sizes:
                order *= s
            auts.append(order)
            orbits = facet_orbits(rec.form, rec.cone, gens)
            reps = sorted({r for r, _ in orbits})
            tasks = []
            for r in reps:
                R = rec.facet_normal(r)
                if definiteness(R).positive_semidefinite:
                    tasks.append(None)
                else:
                    tasks.append((rec.form.gram, R.gram))
            live = [t for t in tasks if t is not None]
            results = list(pool.map(_contiguous_task, live)) if pool else \
                [_contiguous_task(t) for t in live]
            it = iter(results)
            rep_link: dict[int, NeighborLink] = {}
            for r, t in zip(reps, tasks):
                if t is None:
                    rep_link[r] = NeighborLink(r, None)
                    continue
                gram, rho = next(it)
                nform, c = normalize_scale(QuadForm(gram))
                target, witness = _identify(found, nform)
                if target is None:
                    rform, V = min_basis_form(nform)
                    found.append(make_record(f"tmp{len(found)}", rform))
                    target, witness = len(found) - 1, V.inverse()
                rep_link[r] = NeighborLink(r, f"tmp{target}", rho, c, witness)
            row = []
            for k, (r, phi) in enumerate(orbits):
                base = rep_link[r]
                if base.target is None:
                    row.append(NeighborLink(k, None))
                else:
                    w = UnimodularMap(linalg.matmul(base.witness.matrix, phi))
                    row.append(NeighborLink(k, base.target, base.rho, base.scale, w))
            links.append(row)
            log.info("g=%d: class %d done (%d facets, %d orbits), %d classes so far",
                     g, i, len(orbits), len(reps), len(found))
            i += 1
    finally:
        if pool:
            pool.shutdown()
    return _finalize(g, found, links, auts)


def _identify(found, nform):
    key = invariant_key(nform)
    for j, rec in enumerate(found):
        if rec.invariant_key != key:
            continue
        u = is_equivalent(rec.form, nform)
        if u is not None:
            return j, u
    return None, None


def _sort_key(rec: PerfectFormRecord):
    return rec.invariant_key


def _finalize(g, found, links, auts):
    order = list(range(len(found)))
    keys = [found[i].invariant_key for i in order]
    tie = len(set(keys)) < len(keys)
    canon = {}
    if tie:
        for i in order:
            if keys.count(found[i].invariant_key) > 1:
                canon[i] = tuple(v for row in canonical_gram(found[i].form).gram for v in row)
    order.sort(key=lambda i: (found[i].invariant_key, canon.get(i, ())))
    new_id = {f"tmp{old}": f"{g}.{pos + 1}" for pos, old in enumerate(order)}
    out = []
    for old in order:
        rec = found[old]
        rec.class_id = new_id[f"tmp{old}"]
        rec.neighbors = [NeighborLink(l.facet, new_id[l.target] if l.target else None,
                                      l.rho, l.scale, l.witness) for l in links[old]]
        rec.aut_order = auts[old]
        out.append(rec)
    return out


@lru_cache(maxsize=None)
def catalog(g: int) -> tuple[PerfectFormRecord, ...]:
    """Cached enumeration for rank g."""
    return tuple(enumerate_perfect(g))


def find_class(g: int, class_id: str) -> PerfectFormRecord:
    for rec in catalog(g):
        if rec.class_id == class_id:
            return rec
    raise KeyError(class_id)


def verify_link(recs: Sequence[PerfectFormRecord], rec: PerfectFormRecord,
                link: NeighborLink, recompute: bool = False) -> bool:
    """Check q + rho R = (1/scale) U^T G_target U exactly (optionally recomputing rho)."""
    if link.target is None:
        return definiteness(rec.facet_normal(link.facet)).positive_semidefinite
    target = next(r for r in recs if r.class_id == link.target)
    R = rec.facet_normal(link.facet)
    rho = link.rho
    if recompute:
        _, rho = contiguous_form(rec.form, R)
        if rho != link.rho:
            return False
    lhs = (rec.form + R.scaled(rho)).scaled(link.scale)
    return transform(target.form, link.witness) == lhs
