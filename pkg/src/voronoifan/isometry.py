"""GL_g(Z)-equivalence of positive definite forms by backtracking.

A map is fixed by the images of a basis b_1..b_g chosen among short vectors
of the first form; images are drawn from the vectors of the second form with
the same norms, extending partial assignments only while all inner products
agree.
"""
from __future__ import annotations

from fractions import Fraction
from math import lcm
from typing import Iterator

from . import linalg
from .exactcore import QuadForm, UnimodularMap, require_positive_definite, transform
from .shortvec import minimal_vectors, vectors_below


def _common_denominator(*forms: QuadForm) -> int:
    den = 1
    for q in forms:
        for row in q.gram:
            for v in row:
                den = lcm(den, v.denominator)
    return den


def _scale(*forms: QuadForm) -> list[list[list[int]]]:
    den = _common_denominator(*forms)
    return [[[int(v * den) for v in row] for row in q.gram] for q in forms]


def _ip(G, x, y) -> int:
    return sum(x[i] * sum(G[i][j] * y[j] for j in range(len(y))) for i in range(len(x)))


def _with_negatives(vecs):
    out = []
    for v in vecs:
        out.append(tuple(v))
        out.append(tuple(-c for c in v))
    return out


def _shells(q: QuadForm):
    """Growing short-vector sets: the minimal vectors first, then larger norms.

    Bounds depend only on the minimum, so the shells of equivalent forms
    correspond under the equivalence.
    """
    mv = minimal_vectors(q)
    yield mv.minimum, list(mv.reps)
    for factor in (2, 3, 4):
        yield mv.minimum * factor, vectors_below(q, mv.minimum * factor)
    bound = mv.minimum * 4
    while True:
        bound *= 2
        yield bound, vectors_below(q, bound)


def _find_basis(G, vecs, g):
    """A Z-basis of Z^g drawn from vecs (by norm, then lexicographic order), or
    else a linearly independent family; returns (basis, unimodular?)."""
    order = sorted(vecs, key=lambda v: (_ip(G, v, v), v))
    budget = [20000]

    def dfs(chosen, start):
        if len(chosen) == g:
            return list(chosen) if abs(linalg.int_det(chosen)) == 1 else None
        for k in range(start, len(order)):
            budget[0] -= 1
            if budget[0] < 0:
                return None
            v = order[k]
            cand = chosen + [v]
            if linalg.rank(cand) < len(cand):
                continue
            if any(d != 1 for d in linalg.smith_invariants(cand)):
                continue
            res = dfs(cand, k + 1)
            if res is not None:
                return res
        return None

    basis = dfs([], 0)
    if basis is not None:
        return basis, True
    fam = []
    for v in order:
        if linalg.rank(fam + [v]) > len(fam):
            fam.append(v)
    return (fam, False) if len(fam) == g else (None, False)


class _Search:
    """Backtracking over images of a fixed family b_1..b_g of q1-vectors."""

    def __init__(self, q1: QuadForm, q2: QuadForm):
        self.g = q1.g
        self.G1, self.G2 = _scale(q1, q2)
        for bound, vecs in _shells(q1):
            basis, unimodular = _find_basis(self.G1, vecs, self.g)
            if basis is not None:
                break
        else:  # pragma: no cover - full-rank shells always exist for PD forms
            raise RuntimeError("no spanning vector family found")
        self.basis, self.unimodular = basis, unimodular
        self.bound = bound
        targets = _with_negatives(vectors_below(q2, bound))
        self.cands = targets
        self.T = [[_ip(self.G1, a, b) for b in basis] for a in basis]
        G2 = self.G2
        self.P = [[_ip(G2, a, b) for b in targets] for a in targets]
        self.norm_of = [self.P[a][a] for a in range(len(targets))]
        self.binv = linalg.inverse(linalg.transpose(basis))

    def level_candidates(self, i, images):
        T = self.T
        P = self.P
        need = T[i][i]
        out = []
        for a in range(len(self.cands)):
            if self.norm_of[a] != need:
                continue
            row = P[a]
            if all(row[images[j]] == T[i][j] for j in range(i)):
                out.append(a)
        return out

    def leaf_map(self, images):
        """phi with phi(b_i) = w_i as an integer matrix, or None."""
        W = linalg.transpose([self.cands[a] for a in images])
        phi = linalg.matmul(W, self.binv)
        if any(Fraction(v).denominator != 1 for row in phi for v in row):
            return None
        phi = [[int(v) for v in row] for row in phi]
        if abs(linalg.int_det(phi)) != 1:
            return None
        return phi

    def extensions(self, images) -> Iterator[list[list[int]]]:
        i = len(images)
        if i == self.g:
            phi = self.leaf_map(images)
            if phi is not None:
                yield phi
            return
        for a in self.level_candidates(i, images):
            images.append(a)
            yield from self.extensions(images)
            images.pop()

    def first(self, prefix) -> list[list[int]] | None:
        return next(self.extensions(list(prefix)), None)


def _phi_to_witness(phi) -> UnimodularMap:
    # phi^T G2 phi = G1, so U = phi^{-1} satisfies U^T G1 U = G2
    return UnimodularMap(phi).inverse()


def is_equivalent(q1: QuadForm, q2: QuadForm) -> UnimodularMap | None:
    """U with U^T G1 U = G2 if the forms are GL_g(Z)-equivalent, else None."""
    if q1.g != q2.g:
        raise ValueError("dimension mismatch")
    require_positive_definite(q1)
    require_positive_definite(q2)
    if q1.det() != q2.det():
        return None
    m1, m2 = minimal_vectors(q1), minimal_vectors(q2)
    if m1.minimum != m2.minimum or len(m1.reps) != len(m2.reps):
        return None
    search = _Search(q1, q2)
    phi = search.first([])
    if phi is None:
        return None
    u = _phi_to_witness(phi)
    if transform(q1, u) != q2:  # pragma: no cover - guarded by construction
        raise AssertionError("equivalence witness failed to verify")
    return u


def stabilizer_chain(q: QuadForm):
    """Orbit sizes and transversal elements along b_1, b_2, ... for Aut(q).

    Returns (orbit sizes, list of automorphisms phi with phi^T G phi = G). The
    transversal elements together generate the full automorphism group.
    """
    require_positive_definite(q)
    search = _Search(q, q)
    # identity images of the basis
    index = {v: a for a, v in enumerate(search.cands)}
    ident = [index[tuple(b)] for b in search.basis]
    sizes, gens = [], []
    for i in range(q.g):
        prefix = ident[:i]
        count = 0
        for a in search.level_candidates(i, prefix):
            phi = search.first(prefix + [a])
            if phi is not None:
                count += 1
                if a != ident[i]:
                    gens.append(phi)
        sizes.append(count)
    return sizes, gens


def automorphism_order(q: QuadForm) -> int:
    sizes, _ = stabilizer_chain(q)
    out = 1
    for s in sizes:
        out *= s
    return out


def automorphism_generators(q: QuadForm) -> list[list[list[int]]]:
    return stabilizer_chain(q)[1]


def min_basis_form(q: QuadForm) -> tuple[QuadForm, UnimodularMap]:
    """(V^T G V, V) for the first Z-basis V found among the shortest vectors."""
    require_positive_definite(q)
    (G,) = _scale(q)
    for _, vecs in _shells(q):
        basis, unimodular = _find_basis(G, vecs, q.g)
        if basis is not None and unimodular:
            V = UnimodularMap(linalg.transpose(basis))
            return transform(q, V), V
    V = UnimodularMap.identity(q.g)
    return q, V


def canonical_gram(q: QuadForm) -> QuadForm:
    """Lexicographically least Gram matrix (rows of the lower triangle, in
    order) over all Z-bases drawn from the minimal vectors, or from the first
    short-vector shell that contains a basis."""
    require_positive_definite(q)
    (G,) = _scale(q)
    scale = Fraction(1, _common_denominator(q))
    g = q.g
    for _, vecs in _shells(q):
        if linalg.rank(vecs) < g or any(d != 1 for d in linalg.smith_invariants(vecs)):
            continue
        allv = _with_negatives(vecs)
        P = [[_ip(G, a, b) for b in allv] for a in allv]
        best: list | None = None
        chosen: list[int] = []
        prefix: list[int] = []

        def dfs(i):
            nonlocal best
            if i == g:
                mat = [allv[a] for a in chosen]
                if abs(linalg.int_det(mat)) == 1:
                    if best is None or prefix < best:
                        best = list(prefix)
                return
            rows = []
            for a in range(len(allv)):
                if a in chosen:
                    continue
                row = tuple(P[a][c] for c in chosen) + (P[a][a],)
                rows.append((row, a))
            rows.sort()
            start = len(prefix)
            for row, a in rows:
                if best is not None:
                    cur = prefix + list(row)
                    ref = best[:len(cur)]
                    if cur > ref:
                        break
                vecs_now = [allv[c] for c in chosen] + [allv[a]]
                if linalg.rank(vecs_now) < len(vecs_now):
                    continue
                # a partial family extends to a Z-basis only if it is primitive
                if any(d != 1 for d in linalg.smith_invariants(vecs_now)):
                    continue
                chosen.append(a)
                prefix.extend(row)
                dfs(i + 1)
                del prefix[start:]
                chosen.pop()

        dfs(0)
        if best is not None:
            M = [[0] * g for _ in range(g)]
            k = 0
            for i in range(g):
                for j in range(i + 1):
                    M[i][j] = M[j][i] = best[k]
                    k += 1
            return QuadForm([[scale * v for v in row] for row in M])
    raise RuntimeError("no basis found among short vectors")  # pragma: no cover
