"""Brute-force reference computations, independent of the package internals."""
from __future__ import annotations

import itertools
import random
from fractions import Fraction
from math import gcd


def qval(G, x):
    return sum(G[i][j] * x[i] * x[j] for i in range(len(x)) for j in range(len(x)))


def canon(x):
    x = tuple(x)
    for v in x:
        if v:
            return x if v > 0 else tuple(-t for t in x)
    return x


def brute_min_vectors(G, box):
    """(minimum, sorted canonical reps) over all nonzero x with |x_i| <= box."""
    g = len(G)
    best, reps = None, set()
    for x in itertools.product(range(-box, box + 1), repeat=g):
        if not any(x):
            continue
        v = qval(G, x)
        if best is None or v < best:
            best, reps = v, {canon(x)}
        elif v == best:
            reps.add(canon(x))
    return Fraction(best), sorted(reps)


def brute_below(G, bound, box):
    out = set()
    for x in itertools.product(range(-box, box + 1), repeat=len(G)):
        if any(x) and qval(G, x) <= bound:
            out.add(canon(x))
    return sorted(out)


def laplace_det(M):
    n = len(M)
    if n == 0:
        return Fraction(1)
    if n == 1:
        return Fraction(M[0][0])
    return sum((-1) ** j * M[0][j] * laplace_det([row[:j] + row[j + 1:] for row in M[1:]])
               for j in range(n))


def principal_minors(M):
    n = len(M)
    for k in range(1, n + 1):
        for idx in itertools.combinations(range(n), k):
            yield laplace_det([[M[i][j] for j in idx] for i in idx])


def sylvester_kind(M):
    """'pd', 'psd' or 'indefinite' from all principal minors."""
    n = len(M)
    lead = [laplace_det([row[:k] for row in M[:k]]) for k in range(1, n + 1)]
    if all(v > 0 for v in lead):
        return "pd"
    if all(v >= 0 for v in principal_minors(M)):
        return "psd"
    return "indefinite"


def fraction_rank(rows):
    rows = [[Fraction(v) for v in r] for r in rows]
    r = 0
    ncols = len(rows[0]) if rows else 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(rows)) if rows[i][c]), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        for i in range(len(rows)):
            if i != r and rows[i][c]:
                f = rows[i][c] / rows[r][c]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        r += 1
    return r


def sym_coords(M):
    g = len(M)
    return tuple(M[i][j] for i in range(g) for j in range(i, g))


def random_unimodular(rng: random.Random, g: int, steps: int = 6):
    U = [[int(i == j) for j in range(g)] for i in range(g)]
    for _ in range(steps):
        i, j = rng.sample(range(g), 2) if g > 1 else (0, 0)
        if g > 1 and rng.random() < 0.7:
            c = rng.choice([-2, -1, 1, 2])
            for row in U:
                row[i] += c * row[j]
        elif g > 1:
            for row in U:
                row[i], row[j] = row[j], row[i]
        else:
            U[0][0] = -U[0][0]
    return U


def random_psd(rng: random.Random, g: int, min_rank: int = 2, entry: int = 3):
    """B = V^T V for random integer V with min_rank <= rank B <= g."""
    while True:
        k = rng.randint(min_rank, g)
        V = [[rng.randint(-entry, entry) for _ in range(g)] for _ in range(k)]
        B = [[sum(V[t][i] * V[t][j] for t in range(k)) for j in range(g)] for i in range(g)]
        if fraction_rank(B) >= min_rank:
            return B


def random_pd(rng: random.Random, g: int, entry: int = 3, box: int = 6):
    """Random integer PD Gram (diagonal 1..2*entry, off-diagonal in [-entry, entry])
    whose minimal vectors provably lie in the cube of radius ``box``."""
    while True:
        G = [[0] * g for _ in range(g)]
        for i in range(g):
            G[i][i] = rng.randint(1, 2 * entry)
            for j in range(i):
                G[i][j] = G[j][i] = rng.randint(-entry, entry)
        if sylvester_kind(G) == "pd" and provable_box(G, min(G[i][i] for i in range(g))) <= box:
            return G


def inverse_diagonal(G):
    d = laplace_det(G)
    n = len(G)
    return [laplace_det([[G[a][b] for b in range(n) if b != i] for a in range(n) if a != i]) / d
            for i in range(n)]


def provable_box(G, bound):
    """Every x with x^T G x <= bound has |x_i| <= sqrt(bound * (G^-1)_ii)."""
    from math import isqrt
    best = 0
    for v in inverse_diagonal(G):
        t = Fraction(bound) * v
        r = isqrt(t.numerator // t.denominator)
        while (r + 1) ** 2 <= t:
            r += 1
        best = max(best, r)
    return best


def primitive(x):
    d = 0
    for v in x:
        d = gcd(d, v)
    return d == 1


A2 = "2,-1;-1,2"
A3 = "2,-1,0;-1,2,-1;0,-1,2"
A4 = "2,-1,0,0;-1,2,-1,0;0,-1,2,-1;0,0,-1,2"
D4 = "2,0,-1,0;0,2,-1,0;-1,-1,2,-1;0,0,-1,2"
