import random
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from voronoifan import kernels
from voronoifan.exactcore import NotPositiveDefinite, QuadForm, UnimodularMap, transform
from voronoifan.shortvec import minimal_vectors, vectors_below

from oracles import (A4, brute_below, brute_min_vectors, canon, provable_box, random_pd,
                     random_unimodular)

BACKENDS = ["python"] + (["cython"] if kernels.has_compiled() else [])


@pytest.fixture(params=BACKENDS)
def backend(request):
    return request.param


def test_a2(backend):
    mv = minimal_vectors(QuadForm([[2, 1], [1, 2]]), backend=backend)
    assert mv.minimum == 2 and mv.kissing == 6
    assert set(mv.reps) == {(1, 0), (0, 1), (1, -1)}
    assert brute_min_vectors([[2, 1], [1, 2]], 3) == (mv.minimum, sorted(mv.reps))


@pytest.mark.parametrize("g", [1, 2, 3, 5])
def test_identity(g, backend):
    mv = minimal_vectors(QuadForm([[int(i == j) for j in range(g)] for i in range(g)]),
                         backend=backend)
    assert mv.minimum == 1 and mv.kissing == 2 * g and mv.p == g


def test_a4(backend):
    q = QuadForm.parse(A4)
    mv = minimal_vectors(q, backend=backend)
    assert mv.minimum == 2 and mv.kissing == 20
    assert brute_min_vectors(q.integer_gram(), 4) == (mv.minimum, sorted(mv.reps))


def test_vectors_below(backend):
    assert len(vectors_below(QuadForm([[2, 1], [1, 2]]), 2, backend=backend)) == 3
    assert set(vectors_below(QuadForm([[1, 0], [0, 1]]), 2, backend=backend)) == \
        {(1, 0), (0, 1), (1, 1), (1, -1)}
    assert vectors_below(QuadForm([[1, 0], [0, 1]]), Fraction(1, 2), backend=backend) == []


def test_rational_form():
    mv = minimal_vectors(QuadForm([[1, Fraction(1, 2)], [Fraction(1, 2), 1]]))
    assert mv.minimum == 1 and mv.kissing == 6


def test_not_positive_definite():
    with pytest.raises(NotPositiveDefinite):
        minimal_vectors(QuadForm([[1, 1], [1, 1]]))


def test_reps_are_canonical():
    mv = minimal_vectors(QuadForm.parse(A4))
    assert list(mv.reps) == sorted(mv.reps)
    assert all(canon(x) == tuple(x) and x.primitive for x in mv.reps)


@given(st.integers(0, 10 ** 6), st.integers(2, 3))
def test_matches_brute_force(seed, g):
    # random_pd only returns forms whose minimal vectors lie in the scanned cube
    G = random_pd(random.Random(seed), g)
    mv = minimal_vectors(QuadForm(G))
    assert (mv.minimum, sorted(mv.reps)) == brute_min_vectors(G, 6)


@given(st.integers(0, 10 ** 6))
def test_vectors_below_matches_brute_force(seed):
    rng = random.Random(seed)
    G = random_pd(rng, 2)
    bound = rng.randint(1, 20)
    assert sorted(vectors_below(QuadForm(G), bound)) == \
        brute_below(G, bound, provable_box(G, bound))


@given(st.integers(0, 10 ** 6), st.integers(2, 4))
def test_equivariance(seed, g):
    rng = random.Random(seed)
    q = QuadForm(random_pd(rng, g))
    U = UnimodularMap(random_unimodular(rng, g))
    a, b = minimal_vectors(q), minimal_vectors(transform(q, U))
    uinv = U.inverse()
    assert a.minimum == b.minimum
    assert set(b.reps) == {uinv.apply(x).canonical_sign() for x in a.reps}


@given(st.integers(0, 10 ** 6), st.fractions(min_value=Fraction(1, 7), max_value=9))
def test_scaling(seed, c):
    q = QuadForm(random_pd(random.Random(seed), 3))
    a, b = minimal_vectors(q), minimal_vectors(q.scaled(c))
    assert b.minimum == c * a.minimum and b.reps == a.reps


@pytest.mark.skipif(not kernels.has_compiled(), reason="compiled kernels not built")
@given(st.integers(0, 10 ** 6), st.integers(2, 5))
def test_backends_agree(seed, g):
    rng = random.Random(seed)
    G = random_pd(rng, g, entry=2)
    bound = rng.randint(1, 30)
    assert kernels.short_vectors(G, bound, backend="python") == \
        kernels.short_vectors(G, bound, backend="cython")
