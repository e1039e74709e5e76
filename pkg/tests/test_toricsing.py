import itertools
import random
from fractions import Fraction

import pytest

from voronoifan import kernels, linalg
from voronoifan.cones import PolyCone
from voronoifan.exactcore import QuadForm, SymLatticePoint, pair, rank1, transform
from voronoifan.lp import LinearProgram, lp_solve
from voronoifan.perfection import catalog, perfect_cone
from voronoifan.toricsing import (CANONICAL, NOT_CANONICAL, SMOOTH, TERMINAL, BudgetExceeded,
                                  ToricCone, classify_singularity, gorenstein_height,
                                  is_smooth, lattice_points_below, verify_minima_rank1)

from oracles import A2, A3, D4, laplace_det, random_unimodular

BACKENDS = ["python"] + (["cython"] if kernels.has_compiled() else [])


def tc_of(text):
    return ToricCone.of_perfect_form(QuadForm.parse(text))


def lp_member(cone, coords):
    vecs = [b.coords() for b in cone.generators]
    prog = LinearProgram(c=[0] * len(vecs), a_eq=linalg.transpose(vecs), b_eq=coords)
    return lp_solve(prog).status == "optimal"


def oracle_points(tc, level):
    """Lattice points with z <= level by LP membership (no facet inequalities).

    Since z = 1 on every generator, the region lies in level * conv(0, gens).
    """
    g = tc.cone.g
    gens = [b.coords() for b in tc.cone.generators]
    lo = [min(0, min(level * v[k] for v in gens)) for k in range(len(gens[0]))]
    hi = [max(0, max(level * v[k] for v in gens)) for k in range(len(gens[0]))]
    out = []
    for c in itertools.product(*[range(int(a), int(b) + 1) for a, b in zip(lo, hi)]):
        if not any(c):
            continue
        b = SymLatticePoint.from_coords(g, c)
        if tc.z(b) <= level and lp_member(tc.cone, c):
            out.append(c)
    return sorted(out)


class TestLatticePoints:
    @pytest.mark.parametrize("backend", BACKENDS)
    def test_a2_level_one(self, backend):
        tc = tc_of(A2)
        pts = lattice_points_below(tc, 1, backend=backend)
        assert {p.coords() for p in pts} == {b.coords() for b in tc.cone.generators}

    @pytest.mark.parametrize("backend", BACKENDS)
    def test_a2_level_two(self, backend):
        tc = tc_of(A2)
        pts = [p.coords() for p in lattice_points_below(tc, 2, backend=backend)]
        assert pts == oracle_points(tc, 2)
        assert len(pts) == 9

    def test_ray_face(self):
        tc = tc_of("2,1;1,2")
        k = next(i for i, b in enumerate(tc.cone.generators) if b.coords() == (1, 0, 0))
        face = tc.face([k])
        assert [p.coords() for p in lattice_points_below(face, 1)] == [(1, 0, 0)]

    def test_strict_level(self):
        assert lattice_points_below(tc_of(A2), 1, strict=True) == []

    def test_level_guard(self):
        with pytest.raises(ValueError):
            lattice_points_below(tc_of(A2), 3)

    def test_budget(self, monkeypatch):
        monkeypatch.setenv("VORONOI_BUDGET", "10")
        with pytest.raises(BudgetExceeded):
            lattice_points_below(tc_of(A3), 1)

    def test_height_must_be_one_on_generators(self):
        c = perfect_cone(QuadForm.parse(A2))
        with pytest.raises(ValueError):
            ToricCone(c, QuadForm.parse(A2))


class TestClassification:
    def test_a2_smooth(self):
        tc = tc_of(A2)
        assert abs(laplace_det([b.coords() for b in tc.cone.generators])) == 1
        assert classify_singularity(tc) == SMOOTH

    def test_a3_smooth_and_terminal_criterion(self):
        tc = tc_of(A3)
        # the cone is unimodular, so it is smooth; smooth cones also meet the
        # terminal lattice-point criterion
        assert abs(laplace_det([b.coords() for b in tc.cone.generators])) == 1
        assert classify_singularity(tc) == SMOOTH
        low = {p.coords() for p in lattice_points_below(tc, 1)}
        assert low == {b.coords() for b in tc.cone.generators}

    def test_d4_terminal(self):
        tc = tc_of(D4)
        assert not tc.cone.is_simplicial
        assert classify_singularity(tc) == TERMINAL

    def test_non_simplicial_square_has_no_height(self):
        c = PolyCone.from_roots([(1, 0), (0, 1), (1, 1), (1, -1)])
        assert not c.is_simplicial
        assert gorenstein_height(c) is None

    @pytest.mark.parametrize("roots,kind", [
        ([(1, 0), (0, 1), (1, 1)], SMOOTH),
        ([(1, 1), (1, -1)], CANONICAL),
        ([(1, 0), (0, 1), (1, 2)], CANONICAL),
        ([(1, 0), (1, -1), (2, 3)], NOT_CANONICAL),
    ])
    def test_small_cones_against_oracle(self, roots, kind):
        c = PolyCone.from_roots(roots)
        tc = ToricCone(c, gorenstein_height(c))
        assert classify_singularity(tc) == kind
        pts = oracle_points(tc, 1)
        gens = sorted(b.coords() for b in c.generators)
        below = [p for p in pts if tc.z(SymLatticePoint.from_coords(2, p)) < 1]
        if kind == NOT_CANONICAL:
            assert below
        else:
            assert not below
            assert (pts == gens) == (kind == SMOOTH)

    def test_faces_of_terminal_cones(self):
        tc = ToricCone.of_perfect_form(catalog(3)[0].form)
        for members in tc.cone.faces():
            assert classify_singularity(tc.face(members)) in (SMOOTH, TERMINAL)
        d4 = tc_of(D4)
        for f in d4.cone.facets:
            assert classify_singularity(d4.face(f.members)) in (SMOOTH, TERMINAL)

    @pytest.mark.parametrize("seed", range(4))
    def test_gl_invariance(self, seed):
        rng = random.Random(seed)
        for text in (A3, D4):
            q = QuadForm.parse(text)
            q2 = transform(q, random_unimodular(rng, q.g))
            assert classify_singularity(ToricCone.of_perfect_form(q)) == \
                classify_singularity(ToricCone.of_perfect_form(q2))

    def test_is_smooth_rejects_index(self):
        c = PolyCone.from_generators([rank1((1, 1)), rank1((1, -1))])
        assert c.is_simplicial and not is_smooth(c)


class TestMinimaRankOne:
    @pytest.mark.parametrize("backend", BACKENDS)
    def test_examples(self, backend):
        assert verify_minima_rank1(QuadForm.parse(A2), 3, backend=backend)
        assert verify_minima_rank1(QuadForm.parse(A3), 2, backend=backend)
        assert verify_minima_rank1(QuadForm.parse(A2).scaled(Fraction(1, 2)), 3, backend=backend)

    def test_scan_reaches_the_minimum(self):
        # the scan includes the rank-one minimizers themselves
        q = QuadForm.parse(A2)
        assert pair(q, rank1((1, 0))) == 2
