import itertools
import random

import pytest
from hypothesis import given, strategies as st

import voronoifan
from voronoifan import _kernels_py, kernels

compiled = pytest.mark.skipif(not kernels.has_compiled(), reason="compiled kernels not built")


def test_backend_name():
    assert voronoifan.BACKEND in ("python", "cython")
    assert _kernels_py.BACKEND == "python"


def _brute_box(lo, hi, height, level, ineqs, eqs):
    out = []
    for x in itertools.product(*[range(a, b + 1) for a, b in zip(lo, hi)]):
        if not any(x):
            continue
        dot = lambda r: sum(a * b for a, b in zip(r, x))  # noqa: E731
        if dot(height) <= level and all(dot(r) >= 0 for r in ineqs) and all(dot(r) == 0 for r in eqs):
            out.append(x)
    return sorted(out)


@given(st.integers(0, 10 ** 6))
def test_python_box_scan_matches_brute(seed):
    rng = random.Random(seed)
    d = rng.randint(1, 4)
    lo = [rng.randint(-2, 0) for _ in range(d)]
    hi = [rng.randint(0, 2) for _ in range(d)]
    h = [rng.randint(0, 3) for _ in range(d)]
    ineqs = [[rng.randint(-2, 2) for _ in range(d)] for _ in range(rng.randint(0, 3))]
    eqs = [[rng.randint(-1, 1) for _ in range(d)] for _ in range(rng.randint(0, 1))]
    level = rng.randint(0, 6)
    assert sorted(_kernels_py.box_scan(lo, hi, h, level, ineqs, eqs)) == \
        _brute_box(lo, hi, h, level, ineqs, eqs)


@compiled
@given(st.integers(0, 10 ** 6))
def test_box_scan_backends_agree(seed):
    rng = random.Random(seed)
    d = rng.randint(1, 5)
    lo = [rng.randint(-2, 0) for _ in range(d)]
    hi = [rng.randint(0, 2) for _ in range(d)]
    h = [rng.randint(-1, 3) for _ in range(d)]
    ineqs = [[rng.randint(-2, 2) for _ in range(d)] for _ in range(rng.randint(0, 3))]
    eqs = [[rng.randint(-1, 1) for _ in range(d)] for _ in range(rng.randint(0, 1))]
    level = rng.randint(-1, 6)
    a = kernels.box_scan(lo, hi, h, level, ineqs, eqs, backend="python")
    b = kernels.box_scan(lo, hi, h, level, ineqs, eqs, backend="cython")
    assert sorted(a) == sorted(b)


@compiled
def test_large_entries_fall_back_to_python():
    big = 1 << 40
    G = [[big, 0], [0, big]]
    assert kernels.short_vectors(G, big, backend="cython") == \
        kernels.short_vectors(G, big, backend="python")


def test_unknown_compiled_request(monkeypatch):
    monkeypatch.setattr(kernels, "_compiled", None)
    with pytest.raises(RuntimeError):
        kernels.short_vectors([[1]], 1, backend="cython")


def _brute_adjacent(masks, pos, neg, need):
    out = []
    for p, n in itertools.product(pos, neg):
        z = masks[p] & masks[n]
        if bin(z).count("1") < need:
            continue
        if all(t in (p, n) or (m & z) != z for t, m in enumerate(masks)):
            out.append((p, n))
    return out


def _random_masks(seed, width=64):
    rng = random.Random(seed)
    masks = [rng.getrandbits(width) for _ in range(rng.randint(2, 25))]
    idx = list(range(len(masks)))
    rng.shuffle(idx)
    cut = rng.randint(1, len(idx) - 1)
    return masks, sorted(idx[:cut]), sorted(idx[cut:]), rng.randint(0, 20)


@given(st.integers(0, 10 ** 6))
def test_python_adjacent_pairs_matches_brute(seed):
    masks, pos, neg, need = _random_masks(seed, width=12)
    assert _kernels_py.adjacent_pairs(masks, pos, neg, need) == _brute_adjacent(masks, pos, neg, need)


@compiled
@given(st.integers(0, 10 ** 6))
def test_adjacent_pairs_backends_agree(seed):
    masks, pos, neg, need = _random_masks(seed)
    assert kernels.adjacent_pairs(masks, pos, neg, need, backend="cython") == \
        kernels.adjacent_pairs(masks, pos, neg, need, backend="python")


@compiled
def test_wide_masks_fall_back_to_python():
    masks = [(1 << 70) | 3, (1 << 70) | 5, 6]
    assert kernels.adjacent_pairs(masks, [0], [1, 2], 1, backend="cython") == \
        _brute_adjacent(masks, [0], [1, 2], 1)
