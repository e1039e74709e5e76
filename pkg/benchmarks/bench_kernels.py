"""Time the compiled and pure-Python kernels on the same inputs.

    python benchmarks/bench_kernels.py [--repeat N]
"""
import argparse
import random
import timeit

from voronoifan import kernels
from voronoifan.perfection import root_form_A
from voronoifan.toricsing import ToricCone, _integer_height


def _short_vectors_case():
    A8 = [[int(v) for v in row] for row in root_form_A(8).gram]
    return "short_vectors (A8, norm <= 6)", lambda b: kernels.short_vectors(A8, 6, backend=b)


def _box_scan_case():
    tc = ToricCone.of_perfect_form(root_form_A(3))
    h, den = _integer_height(tc)
    ineqs = [f.normal for f in tc.cone.facets]
    d = len(h)
    return ("box_scan (A3 cone, level 2)",
            lambda b: kernels.box_scan([-2] * d, [2] * d, h, 2 * den, ineqs, [], backend=b))


def _adjacency_case():
    rng = random.Random(1)
    masks = [rng.getrandbits(36) | rng.getrandbits(36) for _ in range(400)]
    idx = list(range(400))
    return ("adjacent_pairs (400 rays, 36 rows)",
            lambda b: kernels.adjacent_pairs(masks, idx[:200], idx[200:], 20, backend=b))


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args(argv)
    if not kernels.has_compiled():
        print("compiled kernels are not built; only the Python backend is timed")
    backends = ["python"] + (["cython"] if kernels.has_compiled() else [])
    print(f"{'kernel':40s} " + " ".join(f"{b:>10s}" for b in backends) + "   speedup")
    for name, fn in (_short_vectors_case(), _box_scan_case(), _adjacency_case()):
        times = []
        results = []
        for b in backends:
            results.append(fn(b))
            times.append(min(timeit.repeat(lambda: fn(b), number=1, repeat=args.repeat)))
        if len(results) == 2 and sorted(map(tuple, results[0])) != sorted(map(tuple, results[1])):
            raise SystemExit(f"{name}: backends disagree")
        ratio = f"{times[0] / times[1]:8.1f}x" if len(times) == 2 else ""
        print(f"{name:40s} " + " ".join(f"{t:9.4f}s" for t in times) + f"  {ratio}")


if __name__ == "__main__":
    main()
