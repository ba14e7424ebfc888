"""Time the compiled kernels against their pure-Python twins.

    python3 benchmarks/bench_kernels.py [--repeat N] [--full]

--full adds the d=3 vertex-subset search, which takes about half a minute
on the Python side.
"""

from __future__ import annotations

import argparse
import random
import statistics
import sys
import time
from itertools import product

from toricfano import _pykernels
from toricfano.classify import _double_options, _facet_info, base_simplices, candidates
from toricfano.enumeration import admissible, reflexive_classes

try:
    from toricfano import _ckernels
except ImportError:
    _ckernels = None


def d3_candidates():
    pts = []
    for p in reflexive_classes(2):
        if not admissible(p, 3):
            continue
        opts = _double_options(p, _facet_info(p), 3)
        for base in base_simplices(p):
            pts.extend(c.points for c in candidates(p, base, opts))
    return pts


def random_sets(d, count, seed=1):
    rng = random.Random(seed)
    box = list(product(range(-2, 3), repeat=d))
    return [sorted(set(rng.sample(box, rng.randint(d + 1, 3 * d)))) for _ in range(count)]


def timed(fn, repeat):
    runs = []
    for _ in range(repeat):
        t = time.perf_counter()
        fn()
        runs.append(time.perf_counter() - t)
    return statistics.median(runs)


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--full", action="store_true")
    args = ap.parse_args(argv)
    if _ckernels is None:
        print("compiled extension not built; nothing to compare", file=sys.stderr)
        return 1

    cands = d3_candidates()
    sets4 = random_sets(4, 300)
    cube2 = [p for p in product((-1, 0, 1), repeat=2) if any(p)]
    cube3 = [p for p in product((-1, 0, 1), repeat=3) if any(p)]
    cases = [
        (f"fano_hull, {len(cands)} d=3 classification candidates",
         lambda k: [k.fano_hull(c, 3) for c in cands]),
        ("facet_data, 300 random point sets in Z^4",
         lambda k: [k.facet_data(s, 4) for s in sets4]),
        ("fano_vertex_subsets, d=2 cube",
         lambda k: k.fano_vertex_subsets(cube2, 2, 3, 6)),
    ]
    if args.full:
        cases.append(("fano_vertex_subsets, d=3 cube", lambda k: k.fano_vertex_subsets(cube3, 3, 4, 8)))

    print(f"{'kernel':<52} {'python':>10} {'cython':>10} {'speedup':>8}")
    for name, fn in cases:
        py = timed(lambda: fn(_pykernels), 1 if "d=3 cube" in name else args.repeat)
        cy = timed(lambda: fn(_ckernels), args.repeat)
        print(f"{name:<52} {py:>9.3f}s {cy:>9.3f}s {py / cy:>7.1f}x")
    return 0


if __name__ == "__main__":
    sys.exit(main())
