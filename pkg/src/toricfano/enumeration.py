"""Independent enumerations: reflexive polytopes in low dimension and a brute-force Fano oracle."""

from __future__ import annotations

import logging
from concurrent.futures import ProcessPoolExecutor
from itertools import permutations, product
from math import atan2, gcd

from . import kernels
from .canon import normal_form
from .classify import admissible
from .classlist import ClassList
from .errors import InvariantError, UnsupportedDimensionError
from .polytope import LatticePolytope, from_points

__all__ = ["admissible", "reflexive_classes", "fano_oracle", "oracle_point_sets", "REFLEXIVE_COUNTS"]

log = logging.getLogger(__name__)

REFLEXIVE_COUNTS = {1: 1, 2: 16}
_BOX = 3


def _det2(a, b) -> int:
    return a[0] * b[1] - a[1] * b[0]


def _reflexive_polygon_cycles():
    """Vertex cycles of reflexive polygons with vertices in [-3, 3]^2.

    Vertices are listed by increasing angle, starting from the one of
    smallest angle, so every polygon is produced exactly once. An edge a -> b
    lies at distance one from the origin iff det(a, b) equals its lattice
    length.
    """
    pts = [p for p in product(range(-_BOX, _BOX + 1), repeat=2) if gcd(*p) == 1]
    pts.sort(key=lambda p: atan2(p[1], p[0]))

    def edge_ok(a, b):
        return _det2(a, b) == gcd(b[0] - a[0], b[1] - a[1]) > 0

    def left_turn(a, b, c):
        return _det2((b[0] - a[0], b[1] - a[1]), (c[0] - b[0], c[1] - b[1])) > 0

    out = []

    def extend(path, last_index):
        a = path[-1]
        if len(path) >= 3 and edge_ok(a, path[0]) and left_turn(path[-2], a, path[0]) \
                and left_turn(a, path[0], path[1]):
            out.append(tuple(path))
        for j in range(last_index + 1, len(pts)):
            b = pts[j]
            if not edge_ok(a, b):
                continue
            if len(path) >= 2 and not left_turn(path[-2], a, b):
                continue
            path.append(b)
            extend(path, j)
            path.pop()

    for i, start in enumerate(pts):
        extend([start], i)
    return out


def reflexive_classes(d: int) -> ClassList:
    """All reflexive d-polytopes up to lattice isomorphism, for d in {1, 2}."""
    if d == 1:
        return ClassList.from_polytopes(1, [from_points(1, [(-1,), (1,)])])
    if d != 2:
        raise UnsupportedDimensionError(f"reflexive enumeration is built in only for d <= 2, got {d}")
    polys = [from_points(2, cyc) for cyc in _reflexive_polygon_cycles()]
    classes = ClassList.from_polytopes(2, polys)
    if len(classes) != REFLEXIVE_COUNTS[2] or not all(p.is_reflexive() for p in classes):
        raise InvariantError(f"found {len(classes)} reflexive polygon classes, expected 16")
    return classes


def oracle_point_sets(d: int) -> list[tuple[tuple[int, ...], ...]]:
    """Fano vertex sets inside {-1, 0, 1}^d, one per orbit of the cube's symmetry group."""
    if not 1 <= d <= 3:
        raise UnsupportedDimensionError(f"the oracle is supported for d <= 3, got {d}")
    cube = [p for p in product((-1, 0, 1), repeat=d) if any(p)]
    kmax = 3 * d if d % 2 == 0 else 3 * d - 1
    subsets = kernels.fano_vertex_subsets(cube, d, d + 1, kmax)
    group = [(perm, signs) for perm in permutations(range(d)) for signs in product((1, -1), repeat=d)]
    reps = set()
    for idx in subsets:
        s = [cube[i] for i in idx]
        reps.add(min(tuple(sorted(tuple(signs[k] * p[perm[k]] for k in range(d)) for p in s))
                     for perm, signs in group))
    return sorted(reps)


def _oracle_key(args):
    d, pts = args
    p = from_points(d, pts)
    if not p.is_fano() or p.n_vertices != len(pts):
        raise InvariantError(f"oracle subset {pts} is not a Fano vertex set")
    nf = normal_form(p)
    return nf.key, nf.matrix


def fano_oracle(d: int, jobs: int = 1) -> ClassList:
    """Classify Fano d-polytopes (d <= 3) by exhausting vertex subsets of {-1, 0, 1}^d."""
    tasks = [(d, s) for s in oracle_point_sets(d)]
    log.info("oracle d=%d: %d candidate vertex sets after symmetry reduction", d, len(tasks))
    if jobs > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            keyed = list(pool.map(_oracle_key, tasks, chunksize=max(1, len(tasks) // (4 * jobs))))
    else:
        keyed = [_oracle_key(t) for t in tasks]
    from .canon import NormalForm

    found: dict[str, LatticePolytope] = {}
    for key, matrix in keyed:
        if key not in found:
            found[key] = NormalForm(matrix).polytope()
    return ClassList.from_keyed(d, found, len(keyed) - len(found))
