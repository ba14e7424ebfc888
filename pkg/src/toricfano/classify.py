"""Reconstruct all Fano d-polytopes from the reflexive (d-1)-polytopes.

Every Fano d-polytope P other than the simplex has a facet F whose vertices
e_1..e_d are a lattice basis and from which every vertex has integral
distance at most d. Projecting P along e_d gives a reflexive polytope P',
the projection determines the first d-1 coordinates of each vertex, and the
distance bound leaves finitely many choices for the last one. The pipeline
below enumerates those choices for every admissible P' and keeps the hulls
that are Fano.
"""

from __future__ import annotations

import logging
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, Iterator, Mapping, Sequence

from . import kernels
from .canon import normal_form
from .classlist import ClassList
from .errors import DegeneracyError, DomainError, UnsupportedDimensionError
from .intlin import (
    IntVector,
    UnimodularMap,
    determinant,
    kernel_primitive,
    simplex_volume,
    unimodular_inverse,
)
from .polytope import Facet, LatticePolytope, free_sum, from_points, simplex

log = logging.getLogger(__name__)

HEXAGON = ((-1, -1), (-1, 0), (0, -1), (0, 1), (1, 0), (1, 1))


@dataclass(frozen=True)
class CircuitRelation:
    """sum(points[i] for i in I) == sum(k_j * points[j] for j in J), indices 0-based."""

    I: tuple[int, ...]
    J: tuple[int, ...]
    k: tuple[int, ...]

    @property
    def all_ones(self) -> bool:
        return all(x == 1 for x in self.k)


@dataclass(frozen=True)
class BaseSimplex:
    """d-1 lattice points of a facet of P' that are sent to e_1..e_{d-1}."""

    source_facet: int
    points: tuple[IntVector, ...]
    transform: UnimodularMap


@dataclass(frozen=True)
class Candidate:
    points: tuple[IntVector, ...]
    double_points: tuple[IntVector, ...] = ()


def seed_polytopes(d: int) -> list[LatticePolytope]:
    """The simplex, plus for even d the product of d/2 copies of the hexagon's variety."""
    seeds = [simplex(d)]
    if d % 2 == 0:
        hexagon = from_points(2, HEXAGON)
        seeds.append(free_sum(*[hexagon] * (d // 2)) if d > 2 else hexagon)
    return seeds


def _dependency(points: Sequence[Sequence[int]]) -> IntVector:
    rows = [list(col) for col in zip(*points)]
    rows.append([1] * len(points))
    return kernel_primitive(rows)


def _read_off(lam: Sequence[int]) -> list[CircuitRelation]:
    out = []
    for sign in (1, -1):
        s = [sign * x for x in lam]
        pos = tuple(i for i, x in enumerate(s) if x > 0)
        neg = tuple(i for i, x in enumerate(s) if x < 0)
        if pos and neg and all(s[i] == 1 for i in pos):
            out.append(CircuitRelation(pos, neg, tuple(-s[j] for j in neg)))
    return out


def circuit_relations(points: Sequence[Sequence[int]]) -> list[CircuitRelation]:
    """Relations sum_I v_i = sum_J k_j v_j among points with a one-dimensional affine dependency.

    A relation is kept only if sum(k) == |I| == normalized volume of the
    hull, measured in the lattice of the points' affine span. Raises
    DegeneracyError unless the points' affine dependencies form a line.
    """
    pts = [tuple(p) for p in points]
    lam = _dependency(pts)
    rels = _read_off(lam)
    if not rels:
        return []
    vol = sum(simplex_volume(pts[:i] + pts[i + 1:]) for i, x in enumerate(lam) if x > 0)
    return [r for r in rels if sum(r.k) == len(r.I) == vol]


@dataclass
class _FacetInfo:
    facet: Facet
    points: tuple[IntVector, ...]
    kind: str  # "unimodular", "circuit" or "bad"
    relations: list[CircuitRelation] = field(default_factory=list)


def _facet_info(p: LatticePolytope) -> list[_FacetInfo]:
    d = p.dim + 1
    out = []
    for f in p.facets():
        pts = p.facet_points(f)
        if len(pts) == d - 1 and determinant(pts) in (1, -1):
            out.append(_FacetInfo(f, pts, "unimodular"))
        elif len(pts) == d:
            try:
                rels = circuit_relations(pts)
            except DegeneracyError:
                rels = []
            out.append(_FacetInfo(f, pts, "circuit" if rels else "bad", rels))
        else:
            out.append(_FacetInfo(f, pts, "bad"))
    return out


def admissible(p: LatticePolytope, d: int) -> bool:
    """Can p be the projection of a non-simplex Fano d-polytope along a vertex of a good facet?"""
    if p.dim != d - 1 or not p.is_reflexive():
        return False
    if len(p.lattice_points()) > 3 * d - 1:
        return False
    return all(info.kind != "bad" for info in _facet_info(p))


def base_simplices(p: LatticePolytope) -> list[BaseSimplex]:
    d = p.dim + 1
    out = []
    for fi, info in enumerate(_facet_info(p)):
        if info.kind == "unimodular":
            choices = [info.points]
        elif info.kind == "circuit":
            choices = [info.points[:i] + info.points[i + 1:]
                       for rel in info.relations for i in rel.I]
        else:
            continue
        for pts in choices:
            pts = tuple(sorted(pts))
            if determinant(pts) not in (1, -1):
                log.debug("skipping non-basis simplex %s of facet %s", pts, info.facet.normal)
                continue
            # columns of the basis matrix are the chosen points; its inverse sends them to e_i
            basis = tuple(zip(*pts)) if d > 1 else ()
            out.append(BaseSimplex(fi, pts, UnimodularMap(unimodular_inverse(basis))))
    return out


def _k_vectors(n_free: int, d: int) -> Iterator[tuple[int, ...]]:
    acc: list[int] = []

    def rec(i: int, budget: int, zeros: int):
        if i == n_free:
            yield tuple(acc)
            return
        for k in range(min(d - 1, budget) + 1):
            if k == 0 and zeros == 0:
                continue
            acc.append(k)
            yield from rec(i + 1, budget - k, zeros - (k == 0))
            acc.pop()

    yield from rec(0, d, d)


def _basis_points(m: int) -> set[IntVector]:
    pts = {tuple([0] * m)}
    pts.update(tuple(int(i == j) for j in range(m)) for i in range(m))
    return pts


def k_assignments(points: Iterable[Sequence[int]], d: int) -> Iterator[dict[IntVector, int]]:
    """All admissible last-coordinate offsets for the lattice points of a transformed P'.

    The origin and e_1..e_{d-1} are pinned to -1; every other point gets a
    value in 0..d-1 with total at most d and at most d zeros.
    """
    pts = sorted(tuple(p) for p in points)
    fixed = _basis_points(d - 1)
    free = [p for p in pts if p not in fixed]
    for kv in _k_vectors(len(free), d):
        k = {p: -1 for p in pts if p in fixed}
        k.update(zip(free, kv))
        yield k


def lift_point(w: Sequence[int], k: int) -> IntVector:
    return tuple(w) + (-sum(w) - k,)


def lift(points: Iterable[Sequence[int]], k: Mapping[IntVector, int]) -> list[IntVector]:
    return [lift_point(w, k[tuple(w)]) for w in points]


def _double_options(p: LatticePolytope, infos: list[_FacetInfo], d: int) -> list[tuple[IntVector, ...]]:
    """Sets of double points allowed by the facet structure of p (original coordinates)."""
    pts = p.lattice_points()
    zero = tuple([0] * p.dim)
    on_circuit = {x for info in infos if info.kind == "circuit" for x in info.points}
    unimodular = [set(info.points) for info in infos if info.kind == "unimodular"]
    zero_ok = all(any(r.all_ones for r in info.relations) for info in infos if info.kind == "circuit")
    allowed = [x for x in pts if x != zero and x not in on_circuit]
    cap = 3 * d - 1 - len(pts)
    options = []
    for size in range(3):
        for combo in combinations(allowed, size):
            if size == 2 and combo[1] != tuple(-a for a in combo[0]):
                continue
            if any(len(face.intersection(combo)) > 1 for face in unimodular):
                continue
            for with_zero in (False, True):
                if with_zero and not zero_ok:
                    continue
                s = combo + ((zero,) if with_zero else ())
                if len(s) <= min(3, cap):
                    options.append(s)
    return options


def double_point_choices(
    points: Sequence[IntVector],
    lifted: Mapping[IntVector, IntVector],
    options: Iterable[tuple[IntVector, ...]],
) -> Iterator[Candidate]:
    """Extend the lifted points by the second vertex over each chosen double point."""
    m = len(points[0])
    e_d = tuple([0] * m) + (1,)
    minus_e_d = tuple([0] * m) + (-1,)
    base = tuple(lifted[p] for p in points)
    for s in options:
        nonzero = [x for x in s if any(x)]
        if len(nonzero) == 2:
            a, b = lifted[nonzero[0]], lifted[nonzero[1]]
            if tuple(x + y for x, y in zip(a, b)) != e_d:
                continue
        extra = [tuple(x - y for x, y in zip(lifted[w], e_d)) for w in nonzero]
        if len(nonzero) < len(s):
            extra.append(minus_e_d)
        yield Candidate(base + tuple(extra), s)


def candidates(p: LatticePolytope, base: BaseSimplex, options=None) -> Iterator[Candidate]:
    """Every point set V the algorithm builds for P' = p and one base simplex."""
    d = p.dim + 1
    if options is None:
        options = _double_options(p, _facet_info(p), d)
    t = base.transform
    pts = sorted(t.apply(x) for x in p.lattice_points())
    opts = [tuple(t.apply(x) for x in s) for s in options]
    fixed = _basis_points(d - 1)
    free = [x for x in pts if x not in fixed]
    for kv in _k_vectors(len(free), d):
        lifted = {x: lift_point(x, -1) for x in fixed}
        lifted.update((x, lift_point(x, k)) for x, k in zip(free, kv))
        yield from double_point_choices(pts, lifted, opts)


@dataclass
class ClassifyStats:
    inputs: int = 0
    admissible: int = 0
    base_simplices: int = 0
    candidates: int = 0
    fano: int = 0
    distinct_vertex_sets: int = 0
    classes: int = 0

    def merge(self, other: "ClassifyStats") -> None:
        for name in ("base_simplices", "candidates", "fano", "distinct_vertex_sets"):
            setattr(self, name, getattr(self, name) + getattr(other, name))


def _run_task(task):
    """Worker: all candidates of one admissible P'. Returns ({key: matrix}, stats)."""
    dim, vertices = task
    p = from_points(dim, vertices)
    d = dim + 1
    stats = ClassifyStats()
    found: dict[str, tuple] = {}
    seen_sets = set()
    infos = _facet_info(p)
    options = _double_options(p, infos, d)
    for base in base_simplices(p):
        stats.base_simplices += 1
        for cand in candidates(p, base, options):
            stats.candidates += 1
            if not kernels.fano_hull(cand.points, d):
                continue
            stats.fano += 1
            poly = from_points(d, cand.points)
            if poly.vertices in seen_sets:
                continue
            seen_sets.add(poly.vertices)
            nf = normal_form(poly)
            found.setdefault(nf.key, nf.matrix)
    stats.distinct_vertex_sets = len(seen_sets)
    return found, stats


def default_jobs() -> int:
    env = os.environ.get("FANO_JOBS")
    if env:
        return max(1, int(env))
    return os.cpu_count() or 1


def run_classification(
    d: int,
    reflexive: Iterable[LatticePolytope] | None,
    jobs: int = 1,
) -> tuple[ClassList, ClassifyStats]:
    """Classify Fano d-polytopes from a complete list of reflexive (d-1)-polytopes.

    An incomplete input list silently yields an incomplete output. For d = 1
    the list is ignored: the segment seed is the only class.
    """
    if d < 1:
        raise UnsupportedDimensionError("dimension must be positive")
    stats = ClassifyStats()
    found: dict[str, tuple] = {}
    for s in seed_polytopes(d):
        nf = normal_form(s)
        found[nf.key] = nf.matrix
    tasks = []
    if d > 1:
        if reflexive is None:
            raise DomainError("a reflexive (d-1)-polytope list is required for d > 1")
        for p in reflexive:
            stats.inputs += 1
            if p.dim != d - 1:
                raise DomainError(f"input polytope has dimension {p.dim}, expected {d - 1}")
            if admissible(p, d):
                stats.admissible += 1
                tasks.append((p.dim, p.vertices))
    if jobs > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_run_task, tasks, chunksize=max(1, len(tasks) // (4 * jobs))))
    else:
        results = [_run_task(t) for t in tasks]
    for part, st in results:
        stats.merge(st)
        for key, matrix in part.items():
            found.setdefault(key, matrix)
    from .canon import NormalForm

    classes = ClassList.from_keyed(d, {k: NormalForm(m).polytope() for k, m in found.items()})
    stats.classes = len(classes)
    return classes, stats


def classify(d: int, reflexive_list: Iterable[LatticePolytope] | None, jobs: int = 1) -> ClassList:
    return run_classification(d, reflexive_list, jobs)[0]
