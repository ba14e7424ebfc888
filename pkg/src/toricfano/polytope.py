"""Full-dimensional lattice polytopes with the origin in their interior."""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from math import gcd
from typing import Iterable, Sequence

from . import kernels
from .errors import (
    DimensionError,
    DomainError,
    FanoError,
    InteriorityError,
    InvariantError,
    ReflexivityError,
)
from .intlin import (
    IntVector,
    UnimodularMap,
    as_vector,
    complete_to_basis,
    determinant,
    dot,
    rank,
    vector_gcd,
)


@dataclass(frozen=True)
class Facet:
    """A facet {x : <normal, x> = -denominator} of a lattice polytope.

    ``normal`` is the primitive inner normal and ``vertex_indices`` index
    into the owning polytope's vertex list.
    """

    normal: IntVector
    vertex_indices: tuple[int, ...]
    denominator: int


def pairing(f: Facet, v: Sequence[int]) -> int:
    return dot(f.normal, v)


def integral_distance(f: Facet, v: Sequence[int]) -> int:
    """Lattice distance of ``v`` from a facet at height one."""
    return dot(f.normal, v) + 1


def _affine_rank(points: Sequence[Sequence[int]]) -> int:
    if not points:
        return -1
    p0 = points[0]
    return rank([[a - b for a, b in zip(p, p0)] for p in points[1:]])


class LatticePolytope:
    """Convex hull of lattice points, stored by its vertices in lexicographic order.

    Build instances with :func:`from_points`; the constructor trusts its
    arguments.
    """

    __slots__ = ("dim", "vertices", "_facets", "_points", "_dual")

    def __init__(self, dim: int, vertices: tuple[IntVector, ...], facets: tuple[Facet, ...]):
        self.dim = dim
        self.vertices = vertices
        self._facets = facets
        self._points = None
        self._dual = None

    def __repr__(self) -> str:
        return f"LatticePolytope({self.dim}, {list(self.vertices)})"

    def __eq__(self, other) -> bool:
        if not isinstance(other, LatticePolytope):
            return NotImplemented
        return self.dim == other.dim and self.vertices == other.vertices

    def __hash__(self) -> int:
        return hash((self.dim, self.vertices))

    @property
    def n_vertices(self) -> int:
        return len(self.vertices)

    def facets(self) -> tuple[Facet, ...]:
        return self._facets

    def is_reflexive(self) -> bool:
        return all(f.denominator == 1 for f in self._facets)

    def is_simplicial(self) -> bool:
        return all(len(f.vertex_indices) == self.dim for f in self._facets)

    def is_simplex(self) -> bool:
        return len(self.vertices) == self.dim + 1

    def is_fano(self) -> bool:
        """Every facet is at height one and its vertices form a lattice basis."""
        for f in self._facets:
            if f.denominator != 1 or len(f.vertex_indices) != self.dim:
                return False
            if determinant([self.vertices[i] for i in f.vertex_indices]) not in (1, -1):
                return False
        return True

    def dual(self) -> "LatticePolytope":
        if self._dual is None:
            if not self.is_reflexive():
                raise ReflexivityError("dual of a non-reflexive polytope is not a lattice polytope")
            self._dual = from_points(self.dim, [f.normal for f in self._facets])
        return self._dual

    def lattice_points(self) -> tuple[IntVector, ...]:
        """All lattice points of the polytope in lexicographic order."""
        if self._points is None:
            cols = list(zip(*self.vertices))
            lo = [min(c) for c in cols]
            hi = [max(c) for c in cols]
            normals = [f.normal for f in self._facets]
            offsets = [-f.denominator for f in self._facets]
            pts = kernels.lattice_points(normals, offsets, lo, hi)
            self._points = tuple(tuple(int(x) for x in p) for p in pts)
        return self._points

    def facet_points(self, f: Facet) -> tuple[IntVector, ...]:
        """Lattice points on a facet."""
        return tuple(p for p in self.lattice_points() if dot(f.normal, p) == -f.denominator)

    def transform(self, u: UnimodularMap) -> "LatticePolytope":
        return from_points(self.dim, [u.apply(v) for v in self.vertices])

    def normalized_volume(self) -> int:
        """d! times the Euclidean volume.

        Cones from the origin over a pulling triangulation of each facet;
        every face is pulled from its lexicographically smallest vertex.
        """
        d = self.dim
        facet_sets = [frozenset(f.vertex_indices) for f in self._facets]
        memo: dict[frozenset, list[tuple[int, ...]]] = {}

        def subfaces(face: frozenset, k: int) -> set[frozenset]:
            out = set()
            for fs in facet_sets:
                g = face & fs
                if g != face and len(g) >= k and _affine_rank([self.vertices[i] for i in sorted(g)]) == k - 1:
                    out.add(g)
            return out

        def triangulate(face: frozenset, k: int) -> list[tuple[int, ...]]:
            if face in memo:
                return memo[face]
            if k == 0 or len(face) == k + 1:
                simplices = [tuple(sorted(face))]
            else:
                apex = min(face)
                simplices = []
                for g in sorted(subfaces(face, k), key=sorted):
                    if apex not in g:
                        simplices.extend((apex,) + s for s in triangulate(g, k - 1))
            memo[face] = simplices
            return simplices

        total = 0
        for fs in facet_sets:
            for s in triangulate(fs, d - 1):
                total += abs(determinant([self.vertices[i] for i in s]))
        return total

    def dual_edge_lengths(self) -> list[int]:
        """Lattice lengths of the edges of the dual, one per adjacent facet pair."""
        if not self.is_simplicial():
            raise DomainError("dual edge lengths are defined here for simplicial polytopes")
        fs = self._facets
        out = []
        for a, b in combinations(range(len(fs)), 2):
            shared = set(fs[a].vertex_indices) & set(fs[b].vertex_indices)
            if len(shared) == self.dim - 1:
                diff = [x - y for x, y in zip(fs[a].normal, fs[b].normal)]
                out.append(vector_gcd(diff))
        return out

    def vertex_index(self, v: Sequence[int]) -> int:
        return self.vertices.index(tuple(v))


def from_points(dim: int, points: Iterable[Sequence[int]]) -> LatticePolytope:
    """Convex hull of ``points``; keeps only the vertices, sorted lexicographically.

    Raises DimensionError when the hull is not full-dimensional and
    InteriorityError when the origin is not strictly inside.
    """
    if dim < 1:
        raise DimensionError("dimension must be at least 1")
    pts = sorted({as_vector(p) for p in points})
    if any(len(p) != dim for p in pts):
        raise DimensionError(f"points must have {dim} coordinates")
    if _affine_rank(pts) != dim:
        raise DimensionError("points do not span the ambient space")
    raw = kernels.facet_data(pts, dim)
    if any(c >= 0 for _, c, _ in raw):
        raise InteriorityError("origin is not in the interior of the hull")
    incident: list[list[int]] = [[] for _ in pts]
    for j, (_, _, inc) in enumerate(raw):
        for i in inc:
            incident[i].append(j)
    keep = [i for i in range(len(pts))
            if len(incident[i]) >= dim and rank([raw[j][0] for j in incident[i]]) == dim]
    new_index = {old: new for new, old in enumerate(keep)}
    facets = []
    for normal, c, inc in raw:
        verts = tuple(sorted(new_index[i] for i in inc if i in new_index))
        facets.append(Facet(tuple(int(x) for x in normal), verts, -int(c)))
    facets.sort(key=lambda f: f.normal)
    return LatticePolytope(dim, tuple(pts[i] for i in keep), tuple(facets))


def simplex(d: int) -> LatticePolytope:
    """The Fano simplex conv(e_1, ..., e_d, -e_1 - ... - e_d)."""
    pts = [tuple(int(i == j) for j in range(d)) for i in range(d)]
    pts.append(tuple([-1] * d))
    return from_points(d, pts)


def free_sum(*factors: LatticePolytope) -> LatticePolytope:
    """conv of the factors' vertices placed in complementary coordinate blocks.

    Its face fan is the product of the factors' fans, so it is the polytope
    of the product variety.
    """
    dim = sum(p.dim for p in factors)
    pts = []
    offset = 0
    for p in factors:
        for v in p.vertices:
            pts.append((0,) * offset + v + (0,) * (dim - offset - p.dim))
        offset += p.dim
    return from_points(dim, pts)


@dataclass(frozen=True)
class ProjectionResult:
    image: LatticePolytope
    fiber_map: dict = field(hash=False, compare=False)
    projected_vertex: IntVector
    transform: UnimodularMap

    def double_points(self) -> list[IntVector]:
        """Image lattice points with two preimage vertices (origin included)."""
        return [x for x, fib in self.fiber_map.items() if len(fib) == 2]


def project_along_vertex(p: LatticePolytope, vertex_index: int) -> ProjectionResult:
    """Image of a Fano polytope in Z^d / Z v, with the vertex fibers over each lattice point."""
    if p.dim < 2:
        raise DomainError("projection needs dimension at least 2")
    if not p.is_fano():
        raise DomainError("projection along a vertex requires a Fano polytope")
    v = p.vertices[vertex_index]
    u = complete_to_basis(v)
    images = [u.apply(x)[:-1] for x in p.vertices]
    try:
        image = from_points(p.dim - 1, images)
    except FanoError as exc:
        raise InvariantError(f"projection along {v} is not a valid polytope: {exc}") from exc
    if not image.is_reflexive():
        raise InvariantError(f"projection along {v} is not reflexive")
    fibers: dict[IntVector, list[IntVector]] = {x: [] for x in image.lattice_points()}
    for x, img in zip(p.vertices, images):
        if img not in fibers:
            raise InvariantError(f"vertex {x} projects outside the image lattice points")
        fibers[img].append(x)
    neg = tuple(-a for a in v)
    zero = (0,) * (p.dim - 1)
    for x, fib in fibers.items():
        fib.sort()
        if not fib:
            raise InvariantError(f"lattice point {x} of the projection has no vertex above it")
        if x == zero:
            if v not in fib or not set(fib) <= {v, neg}:
                raise InvariantError(f"fiber over the origin is {fib}")
        elif len(fib) > 2:
            raise InvariantError(f"fiber over {x} has {len(fib)} vertices")
        elif len(fib) == 2:
            diff = tuple(a - b for a, b in zip(fib[0], fib[1]))
            if diff != v and diff != neg:
                raise InvariantError(f"fiber over {x} does not differ by the projected vertex")
    return ProjectionResult(image, fibers, v, u)
