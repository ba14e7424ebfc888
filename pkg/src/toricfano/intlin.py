"""Exact integer linear algebra on small dense matrices.

Vectors are tuples of Python ints and matrices are tuples of row tuples, so
every value is hashable and arbitrary precision. The Hermite normal form used
throughout the package is the row-style form obtained by left multiplication
with a unimodular matrix:

    h = u @ m,  pivot columns j_1 < ... < j_r,  h[i][j_i] > 0,
    h[k][j_i] == 0 for k > i,  0 <= h[k][j_i] < h[i][j_i] for k < i.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import reduce
from itertools import combinations
from math import gcd
from typing import Iterable, Sequence

from .errors import DegeneracyError, DimensionError, DomainError, RankError

IntVector = tuple[int, ...]
IntMatrix = tuple[IntVector, ...]


def as_vector(v: Iterable[int]) -> IntVector:
    return tuple(int(x) for x in v)


def as_matrix(rows: Iterable[Iterable[int]]) -> IntMatrix:
    m = tuple(as_vector(r) for r in rows)
    if m and any(len(r) != len(m[0]) for r in m):
        raise DimensionError("ragged matrix")
    return m


def shape(m: Sequence[Sequence[int]]) -> tuple[int, int]:
    return len(m), (len(m[0]) if m else 0)


def identity(n: int) -> IntMatrix:
    return tuple(tuple(int(i == j) for j in range(n)) for i in range(n))


def transpose(m: Sequence[Sequence[int]]) -> IntMatrix:
    return tuple(zip(*m)) if m else ()


def dot(a: Sequence[int], b: Sequence[int]) -> int:
    return sum(x * y for x, y in zip(a, b))


def matvec(m: Sequence[Sequence[int]], v: Sequence[int]) -> IntVector:
    return tuple(dot(row, v) for row in m)


def matmul(a: Sequence[Sequence[int]], b: Sequence[Sequence[int]]) -> IntMatrix:
    bt = transpose(b)
    return tuple(tuple(dot(row, col) for col in bt) for row in a)


def vector_gcd(v: Iterable[int]) -> int:
    return reduce(gcd, v, 0)


def determinant(m: Sequence[Sequence[int]]) -> int:
    """Exact determinant by fraction-free (Bareiss) elimination."""
    n, k = shape(m)
    if n != k:
        raise DimensionError(f"determinant of a non-square {n}x{k} matrix")
    if n == 0:
        return 1
    a = [list(r) for r in m]
    sign = 1
    prev = 1
    for c in range(n - 1):
        if a[c][c] == 0:
            for r in range(c + 1, n):
                if a[r][c] != 0:
                    a[c], a[r] = a[r], a[c]
                    sign = -sign
                    break
            else:
                return 0
        p = a[c][c]
        for r in range(c + 1, n):
            arc = a[r][c]
            row_r, row_c = a[r], a[c]
            for j in range(c + 1, n):
                row_r[j] = (row_r[j] * p - arc * row_c[j]) // prev
        prev = p
    return sign * a[n - 1][n - 1]


def rank(m: Sequence[Sequence[int]]) -> int:
    return len(_echelon(m)[2])


def primitive(v: Sequence[int]) -> IntVector:
    """Divide ``v`` by the gcd of its entries, keeping the sign."""
    g = vector_gcd(v)
    if g == 0:
        raise DomainError("zero vector has no primitive multiple")
    return tuple(x // g for x in v)


def is_primitive(v: Sequence[int]) -> bool:
    return vector_gcd(v) == 1


def _echelon(m: Sequence[Sequence[int]]) -> tuple[list[list[int]], list[list[int]], list[int]]:
    """Row-style Hermite reduction of an arbitrary-rank matrix.

    Returns ``(h, u, pivots)`` with ``h == u @ m``; rows past ``len(pivots)``
    of ``h`` are zero.
    """
    rows, cols = shape(m)
    h = [list(r) for r in m]
    u = [list(r) for r in identity(rows)]

    def sub(i: int, r: int, q: int) -> None:
        hi, hr, ui, ur = h[i], h[r], u[i], u[r]
        for t in range(cols):
            hi[t] -= q * hr[t]
        for t in range(rows):
            ui[t] -= q * ur[t]

    r = 0
    pivots: list[int] = []
    for j in range(cols):
        if r == rows:
            break
        found = False
        while True:
            nz = [i for i in range(r, rows) if h[i][j] != 0]
            if not nz:
                break
            found = True
            p = min(nz, key=lambda i: abs(h[i][j]))
            h[r], h[p] = h[p], h[r]
            u[r], u[p] = u[p], u[r]
            clean = True
            for i in range(r + 1, rows):
                if h[i][j]:
                    sub(i, r, h[i][j] // h[r][j])
                    if h[i][j]:
                        clean = False
            if clean:
                break
        if not found:
            continue
        if h[r][j] < 0:
            h[r] = [-x for x in h[r]]
            u[r] = [-x for x in u[r]]
        for i in range(r):
            q = h[i][j] // h[r][j]
            if q:
                sub(i, r, q)
        pivots.append(j)
        r += 1
    return h, u, pivots


@dataclass(frozen=True)
class UnimodularMap:
    """A lattice automorphism of Z^d, acting on column vectors from the left."""

    matrix: IntMatrix

    def __post_init__(self) -> None:
        m = as_matrix(self.matrix)
        object.__setattr__(self, "matrix", m)
        if determinant(m) not in (1, -1):
            raise DomainError("matrix is not unimodular")

    @property
    def dim(self) -> int:
        return len(self.matrix)

    def apply(self, v: Sequence[int]) -> IntVector:
        return matvec(self.matrix, v)

    def compose(self, other: "UnimodularMap") -> "UnimodularMap":
        """``self`` after ``other``."""
        return UnimodularMap(matmul(self.matrix, other.matrix))

    def inverse(self) -> "UnimodularMap":
        return UnimodularMap(unimodular_inverse(self.matrix))


def hermite_normal_form(m: Sequence[Sequence[int]]) -> tuple[IntMatrix, UnimodularMap]:
    """Left Hermite normal form of a full-row-rank matrix.

    >>> hermite_normal_form([[2, 4], [1, 3]])[0]
    ((1, 1), (0, 2))
    """
    rows, _ = shape(m)
    h, u, pivots = _echelon(m)
    if len(pivots) != rows:
        raise RankError(f"matrix has rank {len(pivots)} < {rows} rows")
    return as_matrix(h), UnimodularMap(as_matrix(u))


def unimodular_inverse(m: Sequence[Sequence[int]]) -> IntMatrix:
    n, k = shape(m)
    if n != k:
        raise DimensionError("inverse of a non-square matrix")
    h, u, pivots = _echelon(m)
    if len(pivots) != n or any(h[i][i] != 1 for i in range(n)):
        raise DomainError("matrix is not unimodular")
    return as_matrix(u)


def integer_kernel(m: Sequence[Sequence[int]], ncols: int | None = None) -> IntMatrix:
    """Basis (as rows) of the saturated integer kernel {x : m x = 0}."""
    if ncols is None:
        ncols = shape(m)[1]
    if not m:
        return identity(ncols)
    h, u, pivots = _echelon(transpose(m))
    return as_matrix(u[len(pivots):])


def kernel_primitive(m: Sequence[Sequence[int]]) -> IntVector:
    """Primitive generator of a one-dimensional kernel, first nonzero entry positive."""
    basis = integer_kernel(m)
    if len(basis) != 1:
        raise DegeneracyError(f"kernel has dimension {len(basis)}, expected 1")
    w = primitive(basis[0])
    lead = next(x for x in w if x)
    return w if lead > 0 else tuple(-x for x in w)


def complete_to_basis(v: Sequence[int]) -> UnimodularMap:
    """Unimodular ``U`` with ``U @ v == e_d`` for a primitive vector ``v``.

    Dropping the last coordinate of ``U @ x`` realizes the quotient Z^d / Z v.
    """
    v = as_vector(v)
    if not v or vector_gcd(v) != 1:
        raise DomainError(f"{v} is not primitive")
    d = len(v)
    # reduce the reversed vector so that e_d maps to itself without any swaps
    _, u, _ = _echelon([[x] for x in reversed(v)])
    rev = range(d - 1, -1, -1)
    return UnimodularMap(tuple(tuple(u[i][j] for j in rev) for i in rev))


def maximal_minor_gcd(rows: Sequence[Sequence[int]]) -> int:
    """gcd of the k x k minors of a rank-k matrix with k rows.

    Equals the index of the row lattice inside its saturation.
    """
    k, n = shape(rows)
    if k == 0:
        return 1
    g = 0
    for cols in combinations(range(n), k):
        g = gcd(g, determinant([[r[c] for c in cols] for r in rows]))
        if g == 1:
            break
    return g


def simplex_volume(points: Sequence[Sequence[int]]) -> int:
    """Normalized volume of a lattice simplex inside its own affine lattice.

    The simplex may live in a higher-dimensional ambient space; volume is
    measured against the saturated lattice of its affine span.
    """
    p0 = points[0]
    edges = [tuple(a - b for a, b in zip(p, p0)) for p in points[1:]]
    if rank(edges) != len(edges):
        raise DegeneracyError("points are affinely dependent")
    return maximal_minor_gcd(edges)
