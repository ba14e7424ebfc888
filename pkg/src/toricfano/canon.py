"""Canonical normal form of lattice polytopes up to lattice isomorphism.

The form is computed in two stages:

1. Among all row and column permutations of the facet/vertex pairing matrix,
   find the lexicographically largest row-major reading. The search fixes one
   row at a time; a partial state is the set of rows used so far plus an
   ordered partition of the columns into blocks that are still
   interchangeable. Every state at a level shares the same prefix, so only
   states reaching the largest next row survive.
2. Each column order reaching the maximum gives a vertex matrix; its left
   Hermite normal form is a lattice invariant of that labelled polytope. The
   lexicographically smallest of these matrices is the normal form.
"""

from __future__ import annotations

from dataclasses import dataclass

from .intlin import IntMatrix, dot, hermite_normal_form, transpose
from .polytope import LatticePolytope, from_points

PairingMatrix = tuple[tuple[int, ...], ...]


def pairing_matrix(p: LatticePolytope) -> PairingMatrix:
    """Entry [i][j] is <eta_i, v_j> over the polytope's facet and vertex orders."""
    return tuple(tuple(dot(f.normal, v) for v in p.vertices) for f in p.facets())


def _refine(row, blocks):
    value = []
    new_blocks = []
    for block in blocks:
        if len(block) == 1:
            value.append(row[block[0]])
            new_blocks.append(block)
            continue
        groups: dict[int, list[int]] = {}
        for c in block:
            groups.setdefault(row[c], []).append(c)
        for x in sorted(groups, reverse=True):
            cols = groups[x]
            value.extend([x] * len(cols))
            new_blocks.append(tuple(cols))
    return tuple(value), tuple(new_blocks)


def maximal_column_orders(m: PairingMatrix) -> list[tuple[int, ...]]:
    """Column permutations that take part in the lexicographically largest reading of m."""
    nrows = len(m)
    ncols = len(m[0]) if m else 0
    states = {(frozenset(), (tuple(range(ncols)),))}
    level = 0
    while level < nrows:
        if all(len(b) == 1 for _, blocks in states for b in blocks):
            return _finish_split(m, states)
        best = None
        nxt = set()
        for used, blocks in states:
            for r in range(nrows):
                if r in used:
                    continue
                value, new_blocks = _refine(m[r], blocks)
                if best is None or value > best:
                    best = value
                    nxt = set()
                if value == best:
                    nxt.add((used | {r}, new_blocks))
        states = nxt
        level += 1
    return sorted({tuple(c for b in blocks for c in b) for _, blocks in states})


def _finish_split(m, states):
    # with every column fixed the best remaining rows are just sorted descending
    best = None
    orders = set()
    for used, blocks in states:
        tau = tuple(b[0] for b in blocks)
        rest = sorted((tuple(m[r][c] for c in tau) for r in range(len(m)) if r not in used),
                      reverse=True)
        if best is None or rest > best:
            best = rest
            orders = set()
        if rest == best:
            orders.add(tau)
    return sorted(orders)


@dataclass(frozen=True)
class NormalForm:
    matrix: IntMatrix

    @property
    def dim(self) -> int:
        return len(self.matrix)

    @property
    def n_vertices(self) -> int:
        return len(self.matrix[0]) if self.matrix else 0

    @property
    def key(self) -> str:
        rows = ";".join(" ".join(str(x) for x in row) for row in self.matrix)
        return f"{self.dim} {self.n_vertices} {rows}"

    def polytope(self) -> LatticePolytope:
        return from_points(self.dim, transpose(self.matrix))

    def __str__(self) -> str:
        return self.key


def normal_form(p: LatticePolytope) -> NormalForm:
    """Isomorphism-invariant representative of p's lattice isomorphism class."""
    orders = maximal_column_orders(pairing_matrix(p))
    best = None
    for tau in orders:
        cols = [p.vertices[j] for j in tau]
        h, _ = hermite_normal_form(transpose(cols))
        if best is None or h < best:
            best = h
    return NormalForm(best)


def parse_key(key: str) -> NormalForm:
    head = key.split(" ", 2)
    d, n = int(head[0]), int(head[1])
    rows = tuple(tuple(int(x) for x in r.split()) for r in head[2].split(";"))
    if len(rows) != d or any(len(r) != n for r in rows):
        raise ValueError(f"malformed normal form key {key!r}")
    return NormalForm(rows)


def are_isomorphic(p: LatticePolytope, q: LatticePolytope) -> bool:
    if p.dim != q.dim or p.n_vertices != q.n_vertices or len(p.facets()) != len(q.facets()):
        return False
    return normal_form(p).key == normal_form(q).key
