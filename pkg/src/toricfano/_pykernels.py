"""Pure-Python implementations of the hot loops.

Each function has a twin in ``_ckernels.pyx`` with the same signature and
the same results; :mod:`toricfano.kernels` picks one at import time.
Points are passed as sequences of integer tuples.
"""

from __future__ import annotations

from collections import Counter
from itertools import combinations, product
from math import gcd

from .intlin import determinant, unimodular_inverse


def _normal(p0, rest, d):
    diffs = [[a - b for a, b in zip(p, p0)] for p in rest]
    n = []
    for j in range(d):
        minor = [row[:j] + row[j + 1:] for row in diffs]
        n.append((-1) ** j * determinant(minor))
    return n


def facet_data(points, d):
    """Facets of conv(points) as ``(normal, offset, incident)`` triples.

    ``normal`` is the primitive inner normal, ``offset`` the minimum of
    ``<normal, x>`` over the points (attained exactly at ``incident``, a tuple
    of point indices). Hyperplanes containing every point are skipped, so a
    lower-dimensional input yields no facets. Order follows discovery.
    """
    pts = [tuple(p) for p in points]
    found = {}
    for combo in combinations(range(len(pts)), d):
        base = pts[combo[0]]
        n = _normal(base, [pts[i] for i in combo[1:]], d)
        g = 0
        for x in n:
            g = gcd(g, x)
        if g == 0:
            continue
        n = [x // g for x in n]
        c = sum(a * b for a, b in zip(n, base))
        lo = hi = False
        vals = []
        for p in pts:
            s = sum(a * b for a, b in zip(n, p))
            if s < c:
                lo = True
            elif s > c:
                hi = True
            if lo and hi:
                break
            vals.append(s)
        if lo and hi:
            continue
        if not lo and not hi:
            continue
        if lo:
            n = [-x for x in n]
            c = -c
            vals = [-s for s in vals]
        key = tuple(n)
        if key in found:
            continue
        found[key] = (key, c, tuple(i for i, s in enumerate(vals) if s == c))
    return list(found.values())


def lattice_points(normals, offsets, lo, hi):
    """All integer x with lo <= x <= hi and <n, x> >= offset for every facet."""
    out = []
    ranges = [range(a, b + 1) for a, b in zip(lo, hi)]
    for x in product(*ranges):
        for n, c in zip(normals, offsets):
            if sum(a * b for a, b in zip(n, x)) < c:
                break
        else:
            out.append(x)
    return out


def fano_hull(points, d):
    """True iff conv(points) is a Fano polytope (extra non-vertex points allowed)."""
    facets = facet_data(points, d)
    if not facets:
        return False
    for n, c, inc in facets:
        if c != -1 or len(inc) != d:
            return False
        if determinant([points[i] for i in inc]) not in (1, -1):
            return False
    return True


def _unimodular_table(pts, d):
    table = {}
    n = len(pts)
    for combo in combinations(range(n), d):
        b = [pts[i] for i in combo]
        if determinant(b) not in (1, -1):
            continue
        inv = unimodular_inverse(b)
        # eta solves b @ eta = (-1, ..., -1)
        eta = [-sum(row) for row in inv]
        blockers = 0
        for i, p in enumerate(pts):
            if i not in combo and sum(a * x for a, x in zip(eta, p)) <= -1:
                blockers |= 1 << i
        table[combo] = blockers
    return table


def _closed(facets, members, d):
    if not facets:
        return False
    covered = set()
    ridges = Counter()
    for t, _ in facets:
        covered.update(t)
        for r in combinations(t, d - 1):
            ridges[r] += 1
    if len(covered) != len(members):
        return False
    return all(c == 2 for c in ridges.values())


def fano_vertex_subsets(points, d, kmin, kmax):
    """Index tuples S (sizes kmin..kmax) whose points are exactly the vertices of a Fano polytope.

    A d-subset T of S is a valid facet when it is a lattice basis and no
    point of S lies on or beyond the hyperplane <eta_T, x> = -1 besides T.
    conv(S) is Fano with vertex set S iff the valid facets cover S and every
    ridge of a valid facet lies in exactly two valid facets (the facet graph
    of a polytope is connected).
    """
    pts = [tuple(p) for p in points]
    n = len(pts)
    table = _unimodular_table(pts, d)
    out = []

    def rec(start, mask, members, facets):
        if len(members) >= kmin and _closed(facets, members, d):
            out.append(tuple(members))
        if len(members) == kmax:
            return
        for x in range(start, n):
            bit = 1 << x
            nmask = mask | bit
            nf = [f for f in facets if not f[1] & bit]
            for sub in combinations(members, d - 1):
                t = sub + (x,)
                blk = table.get(t)
                if blk is not None and not blk & nmask:
                    nf.append((t, blk))
            members.append(x)
            rec(x + 1, nmask, members, nf)
            members.pop()

    rec(0, 0, [], [])
    out.sort(key=lambda s: (len(s), s))
    return out
