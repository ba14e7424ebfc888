"""Backend selection for the hot loops.

The compiled ``_ckernels`` module is used when it imports and the input is
small enough for 64-bit arithmetic; otherwise calls fall through to the
pure-Python twins. Set ``TORICFANO_PURE_PYTHON=1`` to force the fallback.
"""

from __future__ import annotations

import os

from . import _pykernels

try:
    if os.environ.get("TORICFANO_PURE_PYTHON"):
        raise ImportError("pure Python backend requested")
    from . import _ckernels
except ImportError:
    _ckernels = None

BACKEND = "python" if _ckernels is None else "cython"

# Bareiss multiplies two minors before dividing. With coordinate differences
# at most 2 * _MAX_COORD, Hadamard gives minors below 2**29.3 for d <= 6, so
# every product stays below 2**63.
_MAX_DIM = 6
_MAX_COORD = 6


def _fits(points, d) -> bool:
    if _ckernels is None or d > _MAX_DIM:
        return False
    return all(-_MAX_COORD <= x <= _MAX_COORD for p in points for x in p)


def facet_data(points, d):
    impl = _ckernels if _fits(points, d) else _pykernels
    return impl.facet_data(points, d)


def lattice_points(normals, offsets, lo, hi):
    # only dot products here, so a much looser bound is safe
    values = [x for row in normals for x in row] + list(offsets) + list(lo) + list(hi)
    ok = _ckernels is not None and len(lo) <= 8 and all(abs(x) <= 1 << 20 for x in values)
    impl = _ckernels if ok else _pykernels
    return impl.lattice_points(normals, offsets, lo, hi)


def fano_hull(points, d):
    impl = _ckernels if _fits(points, d) else _pykernels
    return impl.fano_hull(points, d)


def fano_vertex_subsets(points, d, kmin, kmax):
    from math import comb

    ok = _fits(points, d) and len(points) <= 64 and comb(kmax, d) <= 4096
    impl = _ckernels if ok else _pykernels
    return impl.fano_vertex_subsets(points, d, kmin, kmax)
