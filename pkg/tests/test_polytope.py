from __future__ import annotations

import pytest

from conftest import HEXAGON
from toricfano.errors import DimensionError, DomainError, InteriorityError, ReflexivityError
from toricfano.intlin import UnimodularMap
from toricfano.polytope import (
    free_sum,
    from_points,
    integral_distance,
    project_along_vertex,
    simplex,
)


def test_p2_simplex():
    p = simplex(2)
    assert p.vertices == ((-1, -1), (0, 1), (1, 0))
    assert sorted(f.normal for f in p.facets()) == [(-1, -1), (-1, 2), (2, -1)]
    assert all(f.denominator == 1 for f in p.facets())
    assert p.is_fano() and p.is_simplex()
    assert p.lattice_points() == ((-1, -1), (0, 0), (0, 1), (1, 0))
    assert len(p.dual().lattice_points()) == 10
    assert p.dual().normalized_volume() == 9


def test_p3_simplex():
    p = simplex(3)
    assert p.dual().normalized_volume() == 64
    assert len(p.dual().lattice_points()) == 35
    assert p.dual_edge_lengths() == [4] * 6


def test_interior_points_are_dropped():
    p = from_points(2, [(1, 0), (0, 1), (-1, -1), (0, 0)])
    assert p.n_vertices == 3
    q = from_points(2, [(2, 0), (0, 2), (-2, -2), (1, 1), (0, 0)])
    assert (1, 1) not in q.vertices


def test_construction_errors():
    with pytest.raises(DimensionError):
        from_points(2, [(1, 1), (-1, -1), (2, 2)])
    with pytest.raises(InteriorityError):
        from_points(2, [(0, 0), (1, 0), (0, 1)])
    with pytest.raises(InteriorityError):
        from_points(2, [(1, 0), (0, 1), (1, 1)])
    with pytest.raises(DimensionError):
        from_points(2, [(1, 0, 0), (0, 1, 0), (-1, -1, 0)])


def test_hexagon():
    h = from_points(2, HEXAGON)
    assert h.is_fano()
    assert h.dual_edge_lengths() == [1] * 6
    assert len(h.facets()) == 6
    assert h.dual().normalized_volume() == 6


def test_not_fano():
    p = from_points(2, [(1, 0), (0, 1), (-1, -2)])
    assert not p.is_fano()


def test_non_reflexive_dual():
    p = from_points(2, [(2, 0), (0, 2), (-2, -2)])
    assert not p.is_reflexive()
    with pytest.raises(ReflexivityError):
        p.dual()


def test_integral_distance():
    p = simplex(2)
    f = p.facets()[0]
    assert f.normal == (-1, -1)
    assert [integral_distance(f, v) for v in p.vertices] == [3, 0, 0]


def test_transform_keeps_lattice_invariants():
    h = from_points(2, HEXAGON)
    g = h.transform(UnimodularMap(((2, 1), (1, 1))))
    assert g.is_fano()
    assert len(g.lattice_points()) == len(h.lattice_points())
    assert g.dual().normalized_volume() == h.dual().normalized_volume()


def test_free_sum_of_hexagons():
    h = from_points(2, HEXAGON)
    s = free_sum(h, h)
    assert s.n_vertices == 12
    assert len(s.facets()) == 36
    assert s.is_fano()


def test_projection_of_p2():
    p = simplex(2)
    res = project_along_vertex(p, p.vertex_index((1, 0)))
    assert res.image.vertices == ((-1,), (1,))
    assert res.double_points() == []
    images = {x: fib for x, fib in res.fiber_map.items()}
    assert images[(0,)] == [(1, 0)]
    assert len(images[(1,)]) == 1 and len(images[(-1,)]) == 1


def test_projection_of_hexagon_has_double_points():
    h = from_points(2, HEXAGON)
    res = project_along_vertex(h, h.vertex_index((1, 1)))
    assert sorted(res.double_points()) == [(-1,), (0,), (1,)]
    assert sorted(res.fiber_map[(0,)]) == [(-1, -1), (1, 1)]


def test_projection_requires_fano():
    with pytest.raises(DomainError):
        project_along_vertex(from_points(2, [(1, 0), (0, 1), (-1, -2)]), 0)
    with pytest.raises(DomainError):
        project_along_vertex(from_points(1, [(-1,), (1,)]), 0)


CROSS = [(1, 0), (0, 1), (-1, 0), (0, -1)]


def test_segment():
    s = from_points(1, [(-1,), (0,), (1,)])
    assert s.vertices == ((-1,), (1,))
    assert [(f.normal, f.vertex_indices) for f in s.facets()] == [((-1,), (1,)), ((1,), (0,))]
    assert s.lattice_points() == ((-1,), (0,), (1,))
    assert s.normalized_volume() == 2
    assert s.dual().vertices == s.vertices
    with pytest.raises(DimensionError):
        from_points(2, [(1, 0), (-1, 0)])


def test_cross_polytope_and_scaling():
    c = from_points(2, CROSS)
    assert sorted(f.normal for f in c.facets()) == [(-1, -1), (-1, 1), (1, -1), (1, 1)]
    assert c.is_reflexive()
    big = from_points(2, [(4, -2), (-2, 4), (-2, -2)])
    assert not big.is_reflexive()
    assert {f.denominator for f in big.facets()} == {2}


def test_duals():
    assert simplex(2).dual().vertices == ((-1, -1), (-1, 2), (2, -1))
    assert from_points(2, HEXAGON).dual().n_vertices == 6
    assert simplex(2).dual_edge_lengths() == [3, 3, 3]


def test_pairings():
    from toricfano.polytope import Facet, pairing

    f = Facet((-1, -1), (0, 1), 1)
    assert (pairing(f, (1, 0)), integral_distance(f, (1, 0))) == (-1, 0)
    assert (pairing(f, (-1, -1)), integral_distance(f, (-1, -1))) == (2, 3)
    g = Facet((1, 0), (0,), 1)
    assert integral_distance(g, (0, 0)) == 1


def test_polygon_invariants(reflexive2):
    for p in reflexive2:
        assert set(p.dual().dual().vertices) == set(p.vertices)
        pts = set(p.lattice_points())
        assert (0, 0) in pts and set(p.vertices) <= pts


def test_fano_vertex_and_facet_invariants(fano_lists):
    for d in (2, 3):
        for p in fano_lists[d]:
            for f in p.facets():
                assert sum(1 for v in p.vertices if sum(a * b for a, b in zip(f.normal, v)) == 0) <= d
            assert p.n_vertices <= (3 * d if d % 2 == 0 else 3 * d - 1)
            assert len(p.lattice_points()) == p.n_vertices + 1


def test_simplex_dual_volume_formula():
    for d in (1, 2, 3):
        assert simplex(d).dual().normalized_volume() == (d + 1) ** d
