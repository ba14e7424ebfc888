from __future__ import annotations

import random

import pytest

from conftest import HEXAGON, random_unimodular
from toricfano.canon import normal_form
from toricfano.enumeration import admissible, fano_oracle, oracle_point_sets, reflexive_classes
from toricfano.errors import UnsupportedDimensionError
from toricfano.polytope import from_points, simplex


def test_reflexive_segment():
    r = reflexive_classes(1)
    assert len(r) == 1
    assert r.keys == ("1 2 1 -1",)


def test_reflexive_polygons(reflexive2):
    assert len(reflexive2) == 16
    assert all(p.is_reflexive() for p in reflexive2)
    assert normal_form(from_points(2, HEXAGON)).key in reflexive2.key_set()
    # boundary lattice points b pair up with 12 - b under duality
    boundary = sorted(len(p.lattice_points()) - 1 for p in reflexive2)
    assert boundary == [3, 4, 4, 4, 5, 5, 6, 6, 6, 6, 7, 7, 8, 8, 8, 9]


def test_reflexive_polygons_closed_under_duality(reflexive2):
    keys = reflexive2.key_set()
    assert {normal_form(p.dual()).key for p in reflexive2} == keys


def test_reflexive_unsupported_dimension():
    with pytest.raises(UnsupportedDimensionError):
        reflexive_classes(3)


@pytest.mark.parametrize("d, count", [(1, 1), (2, 5)])
def test_small_oracle(d, count):
    o = fano_oracle(d)
    assert len(o) == count
    assert all(p.is_fano() for p in o)


def test_oracle_d3(oracle_lists):
    assert len(oracle_lists[3]) == 18
    assert all(p.is_fano() for p in oracle_lists[3])


def test_oracle_subsets_are_vertex_sets():
    for s in oracle_point_sets(2):
        p = from_points(2, s)
        assert p.is_fano() and p.n_vertices == len(s)


def test_oracle_parallel_matches():
    assert fano_oracle(2, jobs=2).keys == fano_oracle(2).keys


def test_oracle_unsupported():
    with pytest.raises(UnsupportedDimensionError):
        fano_oracle(4)


def test_admissible_examples():
    assert admissible(from_points(1, [(-1,), (1,)]), 2)
    assert admissible(from_points(2, HEXAGON), 3)
    assert not admissible(simplex(2).dual(), 3)
    assert not admissible(from_points(1, [(-1,), (1,)]), 3)


def test_admissible_is_isomorphism_invariant(reflexive2):
    rng = random.Random(3)
    flags = [admissible(p, 3) for p in reflexive2]
    assert sum(flags) == 10
    for _ in range(5):
        moved = [p.transform(random_unimodular(rng, 2)) for p in reflexive2]
        assert [admissible(p, 3) for p in moved] == flags
