from __future__ import annotations

import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import HEXAGON, random_unimodular
from toricfano.canon import (
    are_isomorphic,
    maximal_column_orders,
    normal_form,
    pairing_matrix,
    parse_key,
)
from toricfano.intlin import UnimodularMap
from toricfano.polytope import free_sum, from_points, simplex


def reading(m, tau):
    return tuple(sorted((tuple(row[c] for c in tau) for row in m), reverse=True))


def test_segment_key():
    assert normal_form(from_points(1, [(-1,), (1,)])).key == "1 2 1 -1"


def test_p2_invariant_under_shear():
    p = simplex(2)
    q = p.transform(UnimodularMap(((1, 1), (0, 1))))
    assert normal_form(p) == normal_form(q)


def test_hexagon_is_self_dual():
    h = from_points(2, HEXAGON)
    assert are_isomorphic(h, h.dual())


def test_distinct_classes_differ():
    a = from_points(2, [(1, 0), (0, 1), (-1, 0), (0, -1)])
    b = from_points(2, [(1, 0), (0, 1), (-1, 1), (0, -1)])
    assert a.is_fano() and b.is_fano()
    assert not are_isomorphic(a, b)


def test_key_round_trip():
    nf = normal_form(simplex(3))
    assert parse_key(nf.key) == nf
    assert normal_form(nf.polytope()) == nf
    with pytest.raises(ValueError):
        parse_key("2 3 1 0;0 1 -1")


def test_large_symmetric_example():
    h = from_points(2, HEXAGON)
    s = free_sum(h, h)
    nf = normal_form(s)
    assert nf.n_vertices == 12
    g = random_unimodular(random.Random(5), 4)
    assert normal_form(s.transform(g)) == nf


def test_column_orders_reach_the_same_reading():
    m = pairing_matrix(from_points(2, HEXAGON))
    orders = maximal_column_orders(m)
    assert len(orders) == 12  # the hexagon's automorphism group has order 12
    assert len({reading(m, tau) for tau in orders}) == 1


@pytest.fixture(scope="module")
def samples(fano_lists):
    return {d: list(fano_lists[d]) for d in (1, 2, 3)}


@pytest.mark.parametrize("d", [1, 2, 3])
def test_normal_form_invariance(samples, d):
    """Random lattice automorphisms plus vertex relabeling never change the key."""
    polys = samples[d]
    keys = [normal_form(p).key for p in polys]

    @settings(max_examples=1000, deadline=None, derandomize=True)
    @given(st.integers(0, len(polys) - 1), st.integers(0, 2**32))
    def check(i, seed):
        rng = random.Random(seed)
        g = random_unimodular(rng, d)
        pts = [g.apply(v) for v in polys[i].vertices]
        rng.shuffle(pts)
        q = from_points(d, pts)
        assert normal_form(q).key == keys[i]
        m = pairing_matrix(q)
        rows = list(m)
        rng.shuffle(rows)
        cols = list(range(len(m[0])))
        rng.shuffle(cols)
        shuffled = tuple(tuple(r[c] for c in cols) for r in rows)
        best = reading(m, maximal_column_orders(m)[0])
        assert reading(shuffled, maximal_column_orders(shuffled)[0]) == best

    check()


def test_pairing_matrix_examples():
    assert sorted(pairing_matrix(from_points(1, [(-1,), (1,)]))) == [(-1, 1), (1, -1)]
    m = pairing_matrix(simplex(2))
    assert sorted(x for row in m for x in row) == [-1] * 6 + [2] * 3
    h = pairing_matrix(from_points(2, HEXAGON))
    assert {x for row in h for x in row} <= {-1, 0, 1}


def test_isomorphism_examples():
    p = simplex(2)
    mirror = p.transform(UnimodularMap(((0, 1), (1, 0))))
    cross = from_points(2, [(1, 0), (0, 1), (-1, 0), (0, -1)])
    assert are_isomorphic(p, mirror)
    assert not are_isomorphic(p, cross)
    assert normal_form(p) != normal_form(from_points(2, HEXAGON))
    rng = random.Random(11)
    h = from_points(2, HEXAGON)
    assert are_isomorphic(h, h.transform(random_unimodular(rng, 2)))


def test_keys_distinct_and_self_consistent(fano_lists):
    for d, count in ((2, 5), (3, 18)):
        polys = list(fano_lists[d])
        assert len({normal_form(p).key for p in polys}) == count
        for p in polys:
            q = normal_form(p).polytope()
            assert sorted(map(sorted, pairing_matrix(q))) == sorted(map(sorted, pairing_matrix(p)))
