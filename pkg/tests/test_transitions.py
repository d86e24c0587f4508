import pytest
from hypothesis import given
from hypothesis import strategies as st

from atrails.errors import BudgetExceeded, InvalidInput, NonSmooth, NotEulerian
from atrails.grids import AltshulerParams, OneVertexParams, RectParams, altshuler, one_vertex_grid, rect_grid
from atrails.surface import EmbeddedGraph
from atrails.transitions import (apply, bits_of, enumerate_atrail_bits, find_atrail, is_atrail, is_smooth,
                                 iter_atrail_bits, search_space_size, system_from_bits, system_from_pairs,
                                 trace)
from oracles import brute_atrails, circuit_count

# A-trail counts from brute force over every smooth system (oracles.brute_atrails)
FROZEN_COUNTS = [
    (altshuler(AltshulerParams(5, 1, 2)), 10),
    (altshuler(AltshulerParams(5, 1, 1)), 0),
    (altshuler(AltshulerParams(7, 1, 2)), 14),
    (altshuler(AltshulerParams(9, 3, 1)), 36),
    (altshuler(AltshulerParams(8, 2, 1)), 0),
    (rect_grid(RectParams(2, 2)), 8),
    (rect_grid(RectParams(3, 3)), 216),
    (rect_grid(RectParams(2, 4)), 64),
    (rect_grid(RectParams(3, 4)), 1288),
]


@pytest.mark.parametrize("g, count", FROZEN_COUNTS)
def test_counts_match_brute_force(g, count):
    assert len(brute_atrails(g)) == count
    found = enumerate_atrail_bits(g)
    assert set(found) == brute_atrails(g)
    assert len(found) == len(set(found)) == count
    assert sorted(enumerate_atrail_bits(g, mode="exhaustive")) == sorted(found)


@pytest.mark.parametrize("g, count", FROZEN_COUNTS)
def test_find_agrees(g, count):
    for mode in ("backtracking", "exhaustive"):
        T = find_atrail(g, mode)
        assert (T is not None) == (count > 0)
        if T is not None:
            assert is_atrail(g, T)


def test_parallel_exhaustive_matches_serial():
    g = rect_grid(RectParams(3, 4))
    assert sorted(enumerate_atrail_bits(g, mode="exhaustive", workers=2)) == sorted(enumerate_atrail_bits(g))


def test_rect_4_4_count():
    assert len(enumerate_atrail_bits(rect_grid(RectParams(4, 4)))) == 8192


def test_budget():
    g = rect_grid(RectParams(5, 5))
    assert search_space_size(g) == 2 ** 25
    with pytest.raises(BudgetExceeded):
        enumerate_atrail_bits(g)
    with pytest.raises(BudgetExceeded):
        find_atrail(g, "exhaustive", budget=1000)
    with pytest.raises(BudgetExceeded):
        find_atrail(altshuler(AltshulerParams(8, 2, 1)), budget=3)
    assert find_atrail(g, budget=10_000) is not None


def test_forced_vertices():
    g = rect_grid(RectParams(3, 3))
    forced = {0: 1, 4: 0}
    got = set(iter_atrail_bits(g, forced=forced))
    assert got == {b for b in brute_atrails(g) if b[0] == 1 and b[4] == 0}


def test_unknown_mode():
    with pytest.raises(InvalidInput):
        find_atrail(rect_grid(RectParams(2, 2)), "greedy")


def test_odd_degree_rejected():
    # theta-like torus graph with two degree-3 vertices
    g = EmbeddedGraph(((0, 2, 4), (1, 3, 5)), ((0, 1), (2, 3), (4, 5)), ((0, 0), (1, 0), (0, 1)), 1)
    with pytest.raises(NotEulerian):
        find_atrail(g)


def test_one_vertex_has_two_atrails():
    g = one_vertex_grid(OneVertexParams((1, 0), (0, 1)))
    assert enumerate_atrail_bits(g) == [(0,), (1,)]


def test_non_smooth_rejected():
    g = rect_grid(RectParams(2, 2))
    rot = g.rotation[0]
    pairs = [(rot[0], rot[2]), (rot[1], rot[3])]
    for v in range(1, 4):
        r = g.rotation[v]
        pairs += [(r[0], r[1]), (r[2], r[3])]
    T = system_from_pairs(g, pairs)
    assert not is_smooth(g, T)
    assert len(trace(g, T)) >= 1
    with pytest.raises(NonSmooth):
        apply(g, T)
    with pytest.raises(NonSmooth):
        bits_of(g, T)
    with pytest.raises(NonSmooth):
        is_atrail(g, T)


@pytest.mark.parametrize("pairs", [[(0, 0)], [(0, 2), (0, 3)], [(0, 2)]])
def test_bad_pairs(pairs):
    g = rect_grid(RectParams(2, 2))
    with pytest.raises(InvalidInput):
        system_from_pairs(g, pairs)


def test_bits_length_checked():
    with pytest.raises(InvalidInput):
        system_from_bits(rect_grid(RectParams(2, 2)), [0, 0])
    with pytest.raises(InvalidInput):
        system_from_bits(rect_grid(RectParams(2, 2)), [0, 0, 0, 2])


GRID = altshuler(AltshulerParams(9, 3, 2))


@given(st.lists(st.integers(0, 1), min_size=9, max_size=9))
def test_trace_partitions_edges(bits):
    T = system_from_bits(GRID, bits)
    dec = apply(GRID, T)
    edges = sorted(GRID.edge_of[d] for c in dec.circuits for d in c)
    assert edges == list(range(GRID.num_edges))
    assert len(dec) == circuit_count(GRID, bits)
    assert dec.system(GRID) == T
    assert bits_of(GRID, T) == tuple(bits)
    assert is_atrail(GRID, T) == (len(dec) == 1)


@given(st.lists(st.integers(0, 1), min_size=9, max_size=9))
def test_reversal_keeps_system(bits):
    T = system_from_bits(GRID, bits)
    dec = trace(GRID, T)
    flipped = dec.reoriented(GRID, [GRID.twin[d] for c in dec.circuits for d in c[:1]])
    assert flipped.system(GRID) == T
    assert all(len(a) == len(b) for a, b in zip(dec.circuits, flipped.circuits))
