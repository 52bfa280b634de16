"""Leveled DAG families: structure, adjacency symmetry, parsing."""

import math

import pytest

from rmfperc import (
    AltLattice,
    Hypercube,
    NaryTree,
    ParameterError,
    RegularTree,
    SquareLattice,
    parse_family,
)

FINITE = [Hypercube(1), Hypercube(4), Hypercube(6), NaryTree(2, 4), NaryTree(3, 3)]
INFINITE = [RegularTree(2), RegularTree(3), SquareLattice(), AltLattice()]


@pytest.mark.parametrize("dag", FINITE, ids=lambda d: d.label())
def test_finite_edges_advance_one_level(dag):
    for lvl in range(dag.num_levels() + 1):
        for v in dag.level_vertices(lvl):
            assert dag.level_of(v) == lvl
            for u in dag.predecessors(v):
                assert dag.level_of(u) == lvl - 1
            if not dag.is_sink(v):
                for s in dag.successors(v):
                    assert dag.level_of(s) == lvl + 1


@pytest.mark.parametrize("dag", INFINITE, ids=lambda d: d.label())
def test_infinite_edges_advance_one_level(dag):
    for lvl in range(11):
        verts = list(dag.level_vertices(lvl))
        assert len(verts) == dag.level_width(lvl)
        for v in verts:
            assert dag.level_of(v) == lvl
            for s in dag.successors(v):
                assert dag.level_of(s) == lvl + 1
            if lvl > 0:
                preds = list(dag.predecessors(v))
                assert preds
                for u in preds:
                    assert dag.level_of(u) == lvl - 1


@pytest.mark.parametrize("dag", FINITE + INFINITE, ids=lambda d: d.label())
def test_predecessor_successor_symmetry(dag):
    top = dag.num_levels() if dag.finite else 8
    for lvl in range(top):
        for v in dag.level_vertices(lvl):
            for s in dag.successors(v):
                assert v in list(dag.predecessors(s))
    for lvl in range(1, top + 1):
        for v in dag.level_vertices(lvl):
            for u in dag.predecessors(v):
                assert v in list(dag.successors(u))


def test_hypercube_structure():
    q = Hypercube(5)
    assert q.num_levels() == 5
    assert q.source() == 0
    widths = [q.level_width(k) for k in range(6)]
    assert widths == [math.comb(5, k) for k in range(6)]
    assert sum(widths) == 2**5
    assert q.is_sink((1 << 5) - 1)
    assert len(list(q.successors(0))) == 5


def test_nary_tree_structure():
    t = NaryTree(3, 4)
    assert t.num_levels() == 4
    assert [t.level_width(k) for k in range(5)] == [1, 3, 9, 27, 81]
    leaf = (0, 1, 2, 0)
    assert t.is_sink(leaf)
    assert list(t.predecessors(leaf)) == [(0, 1, 2)]


def test_regular_tree_structure():
    t = RegularTree(2)
    assert not t.finite
    assert t.level_width(10) == 1024
    v = (0, 1, 1)
    assert list(t.successors(v)) == [(0, 1, 1, 0), (0, 1, 1, 1)]


def test_square_lattice_structure():
    g = SquareLattice()
    assert [g.level_width(k) for k in range(4)] == [1, 2, 3, 4]
    assert set(g.predecessors((1, 1))) == {(0, 1), (1, 0)}
    assert set(g.successors((0, 0))) == {(0, 1), (1, 0)}


def test_alt_lattice_structure():
    g = AltLattice()
    assert [g.level_width(k) for k in range(4)] == [1, 3, 5, 7]
    assert set(g.level_vertices(1)) == {(-1, 1), (0, 1), (1, 1)}
    assert set(g.predecessors((0, 2))) == {(-1, 1), (0, 1), (1, 1)}
    assert set(g.predecessors((-2, 2))) == {(-1, 1)}
    assert set(g.successors((1, 1))) == {(0, 2), (1, 2), (2, 2)}


def test_parse_family_literals():
    assert isinstance(parse_family("hypercube:n=10"), Hypercube)
    t = parse_family("nary:n=3,h=8")
    assert (t.n, t.h) == (3, 8)
    assert parse_family("rtree:d=2").d == 2
    assert isinstance(parse_family("l2"), SquareLattice)
    assert isinstance(parse_family("l2alt"), AltLattice)
    with pytest.raises(ParameterError):
        parse_family("petersen")
    with pytest.raises(ParameterError):
        parse_family("hypercube:n=0")


def test_size_guards():
    with pytest.raises(ParameterError):
        Hypercube(31)
    with pytest.raises(ParameterError):
        NaryTree(10, 9)  # 10^9 vertices on the last level


def test_key_words_distinct_within_level():
    for dag in (Hypercube(5), NaryTree(3, 3), SquareLattice(), AltLattice()):
        top = dag.num_levels() if dag.finite else 6
        for lvl in range(top + 1):
            words = [tuple(dag.key_words(v)) for v in dag.level_vertices(lvl)]
            assert len(set(words)) == len(words)
