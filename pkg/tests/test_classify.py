"""Hierarchy recognition and the cycle-intersection oracle."""

from __future__ import annotations

import pytest

from bottleneck_lab import oracle
from bottleneck_lab.bottleneck import edge_bottleneck_exact, find_dipole_ladder
from bottleneck_lab.classify import (
    KIND_CONNECTED_MULTI,
    KIND_DISCONNECTED,
    KIND_SINGLE,
    blocks,
    bridges,
    classify_graph,
    cycle_intersection_oracle,
    enumerate_cycles,
    _KIND_RANK,
)
from bottleneck_lab.errors import OracleUnavailableError
from bottleneck_lab.graph import Multigraph

from helpers import bowtie, complete_graph, cycle_graph, dipole, domino, path_graph


def spider_tree():
    # a 9-vertex tree with branching, to exercise more than path shapes
    return Multigraph(9, ((0, 1), (0, 2), (0, 3), (1, 4), (1, 5), (2, 6), (6, 7), (6, 8)))


# -- classify_graph -----------------------------------------------------------


def test_trees_classify_as_trees():
    for g in (path_graph(30), spider_tree(), Multigraph(1, ())):
        report = classify_graph(g)
        assert report.label == "tree"
        assert report.evidence.no_cycles
        assert report.evidence.unique_paths_sampled
    assert classify_graph(path_graph(30)).edge_bottleneck == 1


def test_bowtie_is_a_cactus():
    report = classify_graph(bowtie())
    assert report.label == "cactus"
    assert report.edge_bottleneck == 2
    assert not report.evidence.no_cycles
    assert report.evidence.blocks_edge_or_cycle
    assert report.evidence.no_four_rung_ladder
    assert not report.evidence.unique_paths_sampled


def test_domino_is_a_cut_cactus():
    report = classify_graph(domino())
    assert report.label == "cut-cactus"
    assert report.edge_bottleneck == 3
    assert not report.evidence.blocks_edge_or_cycle
    assert report.evidence.no_four_rung_ladder


def test_k4_is_general(k4):
    report = classify_graph(k4)
    assert report.label == "general"
    assert report.edge_bottleneck == 4
    assert not report.evidence.no_four_rung_ladder


def test_plain_cycles_are_cacti(c6):
    report = classify_graph(c6)
    assert report.label == "cactus"
    assert report.edge_bottleneck == 2


def test_two_cycle_multigraph_is_a_cactus():
    report = classify_graph(dipole(2))
    assert report.label == "cactus"
    assert report.edge_bottleneck == 2


def test_budget_limits_only_the_bottleneck_number(k4):
    report = classify_graph(k4, budget=1)
    assert report.label == "general"
    assert report.edge_bottleneck is None


def test_disconnected_rejected():
    with pytest.raises(ValueError):
        classify_graph(Multigraph(4, ((0, 1), (2, 3))))


def test_labels_track_bottleneck_thresholds(small_corpus):
    for g in small_corpus:
        if not 2 <= g.n <= 5:
            continue
        report = classify_graph(g)
        eb = report.edge_bottleneck
        expected = (
            "tree" if eb <= 1 else
            "cactus" if eb == 2 else
            "cut-cactus" if eb == 3 else
            "general"
        )
        assert report.label == expected


# -- blocks and bridges -------------------------------------------------------


def test_block_shapes():
    got = blocks(domino())
    sizes = sorted(len(b) for b in got)
    assert sizes == [7]  # one biconnected chunk: the two squares share an edge
    got = blocks(bowtie())
    assert sorted(len(b) for b in got) == [3, 3]


def test_bridges_of_trees_are_everything():
    g = spider_tree()
    assert bridges(g) == frozenset(range(g.m))
    assert bridges(cycle_graph(5)) == frozenset()
    # one pendant edge hanging off a triangle
    g = Multigraph(4, ((0, 1), (1, 2), (2, 0), (2, 3)))
    assert bridges(g) == frozenset({3})


def test_parallel_edges_form_cycle_blocks():
    g = dipole(2)
    assert blocks(g) == [(0, 1)]


# -- cycle enumeration --------------------------------------------------------


def test_cycle_counts():
    assert len(enumerate_cycles(path_graph(5))) == 0
    assert len(enumerate_cycles(cycle_graph(6))) == 1
    assert len(enumerate_cycles(bowtie())) == 2
    assert len(enumerate_cycles(complete_graph(4))) == 7  # four triangles + three squares
    assert len(enumerate_cycles(dipole(3))) == 3  # one per parallel pair


def test_cycle_refs_are_walkable(c6):
    (cyc,) = enumerate_cycles(c6)
    assert len(cyc.vertices) == 6 and len(cyc.edges) == 6
    assert set(cyc.vertices) == set(range(6))


def test_cap_is_enforced():
    with pytest.raises(OracleUnavailableError):
        enumerate_cycles(complete_graph(6), cap=10)


# -- intersection oracle ------------------------------------------------------


def test_bowtie_worst_is_single_vertex():
    a, b, kind = cycle_intersection_oracle(bowtie())
    assert kind == KIND_SINGLE
    assert set(a.vertices) & set(b.vertices) == {0}


def test_domino_worst_is_shared_edge():
    _, _, kind = cycle_intersection_oracle(domino())
    assert kind == KIND_CONNECTED_MULTI


def test_k4_worst_is_disconnected(k4):
    _, _, kind = cycle_intersection_oracle(k4)
    assert kind == KIND_DISCONNECTED


def test_few_cycles_mean_no_pair(c6):
    assert cycle_intersection_oracle(path_graph(4)) is None
    assert cycle_intersection_oracle(c6) is None


def test_oracle_agrees_with_recognizers(small_corpus):
    # worst rank <= single-vertex <=> cactus conditions; <= connected-multi
    # <=> cut-cactus conditions (trees and unicyclic graphs are vacuous)
    for g in small_corpus:
        if not 2 <= g.n <= 5:
            continue
        worst = cycle_intersection_oracle(g)
        rank = -1 if worst is None else _KIND_RANK[worst[2]]
        report = classify_graph(g)
        assert (rank <= _KIND_RANK[KIND_SINGLE]) == report.evidence.blocks_edge_or_cycle
        assert (rank <= _KIND_RANK[KIND_CONNECTED_MULTI]) == report.evidence.no_four_rung_ladder


def test_tree_conditions_agree(small_corpus):
    for g in small_corpus:
        if not 2 <= g.n <= 5:
            continue
        report = classify_graph(g)
        no_two_ladder = find_dipole_ladder(g, 2) is None
        assert report.evidence.no_cycles == no_two_ladder
        assert report.evidence.no_cycles == (report.edge_bottleneck <= 1)
        if report.evidence.no_cycles:
            assert report.evidence.unique_paths_sampled
