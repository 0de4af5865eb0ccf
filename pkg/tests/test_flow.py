from __future__ import annotations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import helpers
from bottleneck_lab import oracle
from bottleneck_lab.errors import SelfLoopError
from bottleneck_lab.flow import (
    connectivity_profile,
    max_edge_disjoint,
    max_vertex_disjoint,
)
from bottleneck_lab.graph import Multigraph


# -- max_edge_disjoint --------------------------------------------------------


def test_k4_three_edge_disjoint_paths(k4):
    count, system, cut = max_edge_disjoint(k4, {0}, {1})
    assert count == 3
    assert system.count == 3
    assert len(cut.members) == 3
    system.validate(k4)
    cut.validate(k4, {0}, {1})


def test_tree_pairs_have_one_path():
    tree = Multigraph(6, ((0, 1), (0, 2), (1, 3), (1, 4), (2, 5)))
    for x, y in (({3}, {5}), ({0}, {4}), ({3, 1}, {2, 5})):
        count, system, cut = max_edge_disjoint(tree, x, y)
        assert count == 1


def test_c6_arcs(c6):
    count, system, cut = max_edge_disjoint(c6, {0}, {3})
    assert count == 2
    assert len(cut.members) == 2
    verts = {p.vertices for p in system.paths}
    assert verts == {(0, 1, 2, 3), (0, 5, 4, 3)}


def test_edge_mode_set_terminals(c6):
    count, _, _ = max_edge_disjoint(c6, {0, 1}, {3, 4})
    assert count == 2


def test_parallel_edges_count():
    d3 = helpers.dipole(3)
    count, system, cut = max_edge_disjoint(d3, {0}, {1})
    assert count == 3
    assert len({p.edges[0] for p in system.paths}) == 3


def test_edge_mode_validation(c6):
    with pytest.raises(ValueError):
        max_edge_disjoint(c6, {0}, {0, 3})
    with pytest.raises(ValueError):
        max_edge_disjoint(c6, set(), {3})
    with pytest.raises(ValueError):
        max_edge_disjoint(c6, {0, 2}, {3})  # X not connected
    loopy = Multigraph(2, ((0, 1), (0, 0)))
    with pytest.raises(SelfLoopError):
        max_edge_disjoint(loopy, {0}, {1})


# -- max_vertex_disjoint ------------------------------------------------------


def test_c6_vertex_mode(c6):
    count, system, cut = max_vertex_disjoint(c6, {0}, {3})
    assert count == 2
    assert cut is not None
    assert len(cut.members) == 2
    assert not (cut.members & {0, 3})
    cut.validate(c6, {0}, {3})


def test_adjacent_terminals_no_separator(k4):
    count, system, cut = max_vertex_disjoint(k4, {0}, {1})
    assert count == 3  # direct edge plus two two-step paths
    assert cut is None


def test_p5_single_separator(p5):
    count, system, cut = max_vertex_disjoint(p5, {0}, {4})
    assert count == 1
    assert cut is not None
    assert len(cut.members) == 1
    assert cut.members <= {1, 2, 3}


def test_vertex_mode_interior_disjointness():
    # two vertices joined by three length-2 paths (a subdivided dipole)
    g = Multigraph(5, ((0, 2), (2, 1), (0, 3), (3, 1), (0, 4), (4, 1)))
    count, system, cut = max_vertex_disjoint(g, {0}, {1})
    assert count == 3
    assert cut is not None and len(cut.members) == 3
    interiors = [p.interior for p in system.paths]
    assert all(len(i) == 1 for i in interiors)
    assert len(set().union(*interiors)) == 3


# -- cross-checks against the oracle ------------------------------------------


@st.composite
def small_connected_multigraphs(draw):
    n = draw(st.integers(min_value=2, max_value=5))
    edges = []
    for v in range(1, n):
        parent = draw(st.integers(min_value=0, max_value=v - 1))
        edges.append((parent, v))
    extra = draw(
        st.lists(
            st.tuples(
                st.integers(min_value=0, max_value=n - 1),
                st.integers(min_value=0, max_value=n - 1),
            ),
            max_size=6,
        )
    )
    for u, v in extra:
        if u != v and edges.count((u, v)) + edges.count((v, u)) < 3:
            edges.append((u, v))
    return Multigraph(n, tuple(edges))


@given(small_connected_multigraphs(), st.data())
@settings(max_examples=60, deadline=None)
def test_flow_matches_brute_force(g, data):
    u = data.draw(st.integers(min_value=0, max_value=g.n - 1), label="u")
    v = data.draw(st.integers(min_value=0, max_value=g.n - 1), label="v")
    if u == v:
        return
    count, system, cut = max_edge_disjoint(g, {u}, {v})
    assert count == oracle.brute_max_edge_disjoint(g, {u}, {v})
    assert count == len(oracle.brute_min_edge_cut(g, {u}, {v}))
    vcount, vsystem, vcut = max_vertex_disjoint(g, {u}, {v})
    assert vcount == oracle.brute_max_vertex_disjoint(g, {u}, {v})
    brute_sep = oracle.brute_min_vertex_separator(g, {u}, {v})
    if brute_sep is None:
        assert vcut is None
    else:
        assert vcut is not None
        assert len(vcut.members) == len(brute_sep) == vcount


# -- connectivity_profile ------------------------------------------------------


def test_profile_examples(k4):
    assert connectivity_profile(k4) == (3, 3)
    tree = Multigraph(5, ((0, 1), (1, 2), (1, 3), (3, 4)))
    assert connectivity_profile(tree) == (1, 1)
    assert connectivity_profile(helpers.bowtie()) == (2, 2)


def test_profile_table(c6):
    lo, hi, table = connectivity_profile(c6, include_table=True)
    assert (lo, hi) == (2, 2)
    assert len(table) == 15
    assert all(v == 2 for v in table.values())


def test_profile_validation():
    with pytest.raises(ValueError):
        connectivity_profile(Multigraph(1, ()))
    with pytest.raises(ValueError):
        connectivity_profile(Multigraph(4, ((0, 1), (2, 3))))


@given(small_connected_multigraphs(), st.data())
@settings(max_examples=30, deadline=None)
def test_deleting_an_edge_never_raises_connectivity(g, data):
    if g.m < 2:
        return
    eid = data.draw(st.integers(min_value=0, max_value=g.m - 1), label="deleted edge")
    reduced = Multigraph(g.n, tuple(e for i, e in enumerate(g.edges) if i != eid))
    if not reduced.is_connected():
        return
    lo1, hi1 = connectivity_profile(g)
    lo2, hi2 = connectivity_profile(reduced)
    assert lo2 <= lo1
    assert hi2 <= hi1
