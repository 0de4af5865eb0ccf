"""Recognizers for the tree / cactus / cut-cactus / general hierarchy.

Each level has several equivalent characterizations.  This module keeps
three genuinely independent routes so they can be tested against each
other: structural checks (edge count, biconnected blocks, bridge-based
path uniqueness), the excluded-minor route (no wide dipole ladder), and
a literal cycle-enumeration oracle that inspects pairwise cycle
intersections.  classify_graph runs the structural and minor routes and
cross-asserts them against the bottleneck number whenever it computed
one; the cycle oracle stays a test fixture because its cost grows with
the cycle count.
"""

from __future__ import annotations

import random
from collections import deque
from dataclasses import dataclass

from .bottleneck import edge_bottleneck_exact, find_dipole_ladder
from .errors import BudgetExceededError, OracleUnavailableError
from .graph import Multigraph

LABELS = ("tree", "cactus", "cut-cactus", "general")

KIND_EMPTY = "empty"
KIND_SINGLE = "single-vertex"
KIND_CONNECTED_MULTI = "connected-multi-vertex"
KIND_DISCONNECTED = "disconnected"
_KIND_RANK = {
    KIND_EMPTY: 0,
    KIND_SINGLE: 1,
    KIND_CONNECTED_MULTI: 2,
    KIND_DISCONNECTED: 3,
}


@dataclass(frozen=True)
class ClassEvidence:
    """One boolean per independent condition.

    no_cycles: edge count says acyclic (tree level).
    blocks_edge_or_cycle: every biconnected block is a single edge or a
        plain cycle (cactus level, the cycle-intersection condition).
    no_four_rung_ladder: no 4-rung ladder exists (cut-cactus level, the
        excluded-minor condition).
    unique_paths_sampled: sampled vertex pairs are joined by exactly one
        path, checked through bridges (tree level again, by another road).
    """

    no_cycles: bool
    blocks_edge_or_cycle: bool
    no_four_rung_ladder: bool
    unique_paths_sampled: bool


@dataclass(frozen=True)
class ClassReport:
    label: str
    edge_bottleneck: int | None  # None when the budget stopped the scan
    evidence: ClassEvidence


def blocks(graph: Multigraph) -> list[tuple[int, ...]]:
    """Biconnected blocks as tuples of edge ids (bridges are 1-edge blocks)."""
    graph.require_loopless("block decomposition")
    disc = [-1] * graph.n
    low = [0] * graph.n
    out: list[tuple[int, ...]] = []
    estack: list[int] = []
    timer = 0
    for root in range(graph.n):
        if disc[root] != -1:
            continue
        disc[root] = low[root] = timer
        timer += 1
        stack = [(root, -1, iter(graph.adj[root]))]
        while stack:
            v, entry_eid, it = stack[-1]
            advanced = False
            for w, eid in it:
                if eid == entry_eid:
                    continue
                if disc[w] == -1:
                    estack.append(eid)
                    disc[w] = low[w] = timer
                    timer += 1
                    stack.append((w, eid, iter(graph.adj[w])))
                    advanced = True
                    break
                if disc[w] < disc[v]:
                    estack.append(eid)
                    if disc[w] < low[v]:
                        low[v] = disc[w]
            if advanced:
                continue
            stack.pop()
            if stack:
                u = stack[-1][0]
                if low[v] < low[u]:
                    low[u] = low[v]
                if low[v] >= disc[u]:
                    blk = []
                    while True:
                        e = estack.pop()
                        blk.append(e)
                        if e == entry_eid:
                            break
                    out.append(tuple(sorted(blk)))
    return out


def bridges(graph: Multigraph) -> frozenset[int]:
    """Edge ids whose removal disconnects their component."""
    return frozenset(blk[0] for blk in blocks(graph) if len(blk) == 1)


def _block_is_edge_or_cycle(graph: Multigraph, blk: tuple[int, ...]) -> bool:
    if len(blk) == 1:
        return True
    verts = set()
    for eid in blk:
        u, v = graph.edges[eid]
        verts.add(u)
        verts.add(v)
    # a biconnected block with as many edges as vertices is a plain cycle
    return len(blk) == len(verts)


def _bfs_path_eids(graph: Multigraph, u: int, v: int) -> list[int]:
    parent: dict[int, tuple[int, int]] = {u: (-1, -1)}
    q = deque([u])
    while q:
        a = q.popleft()
        if a == v:
            break
        for w, eid in graph.adj[a]:
            if w not in parent:
                parent[w] = (a, eid)
                q.append(w)
    eids = []
    cur = v
    while cur != u:
        cur, eid = parent[cur]
        eids.append(eid)
    return eids


def _unique_paths_sampled(graph: Multigraph, samples: int = 20) -> bool:
    """Whether `samples` seeded vertex pairs all have exactly one path.

    A pair has a unique path iff every edge on one of its paths is a
    bridge (any second path would close a cycle through a path edge).
    """
    if graph.n < 2:
        return True
    cut_edges = bridges(graph)
    rng = random.Random(0)
    for _ in range(samples):
        u, v = rng.sample(range(graph.n), 2)
        if any(eid not in cut_edges for eid in _bfs_path_eids(graph, u, v)):
            return False
    return True


def classify_graph(graph: Multigraph, budget: int | None = None) -> ClassReport:
    """Finest hierarchy label with per-condition evidence.

    The tree and cactus conditions are structural and always evaluated in
    full; the cut-cactus condition runs the exact ladder search (it short
    circuits as soon as a 4-rung ladder turns up).  ``budget`` only limits
    the edge-bottleneck scan: when it trips, the label stands on the
    structural conditions and edge_bottleneck is reported as None.
    """
    graph.require_loopless("classify_graph")
    if not graph.is_connected():
        raise ValueError("classify_graph needs a connected graph")
    no_cycles = graph.m == graph.n - 1
    blocks_ok = all(_block_is_edge_or_cycle(graph, blk) for blk in blocks(graph))
    no_d4 = find_dipole_ladder(graph, 4) is None
    unique = _unique_paths_sampled(graph)
    if no_cycles:
        assert unique, "an acyclic graph produced a non-unique sampled path"
    if no_cycles:
        label = "tree"
    elif blocks_ok:
        label = "cactus"
    elif no_d4:
        label = "cut-cactus"
    else:
        label = "general"
    try:
        eb = edge_bottleneck_exact(graph, budget=budget)[0]
    except BudgetExceededError:
        eb = None
    if eb is not None and graph.n > 1:
        # the three hierarchy equivalences, asserted live on every call
        assert (eb <= 1) == no_cycles, (eb, no_cycles)
        assert (eb <= 2) == blocks_ok, (eb, blocks_ok)
        assert (eb <= 3) == no_d4, (eb, no_d4)
    return ClassReport(
        label=label,
        edge_bottleneck=eb,
        evidence=ClassEvidence(
            no_cycles=no_cycles,
            blocks_edge_or_cycle=blocks_ok,
            no_four_rung_ladder=no_d4,
            unique_paths_sampled=unique,
        ),
    )


# -- cycle-enumeration oracle -------------------------------------------------


@dataclass(frozen=True)
class CycleRef:
    """A simple cycle: vertices in traversal order plus the edge ids used."""

    vertices: tuple[int, ...]
    edges: tuple[int, ...]


def enumerate_cycles(graph: Multigraph, cap: int = 10_000) -> tuple[CycleRef, ...]:
    """All simple cycles (2-cycles from parallel edges included), each once.

    Each cycle is rooted at its smallest vertex; the two traversal
    directions are collapsed by requiring the second vertex below the
    last (edge-id order for the two-edge case).  Raises
    OracleUnavailableError beyond ``cap`` cycles.
    """
    graph.require_loopless("enumerate_cycles")
    found: list[CycleRef] = []
    budget_steps = 0
    max_steps = 500 * max(cap, 1)

    def record(verts: list[int], eids: list[int]) -> None:
        found.append(CycleRef(tuple(verts), tuple(eids)))
        if len(found) > cap:
            raise OracleUnavailableError(
                f"more than {cap} cycles; raise the cap to keep going"
            )

    def dfs(root: int, verts: list[int], eids: list[int], on_path: set[int]) -> None:
        nonlocal budget_steps
        budget_steps += 1
        if budget_steps > max_steps:
            raise OracleUnavailableError("cycle enumeration exceeded its step limit")
        v = verts[-1]
        for w, eid in graph.adj[v]:
            if w == root:
                if len(eids) >= 2 and verts[1] < verts[-1]:
                    record(verts, eids + [eid])
                elif len(eids) == 1 and eids[0] < eid:
                    record(verts, eids + [eid])
            elif w > root and w not in on_path:
                verts.append(w)
                eids.append(eid)
                on_path.add(w)
                dfs(root, verts, eids, on_path)
                on_path.remove(w)
                verts.pop()
                eids.pop()

    for root in range(graph.n):
        dfs(root, [root], [], {root})
    return tuple(found)


def _intersection_kind(graph: Multigraph, a: CycleRef, b: CycleRef) -> str:
    shared_v = set(a.vertices) & set(b.vertices)
    if not shared_v:
        return KIND_EMPTY
    if len(shared_v) == 1:
        return KIND_SINGLE
    shared_e = set(a.edges) & set(b.edges)
    nbrs: dict[int, list[int]] = {v: [] for v in shared_v}
    for eid in shared_e:
        u, v = graph.edges[eid]
        nbrs[u].append(v)
        nbrs[v].append(u)
    start = next(iter(shared_v))
    seen = {start}
    q = deque([start])
    while q:
        x = q.popleft()
        for y in nbrs[x]:
            if y not in seen:
                seen.add(y)
                q.append(y)
    return KIND_CONNECTED_MULTI if seen == shared_v else KIND_DISCONNECTED


def cycle_intersection_oracle(
    graph: Multigraph, cap: int = 10_000
) -> tuple[CycleRef, CycleRef, str] | None:
    """The worst pairwise cycle intersection, or None with fewer than 2 cycles.

    Worst means furthest from cactushood: empty < single-vertex <
    connected-multi-vertex < disconnected.  The intersection of two
    cycles is taken as a subgraph: shared vertices plus shared edges, so
    two cycles through the same two vertices but no common edge intersect
    disconnectedly.
    """
    cycles = enumerate_cycles(graph, cap=cap)
    if len(cycles) < 2:
        return None
    worst: tuple[CycleRef, CycleRef, str] | None = None
    worst_rank = -1
    for i in range(len(cycles)):
        for j in range(i + 1, len(cycles)):
            kind = _intersection_kind(graph, cycles[i], cycles[j])
            if _KIND_RANK[kind] > worst_rank:
                worst = (cycles[i], cycles[j], kind)
                worst_rank = _KIND_RANK[kind]
                if kind == KIND_DISCONNECTED:
                    return worst
    return worst
