"""Bottleneck numbers, dipole-ladder witnesses, and ladder normalization.

The edge bottleneck number of a connected graph is the largest k for which
two disjoint connected vertex sets are joined by k edge-disjoint paths;
equivalently (checked at runtime against the flow engine) the largest bond
between a connected subset and a component of its complement.  The point
flavor replaces edge-disjoint paths with vertex separators over
non-adjacent pairs.  Witnesses are Ladder values: two poles plus
internally disjoint pole-to-pole rungs, which is exactly a dipole minor
drawn inside the graph.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import BottleneckLabError, BudgetExceededError
from .flow import CutCertificate, _Dinic, max_edge_disjoint, max_vertex_disjoint
from .graph import Multigraph, PathWitness, mask_of, set_distance
from .subsets import edge_bond_scan, point_separator_scan


@dataclass(frozen=True)
class Ladder:
    """Two poles joined by internally disjoint rungs.

    Poles are disjoint vertex sets, each inducing a connected subgraph.
    Every rung runs from pole_x to pole_y with its interior avoiding both
    poles; rung interiors are pairwise disjoint and no edge is reused.
    When ``fatness`` is set, the poles and the rung interiors are also
    pairwise at hop distance >= fatness.
    """

    pole_x: frozenset[int]
    pole_y: frozenset[int]
    rungs: tuple[PathWitness, ...]
    fatness: int | None = None

    @property
    def width(self) -> int:
        return len(self.rungs)

    def validate(self, graph: Multigraph, *, check_fatness: bool = True) -> None:
        if not self.pole_x or not self.pole_y:
            raise ValueError("ladder poles must be nonempty")
        if self.pole_x & self.pole_y:
            raise ValueError("ladder poles must be disjoint")
        for pole in (self.pole_x, self.pole_y):
            bad = [v for v in pole if not 0 <= v < graph.n]
            if bad:
                raise ValueError(f"pole vertex {bad[0]} out of range")
            m = mask_of(pole)
            if graph.component_mask(1 << min(pole), m) != m:
                raise ValueError(f"pole {sorted(pole)} does not induce a connected subgraph")
        if not self.rungs:
            raise ValueError("ladder needs at least one rung")
        poles = self.pole_x | self.pole_y
        seen_edges: set[int] = set()
        interiors: list[set[int]] = []
        for rung in self.rungs:
            rung.validate_in(graph)
            if rung.vertices[0] not in self.pole_x or rung.vertices[-1] not in self.pole_y:
                raise ValueError(
                    f"rung {rung.vertices} must start in pole_x and end in pole_y"
                )
            inside = set(rung.interior)
            if inside & poles:
                raise ValueError(f"rung {rung.vertices} passes through a pole")
            for other in interiors:
                if inside & other:
                    raise ValueError("rung interiors overlap")
            interiors.append(inside)
            for eid in rung.edges:
                if eid in seen_edges:
                    raise ValueError(f"edge {eid} used by two rungs")
                seen_edges.add(eid)
        if check_fatness and self.fatness is not None:
            m = self.fatness
            if set_distance(graph, self.pole_x, self.pole_y) < m:
                raise ValueError(f"poles are closer than fatness {m}")
            full = [i for i in interiors if i]
            for a in range(len(full)):
                for b in range(a + 1, len(full)):
                    if set_distance(graph, full[a], full[b]) < m:
                        raise ValueError(f"rung interiors closer than fatness {m}")


@dataclass(frozen=True)
class BottleneckReport:
    """What a bottleneck computation established and how."""

    edge_bottleneck: int | None
    point_bottleneck: int | None
    method: str  # "exact" once the scan finished
    pairs_examined: int
    budget: int | None
    witness_pair: tuple[frozenset[int], frozenset[int]] | None = None
    ladder: "Ladder | None" = None
    cut: CutCertificate | None = None
    adjacent_pair_paths: int | None = None
    notes: tuple[str, ...] = ()


def _require_usable(graph: Multigraph, what: str) -> None:
    graph.require_loopless(what)
    if not graph.is_connected():
        raise ValueError(f"{what} needs a connected graph")


def _crossing_rungs(graph: Multigraph, x: frozenset[int], c: frozenset[int]) -> tuple[PathWitness, ...]:
    rungs = []
    for eid, (u, v) in enumerate(graph.edges):
        if u in x and v in c:
            rungs.append(PathWitness((u, v), (eid,)))
        elif v in x and u in c:
            rungs.append(PathWitness((v, u), (eid,)))
    return tuple(rungs)


def edge_bottleneck_exact(
    graph: Multigraph, budget: int | None = None
) -> tuple[int, Ladder | None, BottleneckReport]:
    """Exact edge bottleneck number with a maximum ladder and a matching cut.

    ``budget`` caps the number of (subset, component) pairs the scan may
    examine; None means exhaustive.  Exceeding it raises
    BudgetExceededError carrying the certified lower bound and the edge
    count as a structural upper bound.
    """
    _require_usable(graph, "edge_bottleneck_exact")
    scan = edge_bond_scan(graph, budget=budget)
    if not scan.exhausted:
        raise BudgetExceededError(
            f"edge bottleneck scan stopped after {scan.pairs_examined} pairs",
            lower_bound=scan.value,
            pairs_examined=scan.pairs_examined,
            upper_bound=graph.m,
        )
    if scan.value == 0:
        report = BottleneckReport(
            edge_bottleneck=0,
            point_bottleneck=None,
            method="exact",
            pairs_examined=scan.pairs_examined,
            budget=budget,
            notes=("graph has no disjoint connected set pairs",),
        )
        return 0, None, report
    count, system, cut = max_edge_disjoint(graph, scan.best_x, scan.best_c)
    # the max bond must agree with the flow engine on its own pair
    assert count == scan.value, (count, scan.value)
    assert cut is not None and len(cut.members) == scan.value
    rungs = _crossing_rungs(graph, scan.best_x, scan.best_c)
    assert len(rungs) == scan.value
    ladder = Ladder(scan.best_x, scan.best_c, rungs)
    ladder.validate(graph)
    report = BottleneckReport(
        edge_bottleneck=scan.value,
        point_bottleneck=None,
        method="exact",
        pairs_examined=scan.pairs_examined,
        budget=budget,
        witness_pair=(scan.best_x, scan.best_c),
        ladder=ladder,
        cut=cut,
    )
    return scan.value, ladder, report


def point_bottleneck_exact(
    graph: Multigraph, budget: int | None = None
) -> tuple[int, BottleneckReport]:
    """Exact point bottleneck number.

    Maximum over disjoint connected pairs with no direct edge of the
    minimum vertex separator size.  Adjacent pairs admit no separator;
    their internally-disjoint-path maximum is reported separately in
    ``adjacent_pair_paths`` (it always equals the edge bottleneck number,
    which the test suite checks), with a note when it exceeds the point
    value.
    """
    _require_usable(graph, "point_bottleneck_exact")
    scan = point_separator_scan(graph, budget=budget)
    if not scan.exhausted:
        raise BudgetExceededError(
            f"point bottleneck scan stopped after {scan.pairs_examined} pairs",
            lower_bound=scan.value,
            pairs_examined=scan.pairs_examined,
            upper_bound=max(graph.n - 2, 0),
        )
    notes: list[str] = []
    witness_pair = None
    cut = None
    if scan.best_x:
        witness_pair = (scan.best_x, scan.best_c)
        count, _system, cut = max_vertex_disjoint(graph, scan.best_x, scan.best_c)
        # Menger check on the winning pair: separator size == path count
        assert cut is not None and count == scan.value
        assert len(cut.members) == scan.value
    else:
        notes.append("every disjoint connected pair is adjacent; no separator exists")
    adjacent_paths: int | None
    try:
        adjacent_paths = edge_bond_scan(graph, budget=budget).value
    except BudgetExceededError:  # pragma: no cover - same budget usually trips above
        adjacent_paths = None
        notes.append("adjacent-pair path maximum not computed within budget")
    if adjacent_paths is not None and adjacent_paths > scan.value:
        notes.append(
            f"an adjacent pair reaches {adjacent_paths} internally disjoint paths"
        )
    report = BottleneckReport(
        edge_bottleneck=None,
        point_bottleneck=scan.value,
        method="exact",
        pairs_examined=scan.pairs_examined,
        budget=budget,
        witness_pair=witness_pair,
        cut=cut,
        adjacent_pair_paths=adjacent_paths,
        notes=tuple(notes),
    )
    return scan.value, report


def find_dipole_ladder(graph: Multigraph, k: int, budget: int | None = None) -> Ladder | None:
    """A k-rung ladder (equivalently a k-dipole minor) or certified None.

    Scans bonds and stops at the first of width >= k, trimming it to k
    rungs.  Returns None only when the finished scan proves no such bond
    exists; an interrupted scan raises BudgetExceededError instead, since
    that outcome is unknown rather than negative.
    """
    graph.require_loopless("find_dipole_ladder")
    if k < 1:
        raise ValueError("ladder width must be at least 1")
    scan = edge_bond_scan(graph, budget=budget, stop_at=k)
    if scan.value >= k:
        rungs = _crossing_rungs(graph, scan.best_x, scan.best_c)[:k]
        ladder = Ladder(scan.best_x, scan.best_c, rungs)
        ladder.validate(graph)
        return ladder
    if scan.exhausted:
        return None
    raise BudgetExceededError(
        f"ladder search stopped after {scan.pairs_examined} pairs",
        lower_bound=scan.value,
        pairs_examined=scan.pairs_examined,
        upper_bound=graph.m,
    )


def find_theta_subdivision(
    graph: Multigraph,
) -> tuple[int, int, tuple[PathWitness, PathWitness, PathWitness]] | None:
    """Two branch vertices with three internally disjoint paths, or None.

    Such a theta shape exists exactly when some 3-rung ladder does, so
    existence is settled by the ladder search first; the branch vertices
    are then located by a direct pairwise sweep.
    """
    _require_usable(graph, "find_theta_subdivision")
    if find_dipole_ladder(graph, 3) is None:
        return None
    for u in range(graph.n):
        for v in range(u + 1, graph.n):
            count, system, _cut = max_vertex_disjoint(graph, frozenset({u}), frozenset({v}))
            if count >= 3:
                return u, v, tuple(system.paths[:3])
    raise AssertionError("a 3-ladder exists but no vertex pair carries three paths")


def _induced_paths(graph: Multigraph) -> list[tuple[int, ...]]:
    """Every induced path as a vertex sequence, first endpoint <= last."""
    out: list[tuple[int, ...]] = [(v,) for v in range(graph.n)]
    nbr = graph.nbr_mask

    def grow(path: list[int], used: int) -> None:
        tail = path[-1]
        # the next vertex may touch only the current tail among path vertices
        forbidden = used & ~(1 << tail)
        for w, _eid in graph.adj[tail]:
            if (1 << w) & used or nbr[w] & forbidden:
                continue
            path.append(w)
            if path[0] <= w:
                out.append(tuple(path))
            grow(path, used | (1 << w))
            path.pop()

    for v in range(graph.n):
        grow([v], 1 << v)
    return sorted(out, key=lambda p: (len(p), p))


def _pole_path_rungs(
    graph: Multigraph, px: tuple[int, ...], py: tuple[int, ...]
) -> tuple[PathWitness, ...] | None:
    """Four rungs between pole paths px and py, two per path endpoint.

    Free vertices are split so rung interiors stay disjoint; pole interiors
    are excluded entirely and pole endpoints cannot be traversed.  Returns
    None when no such system exists.
    """
    ends_x = (px[0], px[-1])
    ends_y = (py[0], py[-1])
    pole_set = set(px) | set(py)
    free = [v for v in range(graph.n) if v not in pole_set]
    node_of = {}
    nid = 2  # 0 = source, 1 = sink
    for v in set(ends_x) | set(ends_y):
        node_of[v] = nid
        nid += 1
    v_in = {}
    v_out = {}
    for v in free:
        v_in[v] = nid
        v_out[v] = nid + 1
        nid += 2
    dinic = _Dinic(nid)
    for v in set(ends_x):
        dinic.add_pair(0, node_of[v], 4 if px[0] == px[-1] else 2, 0)
    for v in set(ends_y):
        dinic.add_pair(node_of[v], 1, 4 if py[0] == py[-1] else 2, 0)
    for v in free:
        dinic.add_pair(v_in[v], v_out[v], 1, 0)
    arcs: list[tuple[int, int, int, int]] = []  # (arc index, from, to, eid)

    def add_arc(a: int, b: int, eid: int) -> None:
        idx = dinic.add_pair(a, b, 1, 0)
        arcs.append((idx, a, b, eid))

    for eid, (u, v) in enumerate(graph.edges):
        u_free, v_free = u not in pole_set, v not in pole_set
        if u_free and v_free:
            add_arc(v_out[u], v_in[v], eid)
            add_arc(v_out[v], v_in[u], eid)
        elif u in node_of and v_free:
            if u in ends_x:
                add_arc(node_of[u], v_in[v], eid)
            if u in ends_y:
                add_arc(v_out[v], node_of[u], eid)
        elif v in node_of and u_free:
            if v in ends_x:
                add_arc(node_of[v], v_in[u], eid)
            if v in ends_y:
                add_arc(v_out[u], node_of[v], eid)
        elif u in node_of and v in node_of:
            if u in ends_x and v in ends_y:
                add_arc(node_of[u], node_of[v], eid)
            if v in ends_x and u in ends_y:
                add_arc(node_of[v], node_of[u], eid)
    if dinic.maxflow(0, 1) != 4:
        return None
    used: dict[int, list[tuple[int, int]]] = {}
    rev_node = {n: v for v, n in node_of.items()}
    for v in free:
        rev_node[v_in[v]] = v
        rev_node[v_out[v]] = v
    for idx, a, b, eid in arcs:
        if dinic.cap[idx] == 0:  # unit arc fully used
            used.setdefault(a, []).append((b, eid))
    for lst in used.values():
        lst.sort()
    rungs = []
    for end in sorted(set(ends_x)):
        start_node = node_of[end]
        while used.get(start_node):
            nxt, eid = used[start_node].pop(0)
            verts = [end]
            eids = [eid]
            node = nxt
            while node != 1 and rev_node[node] not in set(ends_y):
                v = rev_node[node]
                verts.append(v)
                node = v_out[v]
                nxt2, eid2 = used[node].pop(0)
                eids.append(eid2)
                node = nxt2
            verts.append(rev_node[node])
            rungs.append(PathWitness(tuple(verts), tuple(eids)))
    if len(rungs) != 4:
        return None
    return tuple(sorted(rungs, key=lambda r: (r.vertices, r.edges)))


def _ladder_is_normal(graph: Multigraph, ladder: Ladder) -> bool:
    for pole in (ladder.pole_x, ladder.pole_y):
        sub, vmap = graph.induced(pole)
        degs = sorted(sub.degree(v) for v in range(sub.n))
        if sub.n == 1:
            ok = sub.m == 0
        else:
            ok = sub.m == sub.n - 1 and degs[-1] <= 2 and sub.is_connected()
        if not ok:
            return False
    for pole, side in ((ladder.pole_x, 0), (ladder.pole_y, -1)):
        ends = _path_endpoints(graph, pole)
        counts = {e: 0 for e in ends}
        for rung in ladder.rungs:
            v = rung.vertices[side]
            if v not in counts:
                return False
            counts[v] += 1
        want = 4 if len(ends) == 1 else 2
        if any(c != want for c in counts.values()):
            return False
    return True


def _path_endpoints(graph: Multigraph, pole: frozenset[int]) -> list[int]:
    if len(pole) == 1:
        return [next(iter(pole))]
    sub, vmap = graph.induced(pole)
    inv = {b: a for a, b in vmap.items()}
    return sorted(inv[v] for v in range(sub.n) if sub.degree(v) == 1)


def normalize_four_ladder(graph: Multigraph, ladder: Ladder) -> Ladder:
    """Rebuild a width-4 ladder so its poles induce paths.

    In the output each pole induces a path and every rung meets a pole
    exactly at a path endpoint, two rungs per endpoint (four at the single
    vertex of a one-vertex pole).  The input must already be a valid
    4-ladder; a valid input that admits no such form raises
    BottleneckLabError, which would contradict the theory this implements.
    """
    _require_usable(graph, "normalize_four_ladder")
    ladder.validate(graph)
    if ladder.width != 4:
        raise ValueError("normalize_four_ladder expects a width-4 ladder")
    if _ladder_is_normal(graph, ladder):
        return ladder
    paths = _induced_paths(graph)
    candidates = sorted(
        (
            (len(px) + len(py), px, py)
            for px in paths
            for py in paths
            if not set(px) & set(py)
        ),
    )
    for _total, px, py in candidates:
        rungs = _pole_path_rungs(graph, px, py)
        if rungs is None:
            continue
        out = Ladder(frozenset(px), frozenset(py), rungs)
        out.validate(graph)
        assert _ladder_is_normal(graph, out)
        return out
    raise BottleneckLabError("no pole-path form of the 4-ladder exists in this graph")
