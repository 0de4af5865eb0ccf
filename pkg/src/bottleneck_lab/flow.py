"""Disjoint path systems and minimum cuts between vertex sets.

Both entry points reduce to unit-style max flow: ``max_edge_disjoint``
contracts each terminal set to a super-terminal and gives every edge
capacity one; ``max_vertex_disjoint`` splits every non-terminal vertex into
an in/out pair joined by a capacity-one arc, so the flow value counts
internally disjoint paths and the saturated vertex arcs of a minimum cut
name a separator that avoids both terminal sets.

Every call checks the returned path count against the returned cut size and
refuses to hand back a pair that disagrees: the two quantities are equal for
finite graphs, and an inequality here always means an implementation bug,
never new mathematics.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Iterable

from .graph import Multigraph, PathWitness, components_excluding, mask_of, set_of

EDGE_MODE = "edge-disjoint"
VERTEX_MODE = "internally-vertex-disjoint"


@dataclass(frozen=True)
class PathSystem:
    """A set of pairwise disjoint paths between two vertex sets."""

    mode: str
    sources: frozenset[int]
    sinks: frozenset[int]
    paths: tuple[PathWitness, ...]

    @property
    def count(self) -> int:
        return len(self.paths)

    def validate(self, graph: Multigraph) -> None:
        """Re-walk every path and re-check pairwise disjointness."""
        seen_edges: set[int] = set()
        seen_interior: set[int] = set()
        for p in self.paths:
            p.validate_in(graph)
            if p.vertices[0] not in self.sources:
                raise ValueError(f"path starts at {p.vertices[0]}, not in sources")
            if p.vertices[-1] not in self.sinks:
                raise ValueError(f"path ends at {p.vertices[-1]}, not in sinks")
            if p.interior & (self.sources | self.sinks):
                raise ValueError("path interior touches a terminal set")
            for e in p.edges:
                if e in seen_edges:
                    raise ValueError(f"edge {e} appears in two paths")
                seen_edges.add(e)
            if self.mode == VERTEX_MODE:
                overlap = p.interior & seen_interior
                if overlap:
                    raise ValueError(f"interior vertex {min(overlap)} shared by two paths")
                seen_interior |= p.interior


@dataclass(frozen=True)
class CutCertificate:
    """A set of edges or vertices whose removal separates two vertex sets.

    ``radius`` is only meaningful for kind "fat-cut", where removal means
    deleting the whole neighborhood at hop distance < radius around each
    member.
    """

    kind: str  # "edge-cut" | "vertex-cut" | "fat-cut"
    members: frozenset[int]
    radius: int | None = None

    def validate(self, graph: Multigraph, sources: Iterable[int], sinks: Iterable[int]) -> None:
        src = frozenset(sources)
        snk = frozenset(sinks)
        if self.kind == "edge-cut":
            kept = tuple(e for i, e in enumerate(graph.edges) if i not in self.members)
            reduced = Multigraph(graph.n, kept)
            reach = reduced.component_mask(mask_of(src), reduced.full_mask)
            if reach & mask_of(snk):
                raise ValueError("removing the edge cut leaves a source-sink path")
            return
        removed: frozenset[int]
        if self.kind == "vertex-cut":
            if self.members & (src | snk):
                raise ValueError("vertex cut must avoid both terminal sets")
            removed = self.members
        elif self.kind == "fat-cut":
            if self.radius is None:
                raise ValueError("fat-cut needs a radius")
            removed = frozenset(
                set_of(graph.neighborhood_mask(mask_of(self.members), self.radius))
            )
            if removed & (src | snk) and (src - removed and snk - removed):
                # allowed to clip terminals, but never to swallow one whole;
                # the caller checks residue-nonemptiness separately
                pass
        else:
            raise ValueError(f"unknown cut kind {self.kind!r}")
        comps = components_excluding(graph, removed)
        index = {}
        for i, comp in enumerate(comps):
            for v in comp:
                index[v] = i
        src_comps = {index[v] for v in src if v in index}
        snk_comps = {index[v] for v in snk if v in index}
        if not src - removed or not snk - removed:
            raise ValueError("cut swallowed a terminal set entirely")
        if src_comps & snk_comps:
            raise ValueError("a component still contains both terminals")


class _Dinic:
    """Integer-capacity max flow; deterministic given arc insertion order."""

    def __init__(self, node_count: int):
        self.node_count = node_count
        self.head: list[list[int]] = [[] for _ in range(node_count)]
        self.to: list[int] = []
        self.cap: list[int] = []

    def add_pair(self, u: int, v: int, cap_uv: int, cap_vu: int) -> int:
        i = len(self.to)
        self.to.append(v)
        self.cap.append(cap_uv)
        self.head[u].append(i)
        self.to.append(u)
        self.cap.append(cap_vu)
        self.head[v].append(i + 1)
        return i

    def _levels(self, s: int, t: int) -> list[int] | None:
        level = [-1] * self.node_count
        level[s] = 0
        q = deque([s])
        while q:
            u = q.popleft()
            for i in self.head[u]:
                v = self.to[i]
                if self.cap[i] > 0 and level[v] < 0:
                    level[v] = level[u] + 1
                    q.append(v)
        return level if level[t] >= 0 else None

    def _augment(self, s: int, t: int, level: list[int], it: list[int]) -> int:
        path: list[int] = []
        u = s
        while True:
            if u == t:
                pushed = min(self.cap[i] for i in path)
                for i in path:
                    self.cap[i] -= pushed
                    self.cap[i ^ 1] += pushed
                return pushed
            advanced = False
            while it[u] < len(self.head[u]):
                i = self.head[u][it[u]]
                v = self.to[i]
                if self.cap[i] > 0 and level[v] == level[u] + 1:
                    path.append(i)
                    u = v
                    advanced = True
                    break
                it[u] += 1
            if not advanced:
                if not path:
                    return 0
                level[u] = -1
                last = path.pop()
                u = self.to[last ^ 1]
                it[u] += 1

    def maxflow(self, s: int, t: int) -> int:
        flow = 0
        while True:
            level = self._levels(s, t)
            if level is None:
                return flow
            it = [0] * self.node_count
            while True:
                pushed = self._augment(s, t, level, it)
                if pushed == 0:
                    break
                flow += pushed

    def residual_reach(self, s: int) -> set[int]:
        seen = {s}
        q = deque([s])
        while q:
            u = q.popleft()
            for i in self.head[u]:
                v = self.to[i]
                if self.cap[i] > 0 and v not in seen:
                    seen.add(v)
                    q.append(v)
        return seen


def _terminal_sets(
    graph: Multigraph, sources: Iterable[int], sinks: Iterable[int], op: str
) -> tuple[frozenset[int], frozenset[int]]:
    graph.require_loopless(op)
    x = frozenset(int(v) for v in sources)
    y = frozenset(int(v) for v in sinks)
    for name, s in (("X", x), ("Y", y)):
        if not s:
            raise ValueError(f"{op}: {name} must be nonempty")
        for v in s:
            if not 0 <= v < graph.n:
                raise ValueError(f"{op}: {name} contains out-of-range vertex {v}")
        m = mask_of(s)
        if graph.component_mask(m & -m, m) != m:
            raise ValueError(f"{op}: {name} must induce a connected subgraph")
    if x & y:
        raise ValueError(f"{op}: X and Y must be disjoint")
    return x, y


def _simplify_walk(vertices: list[int], eids: list[int]) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """Drop any cycles a flow walk picked up, keeping a simple path."""
    out_v = [vertices[0]]
    out_e: list[int] = []
    pos = {vertices[0]: 0}
    for step, v in enumerate(vertices[1:]):
        if v in pos:
            k = pos[v]
            for w in out_v[k + 1 :]:
                pos.pop(w)
            out_v = out_v[: k + 1]
            out_e = out_e[:k]
        else:
            out_v.append(v)
            out_e.append(eids[step])
            pos[v] = len(out_v) - 1
    return tuple(out_v), tuple(out_e)


def max_edge_disjoint(
    graph: Multigraph, sources: Iterable[int], sinks: Iterable[int]
) -> tuple[int, PathSystem, CutCertificate]:
    """Maximum pairwise edge-disjoint X,Y path system plus a matching edge cut.

    The path count always equals the cut size (asserted before returning).
    """
    x, y = _terminal_sets(graph, sources, sinks, "max_edge_disjoint")
    xmask, ymask = mask_of(x), mask_of(y)

    interior = [v for v in range(graph.n) if v not in x and v not in y]
    node_of = {v: i + 2 for i, v in enumerate(interior)}

    def cls(v: int) -> int:
        if (1 << v) & xmask:
            return 0
        if (1 << v) & ymask:
            return 1
        return node_of[v]

    dinic = _Dinic(2 + len(interior))
    arcs: list[tuple[int, int, int, int]] = []  # (arc index, eid, u, v)
    for eid, (u, v) in enumerate(graph.edges):
        cu, cv = cls(u), cls(v)
        if cu == cv:
            continue
        i = dinic.add_pair(cu, cv, 1, 1)
        arcs.append((i, eid, u, v))

    count = dinic.maxflow(0, 1)

    reach = dinic.residual_reach(0)
    cut = frozenset(
        eid for (i, eid, u, v) in arcs if (cls(u) in reach) != (cls(v) in reach)
    )
    if len(cut) != count:
        raise AssertionError(
            f"path count {count} != cut size {len(cut)}: flow engine bug"
        )

    # decompose the flow into walks, then simplify each walk to a path
    out: dict[int, list[tuple[int, int, int]]] = {}
    for i, eid, u, v in arcs:
        if dinic.cap[i] == 0:  # net flow along the arc's own direction
            frm, to_v = u, v
        elif dinic.cap[i] == 2:  # net flow against it
            frm, to_v = v, u
        else:
            continue
        out.setdefault(cls(frm), []).append((to_v, eid, frm))
    for lst in out.values():
        lst.sort(key=lambda rec: (rec[0], rec[1]))

    witnesses = []
    for _ in range(count):
        node = 0
        verts: list[int] = []
        eids: list[int] = []
        while node != 1:
            to_v, eid, frm = out[node].pop(0)
            if not verts:
                verts.append(frm)
            verts.append(to_v)
            eids.append(eid)
            node = cls(to_v)
        sv, se = _simplify_walk(verts, eids)
        witnesses.append(PathWitness(sv, se))
    witnesses.sort(key=lambda p: p.vertices)

    system = PathSystem(EDGE_MODE, x, y, tuple(witnesses))
    system.validate(graph)
    certificate = CutCertificate("edge-cut", cut)
    certificate.validate(graph, x, y)
    return count, system, certificate


def max_vertex_disjoint(
    graph: Multigraph, sources: Iterable[int], sinks: Iterable[int]
) -> tuple[int, PathSystem, CutCertificate | None]:
    """Maximum internally-vertex-disjoint X,Y path system plus a separator
    avoiding X∪Y, or ``None`` for the separator when a direct X–Y edge makes
    one impossible (the count is still exact in that case)."""
    x, y = _terminal_sets(graph, sources, sinks, "max_vertex_disjoint")
    xmask, ymask = mask_of(x), mask_of(y)
    big = graph.m + 1

    interior = [v for v in range(graph.n) if v not in x and v not in y]
    idx = {v: i for i, v in enumerate(interior)}
    v_in = lambda v: 2 + 2 * idx[v]
    v_out = lambda v: 3 + 2 * idx[v]

    dinic = _Dinic(2 + 2 * len(interior))
    for v in interior:
        dinic.add_pair(v_in(v), v_out(v), 1, 0)

    direct: list[tuple[int, int, int]] = []  # (eid, from in X, to in Y)
    edge_arcs: list[tuple[int, int, int, int]] = []  # (arc, eid, from, to)

    def side(v: int) -> str:
        if (1 << v) & xmask:
            return "x"
        if (1 << v) & ymask:
            return "y"
        return "i"

    for eid, (u, v) in enumerate(graph.edges):
        su, sv = side(u), side(v)
        if su == sv and su != "i":
            continue
        if {su, sv} == {"x", "y"}:
            xu, yv = (u, v) if su == "x" else (v, u)
            direct.append((eid, xu, yv))
            continue
        if su == "i" and sv == "i":
            a = dinic.add_pair(v_out(u), v_in(v), big, 0)
            edge_arcs.append((a, eid, u, v))
            a = dinic.add_pair(v_out(v), v_in(u), big, 0)
            edge_arcs.append((a, eid, v, u))
            continue
        # one terminal endpoint, one interior endpoint
        if su == "x":
            a = dinic.add_pair(0, v_in(v), big, 0)
            edge_arcs.append((a, eid, u, v))
        elif sv == "x":
            a = dinic.add_pair(0, v_in(u), big, 0)
            edge_arcs.append((a, eid, v, u))
        elif su == "y":
            a = dinic.add_pair(v_out(v), 1, big, 0)
            edge_arcs.append((a, eid, v, u))
        else:  # sv == "y"
            a = dinic.add_pair(v_out(u), 1, big, 0)
            edge_arcs.append((a, eid, u, v))

    flow = dinic.maxflow(0, 1)
    count = flow + len(direct)

    certificate: CutCertificate | None
    if direct:
        certificate = None
    else:
        reach = dinic.residual_reach(0)
        separator = frozenset(
            v for v in interior if v_in(v) in reach and v_out(v) not in reach
        )
        if len(separator) != flow:
            raise AssertionError(
                f"path count {flow} != separator size {len(separator)}: flow engine bug"
            )
        certificate = CutCertificate("vertex-cut", separator)
        certificate.validate(graph, x, y)

    # decompose: walk used arcs from source to sink
    used: dict[int, list[tuple[int, int, int, int]]] = {}
    for a, eid, frm, to_v in edge_arcs:
        if dinic.cap[a] < big:
            src_node = 0 if side(frm) == "x" else v_out(frm)
            used.setdefault(src_node, []).append((to_v, eid, frm, a))
    for lst in used.values():
        lst.sort(key=lambda rec: (rec[0], rec[1]))

    witnesses = []
    for _ in range(flow):
        node = 0
        verts: list[int] = []
        eids: list[int] = []
        while True:
            to_v, eid, frm, _a = used[node].pop(0)
            if not verts:
                verts.append(frm)
            verts.append(to_v)
            eids.append(eid)
            if side(to_v) == "y":
                break
            node = v_out(to_v)
        witnesses.append(PathWitness(tuple(verts), tuple(eids)))
    for eid, xu, yv in direct:
        witnesses.append(PathWitness((xu, yv), (eid,)))
    witnesses.sort(key=lambda p: p.vertices)

    system = PathSystem(VERTEX_MODE, x, y, tuple(witnesses))
    system.validate(graph)
    return count, system, certificate


def _edge_flow_count(graph: Multigraph, u: int, v: int) -> int:
    """Local edge connectivity between two single vertices, flow value only."""
    dinic = _Dinic(graph.n)
    for a, b in graph.edges:
        if a != b:
            dinic.add_pair(a, b, 1, 1)
    return dinic.maxflow(u, v)


def connectivity_profile(
    graph: Multigraph, include_table: bool = False
) -> tuple[int, int] | tuple[int, int, dict[tuple[int, int], int]]:
    """Global and maximum local edge connectivity; per-pair table on request.

    Pairwise computation, quadratic in the vertex count by design.
    """
    graph.require_loopless("connectivity_profile")
    if graph.n < 2:
        raise ValueError("connectivity_profile needs at least two vertices")
    if not graph.is_connected():
        raise ValueError("connectivity_profile needs a connected graph")
    lo, hi = None, None
    table: dict[tuple[int, int], int] = {}
    for u in range(graph.n):
        for v in range(u + 1, graph.n):
            lam = _edge_flow_count(graph, u, v)
            table[(u, v)] = lam
            lo = lam if lo is None else min(lo, lam)
            hi = lam if hi is None else max(hi, lam)
    assert lo is not None and hi is not None
    if include_table:
        return lo, hi, table
    return lo, hi
