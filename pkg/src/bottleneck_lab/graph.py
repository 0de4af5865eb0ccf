"""Core multigraph type and the structural operations everything else builds on.

Vertices are dense integer ids 0..n-1. Edges are (u, v) endpoint pairs stored
in a tuple; an edge's id is its position in that tuple, and parsing and
serialization both preserve that order, so ids survive a round trip. Parallel
edges are meaningful throughout (they carry multiplicity in cuts and ladders).
Self-loops can be stored and round-tripped but are rejected by every operation
that reasons about paths, because a loop never lies on a path between distinct
vertices.

Distances are hop counts. ``neighborhood(G, S, M)`` uses a strict cutoff,
d(x, S) < M, so M=0 gives the empty set and M=1 gives S itself; callers that
want "S plus everything beside it" ask for M=2.

Vertex sets cross the public API as frozensets. Internally most algorithms
work on arbitrary-width integer bitmasks; the ``mask_of`` / ``set_of`` helpers
convert at the boundary.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Iterator

from .errors import GraphFormatError, SelfLoopError

VertexSet = frozenset


def mask_of(vertices: Iterable[int]) -> int:
    """Pack vertex ids into a bitmask."""
    m = 0
    for v in vertices:
        m |= 1 << v
    return m


def set_of(mask: int) -> frozenset[int]:
    """Unpack a bitmask into a frozenset of vertex ids."""
    out = []
    v = 0
    while mask:
        if mask & 1:
            out.append(v)
        mask >>= 1
        v += 1
    return frozenset(out)


def iter_bits(mask: int) -> Iterator[int]:
    """Yield the set bit positions of ``mask`` in ascending order."""
    v = 0
    while mask:
        if mask & 1:
            yield v
        mask >>= 1
        v += 1


@dataclass(frozen=True)
class PathWitness:
    """A concrete path: the vertex sequence and the edge ids joining it.

    ``vertices`` has one more entry than ``edges`` and all vertices are
    distinct. A single vertex with no edges is a valid (trivial) path.
    """

    vertices: tuple[int, ...]
    edges: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "vertices", tuple(int(v) for v in self.vertices))
        object.__setattr__(self, "edges", tuple(int(e) for e in self.edges))
        if len(self.vertices) != len(self.edges) + 1:
            raise ValueError("path needs exactly one more vertex than edge")
        if len(set(self.vertices)) != len(self.vertices):
            raise ValueError("path vertices must be distinct")

    @property
    def interior(self) -> frozenset[int]:
        return frozenset(self.vertices[1:-1])

    def validate_in(self, graph: "Multigraph") -> None:
        """Check every listed edge exists and joins the consecutive vertices."""
        for i, eid in enumerate(self.edges):
            if not 0 <= eid < len(graph.edges):
                raise ValueError(f"edge id {eid} out of range")
            a, b = graph.edges[eid]
            if {a, b} != {self.vertices[i], self.vertices[i + 1]}:
                raise ValueError(
                    f"edge {eid} joins {a},{b}, not {self.vertices[i]},{self.vertices[i + 1]}"
                )


@dataclass(frozen=True)
class Multigraph:
    """Undirected multigraph with dense vertex ids and positional edge ids."""

    n: int
    edges: tuple[tuple[int, int], ...] = ()

    def __post_init__(self):
        object.__setattr__(
            self, "edges", tuple((int(u), int(v)) for u, v in self.edges)
        )
        object.__setattr__(self, "n", int(self.n))
        if self.n < 0:
            raise ValueError("vertex count must be non-negative")
        for eid, (u, v) in enumerate(self.edges):
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise ValueError(
                    f"edge {eid} endpoint out of range: ({u}, {v}) with n={self.n}"
                )

    # -- basic structure ---------------------------------------------------

    @property
    def m(self) -> int:
        return len(self.edges)

    @cached_property
    def adj(self) -> tuple[tuple[tuple[int, int], ...], ...]:
        """Per-vertex list of (neighbor, edge id), in edge-id order."""
        lists: list[list[tuple[int, int]]] = [[] for _ in range(self.n)]
        for eid, (u, v) in enumerate(self.edges):
            lists[u].append((v, eid))
            if u != v:
                lists[v].append((u, eid))
        return tuple(tuple(l) for l in lists)

    @cached_property
    def nbr_mask(self) -> tuple[int, ...]:
        """Open-neighborhood bitmasks; loops contribute nothing."""
        masks = [0] * self.n
        for u, v in self.edges:
            if u != v:
                masks[u] |= 1 << v
                masks[v] |= 1 << u
        return tuple(masks)

    @cached_property
    def loop_vertices(self) -> frozenset[int]:
        return frozenset(u for u, v in self.edges if u == v)

    @property
    def full_mask(self) -> int:
        return (1 << self.n) - 1

    def degree(self, v: int) -> int:
        """Edge-endpoint count at v; a loop contributes 2."""
        d = 0
        for u, w in self.edges:
            d += (u == v) + (w == v)
        return d

    def require_loopless(self, operation: str) -> None:
        if self.loop_vertices:
            v = min(self.loop_vertices)
            raise SelfLoopError(
                f"{operation} is undefined on graphs with self-loops (loop at vertex {v})"
            )

    # -- traversal ---------------------------------------------------------

    def component_mask(self, start_mask: int, allowed_mask: int) -> int:
        """Grow ``start_mask`` through ``allowed_mask`` along edges; returns the
        reachable set (start vertices included even if outside allowed)."""
        comp = start_mask
        frontier = start_mask
        nbr = self.nbr_mask
        while frontier:
            nxt = 0
            f = frontier
            while f:
                low = f & -f
                nxt |= nbr[low.bit_length() - 1]
                f ^= low
            nxt &= allowed_mask & ~comp
            comp |= nxt
            frontier = nxt
        return comp

    def component_masks_within(self, allowed_mask: int) -> list[int]:
        """Connected components of the subgraph induced on ``allowed_mask``,
        ordered by smallest member."""
        out = []
        rest = allowed_mask
        while rest:
            low = rest & -rest
            comp = self.component_mask(low, rest)
            out.append(comp)
            rest &= ~comp
        return out

    def is_connected(self) -> bool:
        if self.n <= 1:
            return True
        return self.component_mask(1, self.full_mask) == self.full_mask

    def components(self) -> tuple[frozenset[int], ...]:
        return tuple(set_of(m) for m in self.component_masks_within(self.full_mask))

    def distances_from_mask(self, source_mask: int) -> list[int]:
        """Multi-source BFS hop distances; -1 where unreachable."""
        dist = [-1] * self.n
        frontier = source_mask
        seen = source_mask
        d = 0
        nbr = self.nbr_mask
        while frontier:
            f = frontier
            while f:
                low = f & -f
                dist[low.bit_length() - 1] = d
                f ^= low
            nxt = 0
            f = frontier
            while f:
                low = f & -f
                nxt |= nbr[low.bit_length() - 1]
                f ^= low
            frontier = nxt & ~seen
            seen |= frontier
            d += 1
        return dist

    def neighborhood_mask(self, source_mask: int, radius: int) -> int:
        """Vertices at hop distance strictly below ``radius`` from the source set."""
        if radius <= 0 or not source_mask:
            return 0
        reach = source_mask
        frontier = source_mask
        nbr = self.nbr_mask
        for _ in range(radius - 1):
            nxt = 0
            f = frontier
            while f:
                low = f & -f
                nxt |= nbr[low.bit_length() - 1]
                f ^= low
            frontier = nxt & ~reach
            if not frontier:
                break
            reach |= frontier
        return reach

    def edges_between(self, mask_a: int, mask_b: int) -> list[int]:
        """Edge ids with one endpoint in each mask (masks assumed disjoint)."""
        out = []
        for eid, (u, v) in enumerate(self.edges):
            bu, bv = 1 << u, 1 << v
            if (bu & mask_a and bv & mask_b) or (bu & mask_b and bv & mask_a):
                out.append(eid)
        return out

    def connected_subset_masks(self, within_mask: int | None = None) -> Iterator[int]:
        """Every nonempty connected vertex subset, exactly once, as bitmasks.

        Enumeration is rooted: subsets containing vertex r but no vertex
        below r are grown from r, branching on whether each boundary vertex
        joins. Deterministic order.
        """
        nbr = self.nbr_mask
        universe = self.full_mask if within_mask is None else within_mask
        for r in iter_bits(universe):
            above = universe & ~((1 << (r + 1)) - 1)
            root = 1 << r
            # frames: (subset, candidates, banned)
            stack = [(root, nbr[r] & above, 0)]
            while stack:
                sub, cand, banned = stack.pop()
                if not cand:
                    yield sub
                    continue
                low = cand & -cand
                v = low.bit_length() - 1
                stack.append((sub, cand ^ low, banned | low))
                grown = sub | low
                newcand = (cand ^ low) | (nbr[v] & above & ~grown & ~banned)
                stack.append((grown, newcand, banned))

    # -- derived views -----------------------------------------------------

    def induced(self, keep: Iterable[int]) -> tuple["Multigraph", dict[int, int]]:
        """Induced subgraph on ``keep`` plus the old->new vertex id map.
        Surviving edges keep their relative order."""
        kept = sorted(set(keep))
        vmap = {old: new for new, old in enumerate(kept)}
        new_edges = [
            (vmap[u], vmap[v]) for (u, v) in self.edges if u in vmap and v in vmap
        ]
        return Multigraph(len(kept), tuple(new_edges)), vmap


# -- spec-level operations ---------------------------------------------------


def _as_vertex_set(graph: Multigraph, vertices: Iterable[int], what: str) -> frozenset[int]:
    s = frozenset(int(v) for v in vertices)
    for v in s:
        if not 0 <= v < graph.n:
            raise ValueError(f"{what} contains vertex id {v}, out of range for n={graph.n}")
    return s


def neighborhood(graph: Multigraph, sources: Iterable[int], radius: int) -> frozenset[int]:
    """Vertices at hop distance strictly less than ``radius`` from the source set.

    The cutoff is strict: radius 0 is empty, radius 1 is the source set itself.
    """
    s = _as_vertex_set(graph, sources, "source set")
    if not s:
        raise ValueError("source set must be nonempty")
    if radius < 0:
        raise ValueError("radius must be non-negative")
    return set_of(graph.neighborhood_mask(mask_of(s), radius))


def set_distance(graph: Multigraph, a: Iterable[int], b: Iterable[int]) -> int | float:
    """Minimum hop distance between the two sets; 0 iff they intersect,
    ``math.inf`` when no path joins them."""
    sa = _as_vertex_set(graph, a, "first set")
    sb = _as_vertex_set(graph, b, "second set")
    if not sa or not sb:
        raise ValueError("set_distance needs two nonempty sets")
    if sa & sb:
        return 0
    target = mask_of(sb)
    dist = graph.distances_from_mask(mask_of(sa))
    best = math.inf
    for v in iter_bits(target):
        if dist[v] >= 0 and dist[v] < best:
            best = dist[v]
    return best


def components_excluding(graph: Multigraph, removed: Iterable[int]) -> tuple[frozenset[int], ...]:
    """Connected components of the graph with ``removed`` deleted, ordered by
    smallest member. Removing everything yields an empty tuple."""
    f = _as_vertex_set(graph, removed, "removed set")
    allowed = graph.full_mask & ~mask_of(f)
    return tuple(set_of(m) for m in graph.component_masks_within(allowed))


def subdivide_all(graph: Multigraph) -> Multigraph:
    """Split every edge once. Edge i gains midpoint vertex n+i and becomes
    edges 2i (lower half) and 2i+1 (upper half); original vertex ids are kept.
    """
    n = graph.n
    new_edges: list[tuple[int, int]] = []
    for i, (u, v) in enumerate(graph.edges):
        w = n + i
        new_edges.append((u, w))
        new_edges.append((w, v))
    return Multigraph(n + graph.m, tuple(new_edges))


CONTRACT_EDGE = "contract-edge"
DELETE_EDGE = "delete-edge"
DELETE_VERTEX = "delete-vertex"
_MINOR_OPS = (CONTRACT_EDGE, DELETE_EDGE, DELETE_VERTEX)


@dataclass(frozen=True)
class MinorStep:
    """Result of one reduction step: the new graph plus id remapping tables.

    ``vertex_map[old]`` / ``edge_map[old]`` give the new id, or None when the
    old vertex/edge no longer exists. ``disconnected`` reports whether the
    result fell apart (deleting a bridge or cut vertex is allowed).
    """

    graph: Multigraph
    vertex_map: tuple[int | None, ...]
    edge_map: tuple[int | None, ...]
    disconnected: bool


def minor_reduce(graph: Multigraph, op: str, target: int) -> MinorStep:
    """Apply one minor-taking step: contract an edge, delete an edge, or
    delete a vertex.

    Contraction keeps parallel edges (they become multiplicity, which is the
    point of dipole witnesses) but drops the loops it would create, i.e. the
    contracted edge and any edges parallel to it. Contracting a self-loop is
    rejected. Surviving vertices and edges are renumbered preserving order;
    a merged vertex sits at the position of its smaller endpoint.
    """
    if op not in _MINOR_OPS:
        raise ValueError(f"unknown reduction op {op!r}; expected one of {_MINOR_OPS}")
    n, edges = graph.n, graph.edges

    if op == CONTRACT_EDGE:
        if not 0 <= target < len(edges):
            raise ValueError(f"edge id {target} out of range")
        cu, cv = edges[target]
        if cu == cv:
            raise ValueError("cannot contract a self-loop; delete it instead")
        a, b = min(cu, cv), max(cu, cv)
        survivors = [v for v in range(n) if v != b]
        vmap_full = {v: survivors.index(v) for v in survivors}
        vmap_full[b] = vmap_full[a]
        new_edges = []
        emap: list[int | None] = []
        for u, v in edges:
            nu, nv = vmap_full[u], vmap_full[v]
            if nu == nv:
                emap.append(None)  # the contracted edge and its parallels
            else:
                emap.append(len(new_edges))
                new_edges.append((nu, nv))
        result = Multigraph(n - 1, tuple(new_edges))
        vmap = tuple(vmap_full[v] for v in range(n))
    elif op == DELETE_EDGE:
        if not 0 <= target < len(edges):
            raise ValueError(f"edge id {target} out of range")
        new_edges = [e for i, e in enumerate(edges) if i != target]
        emap = [None if i == target else (i if i < target else i - 1) for i in range(len(edges))]
        result = Multigraph(n, tuple(new_edges))
        vmap = tuple(range(n))
    else:  # DELETE_VERTEX
        if not 0 <= target < n:
            raise ValueError(f"vertex id {target} out of range")
        vmap_list: list[int | None] = []
        k = 0
        for v in range(n):
            if v == target:
                vmap_list.append(None)
            else:
                vmap_list.append(k)
                k += 1
        new_edges = []
        emap = []
        for u, v in edges:
            if u == target or v == target:
                emap.append(None)
            else:
                emap.append(len(new_edges))
                new_edges.append((vmap_list[u], vmap_list[v]))
        result = Multigraph(n - 1, tuple(new_edges))
        vmap = tuple(vmap_list)

    return MinorStep(
        graph=result,
        vertex_map=vmap,
        edge_map=tuple(emap),
        disconnected=not result.is_connected(),
    )


# -- serialization -----------------------------------------------------------


def parse_edge_list(text: str) -> Multigraph:
    """Parse the one-edge-per-line text format.

    Each meaningful line is two vertex ids; ``#`` starts a comment. The vertex
    count is inferred as max id + 1 and every id below the maximum must occur:
    gaps would silently renumber witnesses downstream, so they are an error.
    """
    edges: list[tuple[int, int]] = []
    seen: set[int] = set()
    any_line = False
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        any_line = True
        parts = line.split()
        if len(parts) != 2:
            raise GraphFormatError(
                f"expected two vertex ids, got {len(parts)} tokens", line=lineno
            )
        try:
            u, v = int(parts[0]), int(parts[1])
        except ValueError:
            raise GraphFormatError(f"non-integer vertex id in {line!r}", line=lineno)
        if u < 0 or v < 0:
            raise GraphFormatError("vertex ids must be non-negative", line=lineno)
        edges.append((u, v))
        seen.add(u)
        seen.add(v)
    if not any_line:
        raise GraphFormatError("empty input: no edges found")
    n = max(seen) + 1
    missing = [v for v in range(n) if v not in seen]
    if missing:
        raise GraphFormatError(
            f"vertex ids must be contiguous from 0; missing {missing}"
        )
    return Multigraph(n, tuple(edges))


def serialize_edge_list(graph: Multigraph) -> str:
    """Inverse of parse_edge_list for graphs without isolated vertices."""
    used = {v for e in graph.edges for v in e}
    if len(used) != graph.n:
        raise ValueError(
            "edge-list format cannot express isolated vertices; use JSON"
        )
    return "".join(f"{u} {v}\n" for u, v in graph.edges)


def parse_json_graph(data: str | dict) -> Multigraph:
    """Parse the JSON format {"vertices": N, "edges": [[u, v], ...]}."""
    if isinstance(data, str):
        try:
            obj = json.loads(data)
        except json.JSONDecodeError as exc:
            raise GraphFormatError(f"invalid JSON: {exc}", line=exc.lineno)
    else:
        obj = data
    if not isinstance(obj, dict):
        raise GraphFormatError("JSON graph must be an object")
    if "vertices" not in obj or "edges" not in obj:
        raise GraphFormatError('JSON graph needs "vertices" and "edges" keys')
    n = obj["vertices"]
    if not isinstance(n, int) or n < 0:
        raise GraphFormatError('"vertices" must be a non-negative integer')
    raw_edges = obj["edges"]
    if not isinstance(raw_edges, list):
        raise GraphFormatError('"edges" must be a list of [u, v] pairs')
    edges = []
    for i, pair in enumerate(raw_edges):
        if (
            not isinstance(pair, list)
            or len(pair) != 2
            or not all(isinstance(x, int) for x in pair)
        ):
            raise GraphFormatError(f"edge {i} must be a pair of integers")
        u, v = pair
        if not (0 <= u < n and 0 <= v < n):
            raise GraphFormatError(f"edge {i} endpoint out of range: [{u}, {v}]")
        edges.append((u, v))
    return Multigraph(n, tuple(edges))


def graph_to_json_obj(graph: Multigraph) -> dict:
    return {"vertices": graph.n, "edges": [[u, v] for u, v in graph.edges]}


def serialize_json_graph(graph: Multigraph) -> str:
    return json.dumps(graph_to_json_obj(graph), sort_keys=True, separators=(",", ":"))
