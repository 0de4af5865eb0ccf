"""Brute-force reference implementations, straight from the definitions.

Everything here enumerates: all simple paths, all small edge subsets, all
small vertex subsets, all connected subset pairs. Nothing uses flow, scans,
or any of the clever routes the production modules take, which is the point:
when a fast path and an oracle agree on every graph small enough to afford
the oracle, the fast path earns its trust.

Each function refuses inputs past its enumeration cap by raising
OracleUnavailableError rather than silently sampling.
"""

from __future__ import annotations

from itertools import combinations
from typing import Iterable

from .errors import OracleUnavailableError
from .graph import Multigraph, PathWitness, iter_bits, mask_of, set_of


def all_simple_paths(
    graph: Multigraph,
    sources: Iterable[int],
    sinks: Iterable[int],
    cap: int = 200_000,
) -> list[PathWitness]:
    """Every simple path from X to Y whose interior avoids X∪Y.

    Parallel edges give distinct paths (same vertices, different edge ids).
    """
    graph.require_loopless("all_simple_paths")
    x = frozenset(sources)
    y = frozenset(sinks)
    if not x or not y or x & y:
        raise ValueError("need disjoint nonempty terminal sets")
    forbidden = x | y
    out: list[PathWitness] = []

    def walk(v: int, verts: list[int], eids: list[int], visited: set[int]) -> None:
        if len(out) > cap:
            raise OracleUnavailableError(
                f"more than {cap} paths; graph too large for the oracle"
            )
        for w, eid in graph.adj[v]:
            if w in y:
                out.append(PathWitness(tuple(verts + [w]), tuple(eids + [eid])))
            elif w not in forbidden and w not in visited:
                visited.add(w)
                walk(w, verts + [w], eids + [eid], visited)
                visited.remove(w)

    for s in sorted(x):
        walk(s, [s], [], {s})
    return out


def _max_disjoint_packing(path_keys: list[frozenset[int]]) -> int:
    """Largest pairwise-disjoint subfamily, by branch and bound."""
    best = 0
    n = len(path_keys)

    def rec(i: int, used: frozenset[int], k: int) -> None:
        nonlocal best
        if k > best:
            best = k
        if i >= n or k + (n - i) <= best:
            return
        key = path_keys[i]
        if not (key & used):
            rec(i + 1, used | key, k + 1)
        rec(i + 1, used, k)

    rec(0, frozenset(), 0)
    return best


def brute_max_edge_disjoint(
    graph: Multigraph, sources: Iterable[int], sinks: Iterable[int]
) -> int:
    paths = all_simple_paths(graph, sources, sinks)
    return _max_disjoint_packing([frozenset(p.edges) for p in paths])


def brute_max_vertex_disjoint(
    graph: Multigraph, sources: Iterable[int], sinks: Iterable[int]
) -> int:
    paths = all_simple_paths(graph, sources, sinks)
    # interiors must be pairwise disjoint; parallel copies of a direct edge
    # have empty interiors but still need distinct edge ids
    keys = [
        frozenset(p.interior) | frozenset(-(e + 1) for e in p.edges if not p.interior)
        for p in paths
    ]
    return _max_disjoint_packing(keys)


def brute_min_edge_cut(
    graph: Multigraph, sources: Iterable[int], sinks: Iterable[int]
) -> frozenset[int]:
    """Smallest edge set meeting every X,Y path (ascending exhaustive search)."""
    paths = all_simple_paths(graph, sources, sinks)
    if not paths:
        return frozenset()
    path_edge_sets = [frozenset(p.edges) for p in paths]
    candidates = sorted(frozenset().union(*path_edge_sets))
    for k in range(0, len(candidates) + 1):
        for combo in combinations(candidates, k):
            chosen = frozenset(combo)
            if all(chosen & pes for pes in path_edge_sets):
                return chosen
    raise AssertionError("unreachable: the full candidate set is always a cut")


def brute_min_vertex_separator(
    graph: Multigraph, sources: Iterable[int], sinks: Iterable[int]
) -> frozenset[int] | None:
    """Smallest vertex set outside X∪Y meeting every X,Y path, or None when a
    direct edge makes separation impossible."""
    x = frozenset(sources)
    y = frozenset(sinks)
    paths = all_simple_paths(graph, x, y)
    interiors = [frozenset(p.interior) for p in paths]
    if any(not i for i in interiors):
        return None
    candidates = sorted(set(range(graph.n)) - x - y)
    for k in range(0, len(candidates) + 1):
        for combo in combinations(candidates, k):
            chosen = frozenset(combo)
            if all(chosen & i for i in interiors):
                return chosen
    raise AssertionError("unreachable: all interiors are nonempty here")


def _connected_subset_pairs(graph: Multigraph, cap: int):
    subsets = list(graph.connected_subset_masks())
    if len(subsets) > cap:
        raise OracleUnavailableError(
            f"{len(subsets)} connected subsets exceeds the oracle cap {cap}"
        )
    for xm in subsets:
        for ym in subsets:
            if xm & ym:
                continue
            yield xm, ym


def brute_edge_bottleneck(graph: Multigraph, cap: int = 400) -> int:
    """Max over disjoint connected pairs of the minimum edge cut size."""
    graph.require_loopless("brute_edge_bottleneck")
    best = 0
    for xm, ym in _connected_subset_pairs(graph, cap):
        if xm > ym:
            continue  # unordered pairs
        cut = brute_min_edge_cut(graph, set_of(xm), set_of(ym))
        if len(cut) > best:
            best = len(cut)
    return best


def brute_point_bottleneck(graph: Multigraph, cap: int = 400) -> int:
    """Max over non-adjacent disjoint connected pairs of the minimum
    separator size."""
    graph.require_loopless("brute_point_bottleneck")
    best = 0
    for xm, ym in _connected_subset_pairs(graph, cap):
        if xm > ym:
            continue
        x, y = set_of(xm), set_of(ym)
        sep = brute_min_vertex_separator(graph, x, y)
        if sep is not None and len(sep) > best:
            best = len(sep)
    return best


def brute_dipole_minor(graph: Multigraph, width: int, cap: int = 3000) -> bool:
    """Whether two disjoint connected vertex sets are joined by >= width edges.

    This is the two-branch-set reading of a dipole minor, checked directly.
    """
    graph.require_loopless("brute_dipole_minor")
    if width <= 0:
        return True
    subsets = list(graph.connected_subset_masks())
    if len(subsets) > cap:
        raise OracleUnavailableError(
            f"{len(subsets)} connected subsets exceeds the oracle cap {cap}"
        )
    edge_masks = [(1 << u, 1 << v) for u, v in graph.edges]
    for xm in subsets:
        for ym in subsets:
            if xm & ym or xm > ym:
                continue
            crossing = 0
            for bu, bv in edge_masks:
                if (bu & xm and bv & ym) or (bu & ym and bv & xm):
                    crossing += 1
                    if crossing >= width:
                        break
            if crossing >= width:
                return True
    return False


def brute_fat_separation(
    graph: Multigraph,
    sources: Iterable[int],
    sinks: Iterable[int],
    radius: int,
    max_centers: int,
) -> frozenset[int] | None:
    """Smallest center set (size <= max_centers, outside X∪Y) whose
    radius-neighborhood separates X from Y, or None.

    Separation means: both residues X∖N and Y∖N are nonempty and no
    component of the graph minus N contains vertices of both.
    """
    x = frozenset(sources)
    y = frozenset(sinks)
    xmask, ymask = mask_of(x), mask_of(y)
    candidates = sorted(set(range(graph.n)) - x - y)
    full = graph.full_mask
    for k in range(1, max_centers + 1):
        for combo in combinations(candidates, k):
            nmask = graph.neighborhood_mask(mask_of(combo), radius)
            xres = xmask & ~nmask
            yres = ymask & ~nmask
            if not xres or not yres:
                continue
            ok = True
            for comp in graph.component_masks_within(full & ~nmask):
                if comp & xres and comp & yres:
                    ok = False
                    break
            if ok:
                return frozenset(combo)
    return None
