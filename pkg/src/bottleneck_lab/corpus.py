"""Exhaustive corpus of small simple graphs, one per isomorphism class.

Graphs on n vertices are built by extending the (n-1)-vertex corpus: add
vertex n-1 and wire it to every subset of the old vertices, then keep one
representative per isomorphism class.  Deleting any vertex of any n-vertex
graph lands back in the (n-1)-corpus, so nothing is missed.

The class representative is the lexicographically smallest edge bitmask
over all vertex relabelings (pairs ordered as itertools.combinations).
Class counts are asserted against the known sequences for graphs
(1, 2, 4, 11, 34, 156, 1044) and connected graphs (1, 1, 2, 6, 21, 112,
853) up to n = 7, so a silent enumeration bug cannot slip through.
"""

from __future__ import annotations

import itertools
from functools import lru_cache

import numpy as np

from .graph import Multigraph

MAX_N = 7

_GRAPH_COUNTS = {1: 1, 2: 2, 3: 4, 4: 11, 5: 34, 6: 156, 7: 1044}
_CONNECTED_COUNTS = {1: 1, 2: 1, 3: 2, 4: 6, 5: 21, 6: 112, 7: 853}


@lru_cache(maxsize=None)
def _pairs(n: int) -> tuple[tuple[int, int], ...]:
    return tuple(itertools.combinations(range(n), 2))


@lru_cache(maxsize=None)
def _perm_pair_index(n: int) -> np.ndarray:
    """perm_idx[p][k] = position of pair k after applying permutation p."""
    pairs = _pairs(n)
    pos = {pair: k for k, pair in enumerate(pairs)}
    perms = list(itertools.permutations(range(n)))
    idx = np.empty((len(perms), len(pairs)), dtype=np.int64)
    for p, perm in enumerate(perms):
        for k, (i, j) in enumerate(pairs):
            a, b = perm[i], perm[j]
            idx[p, k] = pos[(a, b) if a < b else (b, a)]
    return idx


def _canonical_masks(n: int, masks: np.ndarray) -> np.ndarray:
    """Canonical (min-over-relabelings) mask for each input mask."""
    if n == 1:
        return masks
    m = len(_pairs(n))
    bits = (masks[:, None] >> np.arange(m, dtype=np.int64)) & 1
    weights = np.int64(1) << np.arange(m, dtype=np.int64)
    idx = _perm_pair_index(n)
    best = None
    for p in range(idx.shape[0]):
        val = bits[:, idx[p]] @ weights
        best = val if best is None else np.minimum(best, val)
    return best


def _mask_to_graph(n: int, mask: int) -> Multigraph:
    pairs = _pairs(n)
    return Multigraph(n, tuple(p for k, p in enumerate(pairs) if (mask >> k) & 1))


@lru_cache(maxsize=None)
def _all_masks(n: int) -> tuple[int, ...]:
    if n < 1 or n > MAX_N:
        raise ValueError(f"corpus covers sizes 1..{MAX_N}, not {n}")
    if n == 1:
        return (0,)
    parents = _all_masks(n - 1)
    old_pairs = _pairs(n - 1)
    pos = {pair: k for k, pair in enumerate(_pairs(n))}
    # bit positions, within the n-vertex pair order, of the old pairs and of
    # the new pairs (i, n-1)
    old_shift = [pos[p] for p in old_pairs]
    new_shift = [pos[(i, n - 1)] for i in range(n - 1)]
    raw = set()
    for pmask in parents:
        base = 0
        for k, s in enumerate(old_shift):
            if (pmask >> k) & 1:
                base |= 1 << s
        for nb in range(1 << (n - 1)):
            mask = base
            for i in range(n - 1):
                if (nb >> i) & 1:
                    mask |= 1 << new_shift[i]
            raw.add(mask)
    canon = _canonical_masks(n, np.array(sorted(raw), dtype=np.int64))
    out = tuple(sorted({int(x) for x in canon}))
    assert len(out) == _GRAPH_COUNTS[n], (n, len(out))
    return out


@lru_cache(maxsize=None)
def all_graphs(n: int) -> tuple[Multigraph, ...]:
    """All simple graphs on exactly n vertices, one per isomorphism class."""
    return tuple(_mask_to_graph(n, mask) for mask in _all_masks(n))


@lru_cache(maxsize=None)
def connected_graphs(n: int) -> tuple[Multigraph, ...]:
    """The connected members of all_graphs(n)."""
    out = tuple(g for g in all_graphs(n) if g.is_connected())
    assert len(out) == _CONNECTED_COUNTS[n], (n, len(out))
    return out


def connected_graphs_up_to(n: int) -> tuple[Multigraph, ...]:
    """All connected graphs with 1..n vertices, one per isomorphism class."""
    return tuple(
        g for size in range(1, n + 1) for g in connected_graphs(size)
    )
