"""Connected-subset scans behind both bottleneck numbers.

Each bottleneck number is the maximum of a local quantity over connected
vertex subsets:

* edge flavor: for a connected subset X and a component C of the rest of
  the graph, count the edges running directly between X and C (a bond).
  The best bond over all such pairs is the edge bottleneck number.
* point flavor: for a connected subset A and a component C of the graph
  minus the closed neighborhood of A, the common neighbors N(A) & N(C)
  form a minimum A-C separator.  The best such separator size is the
  point bottleneck number.

The scans enumerate every connected subset exactly once (rooted
include-or-ban branching, the same order as
``Multigraph.connected_subset_masks``) and examine each (subset,
component) pair.  Two interchangeable backends exist:

* a numba kernel over uint64 masks, used automatically for graphs with
  more than 16 vertices (hard limit 64);
* a pure-python twin that walks the identical order, so results --
  including ties and budget cutoffs -- are bit-identical.

Set ``BOTTLENECK_LAB_NO_NUMBA=1`` to force the pure twin everywhere.
"""

from __future__ import annotations

import os
from dataclasses import dataclass

import numpy as np

from .graph import Multigraph, set_of

_NO_NUMBA_ENV = "BOTTLENECK_LAB_NO_NUMBA"
_KERNEL_MIN_N = 17  # below this the pure twin wins (no jit warmup)
_MASK64 = (1 << 64) - 1

# de Bruijn multiplication table for count-trailing-zeros on uint64.
_DEBRUIJN = 0x03F79D71B4CB0A89
_CTZ_TABLE = np.zeros(64, dtype=np.int64)
for _i in range(64):
    _CTZ_TABLE[((_DEBRUIJN << _i) & _MASK64) >> 58] = _i
assert len({int(x) for x in _CTZ_TABLE}) == 64


@dataclass(frozen=True)
class ScanResult:
    """Outcome of one scan.

    value/best_x/best_c describe the best pair seen (first maximum in
    enumeration order; empty sets when no pair exists at all).
    exhausted is True only when every pair was examined, so the value is
    exact rather than a lower bound.
    """

    value: int
    best_x: frozenset[int]
    best_c: frozenset[int]
    pairs_examined: int
    exhausted: bool


def _use_kernel(n: int, backend: str) -> bool:
    if backend == "pure":
        return False
    if backend == "numba":
        return True
    return n >= _KERNEL_MIN_N and not os.environ.get(_NO_NUMBA_ENV)


def _check(graph: Multigraph, backend: str) -> None:
    if backend not in ("auto", "pure", "numba"):
        raise ValueError(f"unknown backend {backend!r}")
    graph.require_loopless("bottleneck scan")
    if graph.n > 64:
        raise ValueError("scans support at most 64 vertices")


# -- pure twins ---------------------------------------------------------------


def _edge_scan_py(graph: Multigraph, budget: int, stop_at: int) -> tuple:
    ebits = [(1 << u, 1 << v) for (u, v) in graph.edges]
    universe = graph.full_mask
    best, bx, bc, pairs = 0, 0, 0, 0
    for sub in graph.connected_subset_masks():
        for comp in graph.component_masks_within(universe & ~sub):
            if pairs >= budget:
                return best, bx, bc, pairs, False
            pairs += 1
            cnt = 0
            for bu, bv in ebits:
                if (bu & sub and bv & comp) or (bv & sub and bu & comp):
                    cnt += 1
            if cnt > best:
                best, bx, bc = cnt, sub, comp
                if best >= stop_at:
                    return best, bx, bc, pairs, False
    return best, bx, bc, pairs, True


def _point_scan_py(graph: Multigraph, budget: int, stop_at: int) -> tuple:
    nbr = graph.nbr_mask
    universe = graph.full_mask
    best, bx, bc, pairs = 0, 0, 0, 0
    for sub in graph.connected_subset_masks():
        open_a = 0
        s = sub
        while s:
            low = s & -s
            open_a |= nbr[low.bit_length() - 1]
            s ^= low
        open_a &= ~sub
        for comp in graph.component_masks_within(universe & ~(sub | open_a)):
            if pairs >= budget:
                return best, bx, bc, pairs, False
            pairs += 1
            open_c = 0
            c = comp
            while c:
                low = c & -c
                open_c |= nbr[low.bit_length() - 1]
                c ^= low
            cnt = (open_a & open_c & ~comp).bit_count()
            if cnt > best:
                best, bx, bc = cnt, sub, comp
                if best >= stop_at:
                    return best, bx, bc, pairs, False
    return best, bx, bc, pairs, True


# -- numba kernels ------------------------------------------------------------

_kernels: tuple | None = None


def _build_kernels() -> tuple:
    from numba import njit

    U0 = np.uint64(0)
    U1 = np.uint64(1)
    S1, S2, S4, S56, S58 = (np.uint64(k) for k in (1, 2, 4, 56, 58))
    P1 = np.uint64(0x5555555555555555)
    P2 = np.uint64(0x3333333333333333)
    P4 = np.uint64(0x0F0F0F0F0F0F0F0F)
    P8 = np.uint64(0x0101010101010101)
    DB = np.uint64(_DEBRUIJN)
    CTZ = _CTZ_TABLE

    @njit(cache=True)
    def popcount(x):
        x = x - ((x >> S1) & P1)
        x = (x & P2) + ((x >> S2) & P2)
        x = (x + (x >> S4)) & P4
        return np.int64((x * P8) >> S56)

    @njit(cache=True)
    def ctz(x):
        return CTZ[((x & (~x + U1)) * DB) >> S58]

    @njit(cache=True)
    def component(rest, nbr):
        low = rest & (~rest + U1)
        comp = low
        frontier = low
        while frontier != U0:
            nxt = U0
            f = frontier
            while f != U0:
                b = f & (~f + U1)
                nxt |= nbr[ctz(b)]
                f ^= b
            frontier = nxt & rest & ~comp
            comp |= frontier
        return comp

    @njit(cache=True)
    def edge_kernel(n, nbr, ebu, ebv, budget, stop_at):
        universe = U0
        for v in range(n):
            universe |= U1 << np.uint64(v)
        m = ebu.shape[0]
        size = 4 * n + 8
        st_sub = np.empty(size, np.uint64)
        st_cand = np.empty(size, np.uint64)
        st_ban = np.empty(size, np.uint64)
        best = np.int64(0)
        bx = U0
        bc = U0
        pairs = np.int64(0)
        for r in range(n):
            rbit = U1 << np.uint64(r)
            above = universe & ~(rbit | (rbit - U1))
            st_sub[0] = rbit
            st_cand[0] = nbr[r] & above
            st_ban[0] = U0
            top = 1
            while top > 0:
                top -= 1
                sub = st_sub[top]
                cand = st_cand[top]
                ban = st_ban[top]
                if cand == U0:
                    rest = universe & ~sub
                    while rest != U0:
                        comp = component(rest, nbr)
                        if pairs >= budget:
                            return best, bx, bc, pairs, np.int64(0)
                        pairs += 1
                        cnt = np.int64(0)
                        for i in range(m):
                            bu = ebu[i]
                            bv = ebv[i]
                            if (bu & sub) != U0 and (bv & comp) != U0:
                                cnt += 1
                            elif (bv & sub) != U0 and (bu & comp) != U0:
                                cnt += 1
                        if cnt > best:
                            best = cnt
                            bx = sub
                            bc = comp
                            if best >= stop_at:
                                return best, bx, bc, pairs, np.int64(0)
                        rest &= ~comp
                    continue
                low = cand & (~cand + U1)
                v = ctz(low)
                st_sub[top] = sub
                st_cand[top] = cand ^ low
                st_ban[top] = ban | low
                top += 1
                grown = sub | low
                st_sub[top] = grown
                st_cand[top] = (cand ^ low) | (nbr[v] & above & ~grown & ~ban)
                st_ban[top] = ban
                top += 1
        return best, bx, bc, pairs, np.int64(1)

    @njit(cache=True)
    def point_kernel(n, nbr, budget, stop_at):
        universe = U0
        for v in range(n):
            universe |= U1 << np.uint64(v)
        size = 4 * n + 8
        st_sub = np.empty(size, np.uint64)
        st_cand = np.empty(size, np.uint64)
        st_ban = np.empty(size, np.uint64)
        best = np.int64(0)
        bx = U0
        bc = U0
        pairs = np.int64(0)
        for r in range(n):
            rbit = U1 << np.uint64(r)
            above = universe & ~(rbit | (rbit - U1))
            st_sub[0] = rbit
            st_cand[0] = nbr[r] & above
            st_ban[0] = U0
            top = 1
            while top > 0:
                top -= 1
                sub = st_sub[top]
                cand = st_cand[top]
                ban = st_ban[top]
                if cand == U0:
                    open_a = U0
                    s = sub
                    while s != U0:
                        b = s & (~s + U1)
                        open_a |= nbr[ctz(b)]
                        s ^= b
                    open_a &= ~sub
                    rest = universe & ~(sub | open_a)
                    while rest != U0:
                        comp = component(rest, nbr)
                        if pairs >= budget:
                            return best, bx, bc, pairs, np.int64(0)
                        pairs += 1
                        open_c = U0
                        c = comp
                        while c != U0:
                            b = c & (~c + U1)
                            open_c |= nbr[ctz(b)]
                            c ^= b
                        cnt = popcount(open_a & open_c & ~comp)
                        if cnt > best:
                            best = cnt
                            bx = sub
                            bc = comp
                            if best >= stop_at:
                                return best, bx, bc, pairs, np.int64(0)
                        rest &= ~comp
                    continue
                low = cand & (~cand + U1)
                v = ctz(low)
                st_sub[top] = sub
                st_cand[top] = cand ^ low
                st_ban[top] = ban | low
                top += 1
                grown = sub | low
                st_sub[top] = grown
                st_cand[top] = (cand ^ low) | (nbr[v] & above & ~grown & ~ban)
                st_ban[top] = ban
                top += 1
        return best, bx, bc, pairs, np.int64(1)

    return edge_kernel, point_kernel


def _get_kernels() -> tuple:
    global _kernels
    if _kernels is None:
        _kernels = _build_kernels()
    return _kernels


def _nbr_array(graph: Multigraph) -> np.ndarray:
    return np.array(graph.nbr_mask, dtype=np.uint64)


_HUGE = 1 << 60


def edge_bond_scan(
    graph: Multigraph,
    budget: int | None = None,
    stop_at: int | None = None,
    backend: str = "auto",
) -> ScanResult:
    """Best bond over all (connected subset, complement component) pairs.

    Examines at most ``budget`` pairs when given; returns early once the
    running best reaches ``stop_at``.  ``exhausted`` is True only for a
    completed scan.
    """
    _check(graph, backend)
    b = _HUGE if budget is None else budget
    s = _HUGE if stop_at is None else stop_at
    if _use_kernel(graph.n, backend):
        edge_kernel, _ = _get_kernels()
        ebu = np.array([1 << u for (u, v) in graph.edges], dtype=np.uint64)
        ebv = np.array([1 << v for (u, v) in graph.edges], dtype=np.uint64)
        out = edge_kernel(graph.n, _nbr_array(graph), ebu, ebv, b, s)
    else:
        out = _edge_scan_py(graph, b, s)
    value, bx, bc, pairs, done = out
    return ScanResult(int(value), set_of(int(bx)), set_of(int(bc)), int(pairs), bool(done))


def point_separator_scan(
    graph: Multigraph,
    budget: int | None = None,
    stop_at: int | None = None,
    backend: str = "auto",
) -> ScanResult:
    """Best common-neighbor separator over (subset, far component) pairs.

    Same budget/stop_at/exhausted contract as edge_bond_scan.
    """
    _check(graph, backend)
    b = _HUGE if budget is None else budget
    s = _HUGE if stop_at is None else stop_at
    if _use_kernel(graph.n, backend):
        _, point_kernel = _get_kernels()
        out = point_kernel(graph.n, _nbr_array(graph), b, s)
    else:
        out = _point_scan_py(graph, b, s)
    value, bx, bc, pairs, done = out
    return ScanResult(int(value), set_of(int(bx)), set_of(int(bc)), int(pairs), bool(done))
