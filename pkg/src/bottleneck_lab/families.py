"""Deterministic, seedable generators for every graph family the tests use.

Each family is a pure function of its ``FamilySpec``: same family, params,
and seed give a bit-identical edge list, so generated instances can be pinned
in golden files. Randomized families draw from ``random.Random(seed)`` only;
nothing reads the clock or global RNG state.

The randomized cactus builder grows a graph by attaching pendant edges and
cycles at existing vertices, which keeps every block an edge or a cycle by
construction. The cut-cactus builder then adds chords inside cycle blocks
(both endpoints on one cycle), re-checking after each addition that no
four-rung dipole witness appeared.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass, field

from .bottleneck import find_dipole_ladder
from .classify import blocks
from .graph import Multigraph

FAMILIES = (
    "path",
    "cycle",
    "dipole",
    "dipole-subdivision",
    "ladder",
    "grid",
    "random-tree",
    "random-cactus",
    "random-cut-cactus",
    "complete",
    "binary-tree-with-level-links",
)

_MAX_SEED = (1 << 64) - 1

# Long-form ladder parameter names accepted as aliases of the short ones.
_LADDER_ALIASES = {"width": "k", "pole_len": "p", "rung_len": "r", "spacing": "s"}

# family -> {param: minimum value}
_PARAM_MINS: dict[str, dict[str, int]] = {
    "path": {"n": 1},
    "cycle": {"n": 3},
    "dipole": {"n": 1},
    "dipole-subdivision": {"n": 1, "len": 1},
    "ladder": {"k": 1, "p": 1, "r": 1, "s": 0},
    "grid": {"rows": 1, "cols": 1},
    "random-tree": {"n": 1},
    "random-cactus": {"n": 3},
    "random-cut-cactus": {"n": 4},
    "complete": {"n": 1},
    "binary-tree-with-level-links": {"depth": 0, "levels": 0},
}


@dataclass(frozen=True)
class FamilySpec:
    """A graph family instance: family name, integer params, and a seed.

    ``params`` may be given as any mapping or pair iterable; it is stored as
    a sorted tuple of pairs so specs hash and compare by value. Ladder params
    may use the long names (width, pole_len, rung_len, spacing); they are
    normalized to the short ones (k, p, r, s).
    """

    family: str
    params: tuple[tuple[str, int], ...] = field(default=())
    seed: int = 0

    def __post_init__(self) -> None:
        items = dict(self.params)
        if self.family == "ladder":
            for long, short in _LADDER_ALIASES.items():
                if long in items:
                    if short in items and items[short] != items[long]:
                        raise ValueError(
                            f'parameter "{long}" conflicts with "{short}"'
                        )
                    items[short] = items.pop(long)
        object.__setattr__(self, "params", tuple(sorted(items.items())))

    @property
    def param_dict(self) -> dict[str, int]:
        return dict(self.params)

    def to_json_obj(self) -> dict:
        return {
            "family": self.family,
            "params": self.param_dict,
            "seed": self.seed,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_obj(), sort_keys=True, separators=(",", ":"))

    @staticmethod
    def from_json(data: str | dict) -> "FamilySpec":
        obj = json.loads(data) if isinstance(data, str) else data
        if not isinstance(obj, dict) or "family" not in obj:
            raise ValueError('family spec JSON needs a "family" key')
        params = obj.get("params", {})
        if not isinstance(params, dict):
            raise ValueError('family spec "params" must be an object')
        return FamilySpec(obj["family"], tuple(params.items()), obj.get("seed", 0))


def family_spec(family: str, seed: int = 0, **params: int) -> FamilySpec:
    return FamilySpec(family, tuple(params.items()), seed)


def _validate(spec: FamilySpec) -> dict[str, int]:
    if spec.family not in FAMILIES:
        raise ValueError(
            f"unknown family {spec.family!r}; expected one of {', '.join(FAMILIES)}"
        )
    if not isinstance(spec.seed, int) or not 0 <= spec.seed <= _MAX_SEED:
        raise ValueError('parameter "seed" must be an unsigned 64-bit integer')
    mins = _PARAM_MINS[spec.family]
    got = spec.param_dict
    for name in got:
        if name not in mins:
            raise ValueError(f'family "{spec.family}" has no parameter "{name}"')
    for name, lo in mins.items():
        if name not in got:
            raise ValueError(f'family "{spec.family}" requires parameter "{name}"')
        value = got[name]
        if not isinstance(value, int) or value < lo:
            raise ValueError(
                f'parameter "{name}" must be an integer >= {lo}; got {value!r}'
            )
    if spec.family == "ladder":
        k, p, s = got["k"], got["p"], got["s"]
        need = (k - 1) * s + 1
        if p < need:
            raise ValueError(
                f'parameter "p" must be at least (k-1)*s+1 = {need} '
                f"to place {k} rungs {s} apart; got {p}"
            )
    if spec.family == "binary-tree-with-level-links":
        depth, levels = got["depth"], got["levels"]
        if levels > depth + 1:
            raise ValueError(
                f'parameter "levels" must be at most depth+1 = {depth + 1}; '
                f"got {levels}"
            )
    return got


def generate(spec: FamilySpec) -> Multigraph:
    """Build the family instance. Pure in ``spec``; invalid params raise."""
    p = _validate(spec)
    rng = random.Random(spec.seed)
    if spec.family == "path":
        return _path(p["n"])
    if spec.family == "cycle":
        return _cycle(p["n"])
    if spec.family == "dipole":
        return _dipole(p["n"])
    if spec.family == "dipole-subdivision":
        return _dipole_subdivision(p["n"], p["len"])
    if spec.family == "ladder":
        return _ladder(p["k"], p["p"], p["r"], p["s"])
    if spec.family == "grid":
        return _grid(p["rows"], p["cols"])
    if spec.family == "complete":
        return _complete(p["n"])
    if spec.family == "binary-tree-with-level-links":
        return _binary_tree_with_level_links(p["depth"], p["levels"])
    if spec.family == "random-tree":
        return _random_tree(p["n"], rng)
    if spec.family == "random-cactus":
        return _random_cactus(p["n"], rng, min_first_cycle=3)
    assert spec.family == "random-cut-cactus"
    return _random_cut_cactus(p["n"], rng)


# -- fixed families -----------------------------------------------------------


def _path(n: int) -> Multigraph:
    return Multigraph(n, tuple((i, i + 1) for i in range(n - 1)))


def _cycle(n: int) -> Multigraph:
    return Multigraph(n, tuple((i, (i + 1) % n) for i in range(n)))


def _dipole(n: int) -> Multigraph:
    return Multigraph(2, ((0, 1),) * n)


def _dipole_subdivision(n: int, length: int) -> Multigraph:
    # poles 0 and 1; strand j runs 0, 2+j*length, ..., 2+(j+1)*length-1, 1
    edges: list[tuple[int, int]] = []
    nxt = 2
    for _ in range(n):
        prev = 0
        for _ in range(length):
            edges.append((prev, nxt))
            prev = nxt
            nxt += 1
        edges.append((prev, 1))
    return Multigraph(nxt, tuple(edges))


def _ladder(k: int, p: int, r: int, s: int) -> Multigraph:
    # pole paths 0..p-1 and p..2p-1; rung i attaches at pole offset i*s and
    # runs through r fresh interior vertices, so neighboring rung interiors
    # sit exactly s hops apart along either pole.
    edges = [(i, i + 1) for i in range(p - 1)]
    edges += [(p + i, p + i + 1) for i in range(p - 1)]
    nxt = 2 * p
    for i in range(k):
        a = i * s
        chain = [a, *range(nxt, nxt + r), p + a]
        nxt += r
        edges += list(zip(chain, chain[1:]))
    return Multigraph(nxt, tuple(edges))


def _grid(rows: int, cols: int) -> Multigraph:
    edges = []
    for r in range(rows):
        for c in range(cols):
            v = r * cols + c
            if c + 1 < cols:
                edges.append((v, v + 1))
            if r + 1 < rows:
                edges.append((v, v + cols))
    return Multigraph(rows * cols, tuple(edges))


def _complete(n: int) -> Multigraph:
    return Multigraph(n, tuple((i, j) for i in range(n) for j in range(i + 1, n)))


def _binary_tree_with_level_links(depth: int, levels: int) -> Multigraph:
    # complete binary tree in breadth-first labeling (children of v are
    # 2v+1, 2v+2), plus edges between consecutive vertices of each of the
    # deepest `levels` levels.
    n = (1 << (depth + 1)) - 1
    edges = [((v - 1) // 2, v) for v in range(1, n)]
    for lvl in range(depth - levels + 1, depth + 1):
        lo, hi = (1 << lvl) - 1, (1 << (lvl + 1)) - 2
        edges += [(v, v + 1) for v in range(lo, hi)]
    return Multigraph(n, tuple(edges))


# -- randomized families ------------------------------------------------------


def _random_tree(n: int, rng: random.Random) -> Multigraph:
    if n == 1:
        return Multigraph(1, ())
    if n == 2:
        return Multigraph(2, ((0, 1),))
    # uniform labeled tree via a random Pruefer sequence
    seq = [rng.randrange(n) for _ in range(n - 2)]
    degree = [1] * n
    for x in seq:
        degree[x] += 1
    import heapq

    leaves = [v for v in range(n) if degree[v] == 1]
    heapq.heapify(leaves)
    edges = []
    for x in seq:
        leaf = heapq.heappop(leaves)
        edges.append((leaf, x))
        degree[x] -= 1
        if degree[x] == 1:
            heapq.heappush(leaves, x)
    a = heapq.heappop(leaves)
    b = heapq.heappop(leaves)
    edges.append((a, b))
    return Multigraph(n, tuple(edges))


def _random_cactus(n: int, rng: random.Random, min_first_cycle: int) -> Multigraph:
    # grow by attaching pendant edges or whole cycles at existing vertices;
    # the first attachment is always a cycle so the result is never a tree.
    edges: list[tuple[int, int]] = []
    count = 1
    first = True
    while count < n:
        room = n - count
        v = rng.randrange(count)
        want_cycle = first or (room >= 2 and rng.random() >= 0.35)
        if want_cycle and room >= 2:
            lo = min_first_cycle if first else 3
            c = rng.randint(lo, min(6, room + 1))
            chain = [v, *range(count, count + c - 1), v]
            edges += list(zip(chain, chain[1:]))
            count += c - 1
            first = False
        else:
            edges.append((v, count))
            count += 1
    return Multigraph(n, tuple(edges))


def _cycle_blocks_in_order(graph: Multigraph) -> list[list[int]]:
    """Plain cycle blocks on >= 4 vertices, each as a vertex list in cycle
    order starting from its smallest vertex, toward its smaller neighbor."""
    out = []
    for blk in blocks(graph):
        verts = sorted({v for eid in blk for v in graph.edges[eid]})
        if len(blk) != len(verts) or len(verts) < 4:
            continue
        nbrs: dict[int, list[int]] = {v: [] for v in verts}
        for eid in blk:
            u, v = graph.edges[eid]
            nbrs[u].append(v)
            nbrs[v].append(u)
        start = verts[0]
        order = [start, min(nbrs[start])]
        while len(order) < len(verts):
            a, b = order[-2], order[-1]
            order.append(next(w for w in nbrs[b] if w != a))
        out.append(order)
    return out


def _random_cut_cactus(n: int, rng: random.Random) -> Multigraph:
    # cactus whose first cycle has length >= 4, plus chords whose endpoints
    # share a cycle; each addition is re-checked to keep the four-rung
    # dipole witness excluded.
    graph = _random_cactus(n, rng, min_first_cycle=4)
    target = 1 + rng.randrange(2)
    added = 0
    for _ in range(10):
        if added >= target:
            break
        cycles = _cycle_blocks_in_order(graph)
        if not cycles:
            break
        cyc = cycles[rng.randrange(len(cycles))]
        c = len(cyc)
        i = rng.randrange(c)
        j = (i + 2 + rng.randrange(c - 3)) % c
        candidate = Multigraph(graph.n, (*graph.edges, (cyc[i], cyc[j])))
        if find_dipole_ladder(candidate, 4) is None:
            graph = candidate
            added += 1
    assert added >= 1, "cut-cactus generator failed to place a chord"
    return graph
