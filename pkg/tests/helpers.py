"""Small hand-built graphs and comparison utilities shared by the tests.

These are deliberately independent of the generator module so that a bug
there cannot silently shift every other test's inputs.
"""

from __future__ import annotations

import itertools

from bottleneck_lab.graph import Multigraph


def path_graph(n: int) -> Multigraph:
    return Multigraph(n, tuple((i, i + 1) for i in range(n - 1)))


def cycle_graph(n: int) -> Multigraph:
    return Multigraph(n, tuple((i, (i + 1) % n) for i in range(n)))


def complete_graph(n: int) -> Multigraph:
    return Multigraph(n, tuple((i, j) for i in range(n) for j in range(i + 1, n)))


def dipole(k: int) -> Multigraph:
    """Two vertices joined by k parallel edges."""
    return Multigraph(2, tuple((0, 1) for _ in range(k)))


def bowtie() -> Multigraph:
    """Two triangles sharing vertex 0."""
    return Multigraph(5, ((0, 1), (1, 2), (2, 0), (0, 3), (3, 4), (4, 0)))


def domino() -> Multigraph:
    """Two squares sharing an edge: vertices 0-1-2 on top, 3-4-5 below."""
    return Multigraph(
        6, ((0, 1), (1, 2), (3, 4), (4, 5), (0, 3), (1, 4), (2, 5))
    )


def grid_graph(rows: int, cols: int) -> Multigraph:
    edges = []
    for r in range(rows):
        for c in range(cols):
            v = r * cols + c
            if c + 1 < cols:
                edges.append((v, v + 1))
            if r + 1 < rows:
                edges.append((v, v + cols))
    return Multigraph(rows * cols, tuple(edges))


def canonical_form(graph: Multigraph) -> tuple:
    """Isomorphism-invariant form for small multigraphs: the lexicographically
    smallest sorted edge multiset over all vertex relabelings. Exponential;
    intended for n <= 8."""
    if graph.n > 8:
        raise ValueError("canonical_form is for graphs with at most 8 vertices")
    best = None
    for perm in itertools.permutations(range(graph.n)):
        relabeled = sorted(
            (min(perm[u], perm[v]), max(perm[u], perm[v])) for u, v in graph.edges
        )
        key = (graph.n, tuple(relabeled))
        if best is None or key < best:
            best = key
    return best if best is not None else (graph.n, ())


def isomorphic(a: Multigraph, b: Multigraph) -> bool:
    return canonical_form(a) == canonical_form(b)
