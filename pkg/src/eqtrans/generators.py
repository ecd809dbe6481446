"""Synthetic relation graphs: square meshes, diamond chains and seeded random graphs."""

import random
from dataclasses import dataclass

from .eqgraph import RelationGraph

__all__ = ["BenchSpec", "gen_mesh", "gen_diamond", "gen_random", "mesh_vertex", "build_bench"]


@dataclass(frozen=True)
class BenchSpec:
    family: str  # mesh | diamond | random
    n: int
    p: float = 0.0
    seed: int = 0

    def __post_init__(self):
        if self.family == "mesh" and self.n < 2:
            raise ValueError("mesh needs n >= 2")
        if self.family == "diamond" and self.n < 1:
            raise ValueError("diamond needs n >= 1")
        if self.family == "random" and (self.n < 1 or not 0.0 <= self.p <= 1.0):
            raise ValueError("random needs N >= 1 and 0 <= p <= 1")
        if self.family not in ("mesh", "diamond", "random"):
            raise ValueError(f"unknown family {self.family!r}")


def mesh_vertex(n, row, col):
    return row * n + col + 1


def gen_mesh(n):
    """n x n grid; horizontal edges get ids first (row-major), then vertical ones."""
    if n < 2:
        raise ValueError("mesh needs n >= 2")
    edges = []
    for r in range(n):
        for c in range(n - 1):
            edges.append((mesh_vertex(n, r, c), mesh_vertex(n, r, c + 1), len(edges) + 1))
    for r in range(n - 1):
        for c in range(n):
            edges.append((mesh_vertex(n, r, c), mesh_vertex(n, r + 1, c), len(edges) + 1))
    return RelationGraph(n * n, edges)


def gen_diamond(n):
    """Chain of n diamond faces closed by a return edge from the last corner to the first.

    Corner vertices l1..l(n+1) are 1, 4, 7, ...; face i has top 3i-1 and
    bottom 3i.  For n = 1 a direct return edge would be a chord of the only
    face, so the return path runs through one extra vertex (5 vertices).
    """
    if n < 1:
        raise ValueError("diamond needs n >= 1")
    edges = []

    def add(i, j):
        edges.append((i, j, len(edges) + 1))

    for f in range(1, n + 1):
        left, top, bottom, right = 3 * f - 2, 3 * f - 1, 3 * f, 3 * f + 1
        add(left, top)
        add(left, bottom)
        add(top, right)
        add(bottom, right)
    last = 3 * n + 1
    if n == 1:
        add(1, 5)
        add(last, 5)
        return RelationGraph(5, edges)
    add(1, last)
    return RelationGraph(last, edges)


def gen_random(N, p, seed):
    """Include each pair (i, j), i < j, with probability p.

    Uses Python's ``random.Random`` (MT19937) seeded with the integer
    ``seed``: pairs are visited in lexicographic order and each consumes one
    ``random()`` draw, so the edge set is identical on every platform.
    Variables are numbered 1.. in pair order.
    """
    if N < 1 or not 0.0 <= p <= 1.0:
        raise ValueError("need N >= 1 and 0 <= p <= 1")
    rng = random.Random(seed)
    edges = []
    for i in range(1, N + 1):
        for j in range(i + 1, N + 1):
            if rng.random() < p:
                edges.append((i, j, len(edges) + 1))
    return RelationGraph(N, edges)


def build_bench(spec):
    if spec.family == "mesh":
        return gen_mesh(spec.n)
    if spec.family == "diamond":
        return gen_diamond(spec.n)
    return gen_random(spec.n, spec.p, spec.seed)
