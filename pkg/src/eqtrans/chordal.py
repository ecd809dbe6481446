"""Chordal augmentation by minimum-degree vertex elimination."""

from dataclasses import dataclass

from .eqgraph import RelationGraph
from .errors import VarBaseTooLow

__all__ = ["ChordalAugmentation", "make_chordal", "verify_chordal", "elimination_fill"]


@dataclass(frozen=True)
class ChordalAugmentation:
    graph: RelationGraph
    fill_edges: tuple  # (i, j, var), in creation order
    elimination_order: tuple

    @property
    def fill_vars(self):
        return tuple(var for _, _, var in self.fill_edges)


def _fill_count(adj, v):
    nb = sorted(adj[v])
    missing = 0
    for a in range(len(nb)):
        row = adj[nb[a]]
        for b in range(a + 1, len(nb)):
            if nb[b] not in row:
                missing += 1
    return missing


def elimination_fill(n, pairs):
    """Run the elimination game; return (fill pairs, elimination order).

    Each step removes the uneliminated vertex of least current degree,
    breaking ties first by the number of fill edges its removal would add
    and then by smallest index, and joins every two of its remaining
    neighbors.
    """
    adj = {v: set() for v in range(1, n + 1)}
    for i, j in pairs:
        adj[i].add(j)
        adj[j].add(i)
    fills = []
    order = []
    while adj:
        low = min(len(nb) for nb in adj.values())
        v = min((u for u in adj if len(adj[u]) == low), key=lambda u: (_fill_count(adj, u), u))
        nb = sorted(adj[v])
        for a in range(len(nb)):
            x = nb[a]
            for y in nb[a + 1:]:
                if y not in adj[x]:
                    adj[x].add(y)
                    adj[y].add(x)
                    fills.append((x, y))
        for u in nb:
            adj[u].discard(v)
        del adj[v]
        order.append(v)
    return fills, order


def make_chordal(g, fresh_var_base=None):
    """Add fill edges to ``g`` so that every cycle longer than three has a chord.

    Fill edges get variables ``fresh_var_base``, ``fresh_var_base + 1``, ...
    in the order they are created.
    """
    if fresh_var_base is None:
        fresh_var_base = g.max_var() + 1
    if fresh_var_base <= g.max_var():
        raise VarBaseTooLow(f"fresh variable base {fresh_var_base} <= existing id {g.max_var()}")
    fills, order = elimination_fill(g.n, [(i, j) for i, j, _ in g.edges])
    fill_edges = tuple((i, j, fresh_var_base + t) for t, (i, j) in enumerate(fills))
    return ChordalAugmentation(g.with_edges(fill_edges), fill_edges, tuple(order))


def _mcs_order(g):
    # Maximum cardinality search, smallest index on ties.
    weight = {v: 0 for v in g.vertices}
    order = []
    while weight:
        v = max(weight, key=lambda u: (weight[u], -u))
        del weight[v]
        order.append(v)
        for u in g.neighbors(v):
            if u in weight:
                weight[u] += 1
    return order


def verify_chordal(g):
    """True iff ``g`` has a perfect elimination ordering.

    The reverse of a maximum cardinality search order is perfect exactly
    when the graph is chordal: for every vertex, its neighbors visited
    earlier must form a clique, which suffices to check against the most
    recently visited of them.
    """
    order = _mcs_order(g)
    position = {v: t for t, v in enumerate(order)}
    for v in order:
        earlier = [u for u in g.neighbors(v) if position[u] < position[v]]
        if len(earlier) < 2:
            continue
        parent = max(earlier, key=position.__getitem__)
        for u in earlier:
            if u != parent and not g.has_edge(u, parent):
                return False
    return True
