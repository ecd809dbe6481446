"""Relation graphs over equality variables and the transitivity-violation oracle.

Vertices are the domain elements 1..n.  Each undirected edge (i, j), i < j,
is bound to one propositional variable e_ij.  Under an assignment, an edge is
a 1-edge or a 0-edge; an assignment violates transitivity exactly when some
cycle carries a single 0-edge, i.e. when the endpoints of some 0-edge are
joined by a path of 1-edges.
"""

from collections import deque
from collections.abc import Mapping
from dataclasses import dataclass

from .errors import (
    DuplicateEdge,
    DuplicateVariable,
    InputViolatesTransitivity,
    NotASuperset,
    PartialAssignment,
    VertexOutOfRange,
)

__all__ = [
    "RelationGraph",
    "Assignment",
    "ViolationWitness",
    "UnionFind",
    "build_graph",
    "find_violation",
    "extend_assignment",
    "canonical_pair",
]


def canonical_pair(i, j):
    return (i, j) if i < j else (j, i)


class UnionFind:
    """Disjoint sets over arbitrary hashable elements, created on first use."""

    def __init__(self):
        self.parent = {}
        self.rank = {}

    def find(self, x):
        parent = self.parent
        if x not in parent:
            parent[x] = x
            self.rank[x] = 0
            return x
        root = x
        while parent[root] != root:
            root = parent[root]
        while parent[x] != root:
            parent[x], x = root, parent[x]
        return root

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        if self.rank[ra] < self.rank[rb]:
            ra, rb = rb, ra
        self.parent[rb] = ra
        if self.rank[ra] == self.rank[rb]:
            self.rank[ra] += 1
        return True

    def connected(self, a, b):
        return self.find(a) == self.find(b)


class RelationGraph:
    """Immutable undirected graph whose edges carry variable ids.

    ``edges`` keeps construction order with every pair stored as i < j.
    """

    __slots__ = ("n", "edges", "_var_of", "_pair_of", "_adj")

    def __init__(self, n, edges):
        if n < 0:
            raise VertexOutOfRange(f"negative vertex count {n}")
        var_of = {}
        pair_of = {}
        canon = []
        for i, j, var in edges:
            if not (1 <= i <= n and 1 <= j <= n) or i == j:
                raise VertexOutOfRange(f"edge ({i},{j}) invalid for n={n}")
            if not isinstance(var, int) or var < 1:
                raise DuplicateVariable(f"variable id {var!r} is not a positive integer")
            pair = canonical_pair(i, j)
            if pair in var_of:
                raise DuplicateEdge(f"pair {pair} appears twice")
            if var in pair_of:
                raise DuplicateVariable(f"variable {var} bound to {pair_of[var]} and {pair}")
            var_of[pair] = var
            pair_of[var] = pair
            canon.append((pair[0], pair[1], var))
        adj = {v: [] for v in range(1, n + 1)}
        for i, j, _ in canon:
            adj[i].append(j)
            adj[j].append(i)
        self.n = n
        self.edges = tuple(canon)
        self._var_of = var_of
        self._pair_of = pair_of
        self._adj = {v: tuple(sorted(nb)) for v, nb in adj.items()}

    def __repr__(self):
        return f"RelationGraph(n={self.n}, edges={len(self.edges)})"

    def __eq__(self, other):
        if not isinstance(other, RelationGraph):
            return NotImplemented
        return self.n == other.n and self._var_of == other._var_of

    def __hash__(self):
        return hash((self.n, frozenset(self._var_of.items())))

    @property
    def vertices(self):
        return range(1, self.n + 1)

    @property
    def variables(self):
        return tuple(var for _, _, var in self.edges)

    def neighbors(self, v):
        return self._adj[v]

    def degree(self, v):
        return len(self._adj[v])

    def has_edge(self, i, j):
        return canonical_pair(i, j) in self._var_of

    def var(self, i, j):
        """Variable bound to the pair {i, j}; KeyError if the edge is absent."""
        return self._var_of[canonical_pair(i, j)]

    def pair(self, var):
        return self._pair_of[var]

    def has_var(self, var):
        return var in self._pair_of

    def sorted_edges(self):
        return sorted(self.edges)

    def max_var(self):
        return max(self._pair_of, default=0)

    def adjacency_masks(self):
        """Neighbor sets as integer bitmasks indexed by vertex (bit v = vertex v)."""
        masks = [0] * (self.n + 1)
        for i, j, _ in self.edges:
            masks[i] |= 1 << j
            masks[j] |= 1 << i
        return masks

    def subgraph(self, variables):
        """Graph on the same vertex set keeping only edges whose variable is listed."""
        keep = set(variables)
        return RelationGraph(self.n, [e for e in self.edges if e[2] in keep])

    def with_edges(self, extra):
        return RelationGraph(self.n, list(self.edges) + list(extra))


def build_graph(n, edges):
    return RelationGraph(n, edges)


class Assignment(Mapping):
    """Map from variable id to 0/1.

    A total assignment raises :class:`PartialAssignment` when asked for a
    variable it does not bind; a partial one answers ``None`` through
    :meth:`get` and leaves unlabeled edges out of violation checks.
    """

    __slots__ = ("_values", "partial")

    def __init__(self, values=(), partial=False):
        vals = {}
        items = values.items() if isinstance(values, Mapping) else values
        for var, bit in items:
            bit = int(bit)
            if bit not in (0, 1):
                raise ValueError(f"variable {var}: value {bit} is not 0/1")
            vals[int(var)] = bit
        self._values = vals
        self.partial = partial

    def __getitem__(self, var):
        try:
            return self._values[var]
        except KeyError:
            if self.partial:
                raise KeyError(var) from None
            raise PartialAssignment(f"variable {var} is unassigned") from None

    def __iter__(self):
        return iter(self._values)

    def __len__(self):
        return len(self._values)

    def __repr__(self):
        kind = "partial" if self.partial else "total"
        return f"Assignment({self._values!r}, {kind})"

    def __eq__(self, other):
        if isinstance(other, Mapping):
            return dict(self.items()) == dict(other.items())
        return NotImplemented

    __hash__ = None

    def restrict(self, variables):
        keep = set(variables)
        return Assignment({v: b for v, b in self._values.items() if v in keep}, self.partial)

    def updated(self, more):
        vals = dict(self._values)
        vals.update(more)
        return Assignment(vals, self.partial)


@dataclass(frozen=True)
class ViolationWitness:
    """A cycle whose only 0-edge is ``zero_edge``.

    ``cycle`` starts and ends at the endpoints of the 0-edge; the remaining
    consecutive pairs are 1-edges.
    """

    cycle: tuple
    zero_edge: tuple

    def edges(self):
        c = self.cycle
        return [canonical_pair(c[t], c[(t + 1) % len(c)]) for t in range(len(c))]

    def check(self, g, chi):
        """True when this witness is a genuine violation of ``chi`` on ``g``."""
        c = self.cycle
        if len(c) < 3 or len(set(c)) != len(c):
            return False
        zeros = []
        for pair in self.edges():
            if not g.has_edge(*pair):
                return False
            bit = chi.get(g.var(*pair))
            if bit is None:
                return False
            if bit == 0:
                zeros.append(pair)
        return zeros == [canonical_pair(*self.zero_edge)]


def _labels(g, chi, partial):
    partial = partial or getattr(chi, "partial", False)
    labels = {}
    for i, j, var in g.edges:
        bit = chi.get(var)
        if bit is None:
            if not partial:
                raise PartialAssignment(f"edge ({i},{j}) variable {var} is unassigned")
            continue
        labels[(i, j)] = bit
    return labels


def _one_path(g, labels, src, dst):
    # Breadth-first over 1-edges with neighbors in increasing order: the
    # first shortest path in lexicographic parent order.
    parent = {src: None}
    queue = deque([src])
    while queue:
        v = queue.popleft()
        if v == dst:
            break
        for u in g.neighbors(v):
            if u not in parent and labels.get(canonical_pair(u, v)) == 1:
                parent[u] = v
                queue.append(u)
    path = []
    v = dst
    while v is not None:
        path.append(v)
        v = parent[v]
    path.reverse()
    return path


def find_violation(g, chi, partial=False):
    """Return a :class:`ViolationWitness` for ``chi`` on ``g``, or None.

    0-edges are scanned in canonical (i, j) order; the first one whose
    endpoints are 1-connected yields the witness, closed along a shortest
    1-path from i to j.  With ``partial`` (or a partial :class:`Assignment`)
    unlabeled edges are ignored; otherwise they raise PartialAssignment.
    """
    labels = _labels(g, chi, partial)
    uf = UnionFind()
    for (i, j), bit in labels.items():
        if bit == 1:
            uf.union(i, j)
    for (i, j) in sorted(labels):
        if labels[(i, j)] == 0 and uf.connected(i, j):
            return ViolationWitness(tuple(_one_path(g, labels, i, j)), (i, j))
    return None


def extend_assignment(g1, chi1, g2):
    """Extend a transitivity-consistent ``chi1`` on ``g1`` to the superset ``g2``.

    Every edge of ``g2`` missing from ``g1`` gets 1 exactly when its
    endpoints are joined by 1-edges of ``g1``.  Fresh edges are visited in
    canonical order.  Entries of ``chi1`` outside ``g1`` are carried over.
    """
    for i, j, var in g1.edges:
        if not g2.has_edge(i, j) or g2.var(i, j) != var:
            raise NotASuperset(f"edge ({i},{j}) var {var} missing from the larger graph")
    if g1.n > g2.n:
        raise NotASuperset(f"vertex count shrinks from {g1.n} to {g2.n}")
    witness = find_violation(g1, chi1)
    if witness is not None:
        raise InputViolatesTransitivity(f"cycle {witness.cycle} has a single 0-edge {witness.zero_edge}")

    values = dict(chi1.items())
    uf = UnionFind()
    for i, j, var in g1.edges:
        if chi1[var] == 1:
            uf.union(i, j)
    for i, j, var in g2.sorted_edges():
        if g1.has_edge(i, j):
            continue
        if var in values:
            raise NotASuperset(f"variable {var} of new edge ({i},{j}) is not fresh")
        values[var] = 1 if uf.connected(i, j) else 0
        # A new 1-edge joins vertices already in one component, so the
        # union below never changes connectivity; kept for the induction.
        if values[var]:
            uf.union(i, j)
    return Assignment(values)
