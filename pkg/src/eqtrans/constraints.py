"""CNF transitivity constraints and the direct, dense and sparse generation methods."""

from dataclasses import dataclass, field
from itertools import combinations

from .chordal import make_chordal
from .cycles import Cycle, enumerate_chord_free_cycles
from .errors import EdgeMissing, VarBaseTooLow

__all__ = [
    "ClauseSet",
    "GenerationReport",
    "METHODS",
    "clauses_for_cycle",
    "generate",
    "dense_completion",
]

METHODS = ("direct", "dense", "sparse")


@dataclass
class ClauseSet:
    """A CNF formula: clauses are lists of nonzero signed variable ids."""

    num_vars: int
    clauses: list = field(default_factory=list)

    def __post_init__(self):
        self.clauses = [list(c) for c in self.clauses]
        for c in self.clauses:
            for lit in c:
                if lit == 0 or abs(lit) > self.num_vars:
                    raise ValueError(f"literal {lit} outside 1..{self.num_vars}")

    def __len__(self):
        return len(self.clauses)

    def variables(self):
        return {abs(lit) for c in self.clauses for lit in c}

    def evaluate(self, chi):
        """True when every clause has a literal made true by ``chi`` (a var -> 0/1 map)."""
        for c in self.clauses:
            if not any((chi.get(abs(lit), 0) == 1) == (lit > 0) for lit in c):
                return False
        return True


@dataclass
class GenerationReport:
    method: str
    edges: int
    cycles: int
    clauses: int
    fill_vars: list = field(default_factory=list)  # (var, i, j)

    def stats_line(self):
        return f"edges={self.edges} cycles={self.cycles} clauses={self.clauses}"


def clauses_for_cycle(c, g):
    """The k clauses for a length-k cycle.

    With e1..ek the cycle's edge variables in traversal order (ek closes the
    cycle), clause s asserts edge e(s-1) from the other k-1 edges, starting
    with the closing edge for s = 0.
    """
    evars = []
    for a, b in Cycle(c).pairs():
        if not g.has_edge(a, b):
            raise EdgeMissing(f"cycle {list(c)} uses missing edge ({a},{b})")
        evars.append(g.var(a, b))
    k = len(evars)
    return [[-evars[(s + t) % k] for t in range(k - 1)] + [evars[(s - 1) % k]] for s in range(k)]


def _check_base(g, fresh_var_base):
    if fresh_var_base is None:
        return g.max_var() + 1
    if fresh_var_base <= g.max_var():
        raise VarBaseTooLow(f"fresh variable base {fresh_var_base} <= existing id {g.max_var()}")
    return fresh_var_base


def dense_completion(g, fresh_var_base=None):
    """Complete graph on g's vertices; absent pairs get fresh ids in (i, j) order."""
    base = _check_base(g, fresh_var_base)
    extra = []
    for i, j in combinations(range(1, g.n + 1), 2):
        if not g.has_edge(i, j):
            extra.append((i, j, base + len(extra)))
    return g.with_edges(extra), extra


def generate(g, method, fresh_var_base=None, max_cycles=None):
    """Transitivity clauses for ``g`` by ``method``; returns (ClauseSet, GenerationReport).

    ``num_vars`` of the result covers g's variables and any fresh ones.
    """
    if method not in METHODS:
        raise ValueError(f"unknown method {method!r}; expected one of {METHODS}")
    if method == "direct":
        target = g
        fills = []
        cycles = enumerate_chord_free_cycles(g, max_cycles=max_cycles)
    elif method == "dense":
        target, fills = dense_completion(g, fresh_var_base)
        cycles = [Cycle(t) for t in combinations(range(1, g.n + 1), 3)]
    else:
        aug = make_chordal(g, _check_base(g, fresh_var_base))
        target, fills = aug.graph, list(aug.fill_edges)
        cycles = enumerate_chord_free_cycles(target, max_cycles=max_cycles)

    clauses = []
    for c in cycles:
        clauses.extend(clauses_for_cycle(c, target))
    num_vars = max(target.max_var(), 0)
    report = GenerationReport(
        method=method,
        edges=len(target.edges),
        cycles=len(cycles),
        clauses=len(clauses),
        fill_vars=[(var, i, j) for i, j, var in fills],
    )
    return ClauseSet(num_vars, clauses), report
