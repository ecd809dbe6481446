"""Reduced ordered BDDs and the BDD-based transitivity flows.

Nodes live in a :class:`BddStore` as (level, low, high) triples behind a
unique table, so equal functions share one node.  Node 0 is the constant
false and node 1 the constant true.  Variable order is fixed when a
variable is declared; new variables go below all existing ones.
"""

import csv
import io
import sys
import time
from dataclasses import dataclass

from .chordal import make_chordal
from .constraints import generate
from .eqgraph import Assignment, extend_assignment, find_violation
from .errors import NodeLimitExceeded
from .solver import SAT, UNSAT, SolveResult, SolveStats

__all__ = [
    "BddStore",
    "BddRef",
    "AND",
    "OR",
    "build_cnf_bdd",
    "reduced_transitivity_check",
    "filtered_implicants",
    "ImplicantResult",
    "mesh_orderings",
    "probe_growth",
    "write_probe_csv",
]

AND = "and"
OR = "or"
_TERMINAL_LEVEL = sys.maxsize


class BddRef:
    """Handle to a node of one particular store."""

    __slots__ = ("store", "node")

    def __init__(self, store, node):
        self.store = store
        self.node = node

    def __eq__(self, other):
        return isinstance(other, BddRef) and other.store is self.store and other.node == self.node

    def __hash__(self):
        return hash((id(self.store), self.node))

    def __repr__(self):
        return f"BddRef({self.node})"

    def is_false(self):
        return self.node == 0

    def is_true(self):
        return self.node == 1


class BddStore:
    """Node table, unique table and operation caches for one variable order.

    ``node_limit`` caps the number of nodes; crossing it raises
    :class:`NodeLimitExceeded`.  The operation cache is dropped whenever it
    grows past ``cache_limit`` entries.
    """

    def __init__(self, order=(), node_limit=None, cache_limit=1_000_000):
        self.order = []
        self.level_of = {}
        self.node_level = [_TERMINAL_LEVEL, _TERMINAL_LEVEL]
        self.node_low = [0, 1]
        self.node_high = [0, 1]
        self.unique = {}
        self.cache = {}
        self.node_limit = node_limit
        self.cache_limit = cache_limit
        for v in order:
            self.declare(v)

    def declare(self, var):
        if var not in self.level_of:
            self.level_of[var] = len(self.order)
            self.order.append(var)

    @property
    def false(self):
        return BddRef(self, 0)

    @property
    def true(self):
        return BddRef(self, 1)

    def __len__(self):
        return len(self.node_level)

    def _own(self, ref):
        if ref.store is not self:
            raise ValueError("BDD handle belongs to a different store")
        return ref.node

    def _mk(self, level, low, high):
        if low == high:
            return low
        key = (level, low, high)
        node = self.unique.get(key)
        if node is None:
            node = len(self.node_level)
            if self.node_limit is not None and node >= self.node_limit:
                self.cache.clear()
                raise NodeLimitExceeded(f"node limit {self.node_limit} reached", count=node)
            self.node_level.append(level)
            self.node_low.append(low)
            self.node_high.append(high)
            self.unique[key] = node
        return node

    def var(self, v):
        self.declare(v)
        return BddRef(self, self._mk(self.level_of[v], 0, 1))

    def literal(self, lit):
        node = self.var(abs(lit)).node
        return BddRef(self, node if lit > 0 else self._not(node))

    # -- apply -------------------------------------------------------------

    def _apply(self, op, a, b):
        if op == AND:
            if a == 0 or b == 0:
                return 0
            if a == 1:
                return b
            if b == 1 or a == b:
                return a
        else:
            if a == 1 or b == 1:
                return 1
            if a == 0:
                return b
            if b == 0 or a == b:
                return a
        if a > b:
            a, b = b, a
        key = (op, a, b)
        hit = self.cache.get(key)
        if hit is not None:
            return hit
        la, lb = self.node_level[a], self.node_level[b]
        level = min(la, lb)
        a0, a1 = (self.node_low[a], self.node_high[a]) if la == level else (a, a)
        b0, b1 = (self.node_low[b], self.node_high[b]) if lb == level else (b, b)
        result = self._mk(level, self._apply(op, a0, b0), self._apply(op, a1, b1))
        if len(self.cache) >= self.cache_limit:
            self.cache.clear()
        self.cache[key] = result
        return result

    def _not(self, a):
        if a < 2:
            return 1 - a
        key = ("not", a, a)
        hit = self.cache.get(key)
        if hit is not None:
            return hit
        result = self._mk(self.node_level[a], self._not(self.node_low[a]), self._not(self.node_high[a]))
        self.cache[key] = result
        return result

    def apply(self, op, a, b):
        if op not in (AND, OR):
            raise ValueError(f"unsupported operation {op!r}")
        return BddRef(self, self._apply(op, self._own(a), self._own(b)))

    def negate(self, a):
        return BddRef(self, self._not(self._own(a)))

    def conj(self, *refs):
        node = 1
        for r in refs:
            node = self._apply(AND, node, self._own(r))
        return BddRef(self, node)

    def disj(self, *refs):
        node = 0
        for r in refs:
            node = self._apply(OR, node, self._own(r))
        return BddRef(self, node)

    # -- inspection --------------------------------------------------------

    def _reachable(self, root):
        seen = set()
        stack = [root]
        while stack:
            u = stack.pop()
            if u in seen:
                continue
            seen.add(u)
            if u > 1:
                stack.append(self.node_low[u])
                stack.append(self.node_high[u])
        return seen

    def node_count(self, a):
        """Nodes reachable from ``a``, terminals included."""
        return len(self._reachable(self._own(a)))

    def support(self, a):
        return {self.order[self.node_level[u]] for u in self._reachable(self._own(a)) if u > 1}

    def sat_count(self, a, var_universe=None):
        """Number of satisfying assignments over ``var_universe`` (default: all declared variables)."""
        root = self._own(a)
        universe = set(self.order) if var_universe is None else set(var_universe)
        missing = self.support(a) - universe
        if missing:
            raise ValueError(f"universe lacks support variables {sorted(missing)}")
        nlev = len(self.order)
        memo = {}

        def count(u):
            # Satisfying assignments of the declared variables at levels >= level(u).
            if u < 2:
                return u
            if u in memo:
                return memo[u]
            lev = self.node_level[u]
            total = 0
            for child in (self.node_low[u], self.node_high[u]):
                clev = nlev if child < 2 else self.node_level[child]
                total += count(child) << (clev - lev - 1)
            memo[u] = total
            return total

        top = nlev if root < 2 else self.node_level[root]
        over_declared = count(root) << top
        outside = len(universe - set(self.order))
        unused = len(set(self.order) - universe)
        return (over_declared << outside) >> unused

    def evaluate(self, a, chi):
        """Value of ``a`` under ``chi``; unassigned variables read as 0."""
        u = self._own(a)
        while u > 1:
            var = self.order[self.node_level[u]]
            u = self.node_high[u] if chi.get(var, 0) else self.node_low[u]
        return u

    def any_sat(self, a):
        """A path to the 1-terminal as {var: bit}, preferring low branches; None if unsatisfiable."""
        u = self._own(a)
        if u == 0:
            return None
        path = {}
        while u > 1:
            var = self.order[self.node_level[u]]
            if self.node_low[u] != 0:
                path[var] = 0
                u = self.node_low[u]
            else:
                path[var] = 1
                u = self.node_high[u]
        return path

    def cubes(self, a):
        """Paths to the 1-terminal as {var: bit}, depth-first with the low child first."""
        root = self._own(a)
        if root == 0:
            return
        stack = [(root, ())]
        while stack:
            u, lits = stack.pop()
            if u == 1:
                yield dict(lits)
                continue
            if u == 0:
                continue
            var = self.order[self.node_level[u]]
            stack.append((self.node_high[u], lits + ((var, 1),)))
            stack.append((self.node_low[u], lits + ((var, 0),)))


def build_cnf_bdd(store, f):
    """BDD of a CNF, conjoining one clause at a time.

    Every clause variable must already be declared in ``store``.
    """
    node = 1
    for clause in f.clauses:
        for lit in clause:
            if abs(lit) not in store.level_of:
                raise ValueError(f"variable {abs(lit)} is not declared in the store")
        c = 0
        for lit in sorted(clause, key=lambda x: store.level_of[abs(x)], reverse=True):
            c = store._apply(OR, c, store.literal(lit).node)
        node = store._apply(AND, node, c)
        if node == 0:
            break
    return BddRef(store, node)


def _reduced_graph(rel, support):
    g = rel.to_graph()
    return g, g.subgraph(v for v in g.variables if v in support)


def _augment(sub, method, base):
    """Graph whose triangles/cycles give F_trans for the reduced edge set, plus its fill edges."""
    if method == "direct":
        return sub, []
    touched = sorted({x for i, j, _ in sub.edges for x in (i, j)})
    if method == "dense":
        fills = []
        for a in range(len(touched)):
            for b in range(a + 1, len(touched)):
                i, j = touched[a], touched[b]
                if not sub.has_edge(i, j):
                    fills.append((i, j, base + len(fills)))
        return sub.with_edges(fills), fills
    if method == "sparse":
        aug = make_chordal(sub, base)
        return aug.graph, list(aug.fill_edges)
    raise ValueError(f"unknown method {method!r}")


def reduced_transitivity_check(store, f_sat, rel, method="sparse"):
    """Decide F_sat under transitivity using only relational variables in its support.

    The reduced edge set is augmented per ``method``, its transitivity
    constraints are built as a BDD and conjoined with ``f_sat``.  A SAT
    model assigns every declared variable; relational variables outside the
    reduced set are completed by 1-path connectivity so the whole relational
    part is transitivity-consistent.
    """
    g, sub = _reduced_graph(rel, store.support(f_sat))
    base = max([g.max_var(), *store.order, 0]) + 1
    aug, fills = _augment(sub, method, base)
    for _, _, var in fills:
        store.declare(var)
    trans, report = generate(aug, "direct")
    trans_bdd = build_cnf_bdd(store, trans)
    conj = store.apply(AND, f_sat, trans_bdd)

    stats = SolveStats(added_clauses=len(trans.clauses))
    stats.extra.update(
        method=method,
        reduced_edges=len(sub.edges),
        trans_edges=report.edges,
        trans_cycles=report.cycles,
        fsat_nodes=store.node_count(f_sat),
        trans_nodes=store.node_count(trans_bdd) if trans.clauses else 0,
        conj_nodes=store.node_count(conj),
    )
    if conj.is_false():
        return SolveResult(UNSAT, None, stats)

    path = store.any_sat(conj)
    fill_vars = {var for _, _, var in fills}
    values = {v: path.get(v, 0) for v in store.order}
    # The path is consistent on the augmented graph, hence on the reduced
    # edges alone; fill pairs may coincide with edges outside the support,
    # so completion runs from the reduced subgraph onto the original graph.
    reduced_chi = Assignment({var: values[var] for var in sub.variables})
    completed = extend_assignment(sub, reduced_chi, g)
    for var in g.variables:
        values[var] = completed[var]
    model = Assignment({v: b for v, b in values.items() if v not in fill_vars})
    fresh = {v: values[v] for v in sorted(fill_vars)}

    if store.evaluate(f_sat, model) != 1:
        raise AssertionError("reduced check produced a model falsifying F_sat")
    if find_violation(g, model.restrict(g.variables)) is not None:
        raise AssertionError("reduced check produced a transitivity-violating model")
    return SolveResult(SAT, model, stats, fresh=fresh)


@dataclass
class ImplicantResult:
    kind: str  # "found", "exhausted" or "limit"
    count: int
    cube: dict | None = None

    @property
    def found(self):
        return self.kind == "found"


def filtered_implicants(store, f_sat, rel, limit=None):
    """First cube of ``f_sat`` whose relational literals are transitivity-consistent.

    Cubes come from :meth:`BddStore.cubes`.  ``count`` is the number of
    cubes examined, including the accepted one.
    """
    g = rel.to_graph()
    relvars = set(g.variables)
    count = 0
    for cube in store.cubes(f_sat):
        if limit is not None and count >= limit:
            return ImplicantResult("limit", count)
        count += 1
        labels = Assignment({v: b for v, b in cube.items() if v in relvars}, partial=True)
        if find_violation(g, labels) is None:
            return ImplicantResult("found", count, cube)
    return ImplicantResult("exhausted", count)


# -- growth probe -------------------------------------------------------------

def mesh_orderings(g, n):
    """Three static orders of mesh edge variables.

    ``row-major`` sorts edges by their endpoint pair; ``interleaved``
    alternates the horizontal and vertical variable blocks; ``reversed`` is
    row-major backwards.
    """
    row_major = [var for _, _, var in sorted(g.edges)]
    horizontal = n * (n - 1)
    variables = sorted(g.variables)
    hs, vs = variables[:horizontal], variables[horizontal:]
    interleaved = []
    for t in range(max(len(hs), len(vs))):
        interleaved.extend(x[t] for x in (hs, vs) if t < len(x))
    return {
        "row-major": row_major,
        "interleaved": interleaved,
        "reversed": row_major[::-1],
    }


def probe_growth(sizes=(3, 4, 5), orderings=None, node_limit=None):
    """Node counts of F_trans for n x n meshes under each static order.

    Returns rows ``(n, ordering, nodes, seconds)``.
    """
    from .generators import gen_mesh

    rows = []
    for n in sizes:
        g = gen_mesh(n)
        trans, _ = generate(g, "direct")
        for name, order in mesh_orderings(g, n).items():
            if orderings is not None and name not in orderings:
                continue
            store = BddStore(order, node_limit=node_limit)
            started = time.perf_counter()
            root = build_cnf_bdd(store, trans)
            rows.append((n, name, store.node_count(root), time.perf_counter() - started))
    return rows


def write_probe_csv(rows):
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["n", "ordering", "nodes", "seconds"])
    for n, name, nodes, secs in rows:
        w.writerow([n, name, nodes, f"{secs:.4f}"])
    return buf.getvalue()
