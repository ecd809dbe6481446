"""CDCL SAT solver and the transitivity-aware solving flows.

The engine is a conventional conflict-driven clause-learning solver: two
watched literals, first-UIP learning, activity-ordered decisions with
false-first phase, and Luby restarts.  Clauses can be added between calls
to :meth:`Solver.solve`, which the lazy flow relies on.

``solve_eager`` conjoins the transitivity clauses of one generation method
with F_sat up front.  ``solve_lazy`` starts from F_sat alone and, whenever a
model breaks transitivity, adds the single clause refuting the witness
cycle and solves again.
"""

import heapq
import random
import time
from dataclasses import dataclass, field

from .cnfio import merge
from .constraints import ClauseSet, generate
from .eqgraph import Assignment, find_violation
from .errors import ResourceLimit, RoundLimitExceeded

__all__ = [
    "SAT",
    "UNSAT",
    "SolveStats",
    "SolveResult",
    "Solver",
    "solve",
    "solve_eager",
    "solve_lazy",
    "witness_clause",
    "luby",
]

SAT = "SAT"
UNSAT = "UNSAT"


@dataclass
class SolveStats:
    decisions: int = 0
    propagations: int = 0
    conflicts: int = 0
    refinement_rounds: int = 0
    added_clauses: int = 0
    extra: dict = field(default_factory=dict)

    def as_dict(self):
        d = {
            "decisions": self.decisions,
            "propagations": self.propagations,
            "conflicts": self.conflicts,
            "refinement_rounds": self.refinement_rounds,
            "added_clauses": self.added_clauses,
        }
        d.update(self.extra)
        return d


@dataclass
class SolveResult:
    status: str
    model: Assignment | None = None
    stats: SolveStats = field(default_factory=SolveStats)
    fresh: dict = field(default_factory=dict)  # values of variables introduced by dense/sparse
    refinements: list = field(default_factory=list)  # clauses added by the lazy flow

    @property
    def sat(self):
        return self.status == SAT


def luby(i):
    """i-th element (1-based) of the Luby restart sequence 1 1 2 1 1 2 4 ..."""
    k = 1
    while (1 << k) - 1 < i:
        k += 1
    while True:
        if i == (1 << k) - 1:
            return 1 << (k - 1)
        i -= (1 << (k - 1)) - 1
        k = 1
        while (1 << k) - 1 < i:
            k += 1


class Solver:
    """Incremental CDCL solver over variables 1..num_vars.

    ``seed`` perturbs the initial decision order; the default keeps it
    purely index-based.  ``max_conflicts`` and ``time_budget`` (seconds)
    bound each :meth:`solve` call and raise :class:`ResourceLimit`.
    """

    RESTART_BASE = 100
    DECAY = 0.95

    def __init__(self, num_vars=0, seed=None, max_conflicts=None, time_budget=None):
        self.num_vars = 0
        self.assign = [0]  # 1 true, -1 false, 0 unassigned
        self.level = [0]
        self.reason = [None]
        self.activity = [0.0]
        self.watches = {}
        self.clauses = []
        self.trail = []
        self.trail_lim = []
        self.qhead = 0
        self.heap = []
        self.ok = True
        self.var_inc = 1.0
        self.rng = random.Random(seed) if seed is not None else None
        self.max_conflicts = max_conflicts
        self.time_budget = time_budget
        self.stats = SolveStats()
        self.ensure_vars(num_vars)

    # -- setup -------------------------------------------------------------

    def ensure_vars(self, n):
        for v in range(self.num_vars + 1, n + 1):
            self.assign.append(0)
            self.level.append(0)
            self.reason.append(None)
            act = self.rng.random() * 1e-3 if self.rng else 0.0
            self.activity.append(act)
            self.watches[v] = []
            self.watches[-v] = []
            heapq.heappush(self.heap, (-act, v))
        self.num_vars = max(self.num_vars, n)

    def _value(self, lit):
        a = self.assign[lit if lit > 0 else -lit]
        return a if lit > 0 else -a

    def add_clause(self, lits):
        """Add a clause; returns False once the formula is known unsatisfiable."""
        if not self.ok:
            return False
        if self.trail_lim:
            self._backtrack(0)
        clause = []
        for lit in lits:
            if -lit in clause:
                return True  # tautology
            if lit not in clause:
                clause.append(lit)
        self.ensure_vars(max((abs(x) for x in clause), default=0))
        if any(self._value(x) == 1 for x in clause):
            return True
        live = [x for x in clause if self._value(x) == 0]
        if not live:
            self.ok = False
            return False
        if len(live) == 1:
            self._enqueue(live[0], None)
            return True
        dead = [x for x in clause if self._value(x) == -1]
        clause = live + dead
        ci = len(self.clauses)
        self.clauses.append(clause)
        self.watches[clause[0]].append(ci)
        self.watches[clause[1]].append(ci)
        return True

    # -- core --------------------------------------------------------------

    def _enqueue(self, lit, reason):
        v = lit if lit > 0 else -lit
        self.assign[v] = 1 if lit > 0 else -1
        self.level[v] = len(self.trail_lim)
        self.reason[v] = reason
        self.trail.append(lit)

    def _propagate(self):
        assign = self.assign
        clauses = self.clauses
        watches = self.watches
        trail = self.trail
        while self.qhead < len(trail):
            lit = trail[self.qhead]
            self.qhead += 1
            self.stats.propagations += 1
            false_lit = -lit
            ws = watches[false_lit]
            i = j = 0
            n = len(ws)
            while i < n:
                ci = ws[i]
                i += 1
                c = clauses[ci]
                if c[0] == false_lit:
                    c[0], c[1] = c[1], false_lit
                first = c[0]
                fv = assign[first] if first > 0 else -assign[-first]
                if fv == 1:
                    ws[j] = ci
                    j += 1
                    continue
                for k in range(2, len(c)):
                    x = c[k]
                    xv = assign[x] if x > 0 else -assign[-x]
                    if xv != -1:
                        c[1], c[k] = x, false_lit
                        watches[x].append(ci)
                        break
                else:
                    ws[j] = ci
                    j += 1
                    if fv == -1:
                        while i < n:
                            ws[j] = ws[i]
                            j += 1
                            i += 1
                        del ws[j:]
                        self.qhead = len(trail)
                        return ci
                    self._enqueue(first, ci)
            del ws[j:]
        return None

    def _bump(self, v):
        self.activity[v] += self.var_inc
        if self.activity[v] > 1e100:
            self.activity = [a * 1e-100 for a in self.activity]
            self.var_inc *= 1e-100
            self.heap = [(-self.activity[u], u) for u in range(1, self.num_vars + 1) if self.assign[u] == 0]
            heapq.heapify(self.heap)
        elif self.assign[v] == 0:
            heapq.heappush(self.heap, (-self.activity[v], v))

    def _analyze(self, confl):
        seen = set()
        learnt = [0]
        counter = 0
        p = None
        idx = len(self.trail) - 1
        dl = len(self.trail_lim)
        c = self.clauses[confl]
        while True:
            for q in c if p is None else c[1:]:
                v = abs(q)
                if v not in seen and self.level[v] > 0:
                    seen.add(v)
                    self._bump(v)
                    if self.level[v] == dl:
                        counter += 1
                    else:
                        learnt.append(q)
            while abs(self.trail[idx]) not in seen:
                idx -= 1
            p = self.trail[idx]
            idx -= 1
            counter -= 1
            if counter == 0:
                break
            c = self.clauses[self.reason[abs(p)]]
        learnt[0] = -p
        if len(learnt) == 1:
            return learnt, 0
        best = max(range(1, len(learnt)), key=lambda t: self.level[abs(learnt[t])])
        learnt[1], learnt[best] = learnt[best], learnt[1]
        return learnt, self.level[abs(learnt[1])]

    def _backtrack(self, target):
        if len(self.trail_lim) <= target:
            return
        stop = self.trail_lim[target]
        for lit in self.trail[stop:]:
            v = abs(lit)
            self.assign[v] = 0
            self.reason[v] = None
            heapq.heappush(self.heap, (-self.activity[v], v))
        del self.trail[stop:]
        del self.trail_lim[target:]
        self.qhead = len(self.trail)

    def _pick(self):
        heap = self.heap
        while heap:
            neg_act, v = heap[0]
            if self.assign[v] != 0 or -neg_act != self.activity[v]:
                heapq.heappop(heap)
                continue
            return v
        return 0

    def solve(self):
        """Return (status, model) where model maps every variable to 0/1 when SAT."""
        if not self.ok:
            return UNSAT, None
        started = time.monotonic()
        conflicts_here = 0
        restart_no = 1
        restart_at = luby(restart_no) * self.RESTART_BASE
        since_restart = 0
        while True:
            confl = self._propagate()
            if confl is not None:
                self.stats.conflicts += 1
                conflicts_here += 1
                since_restart += 1
                if not self.trail_lim:
                    self.ok = False
                    return UNSAT, None
                learnt, back = self._analyze(confl)
                self._backtrack(back)
                if len(learnt) == 1:
                    self._enqueue(learnt[0], None)
                else:
                    ci = len(self.clauses)
                    self.clauses.append(learnt)
                    self.watches[learnt[0]].append(ci)
                    self.watches[learnt[1]].append(ci)
                    self._enqueue(learnt[0], ci)
                self.var_inc /= self.DECAY
                if self.max_conflicts is not None and conflicts_here >= self.max_conflicts:
                    self._backtrack(0)
                    raise ResourceLimit(f"conflict budget {self.max_conflicts} exhausted", count=conflicts_here)
                if self.time_budget is not None and time.monotonic() - started > self.time_budget:
                    self._backtrack(0)
                    raise ResourceLimit(f"time budget {self.time_budget}s exhausted", count=conflicts_here)
                continue
            if since_restart >= restart_at:
                self._backtrack(0)
                restart_no += 1
                restart_at = luby(restart_no) * self.RESTART_BASE
                since_restart = 0
                continue
            v = self._pick()
            if v == 0:
                model = Assignment({u: 1 if self.assign[u] == 1 else 0 for u in range(1, self.num_vars + 1)})
                return SAT, model
            self.stats.decisions += 1
            self.trail_lim.append(len(self.trail))
            self._enqueue(-v, None)


def _check_model(f, model):
    if not f.evaluate(model):
        raise AssertionError("solver produced a model that falsifies an input clause")


def solve(f, seed=None, max_conflicts=None, time_budget=None):
    """Decide satisfiability of a :class:`ClauseSet`."""
    s = Solver(f.num_vars, seed=seed, max_conflicts=max_conflicts, time_budget=time_budget)
    for c in f.clauses:
        if not s.add_clause(c):
            break
    status, model = s.solve()
    if status == SAT:
        _check_model(f, model)
    return SolveResult(status, model, s.stats)


def _relational_check(g, model):
    chi = Assignment({var: model[var] for var in g.variables})
    if find_violation(g, chi) is not None:
        raise AssertionError("transitivity-aware flow returned a model that violates transitivity")


def solve_eager(f_sat, rel, method="sparse", seed=None, max_conflicts=None, time_budget=None, max_cycles=None):
    """Solve F_sat conjoined with the transitivity clauses of ``method``.

    Fresh dense/sparse variables are numbered above both F_sat and the
    relation map and their values land in ``result.fresh``.
    """
    g = rel.to_graph()
    user_vars = max(f_sat.num_vars, g.max_var())
    trans, report = generate(g, method, fresh_var_base=user_vars + 1, max_cycles=max_cycles)
    combined = merge(ClauseSet(user_vars, f_sat.clauses), trans)
    result = solve(combined, seed=seed, max_conflicts=max_conflicts, time_budget=time_budget)
    result.stats.added_clauses = len(trans.clauses)
    result.stats.extra.update(method=method, trans_edges=report.edges, trans_cycles=report.cycles)
    if result.sat:
        full = result.model
        result.model = Assignment({v: full[v] for v in range(1, user_vars + 1)})
        result.fresh = {v: full[v] for v in range(user_vars + 1, combined.num_vars + 1)}
        _relational_check(g, result.model)
    return result


def witness_clause(g, witness):
    """The clause refuting ``witness``: its 1-edges imply its 0-edge."""
    zero = g.var(*witness.zero_edge)
    ones = [g.var(a, b) for a, b in witness.edges() if (min(a, b), max(a, b)) != tuple(witness.zero_edge)]
    return [-v for v in ones] + [zero]


def solve_lazy(f_sat, rel, round_limit=10_000, seed=None, max_conflicts=None, time_budget=None):
    """Counterexample-guided refinement: add one refuting clause per violated model."""
    g = rel.to_graph()
    user_vars = max(f_sat.num_vars, g.max_var())
    s = Solver(user_vars, seed=seed, max_conflicts=max_conflicts, time_budget=time_budget)
    for c in f_sat.clauses:
        if not s.add_clause(c):
            break
    added = []
    seen = set()
    while True:
        status, model = s.solve()
        if status == UNSAT:
            result = SolveResult(UNSAT, None, s.stats, refinements=added)
            break
        witness = find_violation(g, Assignment({v: model[v] for v in g.variables}))
        if witness is None:
            _check_model(f_sat, model)
            result = SolveResult(SAT, model, s.stats, refinements=added)
            break
        if len(added) >= round_limit:
            raise RoundLimitExceeded(f"{round_limit} refinement rounds without a verdict", count=len(added))
        clause = witness_clause(g, witness)
        key = tuple(sorted(clause))
        if key in seen:
            raise AssertionError(f"refinement clause {clause} added twice")
        seen.add(key)
        added.append(clause)
        s.stats.refinement_rounds += 1
        s.stats.added_clauses += 1
        s.add_clause(clause)
    if result.sat:
        _relational_check(g, result.model)
    return result
