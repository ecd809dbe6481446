import random

import pytest

from eqtrans import ClauseSet, RelationGraph, find_violation, solve, solve_eager, solve_lazy
from eqtrans.cnfio import RelMap
from eqtrans.errors import ResourceLimit, RoundLimitExceeded
from eqtrans.solver import SAT, UNSAT, Solver, luby

import oracles


def k3_rel():
    return RelMap(3, [(1, 1, 2), (2, 2, 3), (3, 1, 3)])


def brute_sat(f):
    return oracles.cnf_table(f.clauses, f.num_vars) != 0


def test_luby_prefix():
    assert [luby(i) for i in range(1, 16)] == [1, 1, 2, 1, 1, 2, 4, 1, 1, 2, 1, 1, 2, 4, 8]


class TestSolve:
    def test_contradiction(self):
        assert solve(ClauseSet(1, [[1], [-1]])).status == UNSAT

    def test_forced_model(self):
        r = solve(ClauseSet(3, [[1, 2], [-1], [-2, 3]]))
        assert r.status == SAT
        assert dict(r.model) == {1: 0, 2: 1, 3: 1}

    def test_empty_formula(self):
        r = solve(ClauseSet(2, []))
        assert r.sat and dict(r.model) == {1: 0, 2: 0}

    def test_empty_clause(self):
        assert solve(ClauseSet(2, [[1], []])).status == UNSAT

    def test_random_3cnf_vs_truth_table(self):
        rng = random.Random(31)
        for _ in range(100):
            nv = rng.randint(5, 14)
            f = ClauseSet(nv, [[v if rng.random() < 0.5 else -v for v in rng.sample(range(1, nv + 1), 3)]
                               for _ in range(round(4.3 * nv))])
            r = solve(f)
            assert r.sat == brute_sat(f)
            if r.sat:
                assert f.evaluate(r.model)

    def test_pigeonhole_unsat(self):
        # 5 pigeons, 4 holes: forces real search and learning.
        var = lambda p, h: p * 4 + h + 1  # noqa: E731
        clauses = [[var(p, h) for h in range(4)] for p in range(5)]
        for h in range(4):
            for p in range(5):
                for q in range(p + 1, 5):
                    clauses.append([-var(p, h), -var(q, h)])
        r = solve(ClauseSet(20, clauses))
        assert r.status == UNSAT and r.stats.conflicts > 0

    def test_conflict_budget(self):
        var = lambda p, h: p * 5 + h + 1  # noqa: E731
        clauses = [[var(p, h) for h in range(5)] for p in range(6)]
        for h in range(5):
            for p in range(6):
                for q in range(p + 1, 6):
                    clauses.append([-var(p, h), -var(q, h)])
        with pytest.raises(ResourceLimit):
            solve(ClauseSet(30, clauses), max_conflicts=3)

    def test_deterministic_under_seed(self):
        rng = random.Random(5)
        f = ClauseSet(16, [[v if rng.random() < 0.5 else -v for v in rng.sample(range(1, 17), 3)] for _ in range(60)])
        a, b = solve(f, seed=7), solve(f, seed=7)
        assert a.status == b.status and a.model == b.model
        assert a.stats.as_dict() == b.stats.as_dict()

    def test_incremental(self):
        s = Solver(2)
        s.add_clause([1, 2])
        assert s.solve()[0] == SAT
        s.add_clause([-1])
        status, model = s.solve()
        assert status == SAT and model[2] == 1
        s.add_clause([-2])
        assert s.solve()[0] == UNSAT


class TestEager:
    @pytest.mark.parametrize("method", ["direct", "dense", "sparse"])
    def test_k3_contradiction(self, method):
        r = solve_eager(ClauseSet(3, [[1], [2], [-3]]), k3_rel(), method)
        assert r.status == UNSAT

    @pytest.mark.parametrize("method", ["direct", "dense", "sparse"])
    def test_k3_forced_closure(self, method):
        r = solve_eager(ClauseSet(3, [[1], [2]]), k3_rel(), method)
        assert r.sat and r.model[3] == 1

    def test_fresh_vars_reported_separately(self, c4):
        rel = RelMap.from_graph(c4)
        r = solve_eager(ClauseSet(4, [[1], [2], [3]]), rel, "dense")
        assert r.sat
        assert set(r.model) == {1, 2, 3, 4}
        assert set(r.fresh) == {5, 6}
        assert r.model[4] == 1


class TestLazy:
    def test_one_round(self):
        r = solve_lazy(ClauseSet(3, [[1], [2], [-3]]), k3_rel())
        assert r.status == UNSAT
        assert r.stats.refinement_rounds == 1
        assert r.refinements == [[-1, -2, 3]]

    def test_unconstrained_needs_no_rounds(self):
        r = solve_lazy(ClauseSet(4, [[4]]), k3_rel())
        assert r.sat and r.stats.refinement_rounds == 0

    def test_round_limit(self):
        # The first model of (1)(2) is (1, 1, 0), which violates transitivity.
        with pytest.raises(RoundLimitExceeded):
            solve_lazy(ClauseSet(3, [[1], [2]]), k3_rel(), round_limit=0)

    def test_never_readds_clause(self):
        rng = random.Random(17)
        for _ in range(60):
            n, edges = oracles.graph_corpus(1, 8, 14, seed=rng.randrange(10**6))[0]
            if not edges:
                continue
            variables = [v for _, _, v in edges]
            f = ClauseSet(len(variables), oracles.random_cnf(rng, len(variables), 4, variables=variables))
            r = solve_lazy(f, RelMap(n, [(v, i, j) for i, j, v in edges]))
            keys = [tuple(sorted(c)) for c in r.refinements]
            assert len(keys) == len(set(keys)) == r.stats.refinement_rounds


def test_models_are_transitive():
    rng = random.Random(41)
    for n, edges in oracles.graph_corpus(80, 8, 14, seed=41):
        if not edges:
            continue
        variables = [v for _, _, v in edges]
        f = ClauseSet(len(variables), oracles.random_cnf(rng, len(variables), rng.randint(1, 5), variables=variables))
        rel = RelMap(n, [(v, i, j) for i, j, v in edges])
        g = RelationGraph(n, edges)
        for r in [solve_eager(f, rel, m) for m in ("direct", "dense", "sparse")] + [solve_lazy(f, rel)]:
            if r.sat:
                assert f.evaluate(r.model)
                assert find_violation(g, r.model.restrict(g.variables)) is None
