import random
from pathlib import Path

import pytest

from eqtrans import BenchSpec, build_bench, enumerate_chord_free_cycles, gen_diamond, gen_mesh, gen_random
from eqtrans.cnfio import RelMap, read_rel, write_rel

GOLDEN = Path(__file__).parent / "data" / "random_n8_p0.3_seed42.rel"


class TestMesh:
    @pytest.mark.parametrize("n,verts,edges", [(2, 4, 4), (4, 16, 24), (6, 36, 60)])
    def test_sizes(self, n, verts, edges):
        g = gen_mesh(n)
        assert g.n == verts and len(g.edges) == edges == 2 * n * (n - 1)

    def test_two_is_one_square(self):
        assert enumerate_chord_free_cycles(gen_mesh(2)) == [(1, 2, 4, 3)]

    def test_variable_numbering(self):
        g = gen_mesh(3)
        # horizontal edges first, row by row, then vertical
        assert [g.pair(v) for v in range(1, 7)] == [(1, 2), (2, 3), (4, 5), (5, 6), (7, 8), (8, 9)]
        assert [g.pair(v) for v in range(7, 13)] == [(1, 4), (2, 5), (3, 6), (4, 7), (5, 8), (6, 9)]

    def test_too_small(self):
        with pytest.raises(ValueError):
            gen_mesh(1)

    @pytest.mark.parametrize("n,cycles", [(4, 24), (5, 229), (6, 3436)])
    def test_cycle_counts(self, n, cycles):
        assert len(enumerate_chord_free_cycles(gen_mesh(n))) == cycles


class TestDiamond:
    @pytest.mark.parametrize("n", range(2, 11))
    def test_vertex_count(self, n):
        g = gen_diamond(n)
        assert g.n == 3 * n + 1
        assert len(g.edges) == 4 * n + 1
        assert g.has_edge(1, 3 * n + 1)

    def test_single_face_uses_extra_vertex(self):
        # A lone diamond closed by a direct edge would give that edge as a
        # chord; the return path goes through vertex 5 instead.
        g = gen_diamond(1)
        assert g.n == 5
        assert len(enumerate_chord_free_cycles(g)) == 3

    @pytest.mark.parametrize("n,count", [(1, 3), (3, 11), (8, 264)])
    def test_counts(self, n, count):
        assert len(enumerate_chord_free_cycles(gen_diamond(n))) == count

    def test_too_small(self):
        with pytest.raises(ValueError):
            gen_diamond(0)


class TestRandom:
    def test_empty_and_complete(self):
        assert gen_random(6, 0.0, 1).edges == ()
        assert len(gen_random(6, 1.0, 1).edges) == 15

    def test_seed_determinism(self):
        a = write_rel(RelMap.from_graph(gen_random(12, 0.4, 9)))
        b = write_rel(RelMap.from_graph(gen_random(12, 0.4, 9)))
        assert a == b

    def test_draw_order(self):
        rng = random.Random(5)
        expected = [(i, j) for i in range(1, 10) for j in range(i + 1, 10) if rng.random() < 0.5]
        assert sorted((i, j) for i, j, _ in gen_random(9, 0.5, 5).edges) == expected

    def test_golden(self):
        text = GOLDEN.read_text()
        assert write_rel(RelMap.from_graph(gen_random(8, 0.3, 42))) == text
        assert read_rel(text).to_graph() == gen_random(8, 0.3, 42)

    def test_bad_probability(self):
        with pytest.raises(ValueError):
            gen_random(4, 1.5, 0)


class TestBenchSpec:
    def test_dispatch(self):
        assert build_bench(BenchSpec("mesh", 3)) == gen_mesh(3)
        assert build_bench(BenchSpec("diamond", 2)) == gen_diamond(2)
        assert build_bench(BenchSpec("random", 7, 0.3, 4)) == gen_random(7, 0.3, 4)

    @pytest.mark.parametrize("args", [("mesh", 1), ("diamond", 0), ("random", 5, -0.1), ("grid", 3)])
    def test_invalid(self, args):
        with pytest.raises(ValueError):
            BenchSpec(*args)
