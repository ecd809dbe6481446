"""Equality-relation transitivity constraints for SAT encodings."""

from .chordal import ChordalAugmentation, make_chordal, verify_chordal
from .cnfio import RelMap, read_dimacs, read_rel, write_dimacs, write_rel
from .constraints import METHODS, ClauseSet, GenerationReport, clauses_for_cycle, generate
from .cycles import Cycle, enumerate_chord_free_cycles
from .eqgraph import Assignment, RelationGraph, ViolationWitness, build_graph, extend_assignment, find_violation
from .generators import BenchSpec, build_bench, gen_diamond, gen_mesh, gen_random
from .obdd import BddStore, filtered_implicants, reduced_transitivity_check
from .solver import SAT, UNSAT, Solver, SolveResult, solve, solve_eager, solve_lazy

__version__ = "0.1.0"

__all__ = [
    "Assignment", "BenchSpec", "BddStore", "ChordalAugmentation", "ClauseSet", "Cycle",
    "GenerationReport", "METHODS", "RelMap", "RelationGraph", "SAT", "Solver", "SolveResult",
    "UNSAT", "ViolationWitness", "build_bench", "build_graph", "clauses_for_cycle",
    "enumerate_chord_free_cycles", "extend_assignment", "filtered_implicants", "find_violation",
    "gen_diamond", "gen_mesh", "gen_random", "generate", "make_chordal", "read_dimacs",
    "read_rel", "reduced_transitivity_check", "solve", "solve_eager", "solve_lazy",
    "verify_chordal", "write_dimacs", "write_rel",
]
