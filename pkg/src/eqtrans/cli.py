"""Command-line front end.

Exit codes: 0 report-only success, 10 SAT, 20 UNSAT, 1 usage or input
error, 2 resource limit.

Environment: EQTRANS_CYCLE_LIMIT, EQTRANS_NODE_LIMIT and
EQTRANS_ROUND_LIMIT give integer defaults for --max-cycles, --max-nodes and
--rounds.

CSV columns:
  bench --csv          family,n,method,edges,cycles,clauses,seconds
  obdd --probe-growth  n,ordering,nodes,seconds
"""

import argparse
import csv
import io
import os
import sys
import time
from concurrent.futures import ProcessPoolExecutor

from . import cnfio
from .constraints import METHODS, generate
from .eqgraph import find_violation
from .errors import EqTransError, LimitError
from .generators import BenchSpec, build_bench
from .obdd import BddStore, build_cnf_bdd, filtered_implicants, probe_growth, reduced_transitivity_check, write_probe_csv
from .solver import solve_eager, solve_lazy

EXIT_OK, EXIT_ERROR, EXIT_LIMIT, EXIT_SAT, EXIT_UNSAT = 0, 1, 2, 10, 20


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _env_limit(name, default):
    raw = os.environ.get(name)
    if raw is None:
        return default
    try:
        value = int(raw)
    except ValueError:
        raise UsageError(f"{name} must be an integer, got {raw!r}") from None
    if value <= 0:
        raise UsageError(f"{name} must be positive")
    return value


def _positive(text):
    value = int(text)
    if value <= 0:
        raise argparse.ArgumentTypeError("must be positive")
    return value


def _sizes(text):
    try:
        return [int(x) for x in text.split(",") if x]
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad size list {text!r}") from None


def build_parser():
    p = _Parser(prog="eqtrans", description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    g = sub.add_parser("gen", help="write transitivity clauses (optionally merged with a CNF)")
    g.add_argument("--rel", required=True)
    g.add_argument("--cnf", help="F_sat to merge in front of the constraints")
    g.add_argument("--method", choices=METHODS, default="sparse")
    g.add_argument("--fresh-base", type=_positive)
    g.add_argument("--max-cycles", type=_positive)
    g.add_argument("--rel-out", help="write the augmented relation map here")
    g.add_argument("-o", "--output", required=True)

    c = sub.add_parser("check", help="check an assignment against transitivity")
    c.add_argument("--rel", required=True)
    c.add_argument("--assign", required=True)

    s = sub.add_parser("solve", help="solve F_sat under transitivity")
    s.add_argument("--cnf", required=True)
    s.add_argument("--rel", help="relation map (default: 'c rel' lines inside the CNF)")
    s.add_argument("--mode", choices=("eager", "lazy"), default="eager")
    s.add_argument("--method", choices=METHODS, default="sparse")
    s.add_argument("--seed", type=int)
    s.add_argument("--max-conflicts", type=_positive)
    s.add_argument("--time-budget", type=float)
    s.add_argument("--max-cycles", type=_positive)
    s.add_argument("--rounds", type=_positive)
    s.add_argument("-o", "--output", help="write the model as an assignment file")

    b = sub.add_parser("bench", help="synthetic benchmark statistics")
    b.add_argument("family", nargs="?", choices=("mesh", "diamond", "random"))
    b.add_argument("--n", type=int, default=4)
    b.add_argument("--p", type=float, default=0.3)
    b.add_argument("--seed", type=int, default=0)
    b.add_argument("--method", choices=METHODS, default="direct")
    b.add_argument("--stats", action="store_true", help="print key=value statistics")
    b.add_argument("--csv", action="store_true")
    b.add_argument("--table2", action="store_true", help="all three methods on meshes --sizes")
    b.add_argument("--sizes", type=_sizes, default=[4, 5, 6])
    b.add_argument("--jobs", type=_positive, default=1)
    b.add_argument("--max-cycles", type=_positive)
    b.add_argument("-o", "--output", help="write the generated graph as a .rel file")

    o = sub.add_parser("obdd", help="BDD-based flows")
    mode = o.add_mutually_exclusive_group(required=True)
    mode.add_argument("--probe-growth", action="store_true")
    mode.add_argument("--reduced-check", action="store_true")
    mode.add_argument("--implicants", action="store_true")
    o.add_argument("--cnf")
    o.add_argument("--rel")
    o.add_argument("--method", choices=METHODS, default="sparse")
    o.add_argument("--sizes", type=_sizes, default=[3, 4, 5])
    o.add_argument("--limit", type=_positive, help="implicants to examine before giving up")
    o.add_argument("--max-nodes", type=_positive)
    o.add_argument("--csv", action="store_true")
    o.add_argument("-o", "--output")
    return p


def _read(path):
    with open(path, encoding="utf-8", newline="") as fh:
        return fh.read()


def _write(path, text):
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(text)


def _load_problem(args):
    text = _read(args.cnf)
    f_sat = cnfio.read_dimacs(text)
    rel = cnfio.read_rel(_read(args.rel)) if args.rel else cnfio.read_rel_comments(text)
    return f_sat, rel


def _kv(pairs):
    return " ".join(f"{k}={v}" for k, v in pairs.items())


def cmd_gen(args, out):
    rel = cnfio.read_rel(_read(args.rel))
    g = rel.to_graph()
    f_sat = cnfio.read_dimacs(_read(args.cnf)) if args.cnf else None
    base = args.fresh_base
    if base is None:
        base = max(g.max_var(), f_sat.num_vars if f_sat else 0) + 1
    max_cycles = args.max_cycles or _env_limit("EQTRANS_CYCLE_LIMIT", None)
    trans, report = generate(g, args.method, fresh_var_base=base, max_cycles=max_cycles)
    result = cnfio.merge(f_sat, trans) if f_sat else trans
    comments = [f"transitivity method={report.method} {report.stats_line()}"]
    _write(args.output, cnfio.write_dimacs(result, comments))
    if args.rel_out:
        aug = cnfio.RelMap(g.n, list(rel.entries) + list(report.fill_vars))
        _write(args.rel_out, cnfio.write_rel(aug))
    print(f"method={report.method} {report.stats_line()} fill={len(report.fill_vars)}", file=out)
    return EXIT_OK


def cmd_check(args, out):
    rel = cnfio.read_rel(_read(args.rel))
    chi = cnfio.read_assignment(_read(args.assign))
    w = find_violation(rel.to_graph(), chi)
    if w is None:
        print("status=consistent", file=out)
    else:
        cycle = ",".join(map(str, w.cycle))
        print(f"status=violation cycle={cycle} zero_edge={w.zero_edge[0]},{w.zero_edge[1]}", file=out)
    return EXIT_OK


def _report_result(result, args, out):
    print("s SATISFIABLE" if result.sat else "s UNSATISFIABLE", file=out)
    print(_kv(result.stats.as_dict()), file=out)
    if result.sat and args.output:
        _write(args.output, cnfio.write_assignment(result.model))
    return EXIT_SAT if result.sat else EXIT_UNSAT


def cmd_solve(args, out):
    f_sat, rel = _load_problem(args)
    if args.mode == "eager":
        max_cycles = args.max_cycles or _env_limit("EQTRANS_CYCLE_LIMIT", None)
        result = solve_eager(
            f_sat, rel, args.method, seed=args.seed, max_conflicts=args.max_conflicts,
            time_budget=args.time_budget, max_cycles=max_cycles,
        )
    else:
        rounds = args.rounds or _env_limit("EQTRANS_ROUND_LIMIT", 10_000)
        result = solve_lazy(
            f_sat, rel, round_limit=rounds, seed=args.seed,
            max_conflicts=args.max_conflicts, time_budget=args.time_budget,
        )
    return _report_result(result, args, out)


def _bench_row(job):
    family, n, p, seed, method, max_cycles = job
    g = build_bench(BenchSpec(family, n, p, seed))
    started = time.perf_counter()
    _, report = generate(g, method, max_cycles=max_cycles)
    return family, n, method, report, time.perf_counter() - started


def cmd_bench(args, out):
    max_cycles = args.max_cycles or _env_limit("EQTRANS_CYCLE_LIMIT", None)
    if args.table2:
        jobs = [("mesh", n, 0.0, 0, m, max_cycles) for n in args.sizes for m in METHODS]
        if args.jobs > 1:
            with ProcessPoolExecutor(args.jobs) as pool:
                rows = list(pool.map(_bench_row, jobs))
        else:
            rows = [_bench_row(j) for j in jobs]
    else:
        if args.family is None:
            raise UsageError("bench needs a family (mesh, diamond, random) or --table2")
        spec = BenchSpec(args.family, args.n, args.p, args.seed)
        if args.output:
            _write(args.output, cnfio.write_rel(cnfio.RelMap.from_graph(build_bench(spec))))
        rows = [_bench_row((args.family, args.n, args.p, args.seed, args.method, max_cycles))]

    if args.csv:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["family", "n", "method", "edges", "cycles", "clauses", "seconds"])
        for family, n, method, r, secs in rows:
            w.writerow([family, n, method, r.edges, r.cycles, r.clauses, f"{secs:.3f}"])
        out.write(buf.getvalue())
    elif args.table2:
        by = {(n, m): r for _, n, m, r, _ in rows}
        print(f"{'graph':<6}" + "".join(f"{m:>26}" for m in METHODS), file=out)
        print(f"{'':<6}" + "".join(f"{'edges':>8}{'cycles':>9}{'clauses':>9}" for _ in METHODS), file=out)
        for n in args.sizes:
            cells = "".join(f"{by[n, m].edges:>8}{by[n, m].cycles:>9}{by[n, m].clauses:>9}" for m in METHODS)
            print(f"M_{n:<4}" + cells, file=out)
    else:
        _, _, _, r, secs = rows[0]
        if args.stats:
            print(r.stats_line(), file=out)
        else:
            print(f"{args.family} n={args.n} method={r.method}: {r.edges} edges, "
                  f"{r.cycles} cycles, {r.clauses} clauses ({secs:.3f}s)", file=out)
    return EXIT_OK


def cmd_obdd(args, out):
    node_limit = args.max_nodes or _env_limit("EQTRANS_NODE_LIMIT", None)
    if args.probe_growth:
        rows = probe_growth(args.sizes, node_limit=node_limit)
        if args.csv or args.output:
            text = write_probe_csv(rows)
            if args.output:
                _write(args.output, text)
            else:
                out.write(text)
        else:
            for n, name, nodes, secs in rows:
                print(f"n={n} ordering={name} nodes={nodes} seconds={secs:.3f}", file=out)
        return EXIT_OK

    if not args.cnf:
        raise UsageError("--reduced-check and --implicants need --cnf")
    f_sat, rel = _load_problem(args)
    store = BddStore(range(1, max(f_sat.num_vars, rel.max_var()) + 1), node_limit=node_limit)
    root = build_cnf_bdd(store, f_sat)
    if args.reduced_check:
        result = reduced_transitivity_check(store, root, rel, args.method)
        return _report_result(result, args, out)

    found = filtered_implicants(store, root, rel, args.limit)
    if found.kind == "found":
        cube = " ".join(str(v if b else -v) for v, b in sorted(found.cube.items()))
        print(f"status=found examined={found.count} cube={cube}", file=out)
        return EXIT_SAT
    if found.kind == "exhausted":
        print(f"status=exhausted examined={found.count}", file=out)
        return EXIT_UNSAT
    print(f"status=limit examined={found.count}", file=out)
    return EXIT_LIMIT


COMMANDS = {"gen": cmd_gen, "check": cmd_check, "solve": cmd_solve, "bench": cmd_bench, "obdd": cmd_obdd}


def main(argv=None, out=None):
    out = out or sys.stdout
    try:
        args = build_parser().parse_args(argv)
        return COMMANDS[args.command](args, out)
    except UsageError as exc:
        print(f"eqtrans: usage error: {exc}", file=sys.stderr)
        return EXIT_ERROR
    except LimitError as exc:
        print(f"eqtrans: limit: {exc}", file=sys.stderr)
        return EXIT_LIMIT
    except (EqTransError, OSError, ValueError) as exc:
        print(f"eqtrans: error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
