"""Command-line driver: solve, bench, verify, kernelize, generate.

Exit codes: 0 solved (a yes, a proven no or a probable no), 1 verification
found violations, 2 input error, 3 engine does not fit the instance.
"""

from __future__ import annotations

import argparse
import csv
import io as _io
import json
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

from .connected_sets import solve_secluded_steiner
from .errors import EngineMismatch, InstanceError
from .exact import solve_exact
from .generators import (gen_from_set_cover, gen_or_composition, gen_planted, gen_random,
                         write_with_sidecar)
from .graph import SecludedInstance, verify
from .io import read_instance, solution_from_dict, solution_to_dict, write_instance
from .kernel import kernelize, size_bound
from .oracle import brute_force_solve
from .paths import solve_path_above_guarantee, solve_secluded_path
from .separation import SeparationConfig, solve_above_guarantee
from .steiner import dreyfus_wagner
from .treewidth import read_td, solve_treewidth

ENGINES = ("auto", "oracle", "branch", "enum", "rs", "twdp", "exact")
# engines whose answer is the exact optimum (exposure, then cost)
OPTIMIZING = ("oracle", "branch", "enum", "exact")
AUTO_K_SMALL = 20
AUTO_R_SMALL = 3


def pick_engine(inst: SecludedInstance, r=None, have_td=False) -> str:
    k = inst.exposure_budget
    # a budget above n constrains nothing
    if k is not None and min(k, inst.graph.n) <= AUTO_K_SMALL:
        return "branch" if inst.p == 2 else "enum"
    if k is not None and inst.p >= 2:
        if r is None:
            st = dreyfus_wagner(inst.graph, inst.terminals)
            r = None if st is None else k - st.ell
        if r is not None and r <= AUTO_R_SMALL:
            return "rs"
    if have_td and inst.graph.is_unit_weight():
        return "twdp"
    return "exact"


def run_engine(inst, engine, r=None, td=None, trials=4096, repeats=20, seed=0) -> dict:
    """Solve and return the JSON report (without timing)."""
    if engine == "auto":
        engine = pick_engine(inst, r, td is not None)
    if engine == "oracle":
        return solution_to_dict(brute_force_solve(inst), engine, seed)
    if engine == "branch":
        sol = solve_path_above_guarantee(inst, r) if r is not None else solve_secluded_path(inst)
        return solution_to_dict(sol, engine, seed)
    if engine == "enum":
        if r is not None:
            st = dreyfus_wagner(inst.graph, inst.terminals)
            if st is None:
                return solution_to_dict(None, engine, seed)
            inst = inst.with_budget(st.ell + r, inst.cost_budget)
        return solution_to_dict(solve_secluded_steiner(inst), engine, seed)
    if engine == "exact":
        return solution_to_dict(solve_exact(inst), engine, seed)
    if engine == "rs":
        res = solve_above_guarantee(inst, r, SeparationConfig(trials=trials, rng_seed=seed))
        out = solution_to_dict(res.solution, engine, seed)
        out["stats"].update({"ell": res.ell, "r": res.r, "N": res.N, "trials_run": res.trials_run,
                             "failure_bound": res.failure_bound, "certain": res.certain})
        return out
    if engine == "twdp":
        res = solve_treewidth(inst, td, repeats=repeats, seed=seed)
        out = solution_to_dict(None, engine, seed, feasible=res.feasible)
        if res.feasible:
            # unit weights: cost equals exposure; no certificate is produced
            out["exposure"] = out["cost"] = res.exposure
        out["stats"] = dict(res.stats, repeats=res.repeats, hits=res.hits)
        return out
    raise InstanceError(f"unknown engine {engine!r}")


def _print_report(rep: dict) -> None:
    if not rep["feasible"]:
        print(f"engine {rep['engine']}: no solution")
    else:
        print(f"engine {rep['engine']}: exposure {rep['exposure']} cost {rep['cost']}")
        if rep["tree_vertices"] is not None:
            print("tree " + " ".join(map(str, rep["tree_vertices"])))
    for key, val in sorted(rep["stats"].items()):
        print(f"  {key}: {val}")


def cmd_solve(args) -> int:
    inst = read_instance(args.input)
    td = read_td(args.td) if args.td else None
    t0 = time.perf_counter()
    rep = run_engine(inst, args.engine, args.r, td, args.trials, args.repeats, args.seed)
    rep["stats"]["wall_time"] = round(time.perf_counter() - t0, 6)
    if args.json:
        print(json.dumps(rep, sort_keys=True))
    else:
        _print_report(rep)
    return 0


def _bench_row(job):
    path, engine, seed, trials, repeats, timing = job
    inst = read_instance(path)
    t0 = time.perf_counter()
    try:
        rep = run_engine(inst, engine, None, None, trials, repeats, seed)
        err = ""
    except (EngineMismatch, InstanceError) as exc:
        rep, err = None, str(exc)
    row = {"instance": Path(path).name, "engine": engine}
    if rep is None:
        row.update(feasible="", exposure="", cost="", stats="", error=err)
    else:
        row.update(feasible=rep["feasible"], exposure=rep["exposure"], cost=rep["cost"],
                   stats=json.dumps(rep["stats"], sort_keys=True), error="")
    if timing:
        row["time"] = round(time.perf_counter() - t0, 6)
    return row


def _disagrees(row, ref) -> bool:
    if row["error"] or ref is None or ref["error"]:
        return False
    if row["engine"] in OPTIMIZING:
        return (row["feasible"], row["exposure"], row["cost"]) != (ref["feasible"], ref["exposure"], ref["cost"])
    if row["engine"] == "twdp":
        return (row["feasible"], row["exposure"]) != (ref["feasible"], ref["exposure"])
    # rs decides at the budget and never reports a false yes
    return bool(row["feasible"]) and not ref["feasible"]


def bench(corpus, engines, pattern="*.sec", seed=0, trials=4096, repeats=20, workers=1,
          timing=True) -> list:
    files = sorted(Path(corpus).glob(pattern))
    if not Path(corpus).is_dir():
        raise InstanceError(f"corpus directory {corpus} not found")
    jobs = [(str(f), e, seed, trials, repeats, timing) for f in files for e in engines]
    oracle_jobs = [(str(f), "oracle", seed, trials, repeats, timing) for f in files]
    if workers > 1 and jobs:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            rows = list(pool.map(_bench_row, jobs))
            refs = rows if "oracle" in engines else list(pool.map(_bench_row, oracle_jobs))
    else:
        rows = [_bench_row(j) for j in jobs]
        refs = rows if "oracle" in engines else [_bench_row(j) for j in oracle_jobs]
    ref_of = {r["instance"]: r for r in refs if r["engine"] == "oracle"}
    for row in rows:
        row["disagree"] = _disagrees(row, ref_of.get(row["instance"]))
    return rows


def cmd_bench(args) -> int:
    engines = [e.strip() for e in args.engines.split(",") if e.strip()]
    for e in engines:
        if e not in ENGINES:
            raise InstanceError(f"unknown engine {e!r}")
    rows = bench(args.corpus, engines, args.pattern, args.seed, args.trials, args.repeats,
                 args.workers, not args.no_timing)
    if args.format == "json":
        text = json.dumps(rows, indent=1, sort_keys=True) + "\n"
    else:
        cols = ["instance", "engine", "feasible", "exposure", "cost", "disagree", "error", "stats"]
        if not args.no_timing:
            cols.insert(5, "time")
        buf = _io.StringIO()
        w = csv.DictWriter(buf, fieldnames=cols, lineterminator="\n")
        w.writeheader()
        w.writerows(rows)
        text = buf.getvalue()
    if args.output:
        Path(args.output).write_text(text)
    else:
        sys.stdout.write(text)
    bad = sum(r["disagree"] for r in rows)
    if bad:
        print(f"{bad} rows disagree with the oracle", file=sys.stderr)
    return 0


def cmd_verify(args) -> int:
    inst = read_instance(args.input)
    data = json.loads(Path(args.solution).read_text())
    if not data.get("feasible"):
        print("solution reports infeasible; nothing to check")
        return 0
    sol = solution_from_dict(data)
    problems = verify(sol, inst, check_budgets=not args.no_budget)
    if not problems:
        print("ok")
        return 0
    for p in problems:
        print(p)
    return 1


def cmd_kernelize(args) -> int:
    inst = read_instance(args.input)
    out = kernelize(inst, args.w)
    report = {"verdict": out.verdict, "reason": out.reason, "w": out.w,
              "n_in": inst.graph.n, "k": inst.exposure_budget}
    if out.instance is not None:
        report.update(n_out=out.instance.graph.n, padding=out.padding,
                      bound=size_bound(out.w, inst.exposure_budget),
                      vertex_map=[None if v is None else v + 1 for v in out.vertex_map])
        if args.output:
            Path(args.output).write_text(write_instance(out.instance))
    if args.json:
        print(json.dumps(report, sort_keys=True))
    else:
        for key, val in report.items():
            if key != "vertex_map":
                print(f"{key}: {val}")
    return 0


def _parse_sets(text):
    return [[int(x) - 1 for x in part.split(",") if x.strip()] for part in text.split(";")]


def cmd_generate(args) -> int:
    fam = args.family
    meta = {"seed": args.seed}
    if fam == "random":
        inst = gen_random(args.n, args.edge_prob, args.p, args.seed, args.max_weight, args.connected)
        if args.k is not None:
            inst = inst.with_budget(args.k, None)
        meta["family"] = "random"
    elif fam == "planted":
        inst, _, meta = gen_planted(args.n, args.tree_size, args.r, args.seed)
    elif fam == "set-cover":
        inst, meta = gen_from_set_cover(args.universe, _parse_sets(args.sets), args.cover_k)
    else:
        parts = [read_instance(f) for f in args.inputs]
        inst = gen_or_composition(parts)
        meta = {"family": "or-composition", "inputs": [str(f) for f in args.inputs]}
    if args.output:
        write_with_sidecar(inst, args.output, meta)
    else:
        sys.stdout.write(write_instance(inst))
    return 0


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="secluded", description="Secluded path and Steiner tree solvers")
    sub = ap.add_subparsers(dest="command", required=True)

    s = sub.add_parser("solve", help="solve one instance")
    s.add_argument("--engine", choices=ENGINES, default="auto")
    s.add_argument("--input", required=True)
    s.add_argument("--td", help="tree decomposition file (PACE .td)")
    s.add_argument("--r", type=int, help="budget above the Steiner size (default: k - ell)")
    s.add_argument("--trials", type=int, default=4096)
    s.add_argument("--repeats", type=int, default=20)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--json", action="store_true")
    s.set_defaults(func=cmd_solve)

    b = sub.add_parser("bench", help="run engines over a corpus")
    b.add_argument("--corpus", required=True)
    b.add_argument("--engines", default="oracle,exact")
    b.add_argument("--pattern", default="*.sec")
    b.add_argument("--format", choices=("csv", "json"), default="csv")
    b.add_argument("--output")
    b.add_argument("--workers", type=int, default=1)
    b.add_argument("--trials", type=int, default=4096)
    b.add_argument("--repeats", type=int, default=20)
    b.add_argument("--seed", type=int, default=0)
    b.add_argument("--no-timing", action="store_true", help="omit the time column")
    b.set_defaults(func=cmd_bench)

    v = sub.add_parser("verify", help="check a solution JSON against an instance")
    v.add_argument("--input", required=True)
    v.add_argument("--solution", required=True)
    v.add_argument("--no-budget", action="store_true", help="skip the k and C checks")
    v.set_defaults(func=cmd_verify)

    k = sub.add_parser("kernelize", help="vertex-cover kernel")
    k.add_argument("--input", required=True)
    k.add_argument("--w", type=int)
    k.add_argument("--output")
    k.add_argument("--json", action="store_true")
    k.set_defaults(func=cmd_kernelize)

    g = sub.add_parser("generate", help="write a generated instance")
    g.add_argument("family", choices=("random", "planted", "set-cover", "or"))
    g.add_argument("--n", type=int, default=10)
    g.add_argument("--p", type=int, default=2)
    g.add_argument("--k", type=int)
    g.add_argument("--edge-prob", type=float, default=0.3)
    g.add_argument("--max-weight", type=int, default=1)
    g.add_argument("--connected", action="store_true")
    g.add_argument("--tree-size", type=int, default=4)
    g.add_argument("--r", type=int, default=2)
    g.add_argument("--universe", type=int, default=3)
    g.add_argument("--sets", default="1;2;3;1,2,3", help="';'-separated sets of 1-indexed elements")
    g.add_argument("--cover-k", type=int, default=1)
    g.add_argument("--inputs", nargs="*", default=[])
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--output", help="instance path; metadata goes to <path>.json")
    g.set_defaults(func=cmd_generate)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except EngineMismatch as exc:
        print(f"engine mismatch: {exc}", file=sys.stderr)
        return 3
    except (InstanceError, OSError, json.JSONDecodeError) as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
