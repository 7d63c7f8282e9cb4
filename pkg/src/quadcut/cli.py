"""Command-line entry point: ``quadcut {solve,gen,oracle,bench}``.

Exit codes: 0 success, 2 usage or configuration problem (including a missing
graph file and the oracle size guard), 3 numeric failure during the ascent.
``bench`` exits 1 when every run failed.
"""

from __future__ import annotations

import argparse
import csv
import json
import os
import statistics
import sys
import warnings
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

from .errors import ConfigError, GraphParseError, GraphValidationError, NumericOverflowError, QuadcutError
from .evo import SearchConfig
from .graph import generate_er, read_graph, serialize
from .initialization import InitConfig
from .oracle import brute_force_maxcut
from .pga import AscentParams
from .presets import AUTO_SEARCH, manual_params
from .records import build_record, write_record
from .solvers import SolverConfig, solve_per_component

OUTPUT_ENV = "QUADCUT_OUTPUT_DIR"
EXIT_OK, EXIT_ALL_FAILED, EXIT_USAGE, EXIT_NUMERIC = 0, 1, 2, 3
CSV_FIELDS = ["algorithm", "init", "lift", "mean_cut", "mean_time_s", "n_runs",
              "min_cut", "max_cut", "std_cut"]


def _pair(text, kind):
    parts = [p for p in str(text).split(",") if p]
    if len(parts) != 2:
        raise argparse.ArgumentTypeError(f"expected 'lo,hi', got {text!r}")
    return kind(parts[0]), kind(parts[1])


def _output_dir(arg):
    return Path(arg or os.environ.get(OUTPUT_ENV) or "quadcut-out")


def _solver_flags(p):
    p.add_argument("--init", default="idi", help="idi or dui (bench: comma list)")
    p.add_argument("--batch-size", type=int, default=64)
    p.add_argument("--alpha", type=float)
    p.add_argument("--iterations", type=int)
    p.add_argument("--momentum", type=float, default=0.9)
    p.add_argument("--lifted-alpha", type=float, help="pdeco lifted phase step size")
    p.add_argument("--lifted-iterations", type=int)
    p.add_argument("--num-batches", type=int, default=3, help="batches per phase")
    p.add_argument("--deco-rounds", type=int, default=2,
                   help="pdeco alternations; 0 runs until the time budget")
    p.add_argument("--deco-carry", choices=["incumbent-column", "fresh"], default="incumbent-column")
    p.add_argument("--time-budget", type=float)
    p.add_argument("--beta", type=float, default=0.2)
    p.add_argument("--eta", type=float, default=0.8)
    p.add_argument("--init-scale", type=float, default=1e4)
    p.add_argument("--params", choices=["manual", "auto"], default="manual")
    p.add_argument("--preset", help="smallER, gset or largeER (a -manual suffix is accepted)")
    p.add_argument("--search-t", type=lambda s: _pair(s, int), help="iteration bounds lo,hi")
    p.add_argument("--search-e", type=lambda s: _pair(s, float), help="exponent bounds lo,hi")
    p.add_argument("--population", type=int)
    p.add_argument("--rounds", type=int)
    p.add_argument("--workers", type=int, default=1)


def build_config(args, algorithm: str, init: str, lift: int) -> SolverConfig:
    kw = {}
    if args.preset and args.params == "manual":
        kw.update(manual_params(args.preset, algorithm, args.momentum))
    base = kw.get("ascent", AscentParams(0.05, 500, args.momentum))
    kw["ascent"] = AscentParams(args.alpha or base.alpha, args.iterations or base.iterations,
                                args.momentum)
    lifted = kw.get("lifted_ascent")
    if args.lifted_alpha or args.lifted_iterations:
        lifted = lifted or kw["ascent"]
        lifted = AscentParams(args.lifted_alpha or lifted.alpha,
                              args.lifted_iterations or lifted.iterations, args.momentum)
    kw["lifted_ascent"] = lifted
    search = None
    if args.params == "auto":
        d = AUTO_SEARCH
        t = args.search_t or (d.t_lower, d.t_upper)
        e = args.search_e or (d.e_lower, d.e_upper)
        search = SearchConfig(t_lower=t[0], t_upper=t[1], e_lower=e[0], e_upper=e[1],
                              population_size=args.population or d.population_size,
                              rounds=args.rounds or d.rounds)
    return SolverConfig(
        algorithm=algorithm, batch_size=args.batch_size, lift_dim=lift,
        init=InitConfig(method=init, beta=args.beta, eta=args.eta, init_scale=args.init_scale),
        num_batches=args.num_batches, deco_rounds=args.deco_rounds or None,
        deco_carry=args.deco_carry, time_budget=args.time_budget, search=search, **kw,
    )


def run_one(path, algorithm, init, lift, seed, args, graph=None):
    """Solve one (graph, algorithm, init, lift, seed) cell; returns the record."""
    g = graph if graph is not None else read_graph(path)
    lift_dim = g.n if lift == "n" else int(lift)
    cfg = build_config(args, algorithm, init, lift_dim)
    sol = solve_per_component(g, cfg, seed, workers=args.workers)
    return build_record(g, cfg, sol, graph_id=str(path))


# -- subcommands ----------------------------------------------------------

def cmd_solve(args):
    g = read_graph(args.graph)
    rec = run_one(args.graph, args.algo, args.init, args.lift, args.seed, args, graph=g)
    out = Path(args.out) if args.out else (
        _output_dir(None) / f"{Path(args.graph).stem}_{args.algo}_s{args.seed}.json")
    out.parent.mkdir(parents=True, exist_ok=True)
    write_record(rec, out)
    print(f"cut={rec['cut_value']} time={rec['wall_time']:.3f}")
    return EXIT_OK


def cmd_gen(args):
    g = generate_er(args.n, args.p, args.seed)
    text = serialize(g)
    if args.out:
        Path(args.out).parent.mkdir(parents=True, exist_ok=True)
        Path(args.out).write_text(text)
        print(f"n={g.n} m={g.m} -> {args.out}")
    else:
        sys.stdout.write(text)
    return EXIT_OK


def cmd_oracle(args):
    g = read_graph(args.graph)
    r = brute_force_maxcut(g, workers=args.workers)
    print(f"optimum={r.optimum}")
    print("witness=" + "".join(map(str, r.witness.tolist())))
    print(f"count_optimal={r.count_optimal}")
    return EXIT_OK


def _bench_task(task):
    path, algo, init, lift, seed, args = task
    try:
        with warnings.catch_warnings():
            warnings.simplefilter("ignore")
            return run_one(path, algo, init, lift, seed, args)
    except (QuadcutError, OSError, ValueError) as exc:
        return {"graph": {"id": str(path)}, "algorithm": algo, "init": init, "lift": lift,
                "seed": seed, "error": f"{type(exc).__name__}: {exc}"}


def aggregate(records, timing=True):
    """Group successful records by (algorithm, init, lift) into summary rows."""
    groups = {}
    for r in records:
        if "error" in r:
            continue
        key = (r["algorithm"], r["config"]["init"]["method"], r["lift"])
        groups.setdefault(key, []).append(r)
    rows = []
    for (algo, init, lift), rs in groups.items():
        cuts = [r["cut_value"] for r in rs]
        rows.append({
            "algorithm": algo, "init": init, "lift": lift,
            "mean_cut": statistics.fmean(cuts),
            "mean_time_s": statistics.fmean(r["wall_time"] for r in rs) if timing else "",
            "n_runs": len(rs), "min_cut": min(cuts), "max_cut": max(cuts),
            "std_cut": statistics.pstdev(cuts),
        })
    return rows


def cmd_bench(args):
    root = Path(args.dir)
    if not root.is_dir():
        raise FileNotFoundError(f"no such directory: {root}")
    graphs = sorted(p for p in root.iterdir() if p.is_file() and not p.name.startswith("."))
    if not graphs:
        raise ConfigError(f"no graph files in {root}")
    algos = [a for a in args.algos.split(",") if a]
    inits = [i for i in args.init.split(",") if i]
    seeds = [int(s) for s in args.seeds.split(",") if s]
    lifts = [s.strip() for s in args.sweep_lift.split(",")] if args.sweep_lift else [str(args.lift)]
    for a in algos:
        if a not in ("pquco", "pluco", "pdeco"):
            raise ConfigError(f"unknown algorithm {a!r}")
    tasks = []
    for path in graphs:
        for algo in algos:
            # lifting only matters for the lifted solvers
            for lift in (["1"] if algo == "pquco" else lifts):
                for init in inits:
                    for seed in seeds:
                        tasks.append((path, algo, init, lift, seed, args))
    if args.jobs > 1:
        with ProcessPoolExecutor(args.jobs) as pool:
            records = list(pool.map(_bench_task, tasks))
    else:
        records = [_bench_task(t) for t in tasks]
    for rec, task in zip(records, tasks):
        rec["lift"] = task[3]
    out = _output_dir(args.out)
    out.mkdir(parents=True, exist_ok=True)
    with open(out / "records.jsonl", "w", encoding="utf-8") as fh:
        for rec in records:
            fh.write(json.dumps(rec, sort_keys=True) + "\n")
    rows = aggregate(records, timing=args.jobs <= 1)
    with open(out / "summary.csv", "w", newline="", encoding="utf-8") as fh:
        w = csv.DictWriter(fh, fieldnames=CSV_FIELDS)
        w.writeheader()
        w.writerows(rows)
    failed = sum("error" in r for r in records)
    for row in rows:
        t = row["mean_time_s"]
        print(f"{row['algorithm']:6s} init={row['init']} lift={row['lift']} "
              f"mean_cut={row['mean_cut']:.2f} runs={row['n_runs']}"
              + (f" mean_time={t:.3f}s" if t != "" else ""))
    print(f"{len(records) - failed}/{len(records)} runs ok -> {out}")
    for r in records:
        if "error" in r:
            print(f"failed: {r['graph']['id']} {r['algorithm']} seed={r['seed']}: {r['error']}",
                  file=sys.stderr)
    return EXIT_ALL_FAILED if failed == len(records) else EXIT_OK


def make_parser():
    parser = argparse.ArgumentParser(prog="quadcut", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve", help="solve one graph file")
    p.add_argument("--graph", required=True)
    p.add_argument("--algo", choices=["pquco", "pluco", "pdeco"], default="pdeco")
    p.add_argument("--lift", type=int, default=2)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", help="JSON record path (default: $%s or ./quadcut-out)" % OUTPUT_ENV)
    _solver_flags(p)
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("gen", help="write an Erdos-Renyi graph in edge-list format")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--p", type=float, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("oracle", help="exact maximum cut by enumeration (n <= 26)")
    p.add_argument("--graph", required=True)
    p.add_argument("--workers", type=int, default=1)
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("bench", help="run algorithms over a directory of graphs")
    p.add_argument("dir")
    p.add_argument("--algos", default="pquco,pluco,pdeco")
    p.add_argument("--seeds", default="0")
    p.add_argument("--lift", type=int, default=2)
    p.add_argument("--sweep-lift", help="comma list of lifting dimensions; 'n' means l = n")
    p.add_argument("--jobs", type=int, default=1, help="parallel runs; disables timing columns")
    p.add_argument("--out", help="output directory (default: $%s or ./quadcut-out)" % OUTPUT_ENV)
    _solver_flags(p)
    p.set_defaults(func=cmd_bench)
    return parser


def main(argv=None):
    args = make_parser().parse_args(argv)
    try:
        return args.func(args)
    except NumericOverflowError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except (QuadcutError, OSError, GraphParseError, GraphValidationError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
