"""Command-line front end.

Subcommands: gen | analyze | optimize | alloc | schedule | simulate |
experiment.  Results print as JSON to stdout; experiments write CSV.
The environment variable ``DAG_RTA_SEED`` supplies the default seed.
"""
from __future__ import annotations

import argparse
import csv
import json
import os
import sys

import numpy as np

from . import serialize
from .bounds import analyze, graham_bound
from .experiments import (
    ExperimentConfig,
    run_experiment,
    write_csv,
    write_metadata,
)
from .federated import (
    INFEASIBLE,
    allocate_detail,
    classify,
    edge_cores,
    path_cores,
    schedule_task_set,
)
from .graph import longest_path, volume
from .optimizer import optimize
from .sim import BoundViolationError, simulate, validate_bound
from .taskgen import GenConfig, gen_dag, gen_task, gen_task_set


def _default_seed() -> int:
    return int(os.environ.get("DAG_RTA_SEED", "0"))


def _print(doc: dict) -> None:
    print(json.dumps(doc, indent=2, sort_keys=True))


def _cores_value(c: float) -> int | None:
    return None if c == INFEASIBLE else int(c)


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="dag-rta",
        description="Response-time bounds, edge addition and federated "
                    "scheduling for parallel DAG tasks",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen", help="generate a random task or task set")
    p.add_argument("--config", help="JSON file with generator ranges")
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--out", required=True)
    p.add_argument("--taskset", action="store_true")
    p.add_argument("--nu", type=float, default=0.5,
                   help="target normalized utilization (task sets)")
    p.add_argument("--cores", type=int, default=32,
                   help="platform size the utilization is normalized to")

    p = sub.add_parser("analyze", help="response-time bounds for one task")
    p.add_argument("--task", required=True)
    p.add_argument("--cores", type=int, required=True)
    p.add_argument("--method", choices=("graham", "path"), default="path")

    p = sub.add_parser("optimize", help="add edges to shrink the bound")
    p.add_argument("--task", required=True)
    p.add_argument("--cores", type=int, required=True)
    p.add_argument("--limit", type=float, default=None,
                   help="longest-path cap; defaults to len(G)")
    p.add_argument("--out", help="also write the optimized task JSON here")

    p = sub.add_parser("alloc", help="minimal cores for one task under a deadline")
    p.add_argument("--task", required=True)
    p.add_argument("--deadline", type=float, default=None,
                   help="defaults to the deadline in the task file")

    p = sub.add_parser("schedule", help="schedulability of a task set")
    p.add_argument("--taskset", required=True)
    p.add_argument("--cores", type=int, required=True)
    p.add_argument("--approach", choices=("our", "path", "fed"), default="our")

    p = sub.add_parser("simulate", help="work-conserving simulation of one task")
    p.add_argument("--task", required=True)
    p.add_argument("--cores", type=int, required=True)
    p.add_argument("--trials", type=int, default=100)
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--bound", type=float, default=None,
                   help="check the observed makespans against this bound")
    p.add_argument("--gantt-out", help="write the worst trace as a CSV Gantt table")
    p.add_argument("--trace-out", help="write the worst trace as JSON")

    p = sub.add_parser("experiment", help="normalized-bound / acceptance-ratio sweeps")
    p.add_argument("--kind", choices=("one-task", "task-set"), required=True)
    p.add_argument("--sweep", required=True,
                   help="one-task: m|pf|nv; task-set: m|nu|alpha|pf")
    p.add_argument("--values", type=float, nargs="+", default=None)
    p.add_argument("--samples", type=int, default=None)
    p.add_argument("--paper-scale", action="store_true",
                   help="500 tasks / 1000 task sets per point")
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--cores", type=int, default=None,
                   help="fixed m (one-task) or m_total (task-set) when not swept")
    p.add_argument("--workers", type=int, default=None)
    p.add_argument("--config", help="JSON file with generator ranges")
    p.add_argument("--out", required=True)
    return parser


def _load_gencfg(path: str | None) -> GenConfig:
    if path is None:
        return GenConfig()
    return GenConfig.from_dict(serialize.load(path))


def _cmd_gen(args) -> int:
    cfg = _load_gencfg(args.config)
    seed = args.seed if args.seed is not None else _default_seed()
    if args.taskset:
        ts = gen_task_set(cfg, args.nu, args.cores, seed=seed)
        serialize.save(serialize.taskset_to_dict(ts), args.out)
        _print({"tasks": len(ts), "utilization": ts.utilization, "out": args.out})
    else:
        task = gen_task(cfg, seed=seed)
        serialize.save(serialize.task_to_dict(task), args.out)
        _print({
            "vertices": task.graph.n,
            "volume": volume(task.graph),
            "longest_path_length": longest_path(task.graph).length,
            "deadline": task.deadline,
            "out": args.out,
        })
    return 0


def _cmd_analyze(args) -> int:
    g = serialize.load_dag(args.task)
    if args.method == "graham":
        _print({
            "cores": args.cores,
            "graham_bound": graham_bound(g, args.cores),
            "volume": volume(g),
            "longest_path_length": longest_path(g).length,
        })
    else:
        _print(analyze(g, args.cores).to_dict())
    return 0


def _cmd_optimize(args) -> int:
    g = serialize.load_dag(args.task)
    limit = args.limit if args.limit is not None else longest_path(g).length
    result = optimize(g, limit)
    task_doc = serialize.dag_to_dict(result.graph, added_edges=result.added_edges)
    report = analyze(result.graph, args.cores).to_dict()
    report["emitted_path_lengths"] = [p.length for p in result.path_list]
    report["cores_meeting_limit"] = len(result.path_list)
    report["limit"] = result.limit
    if args.out:
        serialize.save(task_doc, args.out)
    _print({"task": task_doc, "report": report})
    return 0


def _cmd_alloc(args) -> int:
    doc = serialize.load(args.task)
    g = serialize.dag_from_dict(doc)
    deadline = args.deadline if args.deadline is not None else doc.get("deadline")
    if deadline is None:
        print("error: no deadline given and none in the task file", file=sys.stderr)
        return 2
    cores, winner = allocate_detail(g, deadline)
    pc = path_cores(g, deadline)
    ec = edge_cores(g, deadline)
    _print({
        "deadline": deadline,
        "volume": volume(g),
        "longest_path_length": longest_path(g).length,
        "path_cores": _cores_value(pc),
        "edge_cores": _cores_value(ec),
        "allocated": _cores_value(cores),
        "winner": winner,
        "feasible": cores != INFEASIBLE,
    })
    return 0


def _cmd_schedule(args) -> int:
    ts = serialize.load_taskset(args.taskset)
    result = schedule_task_set(ts, args.cores, approach=args.approach)
    doc = result.to_dict()
    doc["classification"] = [classify(t) for t in ts]
    _print(doc)
    return 0


def _cmd_simulate(args) -> int:
    g = serialize.load_dag(args.task)
    seed = args.seed if args.seed is not None else _default_seed()
    rng = np.random.default_rng(seed)
    worst = None
    makespans = []
    for _ in range(args.trials):
        trace = simulate(g, args.cores, rng.permutation(g.n).tolist())
        makespans.append(trace.makespan)
        if worst is None or trace.makespan > worst.makespan:
            worst = trace
    if args.gantt_out:
        with open(args.gantt_out, "w", newline="", encoding="utf-8") as fh:
            writer = csv.writer(fh)
            writer.writerow(("vertex", "core", "start", "finish"))
            writer.writerows(worst.rows())
    if args.trace_out:
        serialize.save(worst.to_dict(), args.trace_out)
    report = {
        "cores": args.cores,
        "trials": args.trials,
        "max_makespan": max(makespans),
        "mean_makespan": sum(makespans) / len(makespans),
    }
    if args.bound is not None:
        # raises BoundViolationError on a violation, which exits nonzero
        validate_bound(g, args.cores, args.bound, trials=args.trials, seed=seed)
        report["bound"] = args.bound
        report["bound_respected"] = True
    _print(report)
    return 0


def _cmd_experiment(args) -> int:
    kwargs = {
        "gen": _load_gencfg(args.config),
        "seed": args.seed if args.seed is not None else _default_seed(),
    }
    if args.values is not None:
        kwargs["values"] = tuple(args.values)
    if args.samples is not None:
        kwargs["samples"] = args.samples
    elif args.paper_scale:
        kwargs["samples"] = 500 if args.kind == "one-task" else 1000
    if args.cores is not None:
        kwargs["cores"] = args.cores
    if args.workers is not None:
        kwargs["workers"] = args.workers
    cfg = ExperimentConfig.with_defaults(args.kind, args.sweep, **kwargs)
    header, rows = run_experiment(cfg)
    write_csv(header, rows, args.out)
    write_metadata(cfg, args.out)
    _print({"out": args.out, "points": len(rows), "samples_per_point": cfg.samples})
    return 0


_COMMANDS = {
    "gen": _cmd_gen,
    "analyze": _cmd_analyze,
    "optimize": _cmd_optimize,
    "alloc": _cmd_alloc,
    "schedule": _cmd_schedule,
    "simulate": _cmd_simulate,
    "experiment": _cmd_experiment,
}


def cli_dispatch(argv: list[str]) -> int:
    """Parse ``argv`` and run the subcommand; returns the exit status."""
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return _COMMANDS[args.command](args)
    except BoundViolationError as exc:
        print(f"soundness violation: {exc}", file=sys.stderr)
        return 3
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


def main() -> None:
    sys.exit(cli_dispatch(sys.argv[1:]))


if __name__ == "__main__":
    main()
