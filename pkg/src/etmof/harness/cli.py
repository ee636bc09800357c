"""Command-line front end: ``etmof <subcommand> ...``."""

from __future__ import annotations

import argparse
import csv
import os
import sys
from pathlib import Path

import numpy as np

from ..optimizer import load_run
from ..suite import NUM_INSTANCES, format_catalog, instantiate, reference_front
from .campaign import (
    MSS_COLUMNS,
    METRIC_COLUMNS,
    CampaignExists,
    compute_metrics,
    igd_series,
    load_campaign,
    migd_series,
    rank_table,
    run_campaign,
    write_csv,
)

EXIT_USAGE = 2
EXIT_EXISTS = 3
OUTPUT_ROOT_ENV = "ETMOF_OUTPUT_ROOT"


class CliError(Exception):
    def __init__(self, message: str, code: int = EXIT_USAGE):
        super().__init__(message)
        self.code = code


def _output_root(arg: str | None) -> Path:
    return Path(arg or os.environ.get(OUTPUT_ROOT_ENV, "."))


def _task(instance: int, task: int):
    if not 1 <= instance <= NUM_INSTANCES:
        raise CliError(f"no instance ETMOF{instance}")
    problem = instantiate(instance)
    if not 1 <= task <= problem.num_tasks:
        raise CliError(f"ETMOF{instance} has tasks 1..{problem.num_tasks}")
    return problem, problem.task(task)


def _write_front_file(front, path: Path, header: dict):
    front.save(path, header)


def cmd_catalog(args) -> int:
    print(format_catalog(per_task=args.tasks, include_grouping=args.grouping))
    return 0


def cmd_eval(args) -> int:
    problem, task = _task(args.instance, args.task)
    try:
        x = np.loadtxt(args.x_file, ndmin=1, dtype=float)
    except (OSError, ValueError) as exc:
        raise CliError(f"cannot read x-file: {exc}")
    if x.ndim != 1 or x.size != task.n or not np.isfinite(x).all():
        raise CliError(f"x-file must hold {task.n} finite values, got {x.size}")
    if task.is_dynamic and args.t is None:
        raise CliError(f"{task.name} is dynamic; pass --t")
    if not task.is_dynamic and args.t is not None:
        raise CliError(f"{task.name} is static; drop --t")
    try:
        f = task.evaluate(x, args.t)
    except ValueError as exc:
        raise CliError(str(exc))
    print(" ".join(f"{v:.12g}" for v in f))
    return 0


def cmd_reference_front(args) -> int:
    _, task = _task(args.instance, args.task)
    out = _output_root(args.output_root) / args.out_dir
    out.mkdir(parents=True, exist_ok=True)
    stem = f"ETMOF{args.instance}_T{args.task}"
    if not task.is_dynamic:
        if args.t is not None:
            raise CliError(f"{task.name} is static; drop --t")
        path = out / f"{stem}.front"
        _write_front_file(reference_front(task, count=args.count), path, {"task": task.name})
        print(path)
        return 0
    changes = [round(args.t * task.dynamics.n_t)] if args.t is not None else range(args.windows)
    for c in changes:
        t = c / task.dynamics.n_t
        path = out / f"{stem}_t{c}.front"
        _write_front_file(reference_front(task, t, args.count), path, {"task": task.name, "t": repr(t)})
        print(path)
    return 0


def cmd_run_campaign(args) -> int:
    try:
        campaign = load_campaign(args.config, seed=args.seed, runs=args.runs, budget=args.budget,
                                 output_root=_output_root(args.output_root))
    except (FileNotFoundError, ValueError, KeyError) as exc:
        raise CliError(f"bad campaign config: {exc}")
    try:
        failed = run_campaign(campaign, force=args.force, log=lambda s: print(s, file=sys.stderr))
    except CampaignExists as exc:
        raise CliError(str(exc), EXIT_EXISTS)
    print(campaign.output_dir)
    return 1 if failed else 0


def cmd_metrics(args) -> int:
    root = Path(args.campaign_dir)
    if not (root / "runs").is_dir():
        raise CliError(f"{root} has no runs/ directory")
    rows = compute_metrics(root)
    out = Path(args.out) if args.out else root / "metrics.csv"
    write_csv(out, METRIC_COLUMNS, rows)
    print(out)
    return 0


def cmd_rank(args) -> int:
    path = Path(args.metrics_csv)
    if not path.exists():
        raise CliError(f"missing {path}")
    with path.open() as fh:
        rows = [[r[c] for c in METRIC_COLUMNS] for r in csv.DictReader(fh)]
    table = rank_table(rows)
    out = Path(args.out) if args.out else path.with_name("mss.csv")
    write_csv(out, MSS_COLUMNS, table)
    summary: dict[tuple[int, str], list[float]] = {}
    for optimizer, instance, _run, score in table:
        summary.setdefault((int(instance), optimizer), []).append(float(score))
    for (instance, optimizer), vals in sorted(summary.items()):
        print(f"ETMOF{instance}\t{optimizer}\t{np.mean(vals):+.6f}\t{np.std(vals):.6f}")
    return 0


def cmd_plotdata(args) -> int:
    run_dir = Path(args.run_dir)
    if not (run_dir / "meta.json").exists():
        raise CliError(f"{run_dir} is not a run directory")
    rec = load_run(run_dir)
    out = Path(args.out_dir) if args.out_dir else run_dir / "plot"
    out.mkdir(parents=True, exist_ok=True)
    problem = instantiate(rec.instance_id)
    for k, task in enumerate(problem.tasks, start=1):
        for pct, fronts in sorted(rec.checkpoints.items()):
            np.savetxt(out / f"scatter_{pct:03d}_T{k}.dat", fronts[k - 1], fmt="%.17g")
        if task.is_dynamic:
            series = migd_series(rec, k)
            np.savetxt(out / f"migd_series_T{k}.dat", np.array(series, ndmin=2), fmt="%.17g",
                       header="change_index t igd")
        else:
            series = igd_series(rec, k)
            np.savetxt(out / f"igd_series_T{k}.dat", np.array(series, ndmin=2), fmt="%.17g",
                       header="evaluations igd")
    print(out)
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="etmof", description="Multi-task multiobjective benchmark suite tools")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("catalog", help="print the instance table")
    s.add_argument("--tasks", action="store_true", help="one line per task instead of per instance")
    s.add_argument("--grouping", action="store_true", help="append each task's grouping plan (per task)")
    s.set_defaults(func=cmd_catalog)

    s = sub.add_parser("eval", help="evaluate one solution")
    s.add_argument("--instance", type=int, required=True)
    s.add_argument("--task", type=int, required=True)
    s.add_argument("--x-file", required=True)
    s.add_argument("--t", type=float, default=None, help="time instant, dynamic tasks only")
    s.set_defaults(func=cmd_eval)

    s = sub.add_parser("reference-front", help="write reference front files")
    s.add_argument("--instance", type=int, required=True)
    s.add_argument("--task", type=int, required=True)
    s.add_argument("--t", type=float, default=None)
    s.add_argument("--count", type=int, default=None)
    s.add_argument("--windows", type=int, default=31, help="time windows written for dynamic tasks")
    s.add_argument("--out-dir", default="fronts")
    s.add_argument("--output-root", default=None)
    s.set_defaults(func=cmd_reference_front)

    s = sub.add_parser("run-campaign", help="run a campaign described by an INI file")
    s.add_argument("config")
    s.add_argument("--seed", type=int, default=None, help="master seed override")
    s.add_argument("--runs", type=int, default=None)
    s.add_argument("--budget", type=int, default=None, help="static evaluation budget per task")
    s.add_argument("--output-root", default=None)
    s.add_argument("--force", action="store_true", help="overwrite existing run directories")
    s.set_defaults(func=cmd_run_campaign)

    s = sub.add_parser("metrics", help="recompute metrics.csv from a campaign tree")
    s.add_argument("campaign_dir")
    s.add_argument("--out", default=None)
    s.set_defaults(func=cmd_metrics)

    s = sub.add_parser("rank", help="MSS ranking from a metrics CSV")
    s.add_argument("metrics_csv")
    s.add_argument("--out", default=None)
    s.set_defaults(func=cmd_rank)

    s = sub.add_parser("plotdata", help="emit scatter and IGD series files for one run")
    s.add_argument("run_dir")
    s.add_argument("--out-dir", default=None)
    s.set_defaults(func=cmd_plotdata)
    return p


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except CliError as exc:
        print(f"etmof: {exc}", file=sys.stderr)
        return exc.code


if __name__ == "__main__":
    sys.exit(main())
