"""Experiment campaigns: config parsing, seeded run cells, metric and ranking tables."""

from __future__ import annotations

import configparser
import csv
import hashlib
import io
import shutil
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, replace
from pathlib import Path

import numpy as np

from ..metrics import igd, migd, mss
from ..optimizer import Mode, RunRecord, SolverConfig, load_run, run, save_run
from ..suite import instantiate, reference_front

__all__ = [
    "OptimizerSpec",
    "Campaign",
    "CampaignExists",
    "load_campaign",
    "derive_seed",
    "run_campaign",
    "compute_metrics",
    "rank_table",
    "write_csv",
    "METRIC_COLUMNS",
    "MSS_COLUMNS",
]

METRIC_COLUMNS = ["optimizer", "instance", "task", "run", "seed", "metric_name", "value"]
MSS_COLUMNS = ["optimizer", "instance", "run", "mss"]
_SOLVER_KEYS = {"pop_size": int, "rmp": float, "eta_c": float, "eta_m": float, "budget": int,
                "dynamic_pop_size": int, "dynamic_windows": int, "archive_factor": int}


class CampaignExists(RuntimeError):
    """Raised when a campaign would overwrite existing run directories."""


@dataclass(frozen=True)
class OptimizerSpec:
    name: str
    mode: Mode
    config: SolverConfig


@dataclass(frozen=True)
class Campaign:
    instances: tuple[int, ...]
    optimizers: tuple[OptimizerSpec, ...]
    runs: int = 21
    master_seed: int = 0
    output_dir: Path = Path("campaign")
    workers: int = 1
    extra: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.runs < 1:
            raise ValueError("runs must be at least 1")
        if not self.optimizers:
            raise ValueError("campaign needs at least one optimizer")


def derive_seed(master_seed: int, instance: int, optimizer: str, run_index: int) -> int:
    """Per-cell seed, a stable 63-bit hash of the cell coordinates."""
    key = f"{master_seed}|{instance}|{optimizer}|{run_index}".encode()
    return int.from_bytes(hashlib.blake2b(key, digest_size=8).digest(), "big") >> 1


def _parse_instances(text: str) -> tuple[int, ...]:
    out = []
    for part in text.replace(" ", "").split(","):
        if not part:
            continue
        if "-" in part:
            a, b = part.split("-")
            out.extend(range(int(a), int(b) + 1))
        else:
            out.append(int(part))
    return tuple(out)


def load_campaign(path, *, seed: int | None = None, runs: int | None = None, budget: int | None = None,
                  output_root: Path | None = None) -> Campaign:
    """Read an INI campaign file; keyword arguments override its values."""
    cp = configparser.ConfigParser()
    if not cp.read(path):
        raise FileNotFoundError(path)
    if "campaign" not in cp:
        raise ValueError("config needs a [campaign] section")
    c = cp["campaign"]
    base_budget = budget if budget is not None else c.getint("budget", 100_000)
    optimizers = []
    for section in cp.sections():
        if not section.startswith("optimizer:"):
            continue
        name = section.split(":", 1)[1].strip()
        s = cp[section]
        kwargs = {k: conv(s[k]) for k, conv in _SOLVER_KEYS.items() if k in s}
        if budget is not None or "budget" not in kwargs:
            kwargs["budget"] = base_budget
        optimizers.append(OptimizerSpec(name, Mode(s.get("mode", "transfer")), SolverConfig(**kwargs)))
    out = Path(c.get("output_dir", "campaign"))
    if not out.is_absolute() and output_root is not None:
        out = Path(output_root) / out
    return Campaign(
        instances=_parse_instances(c["instances"]),
        optimizers=tuple(optimizers),
        runs=runs if runs is not None else c.getint("runs", 21),
        master_seed=seed if seed is not None else c.getint("master_seed", 0),
        output_dir=out,
        workers=c.getint("workers", 1),
    )


def _cell(args) -> tuple[str, RunRecord | None]:
    instance, spec, seed = args
    try:
        rec = run(instantiate(instance), replace(spec.config, seed=seed), spec.mode)
        return "ok", rec
    except Exception as exc:  # a failed cell is reported, the campaign goes on
        return f"failed: {type(exc).__name__}: {exc}", None


def _cell_dir(root: Path, instance: int, optimizer: str, seed: int) -> Path:
    return root / "runs" / f"ETMOF{instance}" / optimizer / str(seed)


def run_campaign(campaign: Campaign, force: bool = False, log=print) -> int:
    """Execute every (instance, optimizer, run) cell and write all tables.

    Returns:
        Number of failed cells.

    Raises:
        CampaignExists: a run directory already exists and ``force`` is off.
    """
    root = Path(campaign.output_dir)
    cells = []
    for instance in campaign.instances:
        for spec in campaign.optimizers:
            for r in range(campaign.runs):
                seed = derive_seed(campaign.master_seed, instance, spec.name, r)
                cells.append((instance, spec, r, seed))
    existing = [c for c in cells if _cell_dir(root, c[0], c[1].name, c[3]).exists()]
    if existing and not force:
        raise CampaignExists(f"{len(existing)} run directories already exist under {root}; use --force")
    root.mkdir(parents=True, exist_ok=True)

    jobs = [(instance, spec, seed) for instance, spec, _, seed in cells]
    if campaign.workers > 1:
        with ProcessPoolExecutor(max_workers=campaign.workers) as pool:
            results = list(pool.map(_cell, jobs))
    else:
        results = [_cell(job) for job in jobs]

    status_rows = []
    for (instance, spec, r, seed), (status, rec) in zip(cells, results):
        d = _cell_dir(root, instance, spec.name, seed)
        if d.exists():
            shutil.rmtree(d)
        if rec is not None:
            save_run(rec, d)
        status_rows.append([spec.name, instance, r, seed, status])
        log(f"ETMOF{instance} {spec.name} run {r} seed {seed}: {status}")
    write_csv(root / "cells.csv", ["optimizer", "instance", "run", "seed", "status"], status_rows)

    rows = compute_metrics(root)
    write_csv(root / "metrics.csv", METRIC_COLUMNS, rows)
    write_csv(root / "mss.csv", MSS_COLUMNS, rank_table(rows))
    return sum(1 for row in status_rows if row[-1] != "ok")


def _fmt(v: float) -> str:
    return repr(float(v))


def write_csv(path, header, rows):
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    Path(path).write_text(buf.getvalue())


def run_metrics(rec: RunRecord) -> list[tuple[int, str, float]]:
    """``(task, metric_name, value)`` for one run: final IGD, or MIGD over the changes."""
    problem = instantiate(rec.instance_id)
    out = []
    for k, task in enumerate(problem.tasks, start=1):
        if task.is_dynamic:
            snaps = rec.snapshots[k - 1]
            vals = [igd(F, reference_front(task, t)) for _, t, F in snaps]
            out.append((k, "migd", migd(vals, rec.config["dynamic_windows"] - 1)))
        else:
            out.append((k, "igd", igd(rec.final_fronts[k - 1], reference_front(task))))
    return out


def igd_series(rec: RunRecord, task_index: int) -> list[tuple[int, float]]:
    """``(evaluations, igd)`` at every checkpoint of a static task."""
    task = instantiate(rec.instance_id).task(task_index)
    budget = rec.config["budget"]
    return [(-(-budget * pct // 100), igd(fronts[task_index - 1], reference_front(task)))
            for pct, fronts in sorted(rec.checkpoints.items())]


def migd_series(rec: RunRecord, task_index: int) -> list[tuple[int, float, float]]:
    """``(change_index, t, igd)`` for each environment of a dynamic task."""
    task = instantiate(rec.instance_id).task(task_index)
    return [(c, t, igd(F, reference_front(task, t))) for c, t, F in rec.snapshots[task_index - 1]]


def compute_metrics(root) -> list[list]:
    """Metric rows for every run directory below ``root/runs``, in a stable order."""
    root = Path(root)
    cells = list(csv.DictReader((root / "cells.csv").open())) if (root / "cells.csv").exists() else None
    rows = []
    if cells is not None:
        dirs = [(c["optimizer"], int(c["instance"]), int(c["run"]), int(c["seed"])) for c in cells
                if c["status"] == "ok"]
    else:
        dirs = []
        for d in sorted((root / "runs").glob("ETMOF*/*/*")):
            dirs.append((d.parent.name, int(d.parent.parent.name[5:]), -1, int(d.name)))
    for optimizer, instance, r, seed in dirs:
        rec = load_run(_cell_dir(root, instance, optimizer, seed))
        for task, name, value in run_metrics(rec):
            rows.append([optimizer, instance, task, r, seed, name, _fmt(value)])
    return rows


def rank_table(rows) -> list[list]:
    """MSS rows ``(optimizer, instance, run, mss)`` from metric rows."""
    table: dict[int, dict[str, dict[int, dict[int, float]]]] = {}
    for optimizer, instance, task, r, _seed, _name, value in rows:
        table.setdefault(int(instance), {}).setdefault(optimizer, {}).setdefault(int(r), {})[int(task)] = float(value)
    out = []
    for instance in sorted(table):
        opts = sorted(table[instance])
        runs = sorted(set.intersection(*(set(table[instance][o]) for o in opts)))
        tasks = sorted(set.intersection(*(set(table[instance][o][r]) for o in opts for r in runs))) if runs else []
        if not tasks or len(opts) * len(runs) < 2:
            continue
        V = np.array([[[table[instance][o][r][k] for k in tasks] for r in runs] for o in opts])
        scores = mss(V)
        for i, o in enumerate(opts):
            for j, r in enumerate(runs):
                out.append([o, instance, r, _fmt(scores[i, j])])
    return out
