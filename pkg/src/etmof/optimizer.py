"""Baseline multitasking evolutionary optimizer and a random-sampling control.

Every task keeps its own population in the unified space ``[0, 1]^D``, with
``D`` the largest task dimension. Each generation, every task breeds its
offspring quota; with probability ``rmp`` the second parent is borrowed from
another task's population, which is the only channel of transfer. Variation is
SBX plus polynomial mutation and survival is NSGA-II (rank, then crowding).
"""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass, field
from enum import Enum
from pathlib import Path

import numpy as np

from .pareto import crowding_distance, nondominated_mask, nondominated_sort
from .suite import MultiTaskProblem, TaskSpec
from .dynamics import time_instant

__all__ = [
    "Mode",
    "SolverConfig",
    "RunRecord",
    "decode",
    "sbx",
    "polynomial_mutation",
    "run",
    "random_search",
    "save_run",
    "load_run",
    "CHECKPOINTS",
]

CHECKPOINTS = tuple(range(10, 101, 10))
DYNAMIC_WINDOWS = 31


class Mode(str, Enum):
    TRANSFER = "transfer"
    INDEPENDENT = "independent"


@dataclass(frozen=True)
class SolverConfig:
    pop_size: int = 100
    rmp: float = 0.3
    eta_c: float = 20.0
    eta_m: float = 20.0
    mutation_rate: float | None = None  # None: 1 / unified_dim
    seed: int = 0
    budget: int = 100_000
    dynamic_pop_size: int = 150
    dynamic_windows: int = DYNAMIC_WINDOWS
    archive_factor: int = 10
    max_generations: int | None = None

    def __post_init__(self):
        if not 0.0 <= self.rmp <= 1.0:
            raise ValueError("rmp must lie in [0, 1]")
        if self.pop_size < 2 or self.dynamic_pop_size < 2:
            raise ValueError("populations need at least two members")
        if self.budget < self.pop_size:
            raise ValueError("budget must cover the initial population")


@dataclass
class RunRecord:
    """Trajectory of one run.

    ``checkpoints[pct][k]`` is task ``k+1``'s archive after ``pct`` percent of
    its budget; ``snapshots[k]`` lists ``(change_index, t, front)`` taken just
    before each environment change of a dynamic task.
    """

    instance_id: int
    mode: str
    seed: int
    config: dict
    evaluations: list[int]
    reevaluations: list[int]
    generations: int = 0
    cross_task_matings: int = 0
    checkpoints: dict[int, list[np.ndarray]] = field(default_factory=dict)
    snapshots: list[list[tuple[int, float, np.ndarray]]] = field(default_factory=list)
    final_fronts: list[np.ndarray] = field(default_factory=list)

    def meta(self) -> dict:
        return {
            "instance": self.instance_id,
            "mode": self.mode,
            "seed": self.seed,
            "config": self.config,
            "evaluations": self.evaluations,
            "reevaluations": self.reevaluations,
            "generations": self.generations,
            "cross_task_matings": self.cross_task_matings,
            "checkpoints": sorted(self.checkpoints),
            "changes": [len(s) for s in self.snapshots],
        }


def decode(genes, task: TaskSpec) -> np.ndarray:
    """Map unified genes in ``[0, 1]`` onto the task's box."""
    genes = np.asarray(genes, dtype=float)
    if genes.shape[-1] < task.n:
        raise ValueError(f"need at least {task.n} genes, got {genes.shape[-1]}")
    return task.lower + genes[..., : task.n] * (task.upper - task.lower)


def sbx(p1, p2, eta: float, rng: np.random.Generator):
    """Bounded simulated binary crossover on ``[0, 1]``; returns two children."""
    c1 = p1.copy()
    c2 = p2.copy()
    u = rng.random(p1.shape)
    swap = rng.random(p1.shape) < 0.5
    active = (rng.random(p1.shape) < 0.5) & (np.abs(p1 - p2) > 1e-14)
    y1 = np.minimum(p1, p2)
    y2 = np.maximum(p1, p2)
    gap = np.where(active, y2 - y1, 1.0)

    def child(beta_edge_dist, sign):
        beta = 1.0 + 2.0 * beta_edge_dist / gap
        alpha = 2.0 - beta ** -(eta + 1.0)
        with np.errstate(over="ignore", invalid="ignore"):
            bq = np.where(u <= 1.0 / alpha, (u * alpha) ** (1.0 / (eta + 1.0)),
                          (1.0 / (2.0 - u * alpha)) ** (1.0 / (eta + 1.0)))
        return 0.5 * (y1 + y2 + sign * bq * gap)

    lo_child = np.clip(child(y1, -1.0), 0.0, 1.0)
    hi_child = np.clip(child(1.0 - y2, 1.0), 0.0, 1.0)
    a = np.where(swap, hi_child, lo_child)
    b = np.where(swap, lo_child, hi_child)
    c1[active] = a[active]
    c2[active] = b[active]
    return c1, c2


def polynomial_mutation(x, rate: float, eta: float, rng: np.random.Generator):
    """Bounded polynomial mutation on ``[0, 1]`` with per-gene probability ``rate``."""
    y = x.copy()
    hit = rng.random(x.shape) < rate
    u = rng.random(x.shape)
    d1 = x
    d2 = 1.0 - x
    power = 1.0 / (eta + 1.0)
    left = u < 0.5
    val = np.where(left, 2.0 * u + (1.0 - 2.0 * u) * (1.0 - d1) ** (eta + 1.0),
                   2.0 * (1.0 - u) + 2.0 * (u - 0.5) * (1.0 - d2) ** (eta + 1.0))
    dq = np.where(left, val**power - 1.0, 1.0 - val**power)
    y[hit] = np.clip(x[hit] + dq[hit], 0.0, 1.0)
    return y


def _survivors(F: np.ndarray, size: int) -> np.ndarray:
    """Indices of the NSGA-II survivors, plus their rank and crowding."""
    rank = nondominated_sort(F)
    chosen: list[int] = []
    crowd = np.zeros(len(F))
    for r in range(rank.max() + 1):
        front = np.flatnonzero(rank == r)
        crowd[front] = crowding_distance(F[front])
        if len(chosen) + len(front) <= size:
            chosen.extend(front)
        else:
            order = front[np.argsort(-crowd[front], kind="stable")]
            chosen.extend(order[: size - len(chosen)])
        if len(chosen) == size:
            break
    return np.asarray(chosen)


def _truncate(F: np.ndarray, cap: int) -> np.ndarray:
    if len(F) <= cap:
        return F
    keep = np.argsort(-crowding_distance(F), kind="stable")[:cap]
    return F[np.sort(keep)]


class _Archive:
    """Nondominated objective vectors seen so far, capped by crowding truncation."""

    def __init__(self, cap: int):
        self.cap = cap
        self.F: np.ndarray | None = None

    def reset(self):
        self.F = None

    def add(self, F: np.ndarray):
        pool = F if self.F is None else np.concatenate([self.F, F])
        pool = pool[nondominated_mask(pool)]
        self.F = _truncate(np.unique(pool, axis=0), self.cap)


class _TaskState:
    def __init__(self, task: TaskSpec, size: int, D: int, cap: int, rng):
        self.task = task
        self.size = size
        self.genes = rng.random((size, D))
        self.F: np.ndarray | None = None
        self.rank = np.zeros(size, dtype=np.int64)
        self.crowd = np.zeros(size)
        self.archive = _Archive(cap)
        self.evaluations = 0
        self.reevaluations = 0

    def evaluate(self, genes, t):
        return self.task.evaluate(decode(genes, self.task), t)

    def refresh_rank(self):
        self.rank = nondominated_sort(self.F)
        for r in range(self.rank.max() + 1):
            front = np.flatnonzero(self.rank == r)
            self.crowd[front] = crowding_distance(self.F[front])

    def tournament(self, count: int, rng) -> np.ndarray:
        a = rng.integers(0, self.size, count)
        b = rng.integers(0, self.size, count)
        better_b = (self.rank[b] < self.rank[a]) | ((self.rank[b] == self.rank[a]) & (self.crowd[b] > self.crowd[a]))
        return np.where(better_b, b, a)


def run(problem: MultiTaskProblem, cfg: SolverConfig = SolverConfig(), mode: Mode | str = Mode.TRANSFER) -> RunRecord:
    """One seeded run over every task of ``problem``.

    Static tasks stop at ``cfg.budget`` evaluations each. Dynamic tasks run
    ``cfg.dynamic_windows`` change windows of ``tau_t`` generations, one
    generation per ``tau``; after each change the population is re-evaluated
    (counted separately from the budget) and the previous window's archive is
    kept as a snapshot.
    """
    mode = Mode(mode)
    rmp = cfg.rmp if mode is Mode.TRANSFER else 0.0
    rng = np.random.default_rng(cfg.seed)
    D = problem.unified_dim
    rate = cfg.mutation_rate if cfg.mutation_rate is not None else 1.0 / D
    dynamic = problem.is_dynamic
    size = cfg.dynamic_pop_size if dynamic else cfg.pop_size
    if dynamic:
        spec = problem.tasks[0].dynamics
        generations = cfg.dynamic_windows * spec.tau_t
        budget = size * generations
    else:
        spec = None
        budget = cfg.budget
    states = [_TaskState(task, size, D, cfg.archive_factor * size, rng) for task in problem.tasks]
    record = RunRecord(problem.instance_id, mode.value, cfg.seed, asdict(cfg) | {"rmp_effective": rmp},
                       [0] * len(states), [0] * len(states), snapshots=[[] for _ in states])
    thresholds = {pct: -(-budget * pct // 100) for pct in CHECKPOINTS}

    tau = 0
    t = time_instant(0, spec).t if dynamic else None
    for s in states:
        s.F = s.evaluate(s.genes, t)
        s.evaluations = size
        s.archive.add(s.F)
        s.refresh_rank()
    _record_checkpoints(record, states, thresholds)

    while any(s.evaluations < budget for s in states):
        if cfg.max_generations is not None and record.generations >= cfg.max_generations:
            break
        tau += 1
        if dynamic:
            now = time_instant(tau, spec)
            if now.t != t:
                for k, s in enumerate(states):
                    record.snapshots[k].append((now.change_index - 1, t, s.archive.F.copy()))
                    s.F = s.evaluate(s.genes, now.t)
                    s.reevaluations += size
                    s.archive.reset()
                    s.archive.add(s.F)
                    s.refresh_rank()
                t = now.t
        # breed every task from the same parent snapshot so task order does not leak
        offspring = []
        for k, s in enumerate(states):
            quota = min(size, budget - s.evaluations)
            pairs = -(-quota // 2)
            p1 = s.genes[s.tournament(pairs, rng)]
            donor = rng.random(pairs) < rmp if len(states) > 1 else np.zeros(pairs, dtype=bool)
            p2 = s.genes[s.tournament(pairs, rng)]
            if donor.any():
                others = rng.integers(0, len(states) - 1, donor.sum())
                others = others + (others >= k)
                idx = np.flatnonzero(donor)
                for j, o in zip(idx, others):
                    p2[j] = states[o].genes[states[o].tournament(1, rng)[0]]
                record.cross_task_matings += int(donor.sum())
            c1, c2 = sbx(p1, p2, cfg.eta_c, rng)
            kids = np.concatenate([c1, c2])[:quota]
            offspring.append(polynomial_mutation(kids, rate, cfg.eta_m, rng))
        for s, kids in zip(states, offspring):
            if len(kids) == 0:
                continue
            Fk = s.evaluate(kids, t)
            s.evaluations += len(kids)
            s.archive.add(Fk)
            genes = np.concatenate([s.genes, kids])
            F = np.concatenate([s.F, Fk])
            keep = _survivors(F, size)
            s.genes, s.F = genes[keep], F[keep]
            s.refresh_rank()
        record.generations += 1
        _record_checkpoints(record, states, thresholds)

    for k, s in enumerate(states):
        record.evaluations[k] = s.evaluations
        record.reevaluations[k] = s.reevaluations
        record.final_fronts.append(s.archive.F.copy())
    return record


def _record_checkpoints(record: RunRecord, states, thresholds):
    for pct, need in thresholds.items():
        if pct not in record.checkpoints and all(s.evaluations >= need for s in states):
            record.checkpoints[pct] = [s.archive.F.copy() for s in states]


def random_search(problem: MultiTaskProblem, budget: int, seed: int = 0, cap: int = 1000,
                  t: float | None = None) -> list[np.ndarray]:
    """Nondominated set of ``budget`` uniform samples per task (the sanity oracle)."""
    rng = np.random.default_rng(seed)
    fronts = []
    for task in problem.tasks:
        archive = _Archive(cap)
        done = 0
        while done < budget:
            step = min(5000, budget - done)
            X = task.lower + rng.random((step, task.n)) * (task.upper - task.lower)
            archive.add(task.evaluate(X, t))
            done += step
        fronts.append(archive.F)
    return fronts


def _write_front(path: Path, F: np.ndarray, header: dict):
    lines = [f"# {k} = {v}" for k, v in header.items()]
    lines += [" ".join(f"{v:.17g}" for v in row) for row in F]
    path.write_text("\n".join(lines) + "\n")


def _read_front(path: Path) -> np.ndarray:
    return np.loadtxt(path, comments="#", ndmin=2)


def save_run(record: RunRecord, directory) -> Path:
    """Write fronts and ``meta.json`` under ``directory`` (created if needed)."""
    out = Path(directory)
    out.mkdir(parents=True, exist_ok=True)
    for pct, fronts in sorted(record.checkpoints.items()):
        for k, F in enumerate(fronts, start=1):
            _write_front(out / f"checkpoint_{pct:03d}_T{k}.front", F, {"task": k, "percent": pct, "count": len(F)})
    for k, snaps in enumerate(record.snapshots, start=1):
        for change, t, F in snaps:
            _write_front(out / f"change_{change:02d}_T{k}.front", F,
                         {"task": k, "change_index": change, "t": repr(t), "count": len(F)})
    for k, F in enumerate(record.final_fronts, start=1):
        _write_front(out / f"final_T{k}.front", F, {"task": k, "count": len(F)})
    (out / "meta.json").write_text(json.dumps(record.meta(), indent=2, sort_keys=True) + "\n")
    return out


def load_run(directory) -> RunRecord:
    src = Path(directory)
    meta = json.loads((src / "meta.json").read_text())
    tasks = len(meta["evaluations"])
    rec = RunRecord(meta["instance"], meta["mode"], meta["seed"], meta["config"], meta["evaluations"],
                    meta["reevaluations"], meta["generations"], meta["cross_task_matings"],
                    snapshots=[[] for _ in range(tasks)])
    for pct in meta["checkpoints"]:
        rec.checkpoints[pct] = [_read_front(src / f"checkpoint_{pct:03d}_T{k}.front") for k in range(1, tasks + 1)]
    for k in range(1, tasks + 1):
        for change in range(meta["changes"][k - 1]):
            path = src / f"change_{change:02d}_T{k}.front"
            t = float(next(l for l in path.read_text().splitlines() if l.startswith("# t = "))[6:])
            rec.snapshots[k - 1].append((change, t, _read_front(path)))
        rec.final_fronts.append(_read_front(src / f"final_T{k}.front"))
    return rec
