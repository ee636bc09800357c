"""Registry of the 40 ETMOF instances and the task evaluation entry point.

Each instance is written down as a list of compact recipes (one per task),
which :func:`instantiate` resolves into :class:`TaskSpec` objects holding the
grouping plan, the landscape terms with their seeded transforms, and the
per-variable bounds.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from functools import lru_cache

import numpy as np

from . import dynamics as dyn
from .basefn import BasicFn
from .formulation import BasicTerm, LinkageTerm, Model, SubgroupTerm, evaluate_objectives
from .grouping import GroupingPlan, aggregate_positions, build_grouping
from .linkfn import LinkageFn, LinkageOp
from .shapefn import ReferenceFront, Shape, sample_reference_front
from .transform import TransformBundle

__all__ = [
    "NUM_INSTANCES",
    "TASK_TYPES",
    "TaskSpec",
    "MultiTaskProblem",
    "instantiate",
    "evaluate_task",
    "optimum_solution",
    "reference_front",
    "catalog_rows",
    "format_catalog",
    "instance_rows",
    "instance_type",
]

NUM_INSTANCES = 40

TASK_TYPES = {
    1: "static, few tasks",
    2: "static, many objectives",
    3: "static, large scale",
    4: "static, many tasks",
    5: "dynamic",
}

_TRANSFORMS = ("none", "rot", "shift", "shiftrot", "Lg1", "Lg2")


def instance_type(instance_id: int) -> int:
    """Problem type 1..5; instances come in blocks of eight."""
    if not 1 <= instance_id <= NUM_INSTANCES:
        raise ValueError(f"instance id must be in 1..{NUM_INSTANCES}")
    return (instance_id - 1) // 8 + 1


@dataclass(frozen=True)
class _Recipe:
    m: int
    n: int
    K: int
    model: Model | None
    shape: Shape | None
    fns: tuple = ()
    transform: str = "none"
    lo: float = -1.0
    hi: float = 1.0
    family: dyn.Family | None = None


def _r(model, m, n, K, shape, fns, transform, lo, hi=None):
    fns = fns if isinstance(fns, tuple) else (fns,)
    return _Recipe(m, n, K, Model(model), Shape(shape), fns, transform, lo, -lo if hi is None else hi)


def _d(family, n, K, lo, hi):
    return _Recipe(dyn.Family(family).m, n, K, None, None, (), "none", lo, hi, dyn.Family(family))


B = BasicFn
L = LinkageFn


def _family_25(k):
    fn, lo = [(L.L1, -10), (L.L2, -5), (L.L3, -1), (L.L5, -5), (L.L7, -10)][k - 1]
    return _r(3, 2, 50, 1, 1, fn, "rot", lo)


def _family_26(k):
    model = 2 if k % 2 == 0 else 3
    shape = {0: 1, 1: 2, 2: 3}[k % 3]
    fn, lo = {0: (L.L1, -10), 1: (L.L2, -5), 2: (L.L3, -1), 3: (L.L4, -5), 4: (L.L7, -10)}[k % 5]
    return _r(model, 2, 50, 1, shape, fn, "rot", lo)


def _family_27(k):
    fn = {0: B.ROSENBROCK, 1: B.ACKLEY, 2: B.WEIERSTRASS, 3: B.GRIEWANK, 4: B.RASTRIGIN}[k % 5]
    first = k <= 5
    return _r(6 if first else 7, 3, 50, 7, 3, fn, "Lg1" if first else "Lg2", -10)


def _family_28(k):
    model = 2 if k % 2 == 0 else 3
    shape = {0: 3, 1: 5, 2: 7}[k % 3]
    fn, lo = {0: (B.SPHERE, -50), 1: (B.ROSENBROCK, -10), 2: (B.ACKLEY, -20),
              3: (B.GRIEWANK, -30), 4: (B.RASTRIGIN, -40)}[k % 5]
    return _r(model, 3, 51, 2, shape, fn, "rot", lo)


def _family_29(k):
    shape = 4 if k % 2 == 0 else 6
    fn, lo = {0: (B.SPHERE, -50), 1: (B.BENT_CIGAR, -100), 2: (B.ACKLEY, -0.5)}[k % 3]
    return _r(1, 3, 51, 2, shape, fn, "shiftrot", lo)


def _family_30(k):
    fn, lo = {0: (B.ROSENBROCK, -50), 1: (B.ACKLEY, -50), 2: (B.RASTRIGIN, -50),
              3: (B.WEIERSTRASS, -100), 4: (B.GRIEWANK, -0.5)}[k % 5]
    return _r(1, 2, 50, 1, 1, fn, "shiftrot", lo)


def _family_31(k):
    fn, lo = {0: (L.L1, -60), 1: (L.L2, -50), 2: (L.L3, -40),
              3: (L.L4, -30), 4: (L.L5, -20), 5: (L.L7, -10)}[k % 6]
    return _r(3, 2, 50, 1, 2, fn, "rot", lo)


def _family_32(k):
    if k <= 14:
        return _r(6, 3, 80, 7, 5, B(k), "Lg1", -10)
    return _r(6, 3, 80, 7, 5, B(k - 14), "Lg2", -10)


def _recipes(i: int) -> list[_Recipe]:
    if i == 1:
        return [_r(2, 2, 50, 1, 1, L.L1, "rot", -10), _r(3, 2, 50, 1, 2, L.L1, "rot", -10)]
    if i == 2:
        return [_r(3, 2, 50, 1, 1, L.L2, "rot", -10), _r(3, 2, 50, 1, 1, L.L3, "rot", -10)]
    if i == 3:
        return [_r(3, 2, 50, 1, 1, (L.L4, L.L5), "rot", -10), _r(3, 3, 51, 2, 5, L.L6, "rot", -10)]
    if i == 4:
        return [_r(4, 3, 51, 2, 3, (B.BENT_CIGAR, B.RASTRIGIN, B.MOD_SCHWEFEL), "shiftrot", -100),
                _r(4, 3, 51, 2, 3, (B.ROSENBROCK, B.WEIERSTRASS, B.GRIEWANK), "shiftrot", -100)]
    if i == 5:
        return [_r(4, 3, 51, 2, 4, (B.DISCUS, B.ACKLEY, B.GRIEWANK), "shiftrot", -100),
                _r(4, 3, 51, 2, 6, (B.SPHERE, B.ACKLEY, B.RASTRIGIN), "shiftrot", -100)]
    if i == 6:
        return [_r(1, 2, 50, 1, 5, B.EXP_GRIEW_ROSEN, "shiftrot", -100),
                _r(4, 2, 50, 1, 2, (B.KATSUURA, B.HAPPYCAT), "shiftrot", -100)]
    if i == 7:
        return [_r(2, 2, 50, 1, 1, L.L2, "rot", -50), _r(3, 2, 50, 1, 2, L.L3, "rot", -50),
                _r(2, 2, 50, 1, 2, L.L8, "rot", -50)]
    if i == 8:
        return [_r(7, 3, 50, 7, 4, (B.SPHERE, second), "none", -10)
                for second in (B.ROSENBROCK, B.ACKLEY, B.GRIEWANK)]
    if i == 9:
        return [_r(1, 5, 25, 4, 4, B.EXP_GRIEW_ROSEN, "none", -10),
                _r(1, 5, 53, 4, 6, B.EXP_GRIEW_ROSEN, "shift", -100)]
    if i == 10:
        return [_r(2, 8, 56, 7, 9, B.ABS_MEAN, "rot", -20), _r(3, 8, 56, 7, 9, B.RASTRIGIN, "rot", -10)]
    if i == 11:
        return [_r(2, 10, 50, 9, 7, L.L6, "none", -20), _r(3, 10, 50, 9, 7, L.L7, "none", -10)]
    if i == 12:
        return [_r(2, 5, 53, 4, 3, (L.L4, L.L5), "rot", -10), _r(2, 8, 56, 7, 5, L.L6, "rot", -10),
                _r(2, 10, 58, 9, 7, L.L7, "rot", -10)]
    if i == 13:
        return [_r(1, 5, 53, 4, 8, B.RASTRIGIN, "rot", -10), _r(3, 8, 56, 7, 5, L.L2, "rot", -10),
                _r(3, 10, 58, 9, 9, L.L3, "rot", -10)]
    if i == 14:
        return [_r(5, 5, 53, 4, 10, (B.SPHERE, B.ROSENBROCK), "rot", -1),
                _r(5, 8, 56, 7, 10, (B.ABS_MEAN, B.RASTRIGIN), "rot", -1),
                _r(4, 10, 58, 9, 10, (B.SPHERE, B.ABS_MEAN), "rot", -1)]
    if i == 15:
        return [_r(6, 10, 99, 28, 5, B.SPHERE, "none", -10), _r(7, 10, 99, 28, 5, B.ABS_MEAN, "none", -10)]
    if i == 16:
        return [_r(6, 5, 80, 13, 3, (B.ROSENBROCK, B.GRIEWANK), "none", -10),
                _r(7, 5, 80, 13, 3, (B.ROSENBROCK, B.RASTRIGIN), "none", -10)]
    if i == 17:
        return [_r(6, 3, 256, 11, 3, B.SPHERE, "Lg1", -10), _r(6, 3, 256, 11, 4, B.SPHERE, "Lg2", -10)]
    if i == 18:
        return [_r(7, 2, 512, 6, 5, B.SPHERE, "Lg1", -10), _r(7, 2, 512, 6, 7, B.ABS_MEAN, "Lg1", -10)]
    if i == 19:
        return [_r(6, 2, 1024, 6, 3, (B.SPHERE, B.ROSENBROCK), "Lg1", -10),
                _r(6, 2, 1024, 6, 3, (B.SPHERE, B.RASTRIGIN), "Lg1", -10)]
    if i == 20:
        return [_r(7, 2, 256, 6, 2, B.SPHERE, "Lg2", -10), _r(7, 2, 512, 6, 3, B.ABS_MEAN, "Lg2", -10),
                _r(7, 2, 1024, 6, 5, (B.SPHERE, B.ABS_MEAN), "Lg2", -10)]
    if i == 21:
        return [_r(6, 3, 512, 11, 5, fns, "Lg2", -10) for fns in (
            (B.SPHERE, B.ROSENBROCK, B.ACKLEY), (B.ABS_MEAN, B.ROSENBROCK, B.GRIEWANK),
            (B.SPHERE, B.RASTRIGIN, B.ACKLEY))]
    if i == 22:
        fns = (B.ROSENBROCK, B.ACKLEY, B.RASTRIGIN)
        return [_r(6, 3, 256, 11, 4, fns, "Lg1", -10), _r(7, 3, 512, 11, 4, fns, "Lg2", -10),
                _r(6, 3, 1024, 11, 4, fns, "Lg2", -10)]
    if i == 23:
        return [_r(6, 2, 2048, 6, 3, B.SPHERE, "Lg1", -10),
                _r(6, 2, 4096, 6, 3, (B.SPHERE, B.ROSENBROCK), "Lg1", -10)]
    if i == 24:
        return [_r(6, 2, 5000, 6, 3, (B.SPHERE, B.RASTRIGIN), "Lg1", -10),
                _r(6, 2, 10000, 6, 3, (B.ROSENBROCK, B.RASTRIGIN), "Lg1", -10)]
    families = {25: (_family_25, 5), 26: (_family_26, 10), 27: (_family_27, 10), 28: (_family_28, 20),
                29: (_family_29, 30), 30: (_family_30, 40), 31: (_family_31, 50), 32: (_family_32, 28)}
    if i in families:
        make, count = families[i]
        return [make(k) for k in range(1, count + 1)]
    if i == 33:
        return [_d("dMOP2", 256, 1, -1, 1), _d("ZJZ", 256, 1, -1, 2)]
    if i == 34:
        return [_d("DF2", 50, 1, 0, 1), _d("DF2mod", 50, 1, 0, 1)]
    if i == 35:
        return [_d("DF5", 512, 1, -1, 1), _d("DF6", 512, 1, -1, 1)]
    if i == 36:
        return [_d("DF8", 5000, 1, -1, 1), _d("DF6", 10000, 1, -1, 1)]
    if i == 37:
        return [_d("DF10", 50, 2, -1, 1), _d("DF11", 50, 2, 0, 1)]
    if i == 38:
        return [_d("DF12", 50, 2, -1, 1), _d("DF11", 50, 2, 0, 1)]
    if i == 39:
        return [_d(f"DF5-b{b}", 50, 1, -1, 1) for b in (1, 5, 8)]
    if i == 40:
        return [_d(f"DF6-b{b}", 50, 1, -1, 1) for b in (5, 6, 9)]
    raise ValueError(f"instance id must be in 1..{NUM_INSTANCES}, got {i}")


@dataclass(frozen=True)
class TaskSpec:
    """Fully resolved recipe of one task."""

    instance_id: int
    task_index: int
    m: int
    n: int
    K: int
    model: Model | None
    shape: Shape | None
    fns: tuple
    transform: str
    lower: np.ndarray
    upper: np.ndarray
    plan: GroupingPlan | None = None
    terms: tuple = ()
    dynamics: dyn.DynamicsSpec | None = None

    @property
    def L(self) -> int:
        return self.n - self.K

    @property
    def is_dynamic(self) -> bool:
        return self.dynamics is not None

    @property
    def name(self) -> str:
        return f"ETMOF{self.instance_id}-T{self.task_index}"

    @property
    def landscape(self) -> str:
        """Short label such as ``L1(rot)`` or ``b1,b5(Lg1)``."""
        if self.is_dynamic:
            return self.dynamics.family.value
        names = ",".join(f"{'L' if isinstance(f, LinkageFn) else 'b'}{int(f)}" for f in self.fns)
        return f"{names}({self.transform})"

    @property
    def model_label(self) -> str:
        return self.dynamics.family.value if self.is_dynamic else self.model.name

    @property
    def shape_label(self) -> str:
        return "-" if self.is_dynamic else self.shape.name

    def evaluate(self, x, t: float | None = None) -> np.ndarray:
        """Objectives without touching any evaluation counter."""
        if self.is_dynamic:
            if t is None:
                raise ValueError(f"{self.name} is dynamic and needs a time instant t")
            return dyn.evaluate_dynamic(self, x, t)
        if t is not None:
            raise ValueError(f"{self.name} is static and takes no time instant")
        x = np.asarray(x, dtype=float)
        if x.shape[-1] != self.n:
            raise ValueError(f"{self.name} expects {self.n} variables, got {x.shape[-1]}")
        return evaluate_objectives(self.model, self.plan, self.shape, self.terms, x)

    def landscape_values(self, x) -> np.ndarray:
        """Every g-term at ``x``: ``(N, q)`` with F6/F7 subgroups unrolled."""
        X = np.atleast_2d(np.asarray(x, dtype=float))
        Y = aggregate_positions(self.plan, X)
        cols = [t.values(X, Y) if isinstance(t, SubgroupTerm) else t(X, Y)[:, None] for t in self.terms]
        return np.concatenate(cols, axis=1)


def _bundle(rec: _Recipe, instance: int, task: int, group: int, dim: int):
    if rec.transform in ("none", "Lg1", "Lg2"):
        return None
    return TransformBundle.build(dim, rotate="rot" in rec.transform, shift="shift" in rec.transform,
                                 instance=instance, task=task, group=group, lo=rec.lo, hi=rec.hi)


def _build_terms(rec: _Recipe, plan: GroupingPlan, instance: int, task: int) -> tuple:
    fns = rec.fns
    if rec.model is Model.F1:
        idx = plan.distance_indices
        return (BasicTerm(fns[0], idx, _bundle(rec, instance, task, 0, len(idx))),)
    terms = []
    for i, group in enumerate(plan.distance_groups):
        fn = fns[i % len(fns)]
        if rec.model in (Model.F6, Model.F7):
            op = LinkageOp(rec.transform) if rec.transform in ("Lg1", "Lg2") else None
            terms.append(SubgroupTerm(fn, plan.subgroups[i], plan.n, op, rec.lo, rec.hi))
        elif isinstance(fn, LinkageFn):
            terms.append(LinkageTerm(fn, group, plan.n, _bundle(rec, instance, task, i + 1, len(group))))
        else:
            terms.append(BasicTerm(fn, group, _bundle(rec, instance, task, i + 1, len(group))))
    return tuple(terms)


def _resolve(instance: int, task: int, rec: _Recipe) -> TaskSpec:
    if rec.family is not None:
        lower = np.concatenate([np.zeros(rec.K), np.full(rec.n - rec.K, rec.lo)])
        upper = np.concatenate([np.ones(rec.K), np.full(rec.n - rec.K, rec.hi)])
        if rec.family in (dyn.Family.DF2, dyn.Family.DF2MOD):
            lower[:] = rec.lo
            upper[:] = rec.hi
        for a in (lower, upper):
            a.setflags(write=False)
        return TaskSpec(instance, task, rec.m, rec.n, rec.K, None, None, (), "none", lower, upper,
                        dynamics=dyn.DynamicsSpec(rec.family))
    plan = build_grouping(rec.n, rec.K, rec.m)
    lower = np.concatenate([np.full(rec.K, -1.0), np.full(rec.n - rec.K, rec.lo)])
    upper = np.concatenate([np.full(rec.K, 1.0), np.full(rec.n - rec.K, rec.hi)])
    for a in (lower, upper):
        a.setflags(write=False)
    terms = _build_terms(rec, plan, instance, task)
    return TaskSpec(instance, task, rec.m, rec.n, rec.K, rec.model, rec.shape, rec.fns, rec.transform,
                    lower, upper, plan, terms)


@lru_cache(maxsize=None)
def _tasks(instance_id: int) -> tuple[TaskSpec, ...]:
    return tuple(_resolve(instance_id, k, rec) for k, rec in enumerate(_recipes(instance_id), start=1))


@dataclass
class MultiTaskProblem:
    """An instance: its tasks plus one evaluation counter per task.

    Task specs are immutable and shared; counters belong to this object, so
    concurrent runs should each work on their own :meth:`clone`.
    """

    instance_id: int
    tasks: tuple[TaskSpec, ...]
    counters: np.ndarray = field(default=None)

    def __post_init__(self):
        if self.counters is None:
            self.counters = np.zeros(len(self.tasks), dtype=np.int64)

    @property
    def name(self) -> str:
        return f"ETMOF{self.instance_id}"

    @property
    def num_tasks(self) -> int:
        return len(self.tasks)

    @property
    def unified_dim(self) -> int:
        return max(t.n for t in self.tasks)

    @property
    def is_dynamic(self) -> bool:
        return self.tasks[0].is_dynamic

    def task(self, k: int) -> TaskSpec:
        if not 1 <= k <= len(self.tasks):
            raise ValueError(f"{self.name} has tasks 1..{len(self.tasks)}, got {k}")
        return self.tasks[k - 1]

    def clone(self) -> "MultiTaskProblem":
        return replace(self, counters=np.zeros(len(self.tasks), dtype=np.int64))


def instantiate(etmof_id: int) -> MultiTaskProblem:
    """Build instance ``ETMOF<etmof_id>`` with fresh evaluation counters."""
    etmof_id = int(etmof_id)
    instance_type(etmof_id)
    return MultiTaskProblem(etmof_id, _tasks(etmof_id))


def evaluate_task(problem: MultiTaskProblem, task_index: int, x, t: float | None = None) -> np.ndarray:
    """Objectives of ``x`` on task ``task_index`` (1-based).

    A single vector counts one evaluation; a batch ``(N, n)`` counts ``N``.
    """
    task = problem.task(task_index)
    f = task.evaluate(x, t)
    problem.counters[task_index - 1] += 1 if np.ndim(f) == 1 else len(f)
    return f


def optimum_solution(task: TaskSpec, x_position, t: float | None = None) -> np.ndarray:
    """Solutions on the Pareto set: given position variables, place every distance variable at its optimum.

    Args:
        task: Any task.
        x_position: ``(N, K)`` position values (or ``(K,)``).
        t: Time instant, dynamic tasks only.

    Returns:
        ``(N, n)`` (or ``(n,)``) decision vectors. Rotated linkage optima may
        fall outside the nominal box; they are returned unclamped.
    """
    xp = np.asarray(x_position, dtype=float)
    single = xp.ndim == 1
    XP = np.atleast_2d(xp)
    if XP.shape[1] != task.K:
        raise ValueError(f"{task.name} has {task.K} position variables, got {XP.shape[1]}")
    if task.is_dynamic:
        X = dyn.optimal_solution(task, XP, t)
    else:
        X = np.empty((len(XP), task.n))
        X[:, : task.K] = XP
        Y = aggregate_positions(task.plan, X)
        for term in task.terms:
            X[:, term.indices] = term.optimum(Y)
    return X[0] if single else X


@lru_cache(maxsize=64)
def _static_front(shape: Shape, m: int, count: int | None) -> ReferenceFront:
    return sample_reference_front(shape, m, count)


def reference_front(task: TaskSpec, t: float | None = None, count: int | None = None) -> ReferenceFront:
    """Reference Pareto front of ``task`` (at time ``t`` for dynamic tasks)."""
    if task.is_dynamic:
        if t is None:
            raise ValueError(f"{task.name} is dynamic and needs a time instant t")
        return _dynamic_front(task.instance_id, task.task_index, float(t), count)
    return _static_front(task.shape, task.m, count)


@lru_cache(maxsize=256)
def _dynamic_front(instance: int, task: int, t: float, count: int | None) -> ReferenceFront:
    return dyn.pf_at_time(_tasks(instance)[task - 1], t, count)


def catalog_rows() -> list[dict]:
    """One row per task of every instance."""
    rows = []
    for i in range(1, NUM_INSTANCES + 1):
        for task in _tasks(i):
            rows.append({
                "instance": i,
                "type": instance_type(i),
                "tasks": len(_tasks(i)),
                "task": task.task_index,
                "m": task.m,
                "n": task.n,
                "K": task.K,
                "model": task.model_label,
                "shape": task.shape_label,
                "landscape": task.landscape,
                "bounds": f"[{task.lower[-1]:g},{task.upper[-1]:g}]",
            })
    return rows


_INSTANCE_COLS = ["instance", "type", "tasks", "m", "n", "K", "model", "shape", "landscape", "bounds"]
_TASK_COLS = ["instance", "type", "tasks", "task", "m", "n", "K", "model", "shape", "landscape", "bounds"]


def _collapse(values) -> str:
    """One value when all tasks agree, else the per-task values joined by ``/``."""
    values = [str(v) for v in values]
    return values[0] if len(set(values)) == 1 else "/".join(values)


def instance_rows() -> list[dict]:
    """One row per instance; per-task columns collapse when uniform."""
    by_instance: dict[int, list[dict]] = {}
    for row in catalog_rows():
        by_instance.setdefault(row["instance"], []).append(row)
    out = []
    for i, rows in by_instance.items():
        merged = {c: _collapse(r[c] for r in rows) for c in _INSTANCE_COLS}
        out.append(merged)
    return out


def format_catalog(per_task: bool = False, include_grouping: bool = False) -> str:
    """Plain-text instance table.

    Args:
        per_task: One line per task instead of one per instance.
        include_grouping: Append each task's grouping plan (implies ``per_task``).
    """
    if not (per_task or include_grouping):
        lines = ["\t".join(_INSTANCE_COLS)]
        lines.extend("\t".join(row[c] for c in _INSTANCE_COLS) for row in instance_rows())
        return "\n".join(lines)
    lines = ["\t".join(_TASK_COLS)]
    for row in catalog_rows():
        lines.append("\t".join(str(row[c]) for c in _TASK_COLS))
        if include_grouping:
            task = _tasks(row["instance"])[row["task"] - 1]
            if task.plan is not None:
                lines.extend("#\t" + s for s in task.plan.describe().splitlines())
    return "\n".join(lines)
