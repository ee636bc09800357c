"""Time-varying tasks: the change schedule and the dMOP2/ZJZ/DF-style families.

Time follows ``t = floor(tau / tau_t) / n_t`` where ``tau`` counts
generations. Every family below is written for position variables in
``[0, 1]`` and evaluates a batch ``(N, n)`` at one time instant.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .basefn import BasicFn, eval_basic, origin_offset
from .pareto import nondominated_mask
from .shapefn import ReferenceFront, default_front_size

__all__ = [
    "Family",
    "DynamicsSpec",
    "TimeInstant",
    "time_instant",
    "parameters",
    "evaluate_dynamic",
    "optimal_solution",
    "pf_at_time",
]


class Family(str, Enum):
    DMOP2 = "dMOP2"
    ZJZ = "ZJZ"
    DF2 = "DF2"
    DF2MOD = "DF2mod"
    DF5 = "DF5"
    DF6 = "DF6"
    DF8 = "DF8"
    DF10 = "DF10"
    DF11 = "DF11"
    DF12 = "DF12"
    DF5_B1 = "DF5-b1"
    DF5_B5 = "DF5-b5"
    DF5_B8 = "DF5-b8"
    DF6_B5 = "DF6-b5"
    DF6_B6 = "DF6-b6"
    DF6_B9 = "DF6-b9"

    @property
    def m(self) -> int:
        return 3 if self in (Family.DF10, Family.DF11, Family.DF12) else 2

    @property
    def basic(self) -> BasicFn | None:
        """The basic function behind the ``-bX`` variants."""
        if "-b" in self.value:
            return BasicFn(int(self.value.split("-b")[1]))
        return None


@dataclass(frozen=True)
class DynamicsSpec:
    family: Family
    n_t: int = 10
    tau_t: int = 20

    def __post_init__(self):
        if self.n_t <= 0 or self.tau_t <= 0:
            raise ValueError("n_t and tau_t must be positive")
        object.__setattr__(self, "family", Family(self.family))


@dataclass(frozen=True)
class TimeInstant:
    tau: int
    change_index: int
    t: float


def time_instant(tau: int, spec: DynamicsSpec | None = None) -> TimeInstant:
    """Time instant reached after ``tau`` generations."""
    spec = spec or DynamicsSpec(Family.DMOP2)
    if tau < 0:
        raise ValueError("tau must be nonnegative")
    k = int(tau) // spec.tau_t
    return TimeInstant(int(tau), k, k / spec.n_t)


def _check_time(t: float, spec: DynamicsSpec) -> float:
    t = float(t)
    k = t * spec.n_t
    if not math.isfinite(t) or t < 0 or abs(k - round(k)) > 1e-9:
        raise ValueError(f"t={t} is not on the change schedule (multiples of 1/{spec.n_t})")
    return t


def parameters(family: Family | str, t: float) -> dict[str, float]:
    """Time-dependent parameters of ``family`` at instant ``t``."""
    family = Family(family)
    # every parameter has period 4 in t; reducing first keeps floor() terms periodic
    t = round(math.fmod(t, 4.0), 12)
    s = math.sin(0.5 * math.pi * t)
    if abs(s) < 1e-12:
        s = 0.0
    p: dict[str, float] = {}
    if family is Family.DMOP2:
        p["G"] = abs(s)
        p["H"] = 0.75 * s + 1.25
    elif family is Family.ZJZ:
        p["G"] = s
        p["H"] = 1.5 + s
    elif family in (Family.DF2, Family.DF2MOD, Family.DF11):
        p["G"] = abs(s)
    elif family in (Family.DF5, Family.DF5_B1, Family.DF5_B5, Family.DF5_B8):
        p["G"] = s
        p["w"] = math.floor(10.0 * s)
    elif family in (Family.DF6, Family.DF6_B5, Family.DF6_B6, Family.DF6_B9):
        p["G"] = s
        p["alpha"] = 0.2 + 0.28 * abs(s)
    elif family is Family.DF8:
        p["G"] = s
        p["alpha"] = 2.25 + 2.0 * math.cos(2.0 * math.pi * t)
        p["beta"] = 100.0 * s * s
    elif family is Family.DF10:
        p["G"] = s
        p["H"] = 2.25 + 2.0 * math.cos(0.5 * math.pi * t)
    else:
        p["k"] = 10.0 * math.sin(math.pi * t)
    return p


def _switch_index(n: int, G: float) -> int:
    """0-based index of the DF2 position variable."""
    return int(math.floor((n - 1) * G))


def _split(task, X, p):
    fam = task.dynamics.family
    if fam in (Family.DF2, Family.DF2MOD):
        r = _switch_index(task.n, p["G"])
        return X[:, r], np.delete(X, r, axis=1)
    return (X[:, 0] if task.K == 1 else X[:, : task.K]), X[:, task.K :]


def _distance_target(fam: Family, xp, p, t, N):
    """Per-row optimum of the distance variables given the position values."""
    if fam is Family.ZJZ:
        return (p["G"] + xp ** p["H"])[:, None]
    if fam is Family.DF8:
        return (p["G"] * np.sin(4.0 * np.pi * xp ** p["beta"]) / (1.0 + abs(p["G"])))[:, None]
    if fam is Family.DF10:
        return (np.sin(2.0 * np.pi * (xp[:, 0] + xp[:, 1])) / (1.0 + abs(p["G"])))[:, None]
    if fam is Family.DF11:
        return (0.5 * p["G"] * xp[:, 0])[:, None]
    if fam is Family.DF12:
        return np.sin(t * xp[:, 0])[:, None]
    return np.full((N, 1), p["G"])


def _objectives(fam: Family, xp, xd, p, t):
    N = len(xd)
    r = xd - _distance_target(fam, xp, p, t, N)
    if fam in (Family.DMOP2, Family.ZJZ, Family.DF2, Family.DF2MOD):
        g = eval_basic(BasicFn.RASTRIGIN if fam is Family.DF2MOD else BasicFn.SPHERE, r, check=False)
        f1 = xp
        if fam in (Family.DMOP2, Family.ZJZ):
            f2 = (1.0 + g) * (1.0 - (f1 / (1.0 + g)) ** p["H"])
        else:
            f2 = (1.0 + g) * (1.0 - np.sqrt(f1 / (1.0 + g)))
        return np.column_stack([f1, f2])

    if fam is Family.DF5:
        g = 1.0 + np.sum(r * r, axis=1)
        wave = 0.02 * np.sin(p["w"] * np.pi * xp)
        return g[:, None] * np.column_stack([xp + wave, 1.0 - xp + wave])
    if fam is Family.DF6:
        g = 1.0 + np.sum(abs(p["G"]) * r * r - 10.0 * np.cos(2.0 * np.pi * r) + 10.0, axis=1)
        wave = 0.1 * np.sin(3.0 * np.pi * xp)
        return g[:, None] * np.column_stack([(xp + wave) ** p["alpha"], (1.0 - xp + wave) ** p["alpha"]])
    if fam is Family.DF8:
        g = 1.0 + np.sum(r * r, axis=1)
        wave = 0.1 * np.sin(3.0 * np.pi * xp)
        return g[:, None] * np.column_stack([xp + wave, (1.0 - xp + wave) ** p["alpha"]])

    if fam.basic is not None:
        fn = fam.basic
        g = eval_basic(fn, r + origin_offset(fn), check=False)
        if fam.value.startswith("DF5"):
            wave = 0.02 * np.sin(p["w"] * np.pi * xp)
            h = np.column_stack([xp + wave, 1.0 - xp + wave])
        else:
            wave = 0.1 * np.sin(3.0 * np.pi * xp)
            h = np.column_stack([(xp + wave) ** p["alpha"], (1.0 - xp + wave) ** p["alpha"]])
        return (1.0 + g)[:, None] * h

    a, b = xp[:, 0], xp[:, 1]
    if fam is Family.DF10:
        g = eval_basic(BasicFn.SPHERE, r, check=False)
        c1, s1 = np.cos(0.5 * np.pi * a), np.sin(0.5 * np.pi * a)
        c2, s2 = np.cos(0.5 * np.pi * b), np.sin(0.5 * np.pi * b)
        h = np.column_stack([s1, s2 * c1, c2 * c1]) ** p["H"]
    elif fam is Family.DF11:
        g = p["G"] + eval_basic(BasicFn.SPHERE, r, check=False)
        G = p["G"]
        z1 = np.pi / 6.0 * G + (np.pi / 2.0 - np.pi / 3.0 * G) * a
        z2 = np.pi / 6.0 * G + (np.pi / 2.0 - np.pi / 3.0 * G) * b
        h = np.column_stack([np.sin(z1), np.sin(z2) * np.cos(z1), np.cos(z2) * np.cos(z1)])
    else:
        step = np.floor(p["k"] * (2.0 * xp - 1.0)) * np.pi / 2.0
        g = np.sum(r * r, axis=1) + np.abs(np.prod(np.sin(step), axis=1))
        c1, s1 = np.cos(0.5 * np.pi * a), np.sin(0.5 * np.pi * a)
        c2, s2 = np.cos(0.5 * np.pi * b), np.sin(0.5 * np.pi * b)
        h = np.column_stack([c1 * c2, c1 * s2, s1])
    return (1.0 + g)[:, None] * h


def evaluate_dynamic(task, x, t: float) -> np.ndarray:
    """Objectives of ``x`` (``(n,)`` or ``(N, n)``) for a dynamic task at time ``t``."""
    if task.dynamics is None:
        raise ValueError("task is static")
    t = _check_time(t, task.dynamics)
    x = np.asarray(x, dtype=float)
    single = x.ndim == 1
    X = np.atleast_2d(x)
    if X.shape[1] != task.n:
        raise ValueError(f"expected {task.n} variables, got {X.shape[1]}")
    p = parameters(task.dynamics.family, t)
    xp, xd = _split(task, X, p)
    F = _objectives(task.dynamics.family, xp, xd, p, t)
    return F[0] if single else F


def optimal_solution(task, xp, t: float) -> np.ndarray:
    """Full solutions with position values ``xp`` and distance variables at their time-``t`` optimum.

    Args:
        task: a dynamic task.
        xp: position values, ``(N,)`` for one position variable or ``(N, K)``.
        t: time instant on the change schedule.

    Returns:
        ``(N, n)`` decision vectors.
    """
    t = _check_time(t, task.dynamics)
    fam = task.dynamics.family
    p = parameters(fam, t)
    xp = np.asarray(xp, dtype=float)
    xp_rows = xp.reshape(len(xp), -1)
    N = len(xp_rows)
    xp_arg = xp_rows[:, 0] if task.K == 1 else xp_rows
    target = np.broadcast_to(_distance_target(fam, xp_arg, p, t, N), (N, task.n - task.K))
    if fam in (Family.DF2, Family.DF2MOD):
        r = _switch_index(task.n, p["G"])
        return np.insert(np.array(target), r, xp_rows[:, 0], axis=1)
    return np.concatenate([xp_rows, target], axis=1)


def pf_at_time(task, t: float, count: int | None = None) -> ReferenceFront:
    """Sample of the true front at ``t``: sweep positions, place distance optima, filter dominance."""
    fam = task.dynamics.family
    target = count or default_front_size(fam.m)
    if task.K == 1:
        xp = np.linspace(0.0, 1.0, target)
    else:
        side = math.ceil(math.sqrt(target))
        u = np.linspace(0.0, 1.0, side)
        xp = np.stack(np.meshgrid(u, u, indexing="ij"), axis=-1).reshape(-1, 2)
    F = evaluate_dynamic(task, optimal_solution(task, xp, t), t)
    # round before filtering so ulp-level ties cannot hide a dominated point
    F = np.unique(np.round(F, 15), axis=0)
    F = F[nondominated_mask(F)]
    return ReferenceFront(F, label=f"{fam.value} t={t:g}")
