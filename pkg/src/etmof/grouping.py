"""Three-layer variable grouping and position aggregation.

Layer one splits x into K position and L = n - K distance variables. Layer
two cuts the position block into m - 1 near-equal groups and the distance
block into m groups with sizes proportional to 1 : 2 : ... : m. Layer three
chops every distance group into contiguous subgroups of about five
variables. All index lists are 0-based positions into x.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

__all__ = ["GroupingPlan", "build_grouping", "aggregate_positions", "DEFAULT_SUBGROUP_SIZE"]

DEFAULT_SUBGROUP_SIZE = 5


def _round_half_up(v: float) -> int:
    return int(math.floor(v + 0.5))


@dataclass(frozen=True)
class GroupingPlan:
    n: int
    K: int
    m: int
    position_groups: tuple[np.ndarray, ...]
    distance_groups: tuple[np.ndarray, ...]
    subgroups: tuple[tuple[np.ndarray, ...], ...]

    @property
    def L(self) -> int:
        return self.n - self.K

    @property
    def distance_indices(self) -> np.ndarray:
        return np.arange(self.K, self.n)

    def describe(self) -> str:
        """Audit block: one line per group, 1-based inclusive ranges."""

        def rng(a):
            return f"{a[0] + 1}..{a[-1] + 1}" if len(a) > 1 else f"{a[0] + 1}"

        lines = [f"n={self.n} K={self.K} L={self.L} m={self.m}"]
        lines += [f"  position[{i + 1}] = {rng(g)}" for i, g in enumerate(self.position_groups)]
        for i, (g, subs) in enumerate(zip(self.distance_groups, self.subgroups)):
            sizes = ",".join(str(len(s)) for s in subs)
            lines.append(f"  distance[{i + 1}] = {rng(g)} q={len(subs)} sizes={sizes}")
        return "\n".join(lines)


def _distance_sizes(L: int, m: int) -> list[int]:
    total = m * (m + 1) // 2
    sizes = [max(1, _round_half_up(L * i / total)) for i in range(1, m)]
    sizes.append(L - sum(sizes))
    if sizes[-1] < 1:
        raise ValueError(f"cannot split {L} distance variables into {m} groups")
    return sizes


def build_grouping(n: int, K: int, m: int, subgroup_size_hint: int = 0) -> GroupingPlan:
    """Deterministic grouping of ``n`` variables for an ``m``-objective task."""
    if not 1 <= K < n:
        raise ValueError("need 1 <= K < n")
    if m < 2:
        raise ValueError("need m >= 2")
    if K < m - 1:
        raise ValueError(f"K={K} cannot feed {m - 1} position groups")
    L = n - K
    if L < m:
        raise ValueError(f"L={L} cannot feed {m} distance groups")

    position = tuple(np.array_split(np.arange(K), m - 1))
    bounds = np.cumsum([K] + _distance_sizes(L, m))
    distance = tuple(np.arange(a, b) for a, b in zip(bounds[:-1], bounds[1:]))

    s = subgroup_size_hint if subgroup_size_hint > 0 else DEFAULT_SUBGROUP_SIZE
    subgroups = tuple(tuple(np.array_split(g, max(1, len(g) // s))) for g in distance)
    return GroupingPlan(n, K, m, position, distance, subgroups)


def aggregate_positions(plan: GroupingPlan, x) -> np.ndarray:
    """``y_i = |mean of x over position group i|``; works on ``(n,)`` or ``(N, n)``."""
    x = np.asarray(x, dtype=float)
    if x.shape[-1] != plan.n:
        raise ValueError(f"expected {plan.n} variables, got {x.shape[-1]}")
    return np.stack([np.abs(x[..., g].mean(axis=-1)) for g in plan.position_groups], axis=-1)
