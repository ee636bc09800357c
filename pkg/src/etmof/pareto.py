"""Dominance utilities: filtering, fast nondominated sorting, crowding distance."""

from __future__ import annotations

import numpy as np

__all__ = [
    "dominates",
    "nondominated_mask",
    "nondominated",
    "nondominated_sort",
    "crowding_distance",
    "das_dennis",
]


def dominates(a, b) -> bool:
    """True if ``a`` Pareto-dominates ``b`` (minimization)."""
    a = np.asarray(a)
    b = np.asarray(b)
    return bool(np.all(a <= b) and np.any(a < b))


def nondominated_mask(F: np.ndarray) -> np.ndarray:
    """Boolean mask of the points of ``F`` not dominated by any other point.

    Duplicates do not dominate each other, so all copies survive.
    """
    F = np.asarray(F, dtype=float)
    n = len(F)
    keep = np.ones(n, dtype=bool)
    if n <= 1:
        return keep
    # sweep in lexicographic order: a point can only be dominated by an earlier one
    order = np.lexsort(F.T[::-1])
    G = F[order]
    alive = np.ones(n, dtype=bool)
    # bound the (chunk, n, m) comparison tensors to a few million cells
    chunk = max(1, min(n, 4_000_000 // (n * F.shape[1])))
    for start in range(0, n, chunk):
        block = G[start : start + chunk]
        end = start + len(block)
        cand = G[:end][alive[:end]]
        le = np.all(cand[None, :, :] <= block[:, None, :], axis=2)
        lt = np.any(cand[None, :, :] < block[:, None, :], axis=2)
        dom = le & lt
        alive[start : start + len(block)] = ~dom.any(axis=1)
    keep[order] = alive
    return keep


def nondominated(F: np.ndarray) -> np.ndarray:
    return np.asarray(F)[nondominated_mask(F)]


def nondominated_sort(F: np.ndarray) -> np.ndarray:
    """Front rank (0 = best) of every row of ``F``, Deb's fast sort."""
    F = np.asarray(F, dtype=float)
    n = len(F)
    le = np.all(F[:, None, :] <= F[None, :, :], axis=2)
    lt = np.any(F[:, None, :] < F[None, :, :], axis=2)
    dom = le & lt  # dom[i, j]: i dominates j
    count = dom.sum(axis=0)
    rank = np.full(n, -1, dtype=np.int64)
    current = np.flatnonzero(count == 0)
    r = 0
    while current.size:
        rank[current] = r
        count = count - dom[current].sum(axis=0)
        count[rank >= 0] = -1
        current = np.flatnonzero(count == 0)
        r += 1
    return rank


def crowding_distance(F: np.ndarray) -> np.ndarray:
    """NSGA-II crowding distance; boundary points get ``inf``."""
    F = np.asarray(F, dtype=float)
    n, m = F.shape
    if n <= 2:
        return np.full(n, np.inf)
    dist = np.zeros(n)
    for k in range(m):
        order = np.argsort(F[:, k], kind="stable")
        col = F[order, k]
        span = col[-1] - col[0]
        dist[order[0]] = dist[order[-1]] = np.inf
        if span > 0:
            dist[order[1:-1]] += (col[2:] - col[:-2]) / span
    return dist


def das_dennis(m: int, divisions: int) -> np.ndarray:
    """Simplex-lattice weights with ``divisions`` steps per axis, rows sum to 1."""
    if m == 1:
        return np.ones((1, 1))
    rows = []

    def rec(prefix, left, depth):
        if depth == m - 1:
            rows.append(prefix + [left])
            return
        for v in range(left + 1):
            rec(prefix + [v], left - v, depth + 1)

    rec([], divisions, 0)
    return np.asarray(rows, dtype=float) / divisions
