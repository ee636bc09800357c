"""IGD, MIGD and the mean standard score used to rank optimizers."""

from __future__ import annotations

import numpy as np
from scipy.spatial.distance import cdist

from .shapefn import ReferenceFront

__all__ = ["igd", "migd", "mss", "STANDARD_CHANGES", "SIGMA_FLOOR"]

STANDARD_CHANGES = 30
SIGMA_FLOOR = 1e-12


def igd(S, Sstar: ReferenceFront, metric: str = "cityblock") -> float:
    """Inverted generational distance of ``S`` to the reference front.

    Both sets are first scaled by the reference ideal/nadir so the front
    spans the unit box; the default distance is Manhattan.

    Args:
        S: ``(N, m)`` obtained objective vectors.
        Sstar: Reference front.
        metric: Any ``scipy.spatial.distance.cdist`` metric name;
            ``"euclidean"`` gives the conventional IGD.

    Returns:
        Mean over reference points of the distance to the nearest point of ``S``.
    """
    S = np.atleast_2d(np.asarray(S, dtype=float))
    if S.size == 0:
        raise ValueError("obtained set is empty")
    if S.shape[1] != Sstar.m:
        raise ValueError(f"objective count mismatch: {S.shape[1]} vs {Sstar.m}")
    span = Sstar.nadir - Sstar.ideal
    span = np.where(span > 0, span, 1.0)
    A = (Sstar.points - Sstar.ideal) / span
    B = (S - Sstar.ideal) / span
    # chunk the reference side to keep the distance matrix small
    total = 0.0
    step = max(1, 2_000_000 // max(1, len(B)))
    for start in range(0, len(A), step):
        total += cdist(A[start : start + step], B, metric=metric).min(axis=1).sum()
    return float(total / len(A))


def migd(per_change_igds, T: int = STANDARD_CHANGES) -> float:
    """Mean IGD over the ``T`` environments of a dynamic run."""
    v = np.asarray(per_change_igds, dtype=float).ravel()
    if v.size == 0:
        raise ValueError("no IGD values")
    if v.size != T:
        raise ValueError(f"expected {T} per-change IGD values, got {v.size}")
    return float(v.mean())


def mss(values) -> np.ndarray:
    """Mean standard score of each optimizer run.

    Args:
        values: Array ``(optimizers, runs, tasks)`` of IGD or MIGD values.

    Returns:
        Array ``(optimizers, runs)``. Each task is standardized with the mean
        and population standard deviation over all optimizers and runs; a
        task whose deviation is below ``SIGMA_FLOOR`` contributes zero.
    """
    V = np.asarray(values, dtype=float)
    if V.ndim != 3:
        raise ValueError("values must have shape (optimizers, runs, tasks)")
    if V.shape[0] * V.shape[1] < 2:
        raise ValueError("need at least two optimizer runs to standardize")
    mu = V.mean(axis=(0, 1))
    sigma = V.std(axis=(0, 1))
    safe = np.where(sigma < SIGMA_FLOOR, 1.0, sigma)
    z = np.where(sigma < SIGMA_FLOOR, 0.0, (V - mu) / safe)
    return z.mean(axis=2)
