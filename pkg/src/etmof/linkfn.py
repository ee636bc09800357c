"""Linkage landscapes L1-L8 and the Lg1/Lg2 variable-linkage operators.

A linkage landscape couples distance variables to the position aggregate
``y1`` (and ``y2`` for L6). The optimum of each element depends on its
ordinal in the *whole* solution vector, so slices carry their global
1-based indices along with the values.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum, IntEnum

import numpy as np

__all__ = [
    "LinkageFn",
    "LinkageOp",
    "IndexedSlice",
    "eval_linkage",
    "linkage_target",
    "apply_linkage_operator",
    "invert_linkage_operator",
]


class LinkageFn(IntEnum):
    L1 = 1
    L2 = 2
    L3 = 3
    L4 = 4
    L5 = 5
    L6 = 6
    L7 = 7
    L8 = 8


class LinkageOp(Enum):
    LG1 = "Lg1"
    LG2 = "Lg2"


_POWER_FAMILY = frozenset({LinkageFn.L2, LinkageFn.L3, LinkageFn.L8})


@dataclass(frozen=True)
class IndexedSlice:
    """Values of some distance variables plus their ordinals in the full ``x``.

    ``values`` may carry leading batch axes; ``global_index`` is 1-D and
    aligned with the last axis.
    """

    values: np.ndarray
    global_index: np.ndarray
    n_total: int

    def __post_init__(self):
        values = np.asarray(self.values, dtype=float)
        idx = np.asarray(self.global_index, dtype=np.int64)
        object.__setattr__(self, "values", values)
        object.__setattr__(self, "global_index", idx)
        if idx.ndim != 1 or values.shape[-1:] != idx.shape:
            raise ValueError("values and global_index must align on the last axis")
        if idx.size and (idx[0] < 1 or idx[-1] > self.n_total or np.any(np.diff(idx) <= 0)):
            raise ValueError("global_index must be strictly increasing within 1..n_total")


def _power_exponent(idx, n):
    return 0.5 * (1.0 + 3.0 * (idx - 2.0) / (n - 2.0))


def linkage_target(fn: LinkageFn | int, idx, n: int, y1, y2=None) -> np.ndarray:
    """Closed-form optimum of each element: the value that zeroes its residual.

    ``y1``/``y2`` may be arrays of shape ``(N,)``; the result then has shape
    ``(N, len(idx))``.
    """
    fn = LinkageFn(fn)
    idx = np.asarray(idx, dtype=float)
    y1 = np.asarray(y1, dtype=float)[..., None]
    phase = idx * np.pi / n
    if fn is LinkageFn.L1:
        amp = 0.3 * y1**2 * np.cos(24.0 * np.pi * y1 + 4.0 * phase) + 0.6 * y1
        return amp * np.sin(6.0 * np.pi * y1 + phase)
    if fn in _POWER_FAMILY:
        return np.power(y1, _power_exponent(idx, n))
    if fn is LinkageFn.L4:
        return 0.8 * y1 * np.cos(6.0 * np.pi * y1 + phase)
    if fn is LinkageFn.L5:
        return 0.8 * y1 * np.sin(6.0 * np.pi * y1 + phase)
    if fn is LinkageFn.L6:
        y2 = np.asarray(y2, dtype=float)[..., None]
        return 2.0 * y2 * np.sin(2.0 * np.pi * y1 + phase)
    return np.sin(6.0 * np.pi * y1 + phase)


def eval_linkage(fn: LinkageFn | int, xd: IndexedSlice, y1, y2=None):
    """Evaluate linkage landscape ``fn`` on the slice ``xd``.

    Args:
        fn: One of L1..L8.
        xd: Distance variables with their global ordinals.
        y1: First position aggregate in [0, 1]; scalar or one per batch row.
        y2: Second position aggregate, required by L6 only (ignored otherwise).

    Returns:
        Scalar for an unbatched slice, else one value per batch row.
    """
    fn = LinkageFn(fn)
    if xd.values.shape[-1] == 0:
        raise ValueError("linkage slice is empty")
    if fn is LinkageFn.L6 and y2 is None:
        raise ValueError("L6 needs y2")
    if fn in _POWER_FAMILY and xd.n_total < 3:
        raise ValueError(f"{fn.name} needs n_total >= 3")
    x = xd.values
    r = x - linkage_target(fn, xd.global_index, xd.n_total, y1, y2)
    size = x.shape[-1]
    if fn is LinkageFn.L3:
        root = np.sqrt(xd.global_index.astype(float))
        prod = np.prod(np.cos(20.0 * np.pi * r / root), axis=-1)
        out = (2.0 / size) * (4.0 * np.sum(r**2, axis=-1) - 2.0 * prod + 2.0)
    elif fn is LinkageFn.L8:
        out = (2.0 / size) * np.sum(4.0 * r**2 - np.cos(8.0 * np.pi * r) + 1.0, axis=-1)
    else:
        out = (2.0 / size) * np.sum(r**2, axis=-1)
    if x.ndim == 1:
        return float(np.squeeze(out))
    return out


def _operator_scale(op: LinkageOp, idx, n_total):
    ratio = np.asarray(idx, dtype=float) / n_total
    if LinkageOp(op) is LinkageOp.LG1:
        return 1.0 + ratio
    return 1.0 + np.cos(0.5 * np.pi * ratio)


def _operator_root(scale, y1, lo, hi):
    return lo + y1 * (hi - lo) / scale


def apply_linkage_operator(op: LinkageOp | str, xd: IndexedSlice, y1, lo, hi) -> np.ndarray:
    """Index-dependent linkage transform used by the large-scale tasks.

    ``z_j = s(idx_j) * (x_j - lo_j) - y1 * (hi_j - lo_j)`` with
    ``s = 1 + idx/n`` (Lg1) or ``s = 1 + cos(pi/2 * idx/n)`` (Lg2). The
    ``z = 0`` preimage ``t = lo + y1 (hi - lo) / s`` always lies inside the
    box. It is computed as ``s * (x - t)`` so that ``x == t`` gives an exact
    zero, which the quarter-power HappyCat needs to reach its optimum.
    """
    op = LinkageOp(op)
    lo = np.broadcast_to(np.asarray(lo, dtype=float), xd.global_index.shape)
    hi = np.broadcast_to(np.asarray(hi, dtype=float), xd.global_index.shape)
    y1 = np.asarray(y1, dtype=float)
    if y1.ndim:
        y1 = y1[..., None]
    scale = _operator_scale(op, xd.global_index, xd.n_total)
    return scale * (xd.values - _operator_root(scale, y1, lo, hi))


def invert_linkage_operator(op: LinkageOp | str, z, global_index, n_total: int, y1, lo, hi) -> np.ndarray:
    """Preimage of ``z`` under :func:`apply_linkage_operator`."""
    op = LinkageOp(op)
    global_index = np.asarray(global_index)
    lo = np.broadcast_to(np.asarray(lo, dtype=float), global_index.shape)
    hi = np.broadcast_to(np.asarray(hi, dtype=float), global_index.shape)
    y1 = np.asarray(y1, dtype=float)
    if y1.ndim:
        y1 = y1[..., None]
    scale = _operator_scale(op, global_index, n_total)
    return _operator_root(scale, y1, lo, hi) + np.asarray(z, dtype=float) / scale
