"""Pareto-front shape functions H1-H10 and reference-front sampling."""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import IntEnum
from math import comb
from pathlib import Path

import numpy as np
from scipy.stats import qmc

from .pareto import das_dennis, nondominated_mask

__all__ = [
    "Shape",
    "eval_shape",
    "ReferenceFront",
    "sample_reference_front",
    "default_front_size",
]


class Shape(IntEnum):
    H1 = 1  # convex, m = 2
    H2 = 2  # concave, m = 2
    H3 = 3  # linear
    H4 = 4  # inverted linear
    H5 = 5  # sphere
    H6 = 6  # inverted sphere
    H7 = 7  # convex (powered sphere)
    H8 = 8  # degenerate
    H9 = 9  # irregular concave
    H10 = 10  # disconnected

    @property
    def needs_g(self) -> bool:
        return self in (Shape.H8, Shape.H10)


def _angular(theta: np.ndarray) -> np.ndarray:
    """Spherical-coordinate products; ``theta`` is ``(N, m-1)``, output ``(N, m)``."""
    N, k = theta.shape
    c = np.cos(theta)
    s = np.sin(theta)
    out = np.empty((N, k + 1))
    # h_1 = prod cos(theta_1..theta_{m-1}); h_j swaps the last cos for a sin
    cum = np.cumprod(np.concatenate([np.ones((N, 1)), c], axis=1), axis=1)
    out[:, 0] = cum[:, k]
    for j in range(1, k + 1):
        out[:, j] = cum[:, k - j] * s[:, k - j]
    return out


def _simplex(y: np.ndarray) -> np.ndarray:
    N, k = y.shape
    out = np.empty((N, k + 1))
    cum = np.cumprod(np.concatenate([np.ones((N, 1)), y], axis=1), axis=1)
    out[:, 0] = cum[:, k]
    for j in range(1, k + 1):
        out[:, j] = cum[:, k - j] * (1.0 - y[:, k - j])
    return out


def _check_arity(shape: Shape, m: int):
    if m < 2:
        raise ValueError("need at least two objectives")
    if shape in (Shape.H1, Shape.H2) and m != 2:
        raise ValueError(f"{shape.name} is defined for m = 2 only")


def eval_shape(shape: Shape | int, y, m: int, g=None) -> np.ndarray:
    """Map position aggregates ``y`` (``(m-1,)`` or ``(N, m-1)``) to ``h``.

    ``g`` (scalar or ``(N,)``) is the landscape value that H8 and H10
    embed; it must be given for those two shapes and omitted otherwise.
    """
    shape = Shape(shape)
    _check_arity(shape, m)
    y = np.asarray(y, dtype=float)
    single = y.ndim == 1
    Y = np.atleast_2d(y)
    if Y.shape[1] != m - 1:
        raise ValueError(f"expected {m - 1} position aggregates, got {Y.shape[1]}")
    if shape.needs_g:
        if g is None:
            raise ValueError(f"{shape.name} needs the landscape value g")
        G = np.broadcast_to(np.asarray(g, dtype=float), (Y.shape[0],))[:, None]
    elif g is not None:
        raise ValueError(f"{shape.name} does not take g")

    if shape is Shape.H1:
        h = np.column_stack([Y[:, 0], 1.0 - np.sqrt(Y[:, 0])])
    elif shape is Shape.H2:
        h = np.column_stack([Y[:, 0], 1.0 - Y[:, 0] ** 2])
    elif shape is Shape.H3:
        h = _simplex(Y)
    elif shape is Shape.H4:
        h = 1.0 - _simplex(Y)
        h[:, -1] = Y[:, 0]
    elif shape is Shape.H5:
        h = _angular(0.5 * np.pi * Y)
    elif shape is Shape.H6:
        h = 1.0 - _angular(0.5 * np.pi * Y)
    elif shape is Shape.H7:
        h = _angular(0.5 * np.pi * Y) ** 4
        h[:, -1] = np.sin(0.5 * np.pi * Y[:, 0]) ** 2
    elif shape is Shape.H8:
        theta = np.pi / (4.0 * (1.0 + G)) * (1.0 + 2.0 * G * Y)
        theta[:, 0] = 0.5 * np.pi * Y[:, 0]
        h = _angular(theta)
    elif shape is Shape.H9:
        h = _angular(0.5 * np.pi * (0.5 * Y + 0.25))
    else:
        h = np.empty((Y.shape[0], m))
        h[:, :-1] = Y / (1.0 + G)
        h[:, -1] = m - np.sum(Y * (1.0 + np.sin(3.0 * np.pi * Y)), axis=1) / (1.0 + G[:, 0])
    return h[0] if single else h


@dataclass(frozen=True)
class ReferenceFront:
    """Evenly spread sample of a true Pareto front, with its ideal and nadir."""

    points: np.ndarray
    label: str = ""
    ideal: np.ndarray = field(init=False)
    nadir: np.ndarray = field(init=False)

    def __post_init__(self):
        pts = np.array(self.points, dtype=float)
        if pts.ndim != 2 or len(pts) == 0:
            raise ValueError("reference front needs a nonempty (N, m) array")
        pts.setflags(write=False)
        object.__setattr__(self, "points", pts)
        object.__setattr__(self, "ideal", pts.min(axis=0))
        object.__setattr__(self, "nadir", pts.max(axis=0))

    @property
    def m(self) -> int:
        return self.points.shape[1]

    def __len__(self):
        return len(self.points)

    def save(self, path, extra_header: dict | None = None):
        header = {"label": self.label, "m": self.m, "count": len(self)}
        header.update(extra_header or {})
        lines = [f"# {k} = {v}" for k, v in header.items()]
        body = [" ".join(f"{v:.17g}" for v in row) for row in self.points]
        Path(path).write_text("\n".join(lines + body) + "\n")

    @classmethod
    def load(cls, path) -> "ReferenceFront":
        label = ""
        for line in Path(path).read_text().splitlines():
            if line.startswith("# label = "):
                label = line[len("# label = ") :]
        pts = np.loadtxt(path, comments="#", ndmin=2)
        return cls(pts, label=label)


def default_front_size(m: int) -> int:
    return {2: 1000, 3: 990, 5: 1001}.get(m, 1500)


def _lattice(m: int, target: int) -> np.ndarray:
    # divisions whose lattice size is closest to target
    best = min(range(1, 400), key=lambda H: abs(comb(H + m - 1, m - 1) - target))
    return das_dennis(m, best)


def _angles_from_sphere(s: np.ndarray) -> np.ndarray:
    """Inverse of ``_angular`` for nonnegative unit vectors, angles in [0, pi/2]."""
    m = s.shape[1]
    theta = np.empty((len(s), m - 1))
    rest = np.ones(len(s))
    for i in range(m - 1):
        # h_m is sin(theta_1); walking inwards peels one cosine each step
        col = m - 1 - i
        with np.errstate(invalid="ignore", divide="ignore"):
            v = np.where(rest > 1e-15, s[:, col] / rest, 0.0)
        theta[:, i] = np.arcsin(np.clip(v, 0.0, 1.0))
        rest = rest * np.cos(theta[:, i])
    return theta


def _good_interval_map(samples: int = 200_001):
    """Piecewise-linear map from [0, 1] onto the nondominated y-set of H10.

    With f_i = y_i and the last objective decreasing in
    phi(y) = y (1 + sin(3 pi y)), a coordinate is useful only where phi
    reaches a new running maximum.
    """
    grid = np.linspace(0.0, 1.0, samples)
    phi = grid * (1.0 + np.sin(3.0 * np.pi * grid))
    prev = np.maximum.accumulate(np.concatenate([[-np.inf], phi[:-1]]))
    good = phi > prev
    edges = np.flatnonzero(np.diff(np.concatenate([[0], good.astype(int), [0]])))
    intervals = [(grid[a], grid[b - 1]) for a, b in zip(edges[::2], edges[1::2])]
    lengths = np.array([b - a for a, b in intervals])
    cum = np.concatenate([[0.0], np.cumsum(lengths)]) / lengths.sum()

    def mapping(u):
        u = np.asarray(u, dtype=float)
        k = np.clip(np.searchsorted(cum, u, side="right") - 1, 0, len(intervals) - 1)
        starts = np.array([a for a, _ in intervals])
        return starts[k] + (u - cum[k]) * lengths.sum()

    return mapping


def sample_reference_front(shape: Shape | int, m: int, target_count: int | None = None) -> ReferenceFront:
    """Sample the ``g = 0`` front of ``shape`` with about ``target_count`` points.

    m = 2 uses a uniform grid in ``y``; m >= 3 maps a Das-Dennis lattice
    through the shape, except H8 (a curve in ``y_1``) and H10 (a
    quasi-random sample of the disconnected region, dominance-filtered).
    """
    shape = Shape(shape)
    _check_arity(shape, m)
    target = default_front_size(m) if target_count is None else int(target_count)
    if target < 100:
        raise ValueError("target_count must be at least 100")

    g = 0.0 if shape.needs_g else None
    if shape is Shape.H10:
        mapping = _good_interval_map()
        if m == 2:
            u = np.linspace(0.0, 1.0, target)[:, None]
        else:
            u = qmc.Halton(d=m - 1, scramble=False).random(target + 1)[1:]
        pts = eval_shape(shape, mapping(u), m, g)
        pts = pts[nondominated_mask(pts)]
    elif m == 2 or shape is Shape.H8:
        y = np.zeros((target, m - 1))
        y[:, 0] = np.linspace(0.0, 1.0, target)
        pts = eval_shape(shape, y, m, g)
    else:
        w = _lattice(m, target)
        if shape is Shape.H3:
            pts = w
        elif shape is Shape.H4:
            pts = 1.0 - w
        else:
            sphere = w / np.linalg.norm(w, axis=1, keepdims=True)
            if shape is Shape.H5:
                pts = sphere
            elif shape is Shape.H6:
                pts = 1.0 - sphere
            else:
                y = _angles_from_sphere(sphere) / (0.5 * np.pi)
                pts = eval_shape(shape, y, m, g)
    pts = np.unique(np.round(pts, 15), axis=0)
    return ReferenceFront(pts, label=f"{shape.name} m={m}")
