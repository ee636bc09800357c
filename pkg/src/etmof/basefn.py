"""Basic single-objective landscape components b1-b14.

Every function reduces over the last axis, so a batch of vectors with shape
``(..., d)`` yields values with shape ``(...)``.
"""

from __future__ import annotations

from enum import IntEnum

import numpy as np

__all__ = ["BasicFn", "eval_basic", "known_minimizer", "ROSENBROCK_FAMILY"]


class BasicFn(IntEnum):
    SPHERE = 1
    ELLIPTIC = 2
    BENT_CIGAR = 3
    DISCUS = 4
    ROSENBROCK = 5
    ACKLEY = 6
    WEIERSTRASS = 7
    GRIEWANK = 8
    RASTRIGIN = 9
    MOD_SCHWEFEL = 10
    KATSUURA = 11
    HAPPYCAT = 12
    EXP_GRIEW_ROSEN = 13
    ABS_MEAN = 14


ROSENBROCK_FAMILY = frozenset({BasicFn.ROSENBROCK, BasicFn.EXP_GRIEW_ROSEN})

# Weierstrass constants
_W_ALPHA = 0.5
_W_BETA = 3.0
_W_K = np.arange(21)

# Schwefel offset z* and the value u(z*) it attains; using the exact u(z*)
# instead of the rounded 418.9829 puts the minimum at 0 to double precision.
_SCHWEFEL_Z = 4.209687462275036e2
_SCHWEFEL_PEAK = _SCHWEFEL_Z * np.sin(np.sqrt(_SCHWEFEL_Z))


def _sphere(x):
    return np.sum(x**2, axis=-1)


def _elliptic(x):
    d = x.shape[-1]
    if d == 1:
        return x[..., 0] ** 2
    w = 10.0 ** (6.0 * np.arange(d) / (d - 1))
    return np.sum(w * x**2, axis=-1)


def _bent_cigar(x):
    return x[..., 0] ** 2 + 1e6 * np.sum(x[..., 1:] ** 2, axis=-1)


def _discus(x):
    return 1e6 * x[..., 0] ** 2 + np.sum(x[..., 1:] ** 2, axis=-1)


def _rosenbrock(x):
    a, b = x[..., :-1], x[..., 1:]
    return np.sum(100.0 * (a**2 - b) ** 2 + (a - 1.0) ** 2, axis=-1)


def _ackley(x):
    d = x.shape[-1]
    s1 = np.sum(x**2, axis=-1) / d
    s2 = np.sum(np.cos(2.0 * np.pi * x), axis=-1) / d
    return 20.0 - 20.0 * np.exp(-0.2 * np.sqrt(s1)) + np.e - np.exp(s2)


def _weierstrass(x):
    d = x.shape[-1]
    ak = _W_ALPHA**_W_K
    bk = 2.0 * np.pi * _W_BETA**_W_K
    inner = np.sum(ak * np.cos(bk * (x[..., None] + 0.5)), axis=-1)
    offset = np.sum(ak * np.cos(0.5 * bk))
    return np.sum(inner, axis=-1) - d * offset


def _griewank(x):
    d = x.shape[-1]
    root = np.sqrt(np.arange(1, d + 1))
    return np.sum(x**2, axis=-1) / 4000.0 - np.prod(np.cos(x / root), axis=-1) + 1.0


def _rastrigin(x):
    return np.sum(x**2 - 10.0 * np.cos(2.0 * np.pi * x) + 10.0, axis=-1)


def _mod_schwefel(x):
    d = x.shape[-1]
    z = x + _SCHWEFEL_Z
    absz = np.abs(z)
    u = z * np.sin(np.sqrt(absz))
    hi = z > 500.0
    if np.any(hi):
        r = 500.0 - np.fmod(z[hi], 500.0)
        u[hi] = r * np.sin(np.sqrt(np.abs(r))) - (z[hi] - 500.0) ** 2 / (10000.0 * d)
    lo = z < -500.0
    if np.any(lo):
        r = np.fmod(absz[lo], 500.0) - 500.0
        u[lo] = r * np.sin(np.sqrt(np.abs(r))) - (z[lo] + 500.0) ** 2 / (10000.0 * d)
    return _SCHWEFEL_PEAK * d - np.sum(u, axis=-1)


def _round_half_away(v):
    return np.sign(v) * np.floor(np.abs(v) + 0.5)


def _katsuura(x):
    d = x.shape[-1]
    p2 = 2.0 ** np.arange(1, 33)
    t = p2 * x[..., None]
    s = np.sum(np.abs(t - _round_half_away(t)) / p2, axis=-1)
    i = np.arange(1, d + 1)
    factors = (1.0 + i * s) ** (10.0 / d**1.2)
    scale = 10.0 / d**2
    return scale * np.prod(factors, axis=-1) - scale


def _happycat(x):
    d = x.shape[-1]
    sq = np.sum(x**2, axis=-1)
    return np.abs(sq - d) ** 0.25 + (0.5 * sq + np.sum(x, axis=-1)) / d + 0.5


def _exp_griew_rosen(x):
    a = x
    b = np.roll(x, -1, axis=-1)
    r = 100.0 * (a**2 - b) ** 2 + (a - 1.0) ** 2
    return np.sum(r**2 / 4000.0 - np.cos(r) + 1.0, axis=-1)


def _abs_mean(x):
    return 9.0 * np.mean(np.abs(x), axis=-1)


_IMPL = {
    BasicFn.SPHERE: _sphere,
    BasicFn.ELLIPTIC: _elliptic,
    BasicFn.BENT_CIGAR: _bent_cigar,
    BasicFn.DISCUS: _discus,
    BasicFn.ROSENBROCK: _rosenbrock,
    BasicFn.ACKLEY: _ackley,
    BasicFn.WEIERSTRASS: _weierstrass,
    BasicFn.GRIEWANK: _griewank,
    BasicFn.RASTRIGIN: _rastrigin,
    BasicFn.MOD_SCHWEFEL: _mod_schwefel,
    BasicFn.KATSUURA: _katsuura,
    BasicFn.HAPPYCAT: _happycat,
    BasicFn.EXP_GRIEW_ROSEN: _exp_griew_rosen,
    BasicFn.ABS_MEAN: _abs_mean,
}


def eval_basic(fn: BasicFn | int, x, *, check: bool = True):
    """Evaluate basic function ``fn`` on ``x`` along its last axis.

    Args:
        fn: Which of b1..b14 (a ``BasicFn`` or its integer id).
        x: Array of shape ``(..., d)``.
        check: Validate length and NaN-freeness. Internal hot paths skip it.

    Returns:
        Scalar for 1-D input, else an array of shape ``x.shape[:-1]``.

    Raises:
        ValueError: empty input, ``d < 2`` for the Rosenbrock family, or NaN.
    """
    fn = BasicFn(fn)
    x = np.asarray(x, dtype=float)
    if check:
        if x.ndim == 0 or x.shape[-1] < 1:
            raise ValueError("basic function input must be a nonempty vector")
        if fn in ROSENBROCK_FAMILY and x.shape[-1] < 2:
            raise ValueError(f"{fn.name} needs at least 2 variables")
        if np.isnan(x).any():
            raise ValueError("NaN in basic function input")
    out = _IMPL[fn](x)
    return float(out) if np.ndim(out) == 0 else out


def known_minimizer(fn: BasicFn | int, d: int) -> np.ndarray:
    """Global minimizer of ``fn`` in ``d`` dimensions (value 0 at this point)."""
    fn = BasicFn(fn)
    if fn in ROSENBROCK_FAMILY:
        return np.ones(d)
    if fn is BasicFn.HAPPYCAT:
        return -np.ones(d)
    return np.zeros(d)


def origin_offset(fn: BasicFn | int) -> float:
    """Offset added to a transformed input so the minimizer lands on the origin.

    Rosenbrock-family functions get +1 and HappyCat -1, the usual CEC
    convention for shifted/rotated compositions.
    """
    fn = BasicFn(fn)
    if fn in ROSENBROCK_FAMILY:
        return 1.0
    if fn is BasicFn.HAPPYCAT:
        return -1.0
    return 0.0
