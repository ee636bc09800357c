"""Seeded rotations and shifts.

Random numbers come from SplitMix64 so that instances can be rebuilt
bit-for-bit in any language: output k of seed s is ``mix(s + k * GAMMA)``.
Uniforms take the top 53 bits; normals use Box-Muller on consecutive pairs.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass

import numpy as np

__all__ = [
    "SUITE_TAG",
    "SPLITMIX64_SEED0",
    "splitmix64",
    "uniform01",
    "standard_normal",
    "bundle_seed",
    "make_rotation",
    "make_shift",
    "TransformBundle",
]

SUITE_TAG = "etmof-v1"
BLOCK_DIM = 64
DENSE_LIMIT = 1024

_GAMMA = np.uint64(0x9E3779B97F4A7C15)
_M1 = np.uint64(0xBF58476D1CE4E5B9)
_M2 = np.uint64(0x94D049BB133111EB)

# first ten outputs for seed 0, the cross-language self-test vector
SPLITMIX64_SEED0 = (
    0xE220A8397B1DCDAF,
    0x6E789E6AA1B965F4,
    0x06C45D188009454F,
    0xF88BB8A8724C81EC,
    0x1B39896A51A8749B,
    0x53CB9F0C747EA2EA,
    0x2C829ABE1F4532E1,
    0xC584133AC916AB3C,
    0x3EE5789041C98AC3,
    0xF3B8488C368CB0A6,
)


def splitmix64(seed: int, count: int, offset: int = 0) -> np.ndarray:
    """Outputs ``offset+1 .. offset+count`` of SplitMix64 seeded with ``seed``."""
    k = np.arange(offset + 1, offset + count + 1, dtype=np.uint64)
    with np.errstate(over="ignore"):
        z = np.uint64(seed % 2**64) + k * _GAMMA
        z = (z ^ (z >> np.uint64(30))) * _M1
        z = (z ^ (z >> np.uint64(27))) * _M2
    return z ^ (z >> np.uint64(31))


def uniform01(seed: int, count: int, offset: int = 0) -> np.ndarray:
    """Uniforms in [0, 1) with 53-bit resolution."""
    return (splitmix64(seed, count, offset) >> np.uint64(11)).astype(np.float64) * 2.0**-53


def standard_normal(seed: int, count: int) -> np.ndarray:
    pairs = (count + 1) // 2
    u = uniform01(seed, 2 * pairs).reshape(pairs, 2)
    r = np.sqrt(-2.0 * np.log(1.0 - u[:, 0]))
    z = np.column_stack([r * np.cos(2.0 * np.pi * u[:, 1]), r * np.sin(2.0 * np.pi * u[:, 1])])
    return z.ravel()[:count]


def bundle_seed(instance: int, task: int, group: int, kind: str, tag: str = SUITE_TAG) -> int:
    """Stable 64-bit seed for one (instance, task, group, kind) transform."""
    key = f"{tag}|{instance}|{task}|{group}|{kind}".encode()
    return int.from_bytes(hashlib.blake2b(key, digest_size=8).digest(), "big")


def _haar(seed: int, dim: int) -> np.ndarray:
    A = standard_normal(seed, dim * dim).reshape(dim, dim)
    Q, R = np.linalg.qr(A)
    return Q * np.where(np.diag(R) < 0, -1.0, 1.0)


def make_rotation(seed: int, dim: int) -> np.ndarray:
    """Haar-distributed orthogonal matrix; block-diagonal 64x64 above 1024 dims."""
    if dim < 1:
        raise ValueError("dim must be positive")
    if dim <= DENSE_LIMIT:
        return _haar(seed, dim)
    out = np.zeros((dim, dim))
    for b, start in enumerate(range(0, dim, BLOCK_DIM)):
        size = min(BLOCK_DIM, dim - start)
        sub = int(splitmix64(seed, 1, offset=b)[0])
        out[start : start + size, start : start + size] = _haar(sub, size)
    return out


def make_shift(seed: int, dim: int, lo: float, hi: float) -> np.ndarray:
    """Uniform shift vector in the central 80% of ``[lo, hi]``."""
    if not lo < hi:
        raise ValueError("need lo < hi")
    span = hi - lo
    return lo + 0.1 * span + 0.8 * span * uniform01(seed, dim)


@dataclass(frozen=True)
class TransformBundle:
    """``z = R (x - o)``; ``rotation``/``shift`` of ``None`` mean identity/zero."""

    dim: int
    rotation: np.ndarray | None = None
    shift: np.ndarray | None = None
    seed: int = 0

    @classmethod
    def identity(cls, dim: int) -> "TransformBundle":
        return cls(dim)

    @classmethod
    def build(cls, dim: int, *, rotate: bool, shift: bool, instance: int, task: int, group: int,
              lo: float = -1.0, hi: float = 1.0) -> "TransformBundle":
        rseed = bundle_seed(instance, task, group, "rot")
        sseed = bundle_seed(instance, task, group, "shift")
        R = make_rotation(rseed, dim) if rotate else None
        o = make_shift(sseed, dim, lo, hi) if shift else None
        return cls(dim, R, o, rseed if rotate else sseed)

    def apply(self, x) -> np.ndarray:
        x = np.asarray(x, dtype=float)
        if x.shape[-1] != self.dim:
            raise ValueError(f"expected {self.dim} variables, got {x.shape[-1]}")
        z = x - self.shift if self.shift is not None else x
        if self.rotation is not None:
            z = z @ self.rotation.T
        return z

    def preimage(self, z) -> np.ndarray:
        """The ``x`` with ``apply(x) == z`` (up to rounding)."""
        z = np.asarray(z, dtype=float)
        x = z @ self.rotation if self.rotation is not None else z
        return x + self.shift if self.shift is not None else x
