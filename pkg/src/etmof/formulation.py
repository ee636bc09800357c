"""Landscape terms and the seven formulation models F1-F7.

A *term* turns a batch of solutions ``X`` (``(N, n)``) and their position
aggregates ``Y`` (``(N, m-1)``) into one landscape value per row. Each term
also knows how to place its variables on its optimum, which the tests and
the reference-front tooling use to reach the Pareto front exactly.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import IntEnum

import numpy as np

from .basefn import BasicFn, eval_basic, known_minimizer, origin_offset
from .grouping import GroupingPlan, aggregate_positions
from .linkfn import (
    IndexedSlice,
    LinkageFn,
    LinkageOp,
    apply_linkage_operator,
    eval_linkage,
    invert_linkage_operator,
    linkage_target,
)
from .shapefn import Shape, eval_shape
from .transform import TransformBundle

__all__ = [
    "Model",
    "BasicTerm",
    "LinkageTerm",
    "SubgroupTerm",
    "evaluate_objectives",
    "landscape_values",
]


class Model(IntEnum):
    F1 = 1
    F2 = 2
    F3 = 3
    F4 = 4
    F5 = 5
    F6 = 6
    F7 = 7

    @property
    def multiplicative(self) -> bool:
        return self in (Model.F1, Model.F2, Model.F4, Model.F6)

    @property
    def terms_expected(self) -> str:
        return "one" if self is Model.F1 else "per-group"


def _second_aggregate(Y):
    return Y[:, 1] if Y.shape[1] > 1 else Y[:, 0]


@dataclass(frozen=True)
class BasicTerm:
    """``b(T(x_S) + c)`` over variable set ``S`` with optional transform ``T``.

    ``c`` is the origin offset of the Rosenbrock/HappyCat family, applied only
    when a transform is present; bare applications evaluate ``b(x_S)``.
    """

    fn: BasicFn
    indices: np.ndarray
    bundle: TransformBundle | None = None

    @property
    def offset(self) -> float:
        return origin_offset(self.fn) if self.bundle is not None else 0.0

    def label(self) -> str:
        return f"b{int(self.fn)}"

    def __call__(self, X, Y):
        z = X[:, self.indices]
        if self.bundle is not None:
            z = self.bundle.apply(z) + self.offset
        return eval_basic(self.fn, z, check=False)

    def optimum(self, Y):
        d = len(self.indices)
        zstar = known_minimizer(self.fn, d) - self.offset
        x = self.bundle.preimage(zstar) if self.bundle is not None else zstar
        return np.broadcast_to(x, (len(Y), d))


@dataclass(frozen=True)
class LinkageTerm:
    """``L(T(x_S), y1[, y2])`` with ``T`` a rotation or identity."""

    fn: LinkageFn
    indices: np.ndarray
    n_total: int
    bundle: TransformBundle | None = None

    def label(self) -> str:
        return f"L{int(self.fn)}"

    def __call__(self, X, Y):
        z = X[:, self.indices]
        if self.bundle is not None:
            z = self.bundle.apply(z)
        sl = IndexedSlice(z, self.indices + 1, self.n_total)
        return eval_linkage(self.fn, sl, Y[:, 0], _second_aggregate(Y))

    def optimum(self, Y):
        target = linkage_target(self.fn, self.indices + 1, self.n_total, Y[:, 0], _second_aggregate(Y))
        return self.bundle.preimage(target) if self.bundle is not None else target


@dataclass(frozen=True)
class SubgroupTerm:
    """Mean of ``b(z)`` over the subgroups of one distance group.

    ``z`` is the raw subgroup (``op`` of ``None``) or the Lg-transformed one.
    """

    fn: BasicFn
    subgroups: tuple[np.ndarray, ...]
    n_total: int
    op: LinkageOp | None = None
    lo: float = -1.0
    hi: float = 1.0
    _layout: tuple = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        # array_split yields at most two sizes, each a contiguous run
        layout = []
        for size in sorted({len(s) for s in self.subgroups}, reverse=True):
            members = [s for s in self.subgroups if len(s) == size]
            layout.append((size, len(members), np.concatenate(members)))
        object.__setattr__(self, "_layout", tuple(layout))

    @property
    def indices(self) -> np.ndarray:
        return np.concatenate(self.subgroups)

    @property
    def offset(self) -> float:
        return origin_offset(self.fn) if self.op is not None else 0.0

    def label(self) -> str:
        return f"b{int(self.fn)}"

    def values(self, X, Y) -> np.ndarray:
        """Per-subgroup landscape values, ``(N, q)``."""
        out = []
        for size, count, idx in self._layout:
            z = X[:, idx]
            if self.op is not None:
                z = apply_linkage_operator(self.op, IndexedSlice(z, idx + 1, self.n_total), Y[:, 0],
                                           self.lo, self.hi) + self.offset
            out.append(eval_basic(self.fn, z.reshape(len(X), count, size), check=False))
        return np.concatenate(out, axis=1)

    def __call__(self, X, Y):
        return self.values(X, Y).mean(axis=1)

    def optimum(self, Y):
        N = len(Y)
        idx = self.indices
        x = np.empty((N, len(idx)))
        pos = 0
        for sub in self.subgroups:
            x[:, pos : pos + len(sub)] = known_minimizer(self.fn, len(sub)) - self.offset
            pos += len(sub)
        if self.op is None:
            return x
        return invert_linkage_operator(self.op, x, idx + 1, self.n_total, Y[:, 0], self.lo, self.hi)


def landscape_values(terms, X, Y) -> np.ndarray:
    """Stack every term's value: ``(N, len(terms))``."""
    return np.column_stack([t(X, Y) for t in terms])


def evaluate_objectives(model: Model | int, plan: GroupingPlan, shape: Shape | int, terms, x) -> np.ndarray:
    """Objective vector(s) of ``x`` under formulation ``model``.

    ``terms`` holds one landscape term for F1 and one per distance group
    otherwise (F6/F7 terms average their subgroups). H8 and H10 receive the
    shared landscape value (F1's ``g`` or F4/F5's sum). Under F1 the H10
    display already divides by ``1 + g`` and is used as the whole objective.
    """
    model = Model(model)
    shape = Shape(shape)
    x = np.asarray(x, dtype=float)
    single = x.ndim == 1
    X = np.atleast_2d(x)
    m = plan.m
    expected = 1 if model is Model.F1 else m
    if len(terms) != expected:
        raise ValueError(f"{model.name} needs {expected} landscape terms, got {len(terms)}")

    Y = aggregate_positions(plan, X)
    G = landscape_values(terms, X, Y)

    if model in (Model.F1, Model.F4, Model.F5):
        shared = G.sum(axis=1)
        h = eval_shape(shape, Y, m, shared if shape.needs_g else None)
        if model is Model.F5:
            f = h + shared[:, None]
        elif model is Model.F1 and shape is Shape.H10:
            f = h
        else:
            f = h * (1.0 + shared[:, None])
    else:
        if shape.needs_g:
            raise ValueError(f"{shape.name} needs a shared landscape value (F1, F4 or F5)")
        h = eval_shape(shape, Y, m)
        f = h * (1.0 + G) if model.multiplicative else h + G
    return f[0] if single else f
