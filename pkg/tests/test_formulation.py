import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from etmof.basefn import BasicFn
from etmof.formulation import BasicTerm, Model, SubgroupTerm, evaluate_objectives
from etmof.grouping import aggregate_positions, build_grouping
from etmof.linkfn import IndexedSlice, eval_linkage
from etmof.shapefn import Shape, eval_shape
from etmof.suite import instantiate, optimum_solution


class Plus:
    """Wraps a term and adds a constant to its value."""

    def __init__(self, term, delta):
        self.term = term
        self.delta = delta

    def __call__(self, X, Y):
        return self.term(X, Y) + self.delta


def sphere_terms(plan):
    return [BasicTerm(BasicFn.SPHERE, g) for g in plan.distance_groups]


def test_f3_zero_g_gives_shape():
    plan = build_grouping(20, 2, 3)
    x = np.zeros(20)
    x[:2] = [0.3, -0.6]
    f = evaluate_objectives(Model.F3, plan, Shape.H3, sphere_terms(plan), x)
    np.testing.assert_array_equal(f, eval_shape(Shape.H3, aggregate_positions(plan, x), 3))


def test_f1_zero_g_gives_shape():
    plan = build_grouping(20, 1, 2)
    x = np.zeros(20)
    x[0] = 0.49
    terms = [BasicTerm(BasicFn.SPHERE, plan.distance_indices)]
    f = evaluate_objectives(Model.F1, plan, Shape.H2, terms, x)
    np.testing.assert_array_equal(f, eval_shape(Shape.H2, [0.49], 2))


def test_f6_mean_six_gives_seven_h():
    plan = build_grouping(24, 1, 2)
    terms = [SubgroupTerm(BasicFn.SPHERE, plan.subgroups[i], plan.n) for i in range(2)]
    x = np.zeros(24)
    x[0] = 0.36
    for subs in plan.subgroups:
        for s in subs:
            x[s] = np.sqrt(6.0 / len(s))
    assert len(plan.subgroups[1]) == 3
    h = eval_shape(Shape.H1, [0.36], 2)
    f = evaluate_objectives(Model.F6, plan, Shape.H1, terms, x)
    np.testing.assert_allclose(f, 7 * h, rtol=1e-12)
    f7 = evaluate_objectives(Model.F7, plan, Shape.H1, terms, x)
    np.testing.assert_allclose(f7, h + 6, rtol=1e-12)


def test_models_combine_as_defined():
    plan = build_grouping(12, 1, 2)
    rng = np.random.default_rng(1)
    x = rng.uniform(-1, 1, 12)
    terms = sphere_terms(plan)
    y = aggregate_positions(plan, x)
    h = eval_shape(Shape.H2, y, 2)
    g = np.array([np.sum(x[grp] ** 2) for grp in plan.distance_groups])
    np.testing.assert_allclose(evaluate_objectives(2, plan, 2, terms, x), h * (1 + g))
    np.testing.assert_allclose(evaluate_objectives(3, plan, 2, terms, x), h + g)
    np.testing.assert_allclose(evaluate_objectives(4, plan, 2, terms, x), h * (1 + g.sum()))
    np.testing.assert_allclose(evaluate_objectives(5, plan, 2, terms, x), h + g.sum())


def test_etmof1_t1_example():
    task = instantiate(1).task(1)
    x = optimum_solution(task, [0.25])
    # independent composition: rotate the distance slice and call the linkage function
    term = task.terms[0]
    z = term.bundle.apply(x[term.indices])
    g = eval_linkage(term.fn, IndexedSlice(z, term.indices + 1, task.n), 0.25)
    assert abs(g) <= 1e-12
    np.testing.assert_allclose(task.evaluate(x), [0.25, 0.5], atol=1e-12)
    np.testing.assert_allclose(task.evaluate(x), eval_shape(Shape.H1, [0.25], 2), atol=1e-12)


MONOTONE_CASES = [(Model(mo), Shape(sh), m) for mo in range(1, 8) for sh, m in
                  [(1, 2), (2, 2), (3, 3), (4, 3), (5, 3), (6, 3), (7, 3), (9, 4), (10, 3)]
                  if not (Shape(sh).needs_g and mo not in (1, 4, 5)) and not (sh == 10 and mo == 1)]


@pytest.mark.parametrize("model,shape,m", MONOTONE_CASES)
@settings(max_examples=20, deadline=None)
@given(seed=st.integers(0, 10_000), delta=st.floats(1e-3, 10.0))
def test_monotone_degradation(model, shape, m, seed, delta):
    plan = build_grouping(30, m - 1, m)
    rng = np.random.default_rng(seed)
    x = rng.uniform(-1, 1, 30)
    terms = sphere_terms(plan) if model is not Model.F1 else [BasicTerm(BasicFn.SPHERE, plan.distance_indices)]
    base = evaluate_objectives(model, plan, shape, terms, x)
    for i in range(len(terms)):
        bumped = list(terms)
        bumped[i] = Plus(terms[i], delta)
        f = evaluate_objectives(model, plan, shape, bumped, x)
        assert (f >= base - 1e-12).all()


def test_arity_errors():
    plan = build_grouping(20, 2, 3)
    terms = sphere_terms(plan)
    with pytest.raises(ValueError):
        evaluate_objectives(Model.F2, plan, Shape.H3, terms[:2], np.zeros(20))
    with pytest.raises(ValueError):
        evaluate_objectives(Model.F1, plan, Shape.H3, terms, np.zeros(20))
    with pytest.raises(ValueError):
        evaluate_objectives(Model.F2, plan, Shape.H3, terms, np.zeros(21))
    with pytest.raises(ValueError):
        evaluate_objectives(Model.F2, plan, Shape.H8, terms, np.zeros(20))


def test_batch_matches_rows():
    task = instantiate(4).task(1)
    X = np.random.default_rng(3).uniform(task.lower, task.upper, (7, task.n))
    F = task.evaluate(X)
    for row, f in zip(X, F):
        np.testing.assert_allclose(task.evaluate(row), f, rtol=1e-12)
