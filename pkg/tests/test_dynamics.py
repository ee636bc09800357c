import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from etmof.dynamics import DynamicsSpec, _switch_index, Family, evaluate_dynamic, parameters, pf_at_time, time_instant
from etmof.pareto import nondominated_mask
from etmof.suite import instantiate, optimum_solution

DYNAMIC = [(i, k) for i in range(33, 41) for k in range(1, instantiate(i).num_tasks + 1)]


def test_time_instant_examples():
    assert all(time_instant(tau).t == 0 for tau in range(20))
    assert time_instant(20).t == 0.1
    ti = time_instant(620)
    assert ti.t == pytest.approx(3.1) and ti.change_index == 31
    assert time_instant(45, DynamicsSpec(Family.DF2, n_t=5, tau_t=10)).t == 0.8
    with pytest.raises(ValueError):
        time_instant(-1)
    with pytest.raises(ValueError):
        DynamicsSpec(Family.DF2, n_t=0)


def test_change_count():
    changes = {time_instant(tau).change_index for tau in range(31 * 20)}
    assert len(changes) - 1 == 30


def test_parameters_examples():
    p = parameters("dMOP2", 0.0)
    assert p["G"] == 0 and p["H"] == 1.25
    assert parameters("DF5", 1.0)["w"] == 10
    assert parameters("DF6", 3.0)["alpha"] == pytest.approx(0.48)
    assert parameters("DF12", 0.5)["k"] == pytest.approx(10.0)


def test_etmof33_t1_example():
    task = instantiate(33).task(1)
    for s in (0.0, 0.2, 0.7, 1.0):
        x = np.zeros(task.n)
        x[0] = s
        np.testing.assert_allclose(evaluate_dynamic(task, x, 0.0), [s, 1 - s ** 1.25], atol=1e-15)
    rf = pf_at_time(task, 0.0)
    np.testing.assert_allclose(rf.points[:, 1], 1 - rf.points[:, 0] ** 1.25, atol=1e-12)


def test_etmof34_t1_example():
    task = instantiate(34).task(1)
    np.testing.assert_array_equal(evaluate_dynamic(task, np.zeros(50), 0.0), [0.0, 1.0])


def test_etmof34_switch_index_moves():
    task = instantiate(34).task(1)
    x = optimum_solution(task, [0.4], 1.0)
    # G = 1 at t = 1, so the position variable is the last one
    assert x[-1] == 0.4
    np.testing.assert_allclose(evaluate_dynamic(task, x, 1.0), [0.4, 1 - math.sqrt(0.4)], atol=1e-12)


def test_etmof37_t2_sphere_scaled():
    task = instantiate(37).task(2)
    rng = np.random.default_rng(0)
    for c in (0, 3, 10):
        t = c / 10
        G = abs(math.sin(0.5 * math.pi * t))
        X = optimum_solution(task, rng.uniform(0, 1, (20, 2)), t)
        F = evaluate_dynamic(task, X, t)
        np.testing.assert_allclose((F ** 2).sum(axis=1), (1 + G) ** 2, atol=1e-12)


def test_etmof39_example():
    problem = instantiate(39)
    for task in problem.tasks:
        x = np.zeros(task.n)
        x[0] = 0.5
        np.testing.assert_allclose(evaluate_dynamic(task, x, 0.0), [0.5, 0.5], atol=1e-15)


def test_etmof40_front_monotone():
    task = instantiate(40).task(1)
    for t in (0.0, 0.5, 1.3):
        P = pf_at_time(task, t).points
        P = P[np.argsort(P[:, 0])]
        assert (np.diff(P[:, 1]) <= 1e-12).all()


@pytest.mark.parametrize("instance,k", DYNAMIC)
def test_fronts_are_nondominated_and_periodic(instance, k):
    task = instantiate(instance).task(k)
    for t in (0.0, 0.3, 1.7):
        a = pf_at_time(task, t, 200).points
        assert nondominated_mask(a).all()
        if task.dynamics.family is Family.DF12:
            # its distance target sin(t * x1) uses t itself, not a periodic parameter
            continue
        b = pf_at_time(task, round(t + 4, 10), 200).points
        assert a.shape == b.shape
        np.testing.assert_allclose(a, b, atol=1e-9)


@pytest.mark.parametrize("instance,k", DYNAMIC)
def test_optimum_reaches_front(instance, k):
    task = instantiate(instance).task(k)
    xp = np.random.default_rng(k).uniform(0, 1, (10, task.K))
    for t in (0.0, 0.6, 2.2):
        X = optimum_solution(task, xp, t)
        F = evaluate_dynamic(task, X, t)
        # moving distance variables off their optimum never dominates the optimum points
        dist = np.ones(task.n, dtype=bool)
        if task.dynamics.family in (Family.DF2, Family.DF2MOD):
            dist[_switch_index(task.n, parameters(task.dynamics.family, t)["G"])] = False
        else:
            dist[: task.K] = False
        Y = X.copy()
        Y[:, dist] += np.random.default_rng(1).normal(0, 0.05, (len(X), dist.sum()))
        Y = np.clip(Y, task.lower, task.upper)
        G = evaluate_dynamic(task, Y, t)
        assert not np.all(G <= F - 1e-12, axis=1).any()


@settings(max_examples=30, deadline=None)
@given(tau=st.integers(0, 619), seed=st.integers(0, 100))
def test_piecewise_constant(tau, seed):
    task = instantiate(35).task(2)
    x = np.random.default_rng(seed).uniform(task.lower, task.upper)
    start = (tau // 20) * 20
    a = evaluate_dynamic(task, x, time_instant(start).t)
    b = evaluate_dynamic(task, x, time_instant(tau).t)
    np.testing.assert_array_equal(a, b)


def test_errors():
    task = instantiate(33).task(1)
    with pytest.raises(ValueError):
        evaluate_dynamic(task, np.zeros(task.n), 0.15)
    with pytest.raises(ValueError):
        evaluate_dynamic(task, np.zeros(task.n - 1), 0.1)
    with pytest.raises(ValueError):
        evaluate_dynamic(instantiate(1).task(1), np.zeros(50), 0.0)
