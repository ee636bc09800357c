import numpy as np
import pytest

from etmof.basefn import BasicFn
from etmof.formulation import SubgroupTerm
from etmof.grouping import aggregate_positions
from etmof.linkfn import LinkageFn, LinkageOp
from etmof.shapefn import Shape, eval_shape
from etmof.suite import (
    NUM_INSTANCES,
    catalog_rows,
    evaluate_task,
    instance_type,
    instantiate,
    optimum_solution,
    reference_front,
)

from golden_catalog import GOLDEN, TASK_COUNTS


@pytest.mark.parametrize("instance", range(1, NUM_INSTANCES + 1))
def test_metadata_matches_golden(instance):
    problem = instantiate(instance)
    assert problem.num_tasks == TASK_COUNTS[instance]
    got = [(t.m, t.n, t.K, t.model_label, t.shape_label) for t in problem.tasks]
    assert got == GOLDEN[instance]
    assert problem.unified_dim == max(t.n for t in problem.tasks)
    for t in problem.tasks:
        assert t.L == t.n - t.K
        assert t.lower.shape == t.upper.shape == (t.n,)


def test_instantiate_examples():
    p = instantiate(1)
    assert [(t.m, t.n, t.K, t.L) for t in p.tasks] == [(2, 50, 1, 49)] * 2
    p = instantiate(24)
    assert [t.n for t in p.tasks] == [5000, 10000]
    assert [t.L for t in p.tasks] == [4994, 9994]
    p = instantiate(30)
    cycle = [BasicFn.MOD_SCHWEFEL, BasicFn.ACKLEY, BasicFn.RASTRIGIN, BasicFn.WEIERSTRASS, BasicFn.GRIEWANK]
    for k, t in enumerate(p.tasks, start=1):
        assert (t.model_label, t.shape_label) == ("F1", "H1")
        # b5, b6, b9, b7, b8 for k mod 5 = 0..4
        assert t.fns == (cycle[k % 5],) or int(t.fns[0]) == [5, 6, 9, 7, 8][k % 5]
    t15 = instantiate(32).task(15)
    assert t15.fns == (BasicFn.SPHERE,)
    assert t15.transform == "Lg2"
    assert all(isinstance(term, SubgroupTerm) and term.op is LinkageOp.LG2 for term in t15.terms)


def test_many_task_selectors():
    p26 = instantiate(26)
    assert [int(p26.task(k).fns[0]) for k in range(1, 6)] == [2, 3, 4, 7, 1]
    p27 = instantiate(27)
    assert [p27.task(k).transform for k in (1, 5, 6, 10)] == ["Lg1", "Lg1", "Lg2", "Lg2"]
    p31 = instantiate(31)
    assert p31.task(6).fns == (LinkageFn.L1,) and p31.task(6).upper[-1] == 60


def test_bounds_examples():
    t = instantiate(1).task(1)
    assert (t.lower[:1] == -1).all() and (t.upper[:1] == 1).all()
    assert (t.lower[1:] == -10).all() and (t.upper[1:] == 10).all()
    t = instantiate(25).task(3)
    assert t.upper[-1] == 1
    t = instantiate(33).task(2)
    assert (t.lower[0], t.upper[0], t.lower[-1], t.upper[-1]) == (0, 1, -1, 2)


def test_instance_types():
    assert [instance_type(i) for i in (1, 8, 9, 16, 17, 24, 25, 32, 33, 40)] == [1, 1, 2, 2, 3, 3, 4, 4, 5, 5]


def test_etmof9_t1_example():
    task = instantiate(9).task(1)
    assert task.transform == "none" and task.fns == (BasicFn.EXP_GRIEW_ROSEN,)
    rng = np.random.default_rng(0)
    for _ in range(5):
        x = np.ones(task.n)
        x[: task.K] = rng.uniform(-1, 1, task.K)
        y = aggregate_positions(task.plan, x)
        np.testing.assert_allclose(task.evaluate(x), eval_shape(Shape.H4, y, 5), atol=1e-12)


def test_etmof25_t3_example():
    task = instantiate(25).task(3)
    assert task.fns == (LinkageFn.L3,)
    for s in (0.0, 0.3, 0.9):
        f = task.evaluate(optimum_solution(task, [s]))
        np.testing.assert_allclose(f, eval_shape(Shape.H1, [s], 2), atol=1e-9)


def test_statelessness_and_batch():
    task = instantiate(13).task(2)
    x = np.random.default_rng(1).uniform(task.lower, task.upper)
    a = task.evaluate(x)
    task.evaluate(-x)
    np.testing.assert_array_equal(a, task.evaluate(x))


def test_counters_and_clone():
    p = instantiate(2)
    x = np.zeros(50)
    evaluate_task(p, 1, x)
    evaluate_task(p, 1, x)
    evaluate_task(p, 2, np.zeros((5, 50)))
    assert p.counters.tolist() == [2, 5]
    q = p.clone()
    assert q.counters.tolist() == [0, 0]
    assert q.tasks is p.tasks
    assert instantiate(2).counters.tolist() == [0, 0]


def test_errors():
    with pytest.raises(ValueError):
        instantiate(0)
    with pytest.raises(ValueError):
        instantiate(41)
    p = instantiate(1)
    with pytest.raises(ValueError):
        evaluate_task(p, 3, np.zeros(50))
    with pytest.raises(ValueError):
        evaluate_task(p, 1, np.zeros(49))
    with pytest.raises(ValueError):
        evaluate_task(p, 1, np.zeros(50), t=0.1)
    d = instantiate(34)
    with pytest.raises(ValueError):
        evaluate_task(d, 1, np.zeros(50))
    assert p.counters.tolist() == [0, 0] and d.counters.tolist() == [0, 0]


def test_large_scale_tasks_have_no_rotation():
    for i in range(1, 33):
        for task in instantiate(i).tasks:
            if task.n >= 2048:
                assert "rot" not in task.transform


def test_catalog_rows_cover_every_task():
    rows = catalog_rows()
    assert len(rows) == sum(TASK_COUNTS.values())
    assert rows[0]["landscape"] == "L1(rot)"


def test_reference_front_static_and_dynamic():
    t = instantiate(3).task(2)
    rf = reference_front(t)
    np.testing.assert_allclose(np.linalg.norm(rf.points, axis=1), 1.0, atol=1e-9)
    with pytest.raises(ValueError):
        reference_front(instantiate(33).task(1))
