import numpy as np
import pytest

from etmof.grouping import aggregate_positions, build_grouping
from etmof.suite import NUM_INSTANCES, instantiate


def ranges(groups):
    """1-based inclusive (first, last) pairs."""
    return [(int(g[0]) + 1, int(g[-1]) + 1) for g in groups]


# golden plans worked out by hand from the 1:2:...:m proportional rule
def test_golden_50_1_2():
    plan = build_grouping(50, 1, 2)
    assert ranges(plan.position_groups) == [(1, 1)]
    assert ranges(plan.distance_groups) == [(2, 17), (18, 50)]


def test_golden_51_2_3():
    plan = build_grouping(51, 2, 3)
    assert ranges(plan.position_groups) == [(1, 1), (2, 2)]
    # L = 49: round(49/6) = 8, round(98/6) = 16, residue 25
    assert ranges(plan.distance_groups) == [(3, 10), (11, 26), (27, 51)]
    assert [len(s) for s in plan.subgroups[0]] == [8]
    assert [len(s) for s in plan.subgroups[1]] == [6, 5, 5]
    assert [len(s) for s in plan.subgroups[2]] == [5, 5, 5, 5, 5]


def test_golden_50_7_3():
    plan = build_grouping(50, 7, 3)
    assert [len(g) for g in plan.position_groups] == [4, 3]
    # L = 43: round(43/6) = 7, round(86/6) = 14, residue 22
    assert [len(g) for g in plan.distance_groups] == [7, 14, 22]


def test_golden_10000_6_2():
    plan = build_grouping(10000, 6, 2)
    assert [len(g) for g in plan.position_groups] == [6]
    assert [len(g) for g in plan.distance_groups] == [3331, 6663]


def test_hint_changes_subgroups():
    plan = build_grouping(51, 2, 3, subgroup_size_hint=10)
    assert [len(s) for s in plan.subgroups[2]] == [13, 12]


@pytest.mark.parametrize("instance", range(1, 33))
def test_layer_covers_every_instance(instance):
    for task in instantiate(instance).tasks:
        plan = task.plan
        pos = np.concatenate(plan.position_groups)
        dist = np.concatenate(plan.distance_groups)
        np.testing.assert_array_equal(pos, np.arange(plan.K))
        np.testing.assert_array_equal(dist, np.arange(plan.K, plan.n))
        for g, subs in zip(plan.distance_groups, plan.subgroups):
            assert len(subs) >= 1
            np.testing.assert_array_equal(np.concatenate(subs), g)
            assert all((np.diff(s) == 1).all() for s in subs)
        assert len(plan.position_groups) == plan.m - 1
        assert len(plan.distance_groups) == plan.m


def test_determinism():
    a = build_grouping(99, 28, 10)
    b = build_grouping(99, 28, 10)
    assert a.describe() == b.describe()


def test_errors():
    with pytest.raises(ValueError):
        build_grouping(10, 1, 3)
    with pytest.raises(ValueError):
        build_grouping(5, 4, 3)
    with pytest.raises(ValueError):
        build_grouping(5, 5, 2)


def test_aggregate_examples():
    plan = build_grouping(10, 2, 2)
    x = np.zeros(10)
    np.testing.assert_array_equal(aggregate_positions(plan, x), [0.0])
    x[:2] = [1, -1]
    assert aggregate_positions(plan, x)[0] == 0.0
    plan1 = build_grouping(10, 1, 2)
    x = np.zeros(10)
    x[0] = -0.7
    assert aggregate_positions(plan1, x)[0] == pytest.approx(0.7)


def test_aggregate_range():
    plan = build_grouping(60, 9, 4)
    X = np.random.default_rng(0).uniform(-1, 1, (500, 60))
    Y = aggregate_positions(plan, X)
    assert Y.shape == (500, 3)
    assert (Y >= 0).all() and (Y <= 1).all()


def test_describe_is_one_based():
    text = build_grouping(50, 1, 2).describe()
    assert "position[1] = 1" in text
    assert "distance[2] = 18..50" in text
