import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from etmof.basefn import BasicFn, eval_basic, known_minimizer, origin_offset

B = BasicFn
NONNEG = [B.SPHERE, B.ELLIPTIC, B.BENT_CIGAR, B.DISCUS, B.ROSENBROCK, B.ACKLEY, B.GRIEWANK, B.RASTRIGIN, B.KATSUURA]
# Griewank weights coordinate i by 1/sqrt(i), so it is left out
SEPARABLE = [B.SPHERE, B.ACKLEY, B.RASTRIGIN, B.ABS_MEAN]


def test_fourteen_functions():
    assert len(BasicFn) == 14
    assert [int(f) for f in BasicFn] == list(range(1, 15))


@pytest.mark.parametrize("fn,x", [
    (B.SPHERE, [0, 0, 0]),
    (B.ROSENBROCK, [1, 1, 1]),
    (B.ACKLEY, [0, 0]),
    (B.WEIERSTRASS, [0]),
])
def test_trivial_minima(fn, x):
    assert eval_basic(fn, x) == pytest.approx(0.0, abs=1e-12)


@pytest.mark.parametrize("d", range(2, 11))
def test_happycat_minimum_each_dimension(d):
    assert eval_basic(B.HAPPYCAT, -np.ones(d)) == pytest.approx(0.0, abs=1e-12)


def test_mod_schwefel_origin_matches_oracle():
    # oracle: the per-coordinate term u(z) = z sin(sqrt|z|) evaluated at z* directly
    zstar = 4.209687462275036e2
    u = zstar * math.sin(math.sqrt(zstar))
    oracle = 418.9829 * 2 - 2 * u
    value = eval_basic(B.MOD_SCHWEFEL, [0.0, 0.0])
    assert abs(value) <= 1e-4
    assert value == pytest.approx(oracle, abs=2e-4)


def test_mod_schwefel_matches_cec_branches():
    # coordinates pushed beyond +-500 take the folded branches
    z = np.array([600.0 - 4.209687462275036e2, -700.0 - 4.209687462275036e2])
    v = eval_basic(B.MOD_SCHWEFEL, z)
    zz = z + 4.209687462275036e2

    def term(c):
        if c > 500:
            m = 500 - math.fmod(c, 500)
            return m * math.sin(math.sqrt(abs(m))) - (c - 500) ** 2 / (10000 * len(z))
        m = math.fmod(abs(c), 500) - 500
        return m * math.sin(math.sqrt(abs(m))) - (c + 500) ** 2 / (10000 * len(z))

    zstar = 4.209687462275036e2
    expected = len(z) * zstar * math.sin(math.sqrt(zstar)) - sum(term(c) for c in zz)
    assert v == pytest.approx(expected, rel=1e-12)


@pytest.mark.parametrize("fn", list(BasicFn))
@pytest.mark.parametrize("d", [2, 5, 10])
def test_known_minimizer_value(fn, d):
    tol = 1e-4 if fn is B.MOD_SCHWEFEL else 1e-9
    assert abs(eval_basic(fn, known_minimizer(fn, d))) <= tol


@pytest.mark.parametrize("fn", list(BasicFn))
def test_minimizer_beats_perturbations(fn):
    rng = np.random.default_rng(int(fn))
    x0 = known_minimizer(fn, 6)
    base = eval_basic(fn, x0)
    for _ in range(100):
        delta = rng.normal(size=6)
        delta *= rng.uniform(0, 0.1) / np.linalg.norm(delta)
        assert base <= eval_basic(fn, x0 + delta) + 1e-12


@pytest.mark.parametrize("fn", NONNEG)
def test_nonnegative_sweep(fn):
    X = np.random.default_rng(1).uniform(-100, 100, (1000, 10))
    assert (eval_basic(fn, X) >= -1e-9).all()


@pytest.mark.parametrize("fn", SEPARABLE)
@settings(max_examples=50, deadline=None)
@given(x=arrays(np.float64, 7, elements=st.floats(-50, 50)), seed=st.integers(0, 2**31))
def test_permutation_symmetry(fn, x, seed):
    perm = np.random.default_rng(seed).permutation(len(x))
    assert eval_basic(fn, x[perm]) == pytest.approx(eval_basic(fn, x), rel=1e-10, abs=1e-10)


@settings(max_examples=100, deadline=None)
@given(x=arrays(np.float64, st.integers(2, 9), elements=st.floats(-5, 5)))
def test_exp_griew_rosen_cyclic(x):
    assert eval_basic(B.EXP_GRIEW_ROSEN, np.roll(x, -1)) == pytest.approx(
        eval_basic(B.EXP_GRIEW_ROSEN, x), rel=1e-12, abs=1e-12)


def test_griewank_depends_on_order():
    x = np.array([0.0, 3.0])
    assert eval_basic(B.GRIEWANK, x) != pytest.approx(eval_basic(B.GRIEWANK, x[::-1]))


def test_exp_griew_rosen_is_composition():
    x = np.array([0.3, -1.2, 2.0])
    pairs = [(0, 1), (1, 2), (2, 0)]
    total = 0.0
    for i, j in pairs:
        r = 100 * (x[i] ** 2 - x[j]) ** 2 + (x[i] - 1) ** 2
        total += r * r / 4000 - math.cos(r) + 1
    assert eval_basic(B.EXP_GRIEW_ROSEN, x) == pytest.approx(total, rel=1e-12)


def test_weierstrass_constants():
    x = np.array([0.1, -0.3])
    k = np.arange(21)
    a, b = 0.5 ** k, 3.0 ** k
    direct = sum(np.sum(a * np.cos(2 * np.pi * b * (xi + 0.5))) for xi in x) - len(x) * np.sum(a * np.cos(np.pi * b))
    assert eval_basic(B.WEIERSTRASS, x) == pytest.approx(direct, rel=1e-12)


def test_elliptic_weights():
    x = np.ones(3)
    assert eval_basic(B.ELLIPTIC, x) == pytest.approx(1 + 1e3 + 1e6)
    assert eval_basic(B.ELLIPTIC, [2.0]) == pytest.approx(4.0)


def test_batch_matches_loop():
    X = np.random.default_rng(3).uniform(-3, 3, (8, 5))
    for fn in BasicFn:
        batch = eval_basic(fn, X)
        assert batch.shape == (8,)
        np.testing.assert_allclose(batch, [eval_basic(fn, row) for row in X], rtol=1e-12, atol=1e-12)


@pytest.mark.parametrize("x", [[], np.zeros(0)])
def test_empty_rejected(x):
    with pytest.raises(ValueError):
        eval_basic(B.SPHERE, x)


@pytest.mark.parametrize("fn", [B.ROSENBROCK, B.EXP_GRIEW_ROSEN])
def test_rosenbrock_family_needs_two(fn):
    with pytest.raises(ValueError):
        eval_basic(fn, [1.0])


def test_nan_rejected():
    with pytest.raises(ValueError):
        eval_basic(B.ACKLEY, [0.0, float("nan")])


def test_origin_offsets():
    assert origin_offset(B.ROSENBROCK) == 1.0
    assert origin_offset(B.EXP_GRIEW_ROSEN) == 1.0
    assert origin_offset(B.HAPPYCAT) == -1.0
    assert origin_offset(B.SPHERE) == 0.0
    for fn in BasicFn:
        assert abs(eval_basic(fn, np.zeros(4) + origin_offset(fn))) <= 1e-4
