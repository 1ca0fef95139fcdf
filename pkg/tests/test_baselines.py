"""Tests for the comparison differentiators."""
import numpy as np
import pytest

from orediff.baselines import (RED_GAIN_SETS, RedParams, SuperTwisting,
                               finite_difference, finite_difference_step)


def test_red_params_validation():
    with pytest.raises(ValueError, match="lambda1"):
        RedParams(0.0, 1.1, 1.0, 0.01)
    with pytest.raises(ValueError, match="delta"):
        RedParams(1.5, 1.1, 1.0, 0.0)


def test_gain_sets_are_the_benchmark_pairs():
    assert RED_GAIN_SETS == ((1.5, 1.1), (2.8, 1.96))


def test_first_step_seeds_state():
    st = SuperTwisting(RedParams(1.5, 1.1, 1.0, 0.01))
    assert st.step(3.7) == 0.0
    assert st.z0 == 3.7
    assert st.z1 == 0.0


def test_constant_input_is_equilibrium():
    st = SuperTwisting(RedParams(1.5, 1.1, 1.0, 0.01))
    out = st.run(np.full(50, 2.5))
    assert np.array_equal(out, np.zeros(50))
    assert st.z0 == 2.5


def test_step_recurrence_matches_update_law():
    import math
    p = RedParams(2.0, 1.5, 4.0, 0.1)
    st = SuperTwisting(p)
    st.step(1.0)          # z0 = 1, z1 = 0
    out = st.step(0.5)    # e = 0.5 > 0
    g1 = 2.0 * math.sqrt(4.0)
    g2 = 1.5 * 4.0
    z0_expect = 1.0 + 0.1 * (0.0 - g1 * math.sqrt(0.5) * 1.0)
    z1_expect = 0.0 - 0.1 * g2
    assert st.z0 == z0_expect
    assert out == z1_expect


def test_run_resets_state():
    st = SuperTwisting(RedParams(1.5, 1.1, 1.0, 0.01))
    u = np.sin(np.arange(100) * 0.01)
    a = st.run(u)
    b = st.run(u)
    assert np.array_equal(a, b)


def test_converges_on_clean_ramp():
    # On u(t) = t the estimate settles near slope 1 with residual chattering
    # on the order of the per-step gain increment.
    st = SuperTwisting(RedParams(1.5, 1.1, 1.0, 0.01))
    t = np.arange(2001) * 0.01
    out = st.run(t)
    tail = out[1000:]
    # steady-state chattering stays within 5*L*delta of the true slope
    assert np.max(np.abs(tail - 1.0)) <= 5.0 * 1.0 * 0.01
    assert abs(np.mean(tail) - 1.0) < 0.02


def test_finite_difference_matches_quotient():
    u = np.array([0.0, 0.2, 0.1, 0.7])
    out = finite_difference(u, 0.1)
    assert out[0] == 0.0
    assert np.allclose(out[1:], [2.0, -1.0, 6.0])
    assert finite_difference_step(0.2, 0.0, 0.1) == (0.2 - 0.0) / 0.1
    with pytest.raises(ValueError):
        finite_difference(u, 0.0)
    with pytest.raises(ValueError):
        finite_difference_step(1.0, 0.0, -1.0)
