"""Tests for bound formulas, convergence times and empirical verification."""
import csv
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from orediff.analysis import (BoundInputs, convergence_time, empirical_robustness,
                              implicit_ok, max_increment, sup_error_from,
                              ulp_slack, verify_run, worst_case_bound)
from orediff.rate_filter import FilterParams, RateLimitFilter, verify_implicit
from orediff.signals import SampledSignal


def test_bound_inputs_validation():
    with pytest.raises(ValueError, match="gamma"):
        BoundInputs(L=1.0, N=0.1, delta=0.01, gamma=1.0)
    with pytest.raises(ValueError):
        BoundInputs(L=1.0, N=-0.1, delta=0.01, gamma=2.0)
    with pytest.raises(ValueError, match="k0"):
        BoundInputs(L=1.0, N=0.1, delta=0.01, gamma=2.0, k0=-2)
    with pytest.raises(ValueError):
        BoundInputs(L=1.0, N=0.1, delta=0.01, gamma=2.0, R1=-1.0)


def test_worst_case_bound_values():
    # 2*sqrt(2*N*L) + L*delta/2 at the benchmark parameters.
    assert worst_case_bound(1.0, 0.08, 0.01) == pytest.approx(0.805, rel=1e-12)
    assert worst_case_bound(1.0, 0.0, 0.01) == pytest.approx(0.005, rel=1e-12)
    # Scales as sqrt(N) once the discretization term is negligible.
    b1 = worst_case_bound(1.0, 0.01, 1e-9)
    b4 = worst_case_bound(1.0, 0.04, 1e-9)
    assert b4 / b1 == pytest.approx(2.0, rel=1e-9)
    with pytest.raises(ValueError):
        worst_case_bound(0.0, 0.1, 0.01)


def test_convergence_time_immediate_start():
    # 2*sqrt(2N/L) + R1/(gamma-L) + 3*delta*(gamma-L/2)/(gamma-L)
    t = convergence_time(BoundInputs(1.0, 0.08, 0.01, 1.96, 0, 1.0))
    assert t == pytest.approx(1.8872916666666667, rel=1e-12)
    assert f"{t:.4f}" == "1.8873"
    t0 = convergence_time(BoundInputs(1.0, 0.0, 0.01, 1.96, 0, 1.0))
    assert t0 == pytest.approx(1.0872916666666666, rel=1e-12)
    t_half = convergence_time(BoundInputs(1.0, 0.08, 0.01, 1.96, 0, 0.5))
    assert t_half == pytest.approx(1.3664583333333333, rel=1e-12)


def test_convergence_time_delayed_start():
    # k0*delta = 0.25; the crossover noise level is L*(k0*delta)^2/2 = 0.03125.
    below = convergence_time(BoundInputs(1.0, 0.03, 0.01, 1.96, 25, 1.0))
    assert below == pytest.approx(0.25, rel=1e-12)
    above = convergence_time(BoundInputs(1.0, 0.08, 0.01, 1.96, 25, 1.0))
    assert above == pytest.approx(1.001875, rel=1e-12)
    # A later start with enough capacity converges exactly at the start time.
    late = convergence_time(BoundInputs(1.0, 0.08, 0.01, 1.96, 50, 1.0))
    assert late == pytest.approx(0.5, rel=1e-12)


def test_sup_error_from_reverse_running_max():
    out = sup_error_from([1.0, 3.0, 2.0, 0.5])
    assert np.array_equal(out, [3.0, 3.0, 2.0, 0.5])
    assert np.all(np.diff(out) <= 0.0)
    with pytest.raises(ValueError):
        sup_error_from([])


def test_ulp_slack():
    assert ulp_slack(1.0) == 4 * math.ulp(1.0)
    assert ulp_slack(-8.0) == 4 * math.ulp(8.0)
    assert ulp_slack(0.0) == 4 * math.ulp(1.0)
    assert ulp_slack(2.0, n=1) == math.ulp(2.0)


def test_max_increment():
    y = [0.0, 0.5, 0.25, 1.25]
    assert max_increment(y) == 1.0
    assert max_increment(y, k0=1) == 1.0
    assert max_increment(y, k0=2) == 1.0
    assert max_increment([1.0], k0=0) == 0.0
    assert max_increment(y, k0=3) == 0.0


def test_implicit_ok_matches_scalar_checker():
    rng = np.random.default_rng(2)
    params = FilterParams(1.5, 0.05, k0=0)
    f = RateLimitFilter(params)
    ys = rng.uniform(-3, 3, 200)
    y = np.array([f.step(v) for v in ys])
    assert implicit_ok(y, ys, params.increment_bound, k0=0, tol=0.0)
    scalar = all(
        verify_implicit(y[k], y[k - 1], ys[k], params.increment_bound, tol=0.0)
        for k in range(1, ys.size))
    assert scalar


def test_implicit_ok_detects_tampering():
    params = FilterParams(1.5, 0.05, k0=0)
    f = RateLimitFilter(params)
    ys = np.linspace(0, 5, 100)
    y = np.array([f.step(v) for v in ys])
    assert implicit_ok(y, ys, params.increment_bound)
    bad = y.copy()
    bad[50] += 1e-6
    assert not implicit_ok(bad, ys, params.increment_bound)


@settings(deadline=None, max_examples=40)
@given(seed=st.integers(0, 10_000), k0=st.integers(0, 5))
def test_implicit_ok_equals_scalar_on_random_traces(seed, k0):
    # Not filter outputs: arbitrary y/ys pairs, where both checkers must
    # still agree (mostly rejecting).
    rng = np.random.default_rng(seed)
    n = 30
    ys = rng.uniform(-1, 1, n)
    y = np.round(rng.uniform(-1, 1, n), 2)
    bound = 0.25
    vec = implicit_ok(y, ys, bound, k0=k0, tol=1e-9)
    scalar = all(
        verify_implicit(y[k], y[k - 1], ys[k], bound, tol=1e-9)
        for k in range(k0 + 1, n))
    assert vec == scalar


def _flat_signal(n=400, delta=0.01):
    t = np.arange(n) * delta
    f = 2.0 * t
    return SampledSignal(delta, f, f, np.full(n, 2.0))


def test_verify_run_satisfied_for_exact_trace():
    sig = _flat_signal()
    inputs = BoundInputs(1.0, 0.01, 0.01, 1.96, 0, 0.0)
    report = verify_run(sig, sig.truth_df, inputs, kbar=41, label="exact")
    assert report.applicable
    assert report.satisfied is True
    assert report.first_k_within_bound == 0
    assert report.bound == pytest.approx(worst_case_bound(1.0, 0.01, 0.01), rel=1e-15)
    assert "exact" in report.summary()
    assert "ok" in report.summary()


def test_verify_run_flags_violation():
    sig = _flat_signal()
    inputs = BoundInputs(1.0, 0.0, 0.01, 1.96, 0, 0.0)
    bad = sig.truth_df + 1.0  # way outside the 0.005 bound
    report = verify_run(sig, bad, inputs, kbar=41)
    assert report.satisfied is False
    assert "VIOLATED" in report.summary()


def test_verify_run_not_applicable_above_capacity():
    sig = _flat_signal()
    # kbar = 41 at these parameters caps the capacity at 0.08 < N.
    inputs = BoundInputs(1.0, 0.5, 0.01, 1.96, 0, 0.0)
    report = verify_run(sig, sig.truth_df, inputs, kbar=41)
    assert not report.applicable
    assert report.satisfied is None
    assert "not-applicable" in report.summary()


def test_verify_run_tconv_override():
    sig = _flat_signal()
    inputs = BoundInputs(1.0, 0.01, 0.01, 1.96, 0, 1.0)
    base = verify_run(sig, sig.truth_df, inputs, kbar=41)
    assert base.tconv == pytest.approx(convergence_time(inputs), rel=1e-15)
    moved = verify_run(sig, sig.truth_df, inputs, kbar=41, tconv=2.5)
    assert moved.tconv == 2.5


def test_verify_run_rejects_bad_traces():
    sig = _flat_signal(n=50)
    inputs = BoundInputs(1.0, 0.01, 0.01, 1.96, 0, 1.0)
    with pytest.raises(ValueError, match="shorter"):
        verify_run(sig, sig.truth_df, inputs)  # 0.49 s < convergence time
    with pytest.raises(ValueError, match="length"):
        verify_run(_flat_signal(400), np.zeros(10), inputs)
    naked = SampledSignal(0.01, np.zeros(400))
    with pytest.raises(ValueError, match="ground-truth"):
        verify_run(naked, np.zeros(400), inputs)


def test_error_report_csv_format(tmp_path):
    sig = _flat_signal()
    inputs = BoundInputs(1.0, 0.01, 0.01, 1.96, 0, 0.0)
    report = verify_run(sig, sig.truth_df, inputs, kbar=41)
    path = tmp_path / "report.csv"
    report.to_csv(path)
    with open(path, newline="") as fh:
        rows = list(csv.reader(fh))
    assert rows[0] == ["k", "t", "err", "sup_err", "bound", "within"]
    assert len(rows) == sig.n + 1
    assert rows[1][0] == "0"
    assert float(rows[1][2]) == 0.0
    assert rows[1][5] == "1"
    # t column advances by delta.
    assert float(rows[2][1]) == pytest.approx(0.01, rel=1e-12)


def test_empirical_robustness():
    a = np.array([0.0, 1.0, 2.0, 3.0])
    b = np.array([0.0, 1.5, 2.0, 2.0])
    assert empirical_robustness(a, b, 0) == 1.0
    assert empirical_robustness(a, b, 2) == 1.0
    assert empirical_robustness(a, b, 3) == 1.0
    with pytest.raises(ValueError):
        empirical_robustness(a, b[:2], 0)
    with pytest.raises(ValueError):
        empirical_robustness(a, b, 7)
