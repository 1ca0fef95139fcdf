"""Error bounds, convergence times and empirical bound verification.

The central object is the ErrorReport produced by verify_run: it compares a
differentiator trace against ground truth, computes the worst-case error
bound 2*sqrt(2NL) + L*delta/2 and the convergence time after which the bound
is claimed, and records whether the empirical sup-error satisfies it. When
the noise level exceeds the window capacity the bound does not apply and the
report says so instead of failing.
"""
from __future__ import annotations

import csv
import math
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .core import CoreParams
from .signals import SampledSignal


@dataclass(frozen=True)
class BoundInputs:
    """Everything the theoretical bound and convergence time depend on.

    R1 bounds the initial derivative |f'(0)|; with the output starting at 0
    it is also the initial tracking error, which enters the k0 = 0
    convergence time.
    """

    L: float
    N: float
    delta: float
    gamma: float
    k0: int = 0
    R1: float = 1.0

    def __post_init__(self) -> None:
        if self.L <= 0:
            raise ValueError("L must be positive")
        if self.N < 0:
            raise ValueError("N must be nonnegative")
        if self.delta <= 0:
            raise ValueError("delta must be positive")
        if self.gamma <= self.L:
            raise ValueError(f"gamma must exceed L (got gamma={self.gamma}, L={self.L})")
        if self.k0 != int(self.k0) or self.k0 < 0:
            raise ValueError("k0 must be a nonnegative integer")
        object.__setattr__(self, "k0", int(self.k0))
        if self.R1 < 0:
            raise ValueError("R1 must be nonnegative")


def worst_case_bound(L: float, N: float, delta: float) -> float:
    """Steady worst-case error of the filtered estimate: 2*sqrt(2NL) + L*delta/2."""
    if L <= 0 or delta <= 0 or N < 0:
        raise ValueError("need L > 0, delta > 0, N >= 0")
    return 2.0 * math.sqrt((2.0 * N) * L) + (L * delta) / 2.0


def convergence_time(inputs: BoundInputs) -> float:
    """Time after which the worst-case bound is guaranteed to hold.

    For k0 = 0 the time grows with the initial derivative bound R1. For
    k0 >= 1 it is k0*delta itself whenever the raw estimate at k0 is already
    inside the noise-dominated regime (N <= L*(delta*k0)^2/2), else the
    remaining raw transient plus the filter catch-up time.
    """
    L, N, g, d = inputs.L, inputs.N, inputs.gamma, inputs.delta
    tail = (3.0 * d) * (g - L / 2.0) / (g - L)
    if inputs.k0 == 0:
        return 2.0 * math.sqrt((2.0 * N) / L) + inputs.R1 / (g - L) + tail
    t0 = inputs.k0 * d
    if N <= L * (t0 * t0) / 2.0:
        return t0
    return 2.0 * math.sqrt((2.0 * N) / L) + ((2.0 * N) / t0 - g * t0) / (g - L) + tail


def sup_error_from(errors) -> np.ndarray:
    """Reverse running maximum: out[k] = max(errors[k:])."""
    arr = np.asarray(errors, dtype=np.float64)
    if arr.size == 0:
        raise ValueError("error trace must be nonempty")
    return np.maximum.accumulate(arr[::-1])[::-1]


def ulp_slack(scale: float, n: int = 4) -> float:
    """Tolerance of n ulp at the given magnitude, used for bound checks.

    The bounds are exact-arithmetic statements; the slack only absorbs the
    rounding of the float pipeline that produced the compared quantities, so
    it is measured at their working magnitude, not at the bound's.
    """
    return n * math.ulp(abs(scale) if scale else 1.0)


def max_increment(y, k0: int = 0) -> float:
    """Largest output step |y_k - y_{k-1}| over k > k0."""
    arr = np.asarray(y, dtype=np.float64)
    if arr.size - k0 < 2:
        return 0.0
    return float(np.max(np.abs(np.diff(arr[k0:]))))


def implicit_ok(y, ys, increment_bound: float, k0: int = 0, tol: float = 0.0) -> bool:
    """Vectorized implicit-relation check over all steps k > k0.

    Elementwise equivalent of rate_filter.verify_implicit applied to
    (y[k], y[k-1], ys[k]) for every k > k0.
    """
    y = np.asarray(y, dtype=np.float64)
    ys = np.asarray(ys, dtype=np.float64)
    if y.shape != ys.shape:
        raise ValueError("y and ys must have the same length")
    if y.size - k0 < 2:
        return True
    yk = y[k0 + 1:]
    yp = y[k0:-1]
    ysk = ys[k0 + 1:]
    sliding = (np.abs(yk - ysk) <= tol) & (np.abs(yk - yp) <= increment_bound + tol)
    s = np.where(yk > ysk, 1.0, -1.0)
    saturated = (np.abs(yk - ysk) > tol) & (np.abs(yk - (yp - increment_bound * s)) <= tol)
    return bool(np.all(sliding | saturated))


@dataclass
class ErrorReport:
    """Outcome of comparing one trace against ground truth.

    satisfied is None when the bound does not apply (noise above the window
    capacity); it is never False for that reason alone.
    """

    delta: float
    per_step_error: np.ndarray
    sup_from: np.ndarray
    bound: float
    tconv: float
    first_k_within_bound: int | None
    satisfied: bool | None
    applicable: bool
    horizon: float
    slack: float
    label: str = ""

    def summary(self) -> str:
        status = "not-applicable" if self.satisfied is None else ("ok" if self.satisfied else "VIOLATED")
        k_at = math.ceil(self.tconv / self.delta)
        sup_at = self.sup_from[min(k_at, self.sup_from.size - 1)]
        name = self.label or "trace"
        return (f"{name}: {status}  sup_err(t>={self.tconv:.4f}s) = {sup_at:.6g}  "
                f"bound = {self.bound:.6g}  horizon = {self.horizon:g}s")

    def to_csv(self, path: str | Path, digits: int = 10) -> None:
        fmt = f"%.{digits}g"
        with open(path, "w", newline="") as fh:
            w = csv.writer(fh, lineterminator="\n")
            w.writerow(["k", "t", "err", "sup_err", "bound", "within"])
            for k in range(self.per_step_error.size):
                w.writerow([
                    k,
                    fmt % (k * self.delta),
                    fmt % self.per_step_error[k],
                    fmt % self.sup_from[k],
                    fmt % self.bound,
                    int(self.sup_from[k] <= self.bound + self.slack),
                ])


def verify_run(signal: SampledSignal, trace, inputs: BoundInputs,
               kbar: int | float = math.inf, label: str = "",
               tconv: float | None = None) -> ErrorReport:
    """Compare a filtered-output trace with ground truth against the bound.

    satisfied is evaluated at the first sample index at or after the
    convergence time (computed from inputs unless tconv overrides it); the
    sup over the remaining horizon must be within the bound (plus float
    slack). Raises if the trace is shorter than the convergence time, since
    the claim would then be vacuous.
    """
    if signal.truth_df is None:
        raise ValueError("signal carries no ground-truth derivative")
    y = np.asarray(trace, dtype=np.float64)
    if y.shape != signal.samples.shape:
        raise ValueError("trace and signal must have the same length")
    nbar = CoreParams(inputs.L, inputs.delta, kbar).nbar
    err = np.abs(signal.truth_df - y)
    sup = sup_error_from(err)
    bound = worst_case_bound(inputs.L, inputs.N, inputs.delta)
    if tconv is None:
        tconv = convergence_time(inputs)
    k_at = math.ceil(tconv / inputs.delta)
    if k_at >= y.size:
        raise ValueError(
            f"trace horizon {(y.size - 1) * inputs.delta:g}s is shorter than "
            f"the convergence time {tconv:g}s")
    scale = float(np.max(np.abs(signal.samples))) / inputs.delta
    slack = ulp_slack(max(1.0, scale))
    applicable = inputs.N <= nbar + ulp_slack(max(inputs.N, 1.0))
    within = sup <= bound + slack
    hits = np.flatnonzero(within)
    return ErrorReport(
        delta=inputs.delta,
        per_step_error=err,
        sup_from=sup,
        bound=bound,
        tconv=tconv,
        first_k_within_bound=int(hits[0]) if hits.size else None,
        satisfied=bool(sup[k_at] <= bound + slack) if applicable else None,
        applicable=applicable,
        horizon=(y.size - 1) * inputs.delta,
        slack=slack,
        label=label,
    )


def empirical_robustness(clean_trace, noisy_trace, from_k: int) -> float:
    """Sup difference between the noise-free and noisy runs from index from_k."""
    a = np.asarray(clean_trace, dtype=np.float64)
    b = np.asarray(noisy_trace, dtype=np.float64)
    if a.shape != b.shape:
        raise ValueError("traces must have the same length")
    if not 0 <= from_k < a.size:
        raise ValueError("from_k out of range")
    return float(np.max(np.abs(a[from_k:] - b[from_k:])))
