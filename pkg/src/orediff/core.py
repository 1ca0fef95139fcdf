"""Adaptive finite-difference core with online noise-amplitude estimation.

The raw derivative estimate at step k is the finite difference over an
adaptive window, ys_k = (u_k - u_{k-ell_k}) / (delta * ell_k). The window
ell_k is chosen from an online estimate nhat_k of the noise amplitude, which
is read off the worst deviation of the recent samples from the secant lines
through the window endpoints.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np


class BoundNotApplicableError(ValueError):
    """Raised when a theoretical bound's noise precondition is violated."""


@dataclass(frozen=True)
class CoreParams:
    """Tuning of the adaptive difference core.

    L: bound on |f''| of the noise-free signal (1/s^2).
    delta: sampling period (s).
    kbar: window length limit in samples (integer >= 2), or math.inf for an
        unbounded window (memory then grows with the stream).
    """

    L: float
    delta: float
    kbar: int | float = math.inf

    def __post_init__(self) -> None:
        if self.L <= 0:
            raise ValueError("L must be positive")
        if self.delta <= 0:
            raise ValueError("delta must be positive")
        if not math.isinf(self.kbar):
            if self.kbar != int(self.kbar) or self.kbar < 2:
                raise ValueError("kbar must be an integer >= 2 or math.inf")
            object.__setattr__(self, "kbar", int(self.kbar))

    @property
    def nbar(self) -> float:
        """Noise capacity of the window: L * delta^2 * (kbar - 1)^2 / 2."""
        if math.isinf(self.kbar):
            return math.inf
        half_l_d2 = ((0.5 * self.L) * self.delta) * self.delta
        return half_l_d2 * ((self.kbar - 1) * (self.kbar - 1))


def secant_deviation(u, k: int, ell: int, j: int) -> float:
    """Deviation of u[k-j] from the secant through u[k] and u[k-ell].

    Returns u[k-j] - u[k] + (u[k] - u[k-ell]) * j/ell. Zero for any affine
    sequence and for j = ell.
    """
    if not 1 <= j <= ell <= k:
        raise ValueError(f"need 1 <= j <= ell <= k, got j={j}, ell={ell}, k={k}")
    return (u[k - j] - u[k]) + ((u[k] - u[k - ell]) * (j / ell))


def noise_estimate_reference(u, k: int, params: CoreParams) -> float:
    """Naive triple-loop noise estimate; the reference implementation.

    Scans every window length ell in {2, ..., min(k, kbar)} and every inner
    offset j in {1, ..., ell}, and returns half the worst excess of
    |secant_deviation| over the curvature allowance L*delta^2*j*(ell-j)/2,
    clamped at zero. Returns 0 for k = 1 (no window has two interior steps).

    This is deliberately plain Python; the optimized noise_estimate must
    match it bitwise.
    """
    if k < 1:
        raise ValueError("k must be at least 1")
    m = k if math.isinf(params.kbar) else min(k, int(params.kbar))
    base = ((0.5 * params.L) * params.delta) * params.delta
    best = None
    for ell in range(2, m + 1):
        for j in range(1, ell + 1):
            q = (u[k - j] - u[k]) + ((u[k] - u[k - ell]) * (j / ell))
            c = base * (j * (ell - j))
            b = abs(q) - c
            if best is None or b > best:
                best = b
    if best is None:
        return 0.0
    nh = 0.5 * best
    return nh if nh > 0.0 else 0.0


@lru_cache(maxsize=None)
def _wedge(m: int) -> tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
    """Index arrays for all (ell, j) pairs with 2 <= ell <= m, 1 <= j <= ell.

    Returns (j, ell, j/ell, j*(ell-j)) as flat arrays. The ratio is computed
    elementwise so it matches the scalar division in the reference loop.
    """
    ells = np.concatenate([np.full(e, e) for e in range(2, m + 1)])
    js = np.concatenate([np.arange(1, e + 1) for e in range(2, m + 1)])
    return js, ells, js / ells, (js * (ells - js)).astype(np.float64)


def _window_noise_estimate(w: np.ndarray, m: int, base: float) -> float:
    """Noise estimate over the ordered window w = [u_{k-m}, ..., u_k]."""
    if m < 2:
        return 0.0
    js, ells, ratio, jlj = _wedge(m)
    uk = w[m]
    q = (w[m - js] - uk) + ((uk - w[m - ells]) * ratio)
    bracket = np.abs(q) - base * jlj
    nh = 0.5 * float(bracket.max())
    return nh if nh > 0.0 else 0.0


def noise_estimate(u, k: int, params: CoreParams) -> float:
    """Vectorized noise estimate; bitwise equal to noise_estimate_reference."""
    if k < 1:
        raise ValueError("k must be at least 1")
    m = k if math.isinf(params.kbar) else min(k, int(params.kbar))
    w = np.asarray(u[k - m:k + 1], dtype=np.float64)
    base = ((0.5 * params.L) * params.delta) * params.delta
    return _window_noise_estimate(w, m, base)


def window_length(nhat: float, k: int, params: CoreParams) -> int:
    """Adaptive window length: 1 on a clean stream, else wide enough that the
    curvature error dominates the amplified noise, capped by k and kbar."""
    if k < 1:
        raise ValueError("k must be at least 1")
    if nhat < 0:
        raise ValueError("nhat must be nonnegative")
    if nhat == 0.0:
        return 1
    cand = math.ceil((2.0 / params.delta) * math.sqrt(nhat / params.L))
    return max(1, int(min(k, params.kbar, cand)))


def raw_error_bound(k: int, N: float, params: CoreParams) -> float:
    """Per-sample error bound of the raw estimate ys_k for noise level N.

    For k*delta >= sqrt(2N/L) the bound is the steady value
    2*sqrt(2NL) + L*delta/2; before that it is L*delta*k + 2N/(delta*k).
    Requires N <= nbar, the noise capacity of the window.
    """
    if k < 1:
        raise ValueError("k must be at least 1")
    if N < 0:
        raise ValueError("N must be nonnegative")
    if N > params.nbar:
        raise BoundNotApplicableError(
            f"noise level N={N} exceeds the window capacity nbar={params.nbar}")
    t = k * params.delta
    # Squared form of k*delta >= sqrt(2N/L); avoids the sqrt rounding.
    if params.L * (t * t) >= 2.0 * N:
        return 2.0 * math.sqrt((2.0 * N) * params.L) + (params.L * params.delta) / 2.0
    return (params.L * params.delta) * k + (2.0 * N) / (params.delta * k)


class AdaptiveFiniteDifference:
    """Streaming adaptive finite difference.

    Feed samples in order with step(); the first call only seeds the window
    and returns None, every later call returns the raw derivative estimate
    ys_k. After each step the attributes k, nhat, ell and ys expose the
    current state.
    """

    def __init__(self, params: CoreParams) -> None:
        self.params = params
        self._base = ((0.5 * params.L) * params.delta) * params.delta
        self.reset()

    def reset(self) -> None:
        self._window: list[float] = []
        self.k = -1
        self.nhat = 0.0
        self.ell = 0
        self.ys: float | None = None

    def step(self, u: float) -> float | None:
        self.k += 1
        self._window.append(float(u))
        cap = None if math.isinf(self.params.kbar) else int(self.params.kbar) + 1
        if cap is not None and len(self._window) > cap:
            del self._window[0]
        if self.k == 0:
            return None
        m = len(self._window) - 1
        w = np.asarray(self._window, dtype=np.float64)
        self.nhat = _window_noise_estimate(w, m, self._base)
        self.ell = window_length(self.nhat, self.k, self.params)
        ys = (w[m] - w[m - self.ell]) / (self.params.delta * self.ell)
        self.ys = float(ys)
        return self.ys

    def run(self, samples) -> np.ndarray:
        """Apply step() over a whole sequence. Index 0 (no estimate yet) is
        reported as 0.0 to keep the output aligned with the input."""
        out = np.zeros(len(samples))
        self.reset()
        for i, u in enumerate(samples):
            ys = self.step(u)
            if ys is not None:
                out[i] = ys
        return out
