"""Full streaming differentiator: adaptive difference core plus rate filter."""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .core import AdaptiveFiniteDifference, CoreParams
from .rate_filter import FilterParams, RateLimitFilter


@dataclass
class DiffTrace:
    """Per-step record of one streaming run (all arrays sample-aligned).

    ys: raw adaptive-difference estimates (0.0 at index 0, where none exists).
    y: rate-limited outputs.
    nhat: online noise-amplitude estimates.
    ell: window lengths used (0 at index 0).
    """

    ys: np.ndarray
    y: np.ndarray
    nhat: np.ndarray
    ell: np.ndarray


class StreamingDifferentiator:
    """Derivative estimator with bounded output increments.

    Combines the adaptive finite difference with the rate-limited filter.
    step(u) consumes one sample and returns the filtered estimate y_k; the
    raw estimate and estimator internals remain readable on the components.
    """

    def __init__(self, L: float, delta: float, gamma: float, k0: int = 0,
                 kbar: int | float = math.inf) -> None:
        if gamma <= L:
            raise ValueError(f"gamma must exceed L (got gamma={gamma}, L={L})")
        self.core = AdaptiveFiniteDifference(CoreParams(L, delta, kbar))
        self.filter = RateLimitFilter(FilterParams(gamma, delta, k0))

    @property
    def increment_bound(self) -> float:
        return self.filter.params.increment_bound

    def reset(self) -> None:
        self.core.reset()
        self.filter.reset()

    def step(self, u: float) -> float:
        ys = self.core.step(u)
        return self.filter.step(0.0 if ys is None else ys)

    def run(self, samples) -> DiffTrace:
        """Stream a whole sequence and record every estimate."""
        n = len(samples)
        ys = np.zeros(n)
        y = np.empty(n)
        nhat = np.zeros(n)
        ell = np.zeros(n, dtype=np.int64)
        self.reset()
        for i in range(n):
            raw = self.core.step(float(samples[i]))
            if raw is not None:
                ys[i] = raw
                nhat[i] = self.core.nhat
                ell[i] = self.core.ell
            y[i] = self.filter.step(0.0 if raw is None else raw)
        return DiffTrace(ys=ys, y=y, nhat=nhat, ell=ell)
