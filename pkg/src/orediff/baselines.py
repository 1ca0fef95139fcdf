"""Baseline differentiators for comparison runs.

SuperTwisting is the classical second-order sliding-mode differentiator,
discretized with explicit forward Euler (so its output honestly shows the
numerical chattering that scheme is known for). finite_difference is the
plain one-step difference quotient.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

# Gain pairs (lambda1, lambda2) used by the benchmark comparison runs.
RED_GAIN_SETS = ((1.5, 1.1), (2.8, 1.96))


@dataclass(frozen=True)
class RedParams:
    lambda1: float
    lambda2: float
    L: float
    delta: float

    def __post_init__(self) -> None:
        for name in ("lambda1", "lambda2", "L", "delta"):
            if getattr(self, name) <= 0:
                raise ValueError(f"{name} must be positive")


class SuperTwisting:
    """Super-twisting differentiator, forward-Euler discretization.

    State z0 tracks the signal, z1 the derivative. Gains scale with the
    curvature bound as lambda1*sqrt(L) and lambda2*L. The first sample
    initializes z0 = u_0, z1 = 0; sign(0) is taken as 0, so a perfectly
    tracked constant input is an equilibrium.
    """

    def __init__(self, params: RedParams) -> None:
        self.params = params
        self._g1 = params.lambda1 * math.sqrt(params.L)
        self._g2 = params.lambda2 * params.L
        self.reset()

    def reset(self) -> None:
        self.z0: float | None = None
        self.z1 = 0.0

    def step(self, u: float) -> float:
        u = float(u)
        if self.z0 is None:
            self.z0 = u
            self.z1 = 0.0
            return self.z1
        e = self.z0 - u
        s = 0.0 if e == 0.0 else math.copysign(1.0, e)
        d = self.params.delta
        self.z0 = self.z0 + d * (self.z1 - self._g1 * math.sqrt(abs(e)) * s)
        self.z1 = self.z1 - d * (self._g2 * s)
        return self.z1

    def run(self, samples) -> np.ndarray:
        self.reset()
        return np.array([self.step(u) for u in samples])


def finite_difference_step(u: float, u_prev: float, delta: float) -> float:
    """One-step difference quotient (u - u_prev) / delta."""
    if delta <= 0:
        raise ValueError("delta must be positive")
    return (u - u_prev) / delta


def finite_difference(samples, delta: float) -> np.ndarray:
    """One-step difference quotient over a sequence; index 0 reports 0.0."""
    if delta <= 0:
        raise ValueError("delta must be positive")
    u = np.asarray(samples, dtype=np.float64)
    out = np.zeros(u.size)
    out[1:] = np.diff(u) / delta
    return out
