"""Rate-limited output filter (implicit-Euler sliding mode, solved exactly).

The filter tracks the raw estimate ys_k while never moving its output by
more than gamma*delta per step. That explicit saturation update is the exact
solution of the implicitly discretized sliding-mode law
y_k = y_{k-1} - gamma*delta*sign(y_k - ys_k), which verify_implicit checks.
"""
from __future__ import annotations

import math
from dataclasses import dataclass


@dataclass(frozen=True)
class FilterParams:
    """gamma is the output rate bound (1/s^2), k0 the start index.

    Outputs are forced to 0 before k0; at k = k0 >= 1 the output jumps to
    the current raw estimate. gamma must exceed the curvature bound L of the
    paired core for the tracking guarantees to hold; that pairing is checked
    where core and filter are composed.
    """

    gamma: float
    delta: float
    k0: int = 0

    def __post_init__(self) -> None:
        if self.gamma <= 0:
            raise ValueError("gamma must be positive")
        if self.delta <= 0:
            raise ValueError("delta must be positive")
        if self.k0 != int(self.k0) or self.k0 < 0:
            raise ValueError("k0 must be a nonnegative integer")
        object.__setattr__(self, "k0", int(self.k0))

    @property
    def increment_bound(self) -> float:
        return self.gamma * self.delta


def sat(x: float, limit: float) -> float:
    """Clamp x to [-limit, limit]."""
    if limit < 0:
        raise ValueError("limit must be nonnegative")
    return x if abs(x) <= limit else math.copysign(limit, x)


def verify_implicit(y: float, y_prev: float, ys: float, increment_bound: float,
                    tol: float = 0.0) -> bool:
    """Check one step of the implicit sliding-mode relation.

    True iff either y equals ys with |y - y_prev| within the increment bound
    (sliding selection, sign picked in [-1, 1]), or y equals
    y_prev - increment_bound * sign(y - ys) with y != ys. tol = 0 demands
    exact equality, which the explicit filter update satisfies except on one
    knife edge: a saturated step whose sum rounds exactly onto ys overshoots
    the bound by at most one rounding. An ulp-scale tol covers that case and
    traces produced elsewhere.
    """
    if increment_bound <= 0:
        raise ValueError("increment_bound must be positive")
    if abs(y - ys) <= tol:
        return abs(y - y_prev) <= increment_bound + tol
    s = 1.0 if y > ys else -1.0
    return abs(y - (y_prev - increment_bound * s)) <= tol


class RateLimitFilter:
    """Streaming rate-limited tracker of the raw estimates.

    step() must be called once per sample index k = 0, 1, 2, ...; the index
    is kept internally, so out-of-order invocation cannot occur.
    """

    def __init__(self, params: FilterParams) -> None:
        self.params = params
        self._bound = params.gamma * params.delta
        self.reset()

    def reset(self) -> None:
        self.k = 0  # index of the next step
        self.y_prev = 0.0

    @property
    def initialized(self) -> bool:
        """True once the rate-limited tracking regime has begun."""
        return self.k > self.params.k0

    def step(self, ys: float) -> float:
        k = self.k
        if k == 0 or k < self.params.k0:
            y = 0.0
        elif k == self.params.k0:
            # Reachable only for k0 >= 1: start from the current raw estimate.
            y = ys
        else:
            e = ys - self.y_prev
            if abs(e) <= self._bound:
                # Inside the band the update tracks ys exactly; writing y = ys
                # (not y_prev + e) keeps the equality bitwise.
                y = ys
            else:
                y = self.y_prev + math.copysign(self._bound, e)
        self.y_prev = y
        self.k = k + 1
        return y
