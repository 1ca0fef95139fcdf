"""Scikit-learn style transformers wrapping the streaming differentiators.

Each column of the input is treated as one uniformly sampled stream (rows
are consecutive samples, so row order matters, unlike a feature matrix).
fit() only validates parameters; transform() replays the column through the
corresponding streaming implementation.
"""
from __future__ import annotations

import math

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.utils.validation import check_array, check_is_fitted

from .baselines import RedParams, SuperTwisting, finite_difference
from .core import AdaptiveFiniteDifference, CoreParams
from .differentiator import StreamingDifferentiator


class _ColumnwiseDifferentiator(BaseEstimator, TransformerMixin):
    """Shared fit/transform plumbing; subclasses build the per-column runner."""

    def _make_runner(self):
        raise NotImplementedError

    def _run_column(self, col: np.ndarray) -> np.ndarray:
        raise NotImplementedError

    def _check_input(self, X) -> np.ndarray:
        X = check_array(X, ensure_2d=False, dtype=np.float64, ensure_min_samples=1)
        if X.ndim > 2:
            raise ValueError("X must be 1-d or 2-d")
        return X

    def fit(self, X, y=None):
        X = self._check_input(X)
        self._make_runner()  # parameter validation happens in the constructors
        self.n_features_in_ = 1 if X.ndim == 1 else X.shape[1]
        return self

    def transform(self, X) -> np.ndarray:
        check_is_fitted(self)
        X = self._check_input(X)
        if X.ndim == 1:
            return self._run_column(X)
        out = np.empty_like(X)
        for c in range(X.shape[1]):
            out[:, c] = self._run_column(X[:, c])
        return out


class RobustDifferentiator(_ColumnwiseDifferentiator):
    """Adaptive finite difference plus rate-limited filter (the full pipeline).

    Parameters mirror the streaming class: curvature bound L, sampling
    period delta, output rate bound gamma (> L), filter start index k0 and
    window limit kbar (None for unbounded).
    """

    def __init__(self, L: float = 1.0, delta: float = 0.01, gamma: float = 1.96,
                 k0: int = 0, kbar: int | None = None):
        self.L = L
        self.delta = delta
        self.gamma = gamma
        self.k0 = k0
        self.kbar = kbar

    def _make_runner(self) -> StreamingDifferentiator:
        kbar = math.inf if self.kbar is None else self.kbar
        return StreamingDifferentiator(self.L, self.delta, self.gamma, self.k0, kbar)

    def fit(self, X, y=None):
        super().fit(X, y)
        self.increment_bound_ = self.gamma * self.delta
        return self

    def _run_column(self, col: np.ndarray) -> np.ndarray:
        return self._make_runner().run(col).y


class AdaptiveDifferencer(_ColumnwiseDifferentiator):
    """Raw adaptive finite difference, without the output filter."""

    def __init__(self, L: float = 1.0, delta: float = 0.01, kbar: int | None = None):
        self.L = L
        self.delta = delta
        self.kbar = kbar

    def _make_runner(self) -> AdaptiveFiniteDifference:
        kbar = math.inf if self.kbar is None else self.kbar
        return AdaptiveFiniteDifference(CoreParams(self.L, self.delta, kbar))

    def _run_column(self, col: np.ndarray) -> np.ndarray:
        return self._make_runner().run(col)


class SuperTwistingDifferentiator(_ColumnwiseDifferentiator):
    """Super-twisting baseline as a transformer."""

    def __init__(self, lambda1: float = 1.5, lambda2: float = 1.1,
                 L: float = 1.0, delta: float = 0.01):
        self.lambda1 = lambda1
        self.lambda2 = lambda2
        self.L = L
        self.delta = delta

    def _make_runner(self) -> SuperTwisting:
        return SuperTwisting(RedParams(self.lambda1, self.lambda2, self.L, self.delta))

    def _run_column(self, col: np.ndarray) -> np.ndarray:
        return self._make_runner().run(col)


class FiniteDifferencer(_ColumnwiseDifferentiator):
    """Plain one-step difference quotient as a transformer."""

    def __init__(self, delta: float = 0.01):
        self.delta = delta

    def _make_runner(self):
        if self.delta <= 0:
            raise ValueError("delta must be positive")
        return None

    def _run_column(self, col: np.ndarray) -> np.ndarray:
        return finite_difference(col, self.delta)
