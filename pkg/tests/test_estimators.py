"""Tests for the sklearn-style transformer wrappers."""
import numpy as np
import pytest
from sklearn.base import clone
from sklearn.exceptions import NotFittedError

from orediff.baselines import RedParams, SuperTwisting, finite_difference
from orediff.core import AdaptiveFiniteDifference, CoreParams
from orediff.differentiator import StreamingDifferentiator
from orediff.estimators import (AdaptiveDifferencer, FiniteDifferencer,
                                RobustDifferentiator, SuperTwistingDifferentiator)


@pytest.fixture
def stream():
    rng = np.random.default_rng(9)
    t = np.arange(300) * 0.01
    return 0.5 * t * t + t + rng.uniform(-0.05, 0.05, t.size)


def test_get_params_roundtrip_and_clone():
    est = RobustDifferentiator(L=2.0, delta=0.02, gamma=3.0, k0=5, kbar=17)
    params = est.get_params()
    assert params == {"L": 2.0, "delta": 0.02, "gamma": 3.0, "k0": 5, "kbar": 17}
    dup = clone(est)
    assert dup.get_params() == params
    est.set_params(gamma=4.0)
    assert est.gamma == 4.0


def test_fit_sets_learned_attributes(stream):
    est = RobustDifferentiator().fit(stream)
    assert est.n_features_in_ == 1
    assert est.increment_bound_ == 1.96 * 0.01
    two = np.column_stack([stream, stream])
    assert RobustDifferentiator().fit(two).n_features_in_ == 2


def test_transform_requires_fit(stream):
    with pytest.raises(NotFittedError):
        RobustDifferentiator().transform(stream)


def test_invalid_parameters_surface_at_fit(stream):
    with pytest.raises(ValueError, match="gamma"):
        RobustDifferentiator(L=2.0, gamma=1.0).fit(stream)
    with pytest.raises(ValueError):
        AdaptiveDifferencer(delta=-0.01).fit(stream)
    with pytest.raises(ValueError):
        FiniteDifferencer(delta=0.0).fit(stream)


def test_robust_differentiator_matches_streaming(stream):
    got = RobustDifferentiator(kbar=41).fit_transform(stream)
    sd = StreamingDifferentiator(1.0, 0.01, 1.96, 0, 41)
    assert np.array_equal(got, sd.run(stream).y)


def test_columns_are_independent(stream):
    other = stream[::-1].copy()
    X = np.column_stack([stream, other])
    est = RobustDifferentiator(kbar=41).fit(X)
    out = est.transform(X)
    assert out.shape == X.shape
    assert np.array_equal(out[:, 0], est.transform(stream))
    assert np.array_equal(out[:, 1], est.transform(other))


def test_adaptive_differencer_matches_core(stream):
    got = AdaptiveDifferencer(kbar=41).fit_transform(stream)
    afd = AdaptiveFiniteDifference(CoreParams(1.0, 0.01, 41))
    assert np.array_equal(got, afd.run(stream))


def test_supertwisting_transformer_matches_baseline(stream):
    got = SuperTwistingDifferentiator(lambda1=2.8, lambda2=1.96).fit_transform(stream)
    ref = SuperTwisting(RedParams(2.8, 1.96, 1.0, 0.01)).run(stream)
    assert np.array_equal(got, ref)


def test_finite_differencer_matches_function(stream):
    got = FiniteDifferencer(delta=0.01).fit_transform(stream)
    assert np.array_equal(got, finite_difference(stream, 0.01))


def test_rejects_3d_input():
    X = np.zeros((4, 3, 2))
    with pytest.raises(ValueError):
        RobustDifferentiator().fit(X)


def test_unbounded_window_by_default(stream):
    # kbar=None means no window cap; short streams must still work.
    out = RobustDifferentiator().fit_transform(stream[:50])
    assert out.shape == (50,)
    assert out[0] == 0.0
