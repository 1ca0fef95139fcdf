"""Streaming first-order differentiation of noisy sampled signals.

The estimator pairs an adaptive finite difference (window chosen from an
online noise-amplitude estimate) with a rate-limited sliding-mode output
filter, and ships the worst-case error bounds that certify it, baseline
differentiators, benchmark signal generators and a CLI harness.
"""
from .analysis import (BoundInputs, ErrorReport, convergence_time,
                       empirical_robustness, implicit_ok, max_increment,
                       sup_error_from, ulp_slack, verify_run, worst_case_bound)
from .baselines import (RED_GAIN_SETS, RedParams, SuperTwisting,
                        finite_difference, finite_difference_step)
from .benchmarks import (RunResult, ScenarioConfig, SweepEntry,
                         default_window_limit, execute, kink_recovery_time,
                         sweep, write_outputs, write_sweep_csv, write_trace_csv)
from .core import (AdaptiveFiniteDifference, BoundNotApplicableError, CoreParams,
                   noise_estimate, noise_estimate_reference, raw_error_bound,
                   secant_deviation, window_length)
from .differentiator import DiffTrace, StreamingDifferentiator
from .estimators import (AdaptiveDifferencer, FiniteDifferencer,
                         RobustDifferentiator, SuperTwistingDifferentiator)
from .rate_filter import FilterParams, RateLimitFilter, sat, verify_implicit
from .signals import (NOISE_FAMILIES, SIGNAL_FAMILIES, NoiseSpec, SampledSignal,
                      SignalSpec, generate_random_signal, generate_scenario1,
                      generate_scenario2, read_signal_csv, sample_noise,
                      write_signal_csv)

__version__ = "0.1.0"

__all__ = [
    "AdaptiveDifferencer", "AdaptiveFiniteDifference", "BoundInputs",
    "BoundNotApplicableError", "CoreParams", "DiffTrace", "ErrorReport",
    "FilterParams", "FiniteDifferencer", "NOISE_FAMILIES", "NoiseSpec",
    "RED_GAIN_SETS", "RateLimitFilter", "RedParams", "RobustDifferentiator",
    "RunResult", "SIGNAL_FAMILIES", "SampledSignal", "ScenarioConfig",
    "SignalSpec", "StreamingDifferentiator", "SuperTwisting",
    "SuperTwistingDifferentiator", "SweepEntry", "convergence_time",
    "default_window_limit", "empirical_robustness", "execute",
    "finite_difference", "finite_difference_step", "generate_random_signal",
    "generate_scenario1", "generate_scenario2", "implicit_ok",
    "kink_recovery_time", "max_increment", "noise_estimate",
    "noise_estimate_reference", "raw_error_bound", "read_signal_csv",
    "sample_noise", "sat", "secant_deviation", "sup_error_from", "sweep",
    "ulp_slack", "verify_implicit", "verify_run", "window_length",
    "worst_case_bound", "write_outputs", "write_signal_csv", "write_sweep_csv",
    "write_trace_csv",
    "__version__",
]
