"""Benchmark orchestration: scenario runs, property sweeps and file outputs.

This is the layer the CLI drives. It builds signals, streams them through
the proposed differentiator and the baselines, verifies the error bounds and
writes the CSV/SVG artifacts.
"""
from __future__ import annotations

import csv
import math
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from ._svg import write_line_plot
from .analysis import (BoundInputs, ErrorReport, convergence_time, sup_error_from,
                       ulp_slack, verify_run, worst_case_bound)
from .baselines import RED_GAIN_SETS, RedParams, SuperTwisting
from .core import CoreParams
from .differentiator import DiffTrace, StreamingDifferentiator
from .rate_filter import FilterParams
from .signals import (NoiseSpec, SampledSignal, SignalSpec, generate_random_signal,
                      generate_scenario1, generate_scenario2, sample_noise)

# Time bands of scenario 2; the noise amplitude doubles past the second edge.
SCENARIO2_BAND_EDGES = (20.0 / 3.0, 40.0 / 3.0)

# Scenario 1's derivative jumps by 0.5 at t = 10, leaving the curvature class
# at that one instant.
SCENARIO1_KINK_TIME = 10.0
SCENARIO1_JUMP = 0.5


def default_window_limit(L: float, delta: float, Nbar: float) -> int:
    """Window limit sized for noise capacity Nbar: ceil(sqrt(2*Nbar/(L*delta^2)) + 1).

    The ceiling is taken with a one-part-in-1e12 downward nudge so a value
    that is integral in exact arithmetic cannot be bumped up by float
    rounding.
    """
    if L <= 0 or delta <= 0 or Nbar < 0:
        raise ValueError("need L > 0, delta > 0, Nbar >= 0")
    x = math.sqrt((2.0 * Nbar) / (L * delta * delta)) + 1.0
    return max(2, math.ceil(x * (1.0 - 1e-12)))


@dataclass
class ScenarioConfig:
    """One benchmark run: what to generate and how to differentiate it."""

    signal: SignalSpec
    noise: NoiseSpec
    core: CoreParams
    filt: FilterParams
    horizon: float
    red_sets: tuple = RED_GAIN_SETS

    def __post_init__(self) -> None:
        if self.filt.gamma <= self.core.L:
            raise ValueError(
                f"gamma must exceed L (got gamma={self.filt.gamma}, L={self.core.L})")
        if self.horizon <= 0:
            raise ValueError("horizon must be positive")


@dataclass
class RunResult:
    config: ScenarioConfig
    signal: SampledSignal
    trace: DiffTrace
    red: list[np.ndarray]
    inputs: BoundInputs
    reports: list[ErrorReport] = field(default_factory=list)


def kink_recovery_time(L: float, N: float, delta: float, gamma: float,
                       kbar: int | float, jump: float) -> float:
    """Claimed re-entry time after an isolated derivative jump.

    Two transients compete. A fresh in-class transient with the jump as the
    initial rate offset, and the time for the jump to leave the estimation
    window (it inflates the noise estimate while inside) plus the filter
    catch-up from the residual accumulated meanwhile. The claim uses the
    larger of the two; with an unbounded window only the fresh transient is
    available.
    """
    fresh = convergence_time(BoundInputs(L, N, delta, gamma, 0, R1=jump))
    if math.isinf(kbar):
        return fresh
    t_flush = kbar * delta
    tail = (3.0 * delta) * (gamma - L / 2.0) / (gamma - L)
    catch_up = (jump + L * t_flush + L * delta / 2.0) / (gamma - L)
    return max(fresh, t_flush + catch_up + tail)


def initial_rate_bound(spec: SignalSpec) -> float:
    """Bound R1 on |f'(0)| for the concrete signal family."""
    if spec.family == "scenario1":
        return 1.0
    if spec.family == "scenario2":
        return 0.5
    return spec.R1


def build_signal(config: ScenarioConfig) -> SampledSignal:
    sig, noise = config.signal, config.noise
    delta, horizon = config.core.delta, config.horizon
    if sig.family == "scenario1":
        clean = generate_scenario1(delta, horizon, 0.0, 0)
        eta = sample_noise(noise, clean.n)
        return SampledSignal(delta, clean.truth_f + eta, clean.truth_f, clean.truth_df)
    if sig.family == "scenario2":
        # Scenario 2 carries its own deterministic modulated noise.
        return generate_scenario2(delta, horizon, noise.N, noise.seed)
    return generate_random_signal(sig, noise, delta, horizon)


def _raw_report(signal: SampledSignal, ys: np.ndarray, inputs: BoundInputs,
                kbar: int | float, label: str) -> ErrorReport:
    """Bound report for the unfiltered estimate.

    The steady bound is the same value; it is claimed from sqrt(2N/L) on
    (never earlier than the first estimate at k = 1).
    """
    nbar = CoreParams(inputs.L, inputs.delta, kbar).nbar
    err = np.abs(signal.truth_df - ys)
    sup = sup_error_from(err)
    bound = worst_case_bound(inputs.L, inputs.N, inputs.delta)
    tconv = max(math.sqrt((2.0 * inputs.N) / inputs.L), inputs.delta)
    k_at = math.ceil(tconv / inputs.delta)
    scale = float(np.max(np.abs(signal.samples))) / inputs.delta
    slack = ulp_slack(max(1.0, scale))
    applicable = inputs.N <= nbar + ulp_slack(max(inputs.N, 1.0))
    if k_at >= ys.size:
        raise ValueError("trace horizon is shorter than the raw convergence time")
    within = sup <= bound + slack
    hits = np.flatnonzero(within)
    return ErrorReport(
        delta=inputs.delta, per_step_error=err, sup_from=sup, bound=bound,
        tconv=tconv, first_k_within_bound=int(hits[0]) if hits.size else None,
        satisfied=bool(sup[k_at] <= bound + slack) if applicable else None,
        applicable=applicable, horizon=(ys.size - 1) * inputs.delta,
        slack=slack, label=label)


def _reference_report(signal: SampledSignal, trace: np.ndarray, inputs: BoundInputs,
                      label: str) -> ErrorReport:
    """Error trace for a baseline; no certificate applies, nothing is gated."""
    err = np.abs(signal.truth_df - trace)
    sup = sup_error_from(err)
    bound = worst_case_bound(inputs.L, inputs.N, inputs.delta)
    return ErrorReport(
        delta=inputs.delta, per_step_error=err, sup_from=sup, bound=bound,
        tconv=convergence_time(inputs), first_k_within_bound=None,
        satisfied=None, applicable=False, horizon=(trace.size - 1) * inputs.delta,
        slack=0.0, label=label)


def execute(config: ScenarioConfig) -> RunResult:
    """Run one configured benchmark and verify every applicable bound."""
    core, filt = config.core, config.filt
    signal = build_signal(config)
    inputs = BoundInputs(core.L, config.noise.N, core.delta, filt.gamma,
                         filt.k0, initial_rate_bound(config.signal))
    if config.horizon < 2.0 * convergence_time(inputs):
        raise ValueError(
            f"horizon {config.horizon:g}s must be at least twice the "
            f"convergence time {convergence_time(inputs):g}s")
    sd = StreamingDifferentiator(core.L, core.delta, filt.gamma, filt.k0, core.kbar)
    trace = sd.run(signal.samples)
    red = [SuperTwisting(RedParams(l1, l2, core.L, core.delta)).run(signal.samples)
           for l1, l2 in config.red_sets]

    reports: list[ErrorReport] = []
    if config.signal.family == "scenario2":
        # The last time band exceeds the nominal amplitude, so the bound is
        # verified on the in-band prefix and reported as not-applicable on
        # the tail.
        k_cut = int(math.floor(SCENARIO2_BAND_EDGES[1] / core.delta))
        k_cut = min(k_cut, signal.n - 1)
        head_sig = signal.slice(0, k_cut + 1)
        reports.append(verify_run(head_sig, trace.y[:k_cut + 1], inputs,
                                  core.kbar, label="filtered"))
        reports.append(_raw_report(head_sig, trace.ys[:k_cut + 1], inputs,
                                   core.kbar, label="raw"))
        if signal.n - 1 > k_cut:
            tail_sig = signal.slice(k_cut + 1)
            tail_inputs = BoundInputs(core.L, 2.0 * config.noise.N, core.delta,
                                      filt.gamma, 0, inputs.R1)
            t_tail = convergence_time(tail_inputs)
            if math.ceil(t_tail / core.delta) < tail_sig.n:
                reports.append(verify_run(tail_sig, trace.y[k_cut + 1:],
                                          tail_inputs, core.kbar,
                                          label="filtered_tail"))
    elif (config.signal.family == "scenario1"
          and int(round(SCENARIO1_KINK_TIME / core.delta)) <= signal.n - 1):
        # The steady bound is claimed strictly before the jump. From the jump
        # on, a recovery claim applies: fresh transient with the jump size as
        # the initial rate offset, or window flush plus catch-up, whichever
        # is later. Regions shorter than their claim time are skipped.
        k_kink = int(round(SCENARIO1_KINK_TIME / core.delta))
        head_sig = signal.slice(0, k_kink)
        if math.ceil(convergence_time(inputs) / core.delta) < k_kink:
            reports.append(verify_run(head_sig, trace.y[:k_kink], inputs,
                                      core.kbar, label="filtered"))
            reports.append(_raw_report(head_sig, trace.ys[:k_kink], inputs,
                                       core.kbar, label="raw"))
        rec_inputs = BoundInputs(core.L, config.noise.N, core.delta, filt.gamma,
                                 0, R1=SCENARIO1_JUMP)
        t_rec = kink_recovery_time(core.L, config.noise.N, core.delta,
                                   filt.gamma, core.kbar, SCENARIO1_JUMP)
        if math.ceil(t_rec / core.delta) < signal.n - k_kink:
            reports.append(verify_run(signal.slice(k_kink), trace.y[k_kink:],
                                      rec_inputs, core.kbar,
                                      label="filtered_recovery", tconv=t_rec))
    else:
        reports.append(verify_run(signal, trace.y, inputs, core.kbar, label="filtered"))
        reports.append(_raw_report(signal, trace.ys, inputs, core.kbar, label="raw"))
    for i, r in enumerate(red):
        reports.append(_reference_report(signal, r, inputs, label=f"st{i + 1}"))
    return RunResult(config=config, signal=signal, trace=trace, red=red,
                     inputs=inputs, reports=reports)


TRACE_COLUMNS = ("t", "u", "f", "df", "ys", "y", "red1", "red2",
                 "err_ys", "err_y", "err_red1", "err_red2")


def write_trace_csv(result: RunResult, path: str | Path, digits: int = 10) -> None:
    fmt = f"%.{digits}g"
    sig, tr = result.signal, result.trace
    df = sig.truth_df
    red1 = result.red[0] if result.red else np.zeros(sig.n)
    red2 = result.red[1] if len(result.red) > 1 else np.zeros(sig.n)
    t = sig.t
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(TRACE_COLUMNS)
        for k in range(sig.n):
            row = (t[k], sig.samples[k], sig.truth_f[k], df[k], tr.ys[k], tr.y[k],
                   red1[k], red2[k], abs(df[k] - tr.ys[k]), abs(df[k] - tr.y[k]),
                   abs(df[k] - red1[k]), abs(df[k] - red2[k]))
            w.writerow([fmt % v for v in row])


def write_outputs(result: RunResult, outdir: str | Path, digits: int = 10) -> dict[str, Path]:
    """Write trace.csv, one report CSV per differentiator and the error plot."""
    outdir = Path(outdir)
    outdir.mkdir(parents=True, exist_ok=True)
    paths: dict[str, Path] = {}
    trace_path = outdir / "trace.csv"
    write_trace_csv(result, trace_path, digits)
    paths["trace"] = trace_path
    for report in result.reports:
        p = outdir / f"report_{report.label}.csv"
        report.to_csv(p, digits)
        paths[f"report_{report.label}"] = p
    sig, tr = result.signal, result.trace
    df = sig.truth_df
    series = [("filtered", np.abs(df - tr.y)), ("raw", np.abs(df - tr.ys))]
    for i, r in enumerate(result.red):
        series.append((f"super-twisting {RED_GAIN_SETS[i]}", np.abs(df - r)))
    plot_path = outdir / "error.svg"
    write_line_plot(plot_path, sig.t, series, title="differentiation error",
                    xlabel="t (s)", ylabel="|df - estimate|",
                    hline=result.reports[0].bound)
    paths["plot"] = plot_path
    return paths


SWEEP_NOISE_FAMILIES = ("uniform", "squarewave", "modulated")
SWEEP_K0_CYCLE = (0, 10, 25, 50)


@dataclass
class SweepEntry:
    seed: int
    family: str
    N: float
    k0: int
    kbar: int
    inputs: BoundInputs
    signal: SampledSignal
    trace: DiffTrace
    report: ErrorReport


def sweep(count: int, base_seed: int, L: float = 1.0, Nbar: float = 0.08,
          delta: float = 0.01, gamma: float = 1.96,
          N_override: float | None = None) -> list[SweepEntry]:
    """Randomized bound-verification runs over signals and noise families.

    Each run draws a random curvature-bounded signal, a noise family from a
    fixed rotation and a noise level at most 0.9*Nbar (unless overridden),
    then checks the worst-case bound with the run's own convergence time.
    """
    if count < 1:
        raise ValueError("count must be at least 1")
    kbar = default_window_limit(L, delta, Nbar)
    entries: list[SweepEntry] = []
    for i in range(count):
        seed = base_seed + i
        family = SWEEP_NOISE_FAMILIES[i % len(SWEEP_NOISE_FAMILIES)]
        k0 = SWEEP_K0_CYCLE[i % len(SWEEP_K0_CYCLE)]
        if N_override is None:
            N = float(np.random.default_rng([seed, 17]).uniform(0.0, 0.9 * Nbar))
        else:
            N = N_override
        sig_spec = SignalSpec("piecewise_quadratic", L=L, R0=1.0, R1=1.0, seed=seed)
        noise_spec = NoiseSpec(family, N=N, seed=seed + 1000003)
        inputs = BoundInputs(L, N, delta, gamma, k0, R1=1.0)
        horizon = 2.0 * convergence_time(inputs) + 2.0
        signal = generate_random_signal(sig_spec, noise_spec, delta, horizon)
        sd = StreamingDifferentiator(L, delta, gamma, k0, kbar)
        trace = sd.run(signal.samples)
        report = verify_run(signal, trace.y, inputs, kbar, label=f"seed{seed}")
        entries.append(SweepEntry(seed=seed, family=family, N=N, k0=k0, kbar=kbar,
                                  inputs=inputs, signal=signal, trace=trace,
                                  report=report))
    return entries


def write_sweep_csv(entries: list[SweepEntry], path: str | Path, digits: int = 10) -> None:
    fmt = f"%.{digits}g"
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["seed", "family", "N", "satisfied", "max_err", "bound"])
        for e in entries:
            r = e.report
            k_at = math.ceil(r.tconv / r.delta)
            sat = "na" if r.satisfied is None else ("true" if r.satisfied else "false")
            w.writerow([e.seed, e.family, fmt % e.N, sat,
                        fmt % r.sup_from[min(k_at, r.sup_from.size - 1)], fmt % r.bound])
