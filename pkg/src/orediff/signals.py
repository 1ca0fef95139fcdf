"""Benchmark signal and noise generators on a uniform sample grid.

Every generator returns the noisy samples together with the exact value and
derivative of the underlying signal, so downstream error traces compare
against closed-form ground truth instead of a numerical reference.
"""
from __future__ import annotations

import csv
from dataclasses import dataclass
from pathlib import Path

import numpy as np

SIGNAL_FAMILIES = ("scenario1", "scenario2", "piecewise_quadratic", "polynomial")
NOISE_FAMILIES = ("uniform", "modulated", "zero", "squarewave")

# Segment lengths of the generated random families.
NOISE_SEGMENT_SAMPLES = 100
ACCEL_SEGMENT_SECONDS = 0.5


@dataclass(frozen=True)
class SignalSpec:
    """Description of a generated signal with curvature bound L.

    L bounds |f''(t)| (1/s^2), R0 bounds |f(0)| and R1 bounds |f'(0)|.
    """

    family: str = "piecewise_quadratic"
    L: float = 1.0
    R0: float = 1.0
    R1: float = 1.0
    seed: int = 0

    def __post_init__(self) -> None:
        if self.family not in SIGNAL_FAMILIES:
            raise ValueError(f"unknown signal family {self.family!r}; expected one of {SIGNAL_FAMILIES}")
        if self.L < 0 or self.R0 < 0 or self.R1 < 0:
            raise ValueError("L, R0 and R1 must be nonnegative")


@dataclass(frozen=True)
class NoiseSpec:
    """Bounded measurement noise: every sample satisfies |eta_k| <= N."""

    family: str = "uniform"
    N: float = 0.08
    seed: int = 0

    def __post_init__(self) -> None:
        if self.family not in NOISE_FAMILIES:
            raise ValueError(f"unknown noise family {self.family!r}; expected one of {NOISE_FAMILIES}")
        if self.N < 0:
            raise ValueError("noise amplitude N must be nonnegative")


@dataclass
class SampledSignal:
    """A finite uniformly sampled signal, optionally with ground truth.

    samples holds the (noisy) measurements u_k taken at t_k = k * delta.
    truth_f and truth_df, when present, hold the exact noise-free value and
    derivative on the same grid.
    """

    delta: float
    samples: np.ndarray
    truth_f: np.ndarray | None = None
    truth_df: np.ndarray | None = None

    def __post_init__(self) -> None:
        if self.delta <= 0:
            raise ValueError("delta must be positive")
        self.samples = np.asarray(self.samples, dtype=np.float64)
        if self.samples.ndim != 1 or self.samples.size == 0:
            raise ValueError("samples must be a nonempty 1-d sequence")
        for name in ("truth_f", "truth_df"):
            arr = getattr(self, name)
            if arr is not None:
                arr = np.asarray(arr, dtype=np.float64)
                if arr.shape != self.samples.shape:
                    raise ValueError(f"{name} must have the same length as samples")
                setattr(self, name, arr)

    @property
    def n(self) -> int:
        return self.samples.size

    @property
    def t(self) -> np.ndarray:
        return np.arange(self.n) * self.delta

    def slice(self, start: int, stop: int | None = None) -> "SampledSignal":
        """Return the sub-signal for sample indices [start, stop)."""
        sl = np.s_[start:stop]
        return SampledSignal(
            self.delta,
            self.samples[sl],
            None if self.truth_f is None else self.truth_f[sl],
            None if self.truth_df is None else self.truth_df[sl],
        )


def _grid(delta: float, horizon: float) -> np.ndarray:
    if delta <= 0:
        raise ValueError("delta must be positive")
    if horizon <= 0:
        raise ValueError("horizon must be positive")
    steps = int(round(horizon / delta))
    if steps < 1:
        raise ValueError("horizon shorter than one sample")
    return np.arange(steps + 1) * delta


def generate_scenario1(delta: float, horizon: float, N: float = 0.08, seed: int = 0) -> SampledSignal:
    """Benchmark scenario 1: quadratic signal with a derivative kink at t = 10.

    f(t) = t^2/2 + t + 0.5 (t - 10) for t >= 10, plus i.i.d. uniform noise
    on [-N, N]. The derivative jumps from 11.0 to 11.5 at t = 10, which
    deliberately violates the curvature bound at that single instant.
    """
    if N < 0:
        raise ValueError("noise amplitude N must be nonnegative")
    t = _grid(delta, horizon)
    after_kink = t >= 10.0
    f = 0.5 * t * t + t + np.where(after_kink, 0.5 * (t - 10.0), 0.0)
    df = t + 1.0 + np.where(after_kink, 0.5, 0.0)
    rng = np.random.default_rng(seed)
    u = f + rng.uniform(-N, N, t.size)
    return SampledSignal(delta, u, f, df)


def generate_scenario2(delta: float, horizon: float, Nbar: float = 0.08, seed: int = 0) -> SampledSignal:
    """Benchmark scenario 2: smooth signal with deterministic sawtooth noise.

    f(t) = (t^2/2 + t + cos t)/2. The noise is a sawtooth with period of ten
    samples whose amplitude is 0.1*Nbar, Nbar and 2*Nbar on the three time
    bands t <= 20/3, 20/3 < t <= 40/3 and t > 40/3. The last band exceeds
    the nominal amplitude on purpose. Fully deterministic; seed is accepted
    for interface uniformity and ignored.
    """
    del seed
    if Nbar < 0:
        raise ValueError("noise amplitude Nbar must be nonnegative")
    t = _grid(delta, horizon)
    k = np.arange(t.size)
    f = 0.5 * (0.5 * t * t + t + np.cos(t))
    df = 0.5 * (t + 1.0 - np.sin(t))
    level = np.where(t <= 20.0 / 3.0, 0.1 * Nbar, np.where(t <= 40.0 / 3.0, Nbar, 2.0 * Nbar))
    # Sawtooth evaluated on the sample index: mod(t, 10*delta)/(10*delta)
    # equals (k mod 10)/10 exactly on the grid.
    saw = (k % 10) / 10.0
    u = f + level * saw
    return SampledSignal(delta, u, f, df)


def sample_noise(spec: NoiseSpec, n: int) -> np.ndarray:
    """Draw n noise samples for the given spec. |eta_k| <= N holds exactly."""
    if n < 1:
        raise ValueError("n must be at least 1")
    rng = np.random.default_rng(spec.seed)
    k = np.arange(n)
    if spec.family == "zero":
        return np.zeros(n)
    if spec.family == "uniform":
        return rng.uniform(-spec.N, spec.N, n)
    if spec.family == "squarewave":
        # Alternating +-N, the classical worst case for finite differences.
        return np.where(k % 2 == 0, spec.N, -spec.N)
    # "modulated": piecewise-constant random level times a sawtooth, so the
    # effective amplitude changes every NOISE_SEGMENT_SAMPLES samples.
    n_segs = (n + NOISE_SEGMENT_SAMPLES - 1) // NOISE_SEGMENT_SAMPLES
    levels = rng.uniform(-spec.N, spec.N, n_segs)
    return levels[k // NOISE_SEGMENT_SAMPLES] * ((k % 10) / 10.0)


def generate_random_signal(spec: SignalSpec, noise: NoiseSpec, delta: float, horizon: float) -> SampledSignal:
    """Generate a random curvature-bounded signal plus bounded noise.

    piecewise_quadratic: f'' is piecewise constant (segments of
    ACCEL_SEGMENT_SECONDS) with values in [-L, L], integrated in closed form
    per sampling step so the recorded derivative is exact.
    polynomial: a single quadratic with f'' constant in [-L, L].
    Initial conditions are drawn in [-R0, R0] x [-R1, R1].
    """
    t = _grid(delta, horizon)
    n = t.size
    rng = np.random.default_rng(spec.seed)
    if spec.family == "polynomial":
        a = rng.uniform(-spec.L, spec.L)
        f0 = rng.uniform(-spec.R0, spec.R0)
        v0 = rng.uniform(-spec.R1, spec.R1)
        f = f0 + v0 * t + 0.5 * a * t * t
        df = v0 + a * t
    elif spec.family == "piecewise_quadratic":
        seg = max(1, int(round(ACCEL_SEGMENT_SECONDS / delta)))
        n_steps = n - 1
        n_segs = (n_steps + seg - 1) // seg
        acc_seg = rng.uniform(-spec.L, spec.L, n_segs)
        f0 = rng.uniform(-spec.R0, spec.R0)
        v0 = rng.uniform(-spec.R1, spec.R1)
        acc = np.repeat(acc_seg, seg)[:n_steps]
        df = np.empty(n)
        df[0] = v0
        df[1:] = v0 + np.cumsum(acc * delta)
        # Per-step exact increment of the quadratic piece.
        inc = df[:-1] * delta + (0.5 * delta * delta) * acc
        f = np.empty(n)
        f[0] = f0
        f[1:] = f0 + np.cumsum(inc)
    else:
        raise ValueError(f"generate_random_signal does not handle family {spec.family!r}; "
                         "use generate_scenario1/generate_scenario2")
    u = f + sample_noise(noise, n)
    return SampledSignal(delta, u, f, df)


def write_signal_csv(signal: SampledSignal, path: str | Path, digits: int = 10) -> None:
    """Write a signal as CSV with header t,u,f,df. Missing truth -> empty."""
    if digits < 6:
        raise ValueError("digits must be at least 6")
    fmt = f"%.{digits}g"
    t = signal.t
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["t", "u", "f", "df"])
        for i in range(signal.n):
            row = [fmt % t[i], fmt % signal.samples[i]]
            row.append(fmt % signal.truth_f[i] if signal.truth_f is not None else "")
            row.append(fmt % signal.truth_df[i] if signal.truth_df is not None else "")
            w.writerow(row)


def read_signal_csv(path: str | Path) -> SampledSignal:
    """Read a signal written by write_signal_csv. Needs at least two rows."""
    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        if header is None or [h.strip() for h in header[:4]] != ["t", "u", "f", "df"]:
            raise ValueError("expected header t,u,f,df")
        t, u, f, df = [], [], [], []
        for row in reader:
            t.append(float(row[0]))
            u.append(float(row[1]))
            f.append(float(row[2]) if row[2] != "" else np.nan)
            df.append(float(row[3]) if row[3] != "" else np.nan)
    if len(t) < 2:
        raise ValueError("need at least two rows to recover the sampling period")
    truth_f = None if np.isnan(f).all() else np.asarray(f)
    truth_df = None if np.isnan(df).all() else np.asarray(df)
    return SampledSignal(t[1] - t[0], np.asarray(u), truth_f, truth_df)
