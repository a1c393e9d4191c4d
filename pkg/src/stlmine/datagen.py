"""Deterministic synthetic datasets for the bundled case studies, plus thin
adapters for two optional external UCI datasets (never fetched; the caller
supplies downloaded files).

Each generator fixes its trace shapes so the intended classifier exists and
every shorter or earlier-enumerated template family keeps at least a few
misclassified traces at its whole satisfaction boundary:

* steps-and-sinusoids: rising steps (label 1) against falling steps and three
  bands of sinusoids (label 0).  The low band defeats below-threshold
  templates, the high band defeats above-threshold and eventually-high
  templates, and the mid band starts just above the step start band so it
  defeats always-above and eventually-in-band templates without satisfying
  the target conjunction.  Step plateaus are spread out so no 5-of-10 subset
  spans less than a sinusoid's per-sample jump.
* anomaly-threshold: both classes share a floor-plus-oscillation profile;
  label-0 traces add one brief dip below the class gap.
* oscillator inputs: square waves of increasing period; labels come from
  evaluating a fixed always-eventually-high formula on each trace.
"""
from __future__ import annotations

import math
from pathlib import Path

import numpy as np

from .errors import DataFormatError
from .formula import Atom, Const, Finally, Globally, Interval
from .monitor import satisfies
from .traces import Dataset, Trace

TWO_PI = 2.0 * math.pi


def _ramp(t: np.ndarray, start: float, t0: float, level: float, width: float) -> np.ndarray:
    """Hold `start`, move linearly to `level` over [t0, t0+width], hold `level`."""
    frac = np.clip((t - t0) / width, 0.0, 1.0)
    return start + (level - start) * frac


def _sine(t: np.ndarray, center: float, amp: float, period: float, phase: float) -> np.ndarray:
    return center + amp * np.sin(TWO_PI * t / period + phase)


def gen_steps_and_sinusoids(seed: int = 0) -> Dataset:
    """28 one-signal traces: 10 rising steps (label 1) vs 10 falling steps and
    8 sinusoids (label 0), separable by (x < c1) and F[0,tau](x > c2)."""
    rng = np.random.default_rng([seed, 10])
    period, n = 1.0, 51
    t = np.arange(n) * period
    traces: list[Trace] = []
    labels: list[int] = []

    def add(x: np.ndarray, label: int):
        traces.append(Trace({"x": x}, period))
        labels.append(label)

    for i in range(10):  # rising steps
        x0 = rng.uniform(-11.5, -10.45)
        t_step = rng.uniform(8.0, 28.0)
        # plateaus spaced >= 0.12 apart: any 5 of them span >= 0.48, wider
        # than the 0.32 max per-sample sinusoid jump, so tight bands around
        # a plateau subset cannot be skipped over by the sinusoids
        plateau = -8.7 + 0.14 * i + rng.uniform(0.0, 0.02)
        add(_ramp(t, x0, t_step, plateau, 2.0), 1)

    for _ in range(10):  # falling steps
        x0 = rng.uniform(-11.5, -10.45)
        t_fall = rng.uniform(6.0, 30.0)
        bottom = rng.uniform(-15.2, -14.2)
        add(_ramp(t, x0, t_fall, bottom, 2.0), 0)

    for _ in range(2):  # low sinusoids, entirely below the step start band
        center = rng.uniform(-14.0, -13.8)
        amp = rng.uniform(1.0, 1.2)
        add(_sine(t, center, amp, rng.uniform(15.0, 25.0), rng.uniform(0.0, TWO_PI)), 0)

    # band oscillator: wobbles strictly inside the envelope every step trace
    # occupies, (-10.45, -8.14), so "stay inside a value band" patterns that
    # cover the steps also cover it; starts above -10.35 like the rising waves
    center = rng.uniform(-9.35, -9.31)
    amp = rng.uniform(0.98, 1.02)
    phase = math.asin(rng.uniform(-0.97, -0.90))
    add(_sine(t, center, amp, rng.uniform(16.0, 22.0), phase), 0)

    for _ in range(3):  # rising quarter waves: start just above -10.45, climb
        # past every plateau by t ~ 8 and keep climbing to the last sample, so
        # any "from some point on, stay high" pattern that fits the steps also
        # fits these (steps never finish rising before t = 10)
        start = rng.uniform(-10.35, -10.15)
        amp = rng.uniform(7.8, 8.4)
        add(_sine(t, start, amp, rng.uniform(200.0, 220.0), 0.0), 0)

    for i in range(2):  # high slow sweeps: start at the crest
        center = rng.uniform(-6.6, -6.3)
        amp = rng.uniform(2.5, 2.8)
        p = 56.0 + 7.0 * i + rng.uniform(0.0, 2.0)
        add(_sine(t, center, amp, p, 0.5 * math.pi), 0)

    return Dataset(traces, labels)


def gen_anomaly_threshold(
    seed: int = 0, n_per_class: int = 50, gap: float = 2.0, theta: float = 34.0
) -> Dataset:
    """Floor-plus-oscillation traces; label-0 traces dip once below the gap.

    With gap > 0 the classes are separable by G[0,tau](x > c) for c inside
    the gap; with gap = 0 the dip depths overlap the label-1 floors and no
    threshold formula separates.
    """
    if n_per_class < 1:
        raise ValueError("n_per_class must be >= 1")
    rng = np.random.default_rng([seed, 11])
    period, n = 1.0, 101
    t = np.arange(n) * period
    traces: list[Trace] = []
    labels: list[int] = []

    def base() -> np.ndarray:
        floor = theta + gap / 2.0 + rng.uniform(0.1, 0.5)
        amp = rng.uniform(0.8, 1.6)
        p = rng.uniform(15.0, 30.0)
        phase = rng.uniform(0.0, TWO_PI)
        osc = amp * (0.5 + 0.5 * np.sin(TWO_PI * t / p + phase))
        return floor + osc

    for _ in range(n_per_class):
        traces.append(Trace({"x": base()}, period))
        labels.append(1)
    for _ in range(n_per_class):
        x = base()
        t_dip = int(rng.integers(10, 46))
        bottom = theta - gap / 2.0 + rng.uniform(-0.4, 0.4)
        x[t_dip - 1] = 0.5 * (x[t_dip - 1] + bottom)
        x[t_dip + 1] = 0.5 * (x[t_dip + 1] + bottom)
        x[t_dip] = bottom
        traces.append(Trace({"x": x}, period))
        labels.append(0)
    return Dataset(traces, labels)


# settledness property used to label the oscillator inputs: within every
# 21-second window starting in the first 368 seconds, the wave comes back up
OSCILLATOR_LABEL_FORMULA = Globally(
    Interval(Const(0.0), Const(368.0)),
    Finally(Interval(Const(0.0), Const(21.0)), Atom("x", ">", Const(0.0))),
)


def gen_oscillator_inputs() -> Dataset:
    """31 square waves, periods 10, 12, ..., 70, horizon 400 s.

    A wave spends period/2 below zero, so the label formula holds exactly
    when period/2 <= 21: short periods get label 1, long ones label 0.
    """
    period, n = 1.0, 401
    t = np.arange(n) * period
    traces: list[Trace] = []
    labels: list[int] = []
    for p in range(10, 72, 2):
        x = np.where((t % p) < p / 2.0, 1.0, -1.0)
        tr = Trace({"x": x}, period)
        traces.append(tr)
        labels.append(1 if satisfies(OSCILLATOR_LABEL_FORMULA, tr) else 0)
    return Dataset(traces, labels)


# ---------------------------------------------------------------------------
# optional external data adapters (files supplied by the user)

ROBOT_SIGNALS = ("Fx", "Fy", "Fz", "Tx", "Ty", "Tz")


def load_robot_failures(
    path: str | Path, positive_class: str = "normal", period: float = 0.315
) -> Dataset:
    """Parse a UCI robot-execution-failures file (lp1.data ... lp5.data).

    The format is blocks of one class-name line followed by 15 lines of six
    whitespace-separated force/torque integers.  Traces keep all six signals;
    the named class gets label 1, everything else label 0.
    """
    path = Path(path)
    lines = [ln.strip() for ln in path.read_text().splitlines()]
    traces: list[Trace] = []
    labels: list[int] = []
    i = 0
    while i < len(lines):
        if not lines[i]:
            i += 1
            continue
        cls = lines[i]
        i += 1
        rows = []
        while i < len(lines) and lines[i]:
            parts = lines[i].split()
            if len(parts) != len(ROBOT_SIGNALS):
                raise DataFormatError(
                    f"{path}: line {i + 1}: expected {len(ROBOT_SIGNALS)} values, got {len(parts)}"
                )
            try:
                rows.append([float(v) for v in parts])
            except ValueError as e:
                raise DataFormatError(f"{path}: line {i + 1}: {e}") from None
            i += 1
        if not rows:
            raise DataFormatError(f"{path}: class block {cls!r} has no samples")
        arr = np.asarray(rows)
        signals = {name: arr[:, j] for j, name in enumerate(ROBOT_SIGNALS)}
        traces.append(Trace(signals, period))
        labels.append(1 if cls == positive_class else 0)
    if not traces:
        raise DataFormatError(f"{path}: no trace blocks found")
    return Dataset(traces, labels)


def load_har_std(
    features_path: str | Path,
    activity_path: str | Path,
    subject_path: str | Path,
    feature_index: int = 3,
    window_len: int = 50,
    period: float = 1.0,
) -> Dataset:
    """Adapt the UCI HAR feature files to fixed-length one-signal traces.

    Each row of the features file is one 2.56 s window; consecutive rows with
    the same (subject, activity) form a run.  Runs at least ``window_len``
    windows long are truncated to that length and kept as traces of the
    chosen feature column (default: body-acceleration standard deviation X,
    signal name ``stdx``).  Dynamic activities (codes 1-3) get label 1.
    """
    feats = np.loadtxt(features_path)
    acts = np.loadtxt(activity_path, dtype=int)
    subs = np.loadtxt(subject_path, dtype=int)
    if not (len(feats) == len(acts) == len(subs)):
        raise DataFormatError("HAR feature/activity/subject files disagree on row count")
    col = feats[:, feature_index]
    traces: list[Trace] = []
    labels: list[int] = []
    start = 0
    for i in range(1, len(col) + 1):
        if i == len(col) or acts[i] != acts[start] or subs[i] != subs[start]:
            if i - start >= window_len:
                traces.append(Trace({"stdx": col[start : start + window_len]}, period))
                labels.append(1 if acts[start] <= 3 else 0)
            start = i
    if not traces:
        raise DataFormatError(f"no runs of {window_len}+ windows in {features_path}")
    return Dataset(traces, labels)


GENERATORS = {
    "steps": gen_steps_and_sinusoids,
    "anomaly": gen_anomaly_threshold,
    "oscillator": lambda seed=0: gen_oscillator_inputs(),
}
