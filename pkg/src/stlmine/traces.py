"""Uniformly sampled multi-signal traces, labeled datasets, and CSV I/O.

Trace CSV format: header ``time,<sig1>,<sig2>,...`` then one row per sample,
UTF-8, ``.`` decimal separator.  A label manifest is a CSV of ``filename,label``
rows with label 0 or 1; a ``filename,label`` header row is optional.
"""
from __future__ import annotations

import csv
import math
import os
from dataclasses import dataclass, field

import numpy as np

from .errors import DataFormatError, TraceDomainError, UnknownSignalError

# tolerated relative deviation between consecutive timestamp gaps and the period
TIMESTAMP_RTOL = 1e-6

# relative slack when snapping query times onto the sample grid
_EPS = 1e-9


class Trace:
    """A finite, uniformly sampled recording of one or more named signals.

    Values between samples follow the previous sample (piecewise-constant hold).
    """

    __slots__ = ("_signals", "period", "start_time", "n_samples")

    def __init__(self, signals, period, start_time=0.0):
        period = float(period)
        if not (period > 0) or not math.isfinite(period):
            raise DataFormatError(f"period must be positive and finite, got {period}")
        store: dict[str, np.ndarray] = {}
        n = None
        for name, values in dict(signals).items():
            arr = np.asarray(values, dtype=np.float64).copy()
            if arr.ndim != 1 or arr.size == 0:
                raise DataFormatError(f"signal {name!r} must be a non-empty 1-d array")
            if not np.isfinite(arr).all():
                raise DataFormatError(f"signal {name!r} contains NaN or infinite samples")
            if n is None:
                n = arr.size
            elif arr.size != n:
                raise DataFormatError(
                    f"signal {name!r} has {arr.size} samples, expected {n}"
                )
            arr.setflags(write=False)
            store[name] = arr
        if not store:
            raise DataFormatError("a trace needs at least one signal")
        self._signals = store
        self.period = period
        self.start_time = float(start_time)
        self.n_samples = n

    @property
    def signal_names(self) -> tuple[str, ...]:
        return tuple(self._signals)

    @property
    def duration(self) -> float:
        return (self.n_samples - 1) * self.period

    @property
    def end_time(self) -> float:
        return self.start_time + self.duration

    def times(self) -> np.ndarray:
        return self.start_time + self.period * np.arange(self.n_samples)

    def values(self, signal: str) -> np.ndarray:
        try:
            return self._signals[signal]
        except KeyError:
            raise UnknownSignalError(
                f"trace has no signal {signal!r} (has {', '.join(self._signals)})"
            ) from None

    def sample_index(self, t: float) -> int:
        """Index of the sample whose value holds at time t."""
        if not self.contains_time(t):
            raise TraceDomainError(
                f"t={t} outside trace domain [{self.start_time}, {self.end_time}]"
            )
        k = math.floor((t - self.start_time) / self.period + _EPS)
        return min(max(k, 0), self.n_samples - 1)

    def contains_time(self, t: float) -> bool:
        slack = _EPS * self.period
        return self.start_time - slack <= t <= self.end_time + slack

    def value_at(self, signal: str, t: float) -> float:
        return float(self.values(signal)[self.sample_index(t)])

    def __repr__(self):
        sigs = ",".join(self._signals)
        return (
            f"Trace({sigs}; n={self.n_samples}, period={self.period}, "
            f"start={self.start_time})"
        )


@dataclass
class Dataset:
    """Traces with binary labels. All traces share signal names and period."""

    traces: list[Trace]
    labels: list[int]
    names: list[str] = field(default_factory=list)  # optional per-trace file names

    def __post_init__(self):
        if len(self.traces) != len(self.labels):
            raise DataFormatError(
                f"{len(self.traces)} traces but {len(self.labels)} labels"
            )
        if not self.traces:
            raise DataFormatError("dataset has no traces")
        for lab in self.labels:
            if lab not in (0, 1):
                raise DataFormatError(f"labels must be 0 or 1, got {lab!r}")
        ref = self.traces[0]
        for tr in self.traces[1:]:
            if tr.signal_names != ref.signal_names:
                raise DataFormatError(
                    f"signal mismatch across traces: {tr.signal_names} vs {ref.signal_names}"
                )
            if not math.isclose(tr.period, ref.period, rel_tol=1e-9):
                raise DataFormatError(
                    f"period mismatch across traces: {tr.period} vs {ref.period}"
                )
        if self.names and len(self.names) != len(self.traces):
            raise DataFormatError("names, when given, must match traces 1:1")

    @property
    def n(self) -> int:
        return len(self.traces)

    @property
    def signal_names(self) -> tuple[str, ...]:
        return self.traces[0].signal_names

    @property
    def period(self) -> float:
        return self.traces[0].period

    def with_label(self, label: int) -> list[Trace]:
        return [tr for tr, lab in zip(self.traces, self.labels) if lab == label]

    def count(self, label: int) -> int:
        return sum(1 for lab in self.labels if lab == label)


# ---------------------------------------------------------------------------
# CSV I/O

def _fmt(v: float) -> str:
    # repr of a Python float round-trips bit-exactly through text
    return repr(float(v))


def load_trace_csv(path) -> Trace:
    """Read one trace file. The sampling period is taken from the timestamps;
    a single-row file gets period 1.0 by convention."""
    with open(path, "r", encoding="utf-8", newline="") as fh:
        rows = list(csv.reader(fh))
    rows = [r for r in rows if r and any(cell.strip() for cell in r)]
    if not rows:
        raise DataFormatError(f"{path}: empty trace file")
    header = [c.strip() for c in rows[0]]
    if not header or header[0] != "time" or len(header) < 2:
        raise DataFormatError(f"{path}: header must be 'time,<sig1>,...', got {header}")
    sig_names = header[1:]
    if len(set(sig_names)) != len(sig_names):
        raise DataFormatError(f"{path}: duplicate signal column names")
    data = []
    for lineno, row in enumerate(rows[1:], start=2):
        if len(row) != len(header):
            raise DataFormatError(
                f"{path}:{lineno}: expected {len(header)} columns, got {len(row)}"
            )
        try:
            data.append([float(cell) for cell in row])
        except ValueError as exc:
            raise DataFormatError(f"{path}:{lineno}: {exc}") from None
    arr = np.asarray(data, dtype=np.float64)
    times = arr[:, 0]
    if arr.shape[0] == 1:
        period = 1.0
    else:
        diffs = np.diff(times)
        period = float(diffs[0])
        if period <= 0:
            raise DataFormatError(f"{path}: timestamps must be strictly increasing")
        if np.abs(diffs - period).max() > TIMESTAMP_RTOL * period:
            i = int(np.abs(diffs - period).argmax())
            raise DataFormatError(
                f"{path}: non-uniform timestamps (line {i + 3}: gap "
                f"{diffs[i]!r} vs period {period!r})"
            )
    signals = {name: arr[:, j + 1] for j, name in enumerate(sig_names)}
    return Trace(signals, period=period, start_time=float(times[0]))


def save_trace_csv(trace: Trace, path) -> None:
    with open(path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["time", *trace.signal_names])
        times = trace.times()
        cols = [trace.values(name) for name in trace.signal_names]
        for k in range(trace.n_samples):
            writer.writerow([_fmt(times[k])] + [_fmt(col[k]) for col in cols])


def read_label_manifest(path) -> list[tuple[str, int]]:
    with open(path, "r", encoding="utf-8", newline="") as fh:
        rows = [r for r in csv.reader(fh) if r and any(c.strip() for c in r)]
    if not rows:
        raise DataFormatError(f"{path}: empty label manifest")
    if [c.strip().lower() for c in rows[0]] == ["filename", "label"]:
        rows = rows[1:]
    out = []
    for lineno, row in enumerate(rows, start=1):
        if len(row) != 2:
            raise DataFormatError(f"{path}:{lineno}: expected 'filename,label' rows")
        name, label_text = row[0].strip(), row[1].strip()
        if label_text not in ("0", "1"):
            raise DataFormatError(
                f"{path}:{lineno}: label must be 0 or 1, got {label_text!r}"
            )
        out.append((name, int(label_text)))
    if not out:
        raise DataFormatError(f"{path}: no labeled files")
    return out


def load_csv_dir(path, manifest=None, require_both_classes=False) -> Dataset:
    """Load every trace named by the manifest (default ``<path>/labels.csv``).

    Dataset order follows manifest order.  Files in the directory that the
    manifest does not mention are ignored.  Single-sample traces adopt the
    period of their siblings so mixed-length directories stay consistent.
    """
    manifest = manifest if manifest is not None else os.path.join(path, "labels.csv")
    entries = read_label_manifest(manifest)
    traces = []
    labels = []
    names = []
    for name, label in entries:
        fpath = os.path.join(path, name)
        if not os.path.exists(fpath):
            raise DataFormatError(f"{manifest}: referenced file {name!r} not found")
        traces.append(load_trace_csv(fpath))
        labels.append(label)
        names.append(name)
    periods = {tr.period for tr in traces if tr.n_samples > 1}
    if len(periods) == 1:
        common = periods.pop()
        traces = [
            Trace({s: tr.values(s) for s in tr.signal_names}, common, tr.start_time)
            if tr.n_samples == 1
            else tr
            for tr in traces
        ]
    ds = Dataset(traces, labels, names)
    if require_both_classes and (ds.count(0) == 0 or ds.count(1) == 0):
        raise DataFormatError("dataset must contain both label-0 and label-1 traces")
    return ds


def save_csv_dir(ds: Dataset, path) -> None:
    """Write ``trace_NNN.csv`` files plus a ``labels.csv`` manifest."""
    os.makedirs(path, exist_ok=True)
    with open(os.path.join(path, "labels.csv"), "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["filename", "label"])
        for i, (trace, label) in enumerate(zip(ds.traces, ds.labels)):
            name = ds.names[i] if ds.names else f"trace_{i:03d}.csv"
            save_trace_csv(trace, os.path.join(path, name))
            writer.writerow([name, label])


def split_dataset(ds: Dataset, train_fraction: float, seed: int = 0):
    """Deterministic stratified split into (train, test)."""
    if not (0 < train_fraction < 1):
        raise ValueError(f"train_fraction must be in (0, 1), got {train_fraction}")
    rng = np.random.default_rng([int(seed), 97])
    train_idx: list[int] = []
    test_idx: list[int] = []
    for label in (0, 1):
        idx = [i for i, lab in enumerate(ds.labels) if lab == label]
        if not idx:
            continue
        perm = rng.permutation(len(idx))
        cut = int(round(train_fraction * len(idx)))
        cut = min(max(cut, 1), len(idx) - 1) if len(idx) > 1 else 1
        train_idx.extend(idx[j] for j in perm[:cut])
        test_idx.extend(idx[j] for j in perm[cut:])
    train_idx.sort()
    test_idx.sort()
    if not test_idx:
        raise ValueError("split leaves the test set empty")

    def take(indices):
        return Dataset(
            [ds.traces[i] for i in indices],
            [ds.labels[i] for i in indices],
            [ds.names[i] for i in indices] if ds.names else [],
        )

    return take(train_idx), take(test_idx)
