"""Boolean and quantitative evaluation of concrete STL formulas on sampled traces.

Evaluation happens on the sample grid: atoms use piecewise-constant hold, and
temporal operators range over the sample times inside ``t + I`` intersected
with the trace domain.  No interpolation between samples.

Robustness follows the usual max/min semantics:

* ``x > c`` and ``x >= c`` score ``x(t) - c``; the ``<`` forms score ``c - x(t)``
  (strict and non-strict comparisons are indistinguishable quantitatively);
* negation flips the sign, conjunction takes min, disjunction max,
  ``a implies b`` scores ``max(-rob(a), rob(b))``;
* ``F``/``G`` take max/min of the child over the window; until takes the max
  over window times t1 of ``min(rob(right, t1), inf over [t, t1) of rob(left))``
  where the inner inf ranges over sample times strictly before t1;
* ``true`` scores +BIG, and an empty window scores -BIG under F/U and +BIG
  under G.  BIG is a finite, documented sentinel rather than IEEE infinity so
  that downstream arithmetic stays well-behaved.

A trace satisfies a formula iff its robustness is strictly positive; an exact
zero counts as a violation.
"""
from __future__ import annotations

import math

import numpy as np
from scipy.ndimage import maximum_filter1d, minimum_filter1d

from .errors import FormulaStructureError, TraceDomainError, UnknownSignalError
from .formula import (
    And,
    Atom,
    Const,
    Finally,
    Formula,
    Globally,
    Implies,
    Interval,
    Not,
    Or,
    TrueF,
    Until,
    is_concrete,
    signals_of,
)
from .traces import Trace

BIG = 1e9

# slack, in fractions of a sample index, when intersecting windows with the grid
_EPS = 1e-9


class _Batch:
    """Several same-shape traces stacked for vectorized evaluation."""

    __slots__ = ("signals", "period", "start", "n", "k")

    def __init__(self, traces: list[Trace]):
        ref = traces[0]
        self.period = ref.period
        self.start = ref.start_time
        self.n = ref.n_samples
        self.k = len(traces)
        self.signals = {
            name: np.stack([tr.values(name) for tr in traces])
            for name in ref.signal_names
        }

    @staticmethod
    def group_key(tr: Trace):
        return (tr.signal_names, tr.n_samples, tr.period, tr.start_time)


def _window_offsets(iv: Interval, period: float) -> tuple[int, int]:
    """Window endpoints as sample-index offsets, honouring open/closed ends.

    Returns (jlo, jhi); the window at grid index q is q+jlo .. q+jhi, which may
    be empty (jhi < jlo).
    """
    lo = iv.lo.value
    hi = iv.hi.value
    qlo = lo / period
    qhi = hi / period
    if iv.lo_closed:
        jlo = math.ceil(qlo - _EPS)
    else:
        jlo = math.floor(qlo + _EPS) + 1
    if iv.hi_closed:
        jhi = math.floor(qhi + _EPS)
    else:
        jhi = math.ceil(qhi - _EPS) - 1
    return max(jlo, 0), jhi


def _shift_left(arr: np.ndarray, d: int, fill: float) -> np.ndarray:
    """arr[:, q] -> arr[:, q+d], padding past the end with fill."""
    if d == 0:
        return arr
    out = np.full_like(arr, fill)
    if d < arr.shape[1]:
        out[:, : arr.shape[1] - d] = arr[:, d:]
    return out


def _window_reduce(arr: np.ndarray, jlo: int, jhi: int, largest: bool) -> np.ndarray:
    """Per-index window max (largest=True) or min over [q+jlo, q+jhi] & domain."""
    k, n = arr.shape
    pad = -np.inf if largest else np.inf
    if jhi < jlo or jlo > n - 1:
        return np.full((k, n), -BIG if largest else BIG)
    jhi = min(jhi, n - 1)  # samples past the end are domain-clipped anyway
    w = jhi - jlo + 1
    buf = np.full((k, n + w), pad)
    buf[:, : n - jlo] = arr[:, jlo:]
    filt = maximum_filter1d if largest else minimum_filter1d
    out = filt(buf, size=w, axis=1, mode="constant", cval=pad)
    # centered filter -> window [j - w//2, j + (w-1) - w//2]; start q needs j = q + w//2
    out = out[:, w // 2 : w // 2 + n]
    return np.clip(out, -BIG, BIG)


def _until_grid(a1: np.ndarray, a2: np.ndarray, jlo: int, jhi: int) -> np.ndarray:
    """out[q] = max over j in [q+jlo, q+jhi] of min(a2[j], min(a1[q..j-1])).

    The inner min over an empty range (j == q) is +BIG, matching the inf over
    an empty set of sample times.
    """
    k, n = a1.shape
    if jhi < jlo or jlo > n - 1:
        return np.full((k, n), -BIG)
    jhi = min(jhi, n - 1)
    best = np.full((k, n), -np.inf)
    prefix_min = np.full((k, n), np.inf)  # min of a1[q .. q+d-1], starts empty
    for d in range(jhi + 1):
        if d >= jlo:
            cand = np.minimum(_shift_left(a2, d, -np.inf), prefix_min)
            np.maximum(best, cand, out=best)
        np.minimum(prefix_min, _shift_left(a1, d, np.inf), out=prefix_min)
    return np.clip(best, -BIG, BIG)


def _rob_grid(node: Formula, b: _Batch) -> np.ndarray:
    """Robustness of node at every sample time; shape (traces, samples)."""
    match node:
        case TrueF():
            return np.full((b.k, b.n), BIG)
        case Atom(sig, op, Const(c)):
            vals = b.signals[sig]
            out = vals - c if op in (">", ">=") else c - vals
            return np.clip(out, -BIG, BIG)
        case Not(child):
            return -_rob_grid(child, b)
        case And(l, r):
            return np.minimum(_rob_grid(l, b), _rob_grid(r, b))
        case Or(l, r):
            return np.maximum(_rob_grid(l, b), _rob_grid(r, b))
        case Implies(l, r):
            return np.maximum(-_rob_grid(l, b), _rob_grid(r, b))
        case Finally(iv, child):
            jlo, jhi = _window_offsets(iv, b.period)
            return _window_reduce(_rob_grid(child, b), jlo, jhi, largest=True)
        case Globally(iv, child):
            jlo, jhi = _window_offsets(iv, b.period)
            return _window_reduce(_rob_grid(child, b), jlo, jhi, largest=False)
        case Until(iv, l, r):
            jlo, jhi = _window_offsets(iv, b.period)
            return _until_grid(_rob_grid(l, b), _rob_grid(r, b), jlo, jhi)
    raise TypeError(f"cannot evaluate {node!r}")


def _index_window(b: _Batch, t: float, iv: Interval) -> tuple[int, int]:
    """Grid index range covered by t + I, clipped to the trace domain."""
    qlo = (t + iv.lo.value - b.start) / b.period
    qhi = (t + iv.hi.value - b.start) / b.period
    if iv.lo_closed:
        kmin = math.ceil(qlo - _EPS)
    else:
        kmin = math.floor(qlo + _EPS) + 1
    if iv.hi_closed:
        kmax = math.floor(qhi + _EPS)
    else:
        kmax = math.ceil(qhi - _EPS) - 1
    return max(kmin, 0), min(kmax, b.n - 1)


def _rob_at(node: Formula, b: _Batch, t: float) -> np.ndarray:
    """Robustness at one (possibly off-grid) time; shape (traces,)."""
    match node:
        case TrueF():
            return np.full(b.k, BIG)
        case Atom(sig, op, Const(c)):
            idx = math.floor((t - b.start) / b.period + _EPS)
            idx = min(max(idx, 0), b.n - 1)
            vals = b.signals[sig][:, idx]
            out = vals - c if op in (">", ">=") else c - vals
            return np.clip(out, -BIG, BIG)
        case Not(child):
            return -_rob_at(child, b, t)
        case And(l, r):
            return np.minimum(_rob_at(l, b, t), _rob_at(r, b, t))
        case Or(l, r):
            return np.maximum(_rob_at(l, b, t), _rob_at(r, b, t))
        case Implies(l, r):
            return np.maximum(-_rob_at(l, b, t), _rob_at(r, b, t))
        case Finally(iv, child):
            kmin, kmax = _index_window(b, t, iv)
            if kmin > kmax:
                return np.full(b.k, -BIG)
            return _rob_grid(child, b)[:, kmin : kmax + 1].max(axis=1)
        case Globally(iv, child):
            kmin, kmax = _index_window(b, t, iv)
            if kmin > kmax:
                return np.full(b.k, BIG)
            return _rob_grid(child, b)[:, kmin : kmax + 1].min(axis=1)
        case Until(iv, l, r):
            kmin, kmax = _index_window(b, t, iv)
            if kmin > kmax:
                return np.full(b.k, -BIG)
            left = _rob_grid(l, b)
            right = _rob_grid(r, b)
            k_t = max(math.ceil((t - b.start) / b.period - _EPS), 0)
            best = np.full(b.k, -np.inf)
            inner = np.full(b.k, np.inf)  # min of left over [k_t, j-1]
            j = kmin
            # roll the inner min forward to just before the first candidate
            for i in range(k_t, kmin):
                np.minimum(inner, left[:, i], out=inner)
            while j <= kmax:
                np.maximum(best, np.minimum(right[:, j], inner), out=best)
                np.minimum(inner, left[:, j], out=inner)
                j += 1
            return np.clip(best, -BIG, BIG)
    raise TypeError(f"cannot evaluate {node!r}")


def _check_formula_against(phi: Formula, names) -> None:
    if not is_concrete(phi):
        raise FormulaStructureError(
            "formula still has parameters; instantiate it before monitoring"
        )
    missing = signals_of(phi) - set(names)
    if missing:
        raise UnknownSignalError(
            f"formula uses unknown signal(s): {', '.join(sorted(missing))}"
        )


def robustness(phi: Formula, trace: Trace, t: float = 0.0) -> float:
    """Quantitative satisfaction margin of a concrete formula at time t."""
    _check_formula_against(phi, trace.signal_names)
    if not trace.contains_time(t):
        raise TraceDomainError(
            f"t={t} outside trace domain [{trace.start_time}, {trace.end_time}]"
        )
    return float(_rob_at(phi, _Batch([trace]), t)[0])


def satisfies(phi: Formula, trace: Trace, t: float = 0.0) -> bool:
    """Boolean satisfaction; robustness exactly zero counts as a violation."""
    return robustness(phi, trace, t) > 0


def robustness_many(phi: Formula, traces: list[Trace], t: float = 0.0) -> np.ndarray:
    """Robustness of one formula on many traces, grouping same-shape traces so
    each group is evaluated in a single vectorized pass."""
    if not traces:
        return np.empty(0)
    _check_formula_against(phi, traces[0].signal_names)
    out = np.empty(len(traces))
    groups: dict[tuple, list[int]] = {}
    for i, tr in enumerate(traces):
        if not tr.contains_time(t):
            raise TraceDomainError(
                f"t={t} outside trace domain [{tr.start_time}, {tr.end_time}]"
            )
        groups.setdefault(_Batch.group_key(tr), []).append(i)
    for idx in groups.values():
        batch = _Batch([traces[i] for i in idx])
        out[idx] = _rob_at(phi, batch, t)
    return out
