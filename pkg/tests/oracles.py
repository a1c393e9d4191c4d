"""Independent reference implementations used to cross-check the package.

Everything here is written with plain Python loops and explicit membership
scans, trading speed for obviousness, so the tests compare two unrelated
mechanisms instead of a module against itself.
"""
from __future__ import annotations

import math

from stlmine.formula import (
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
    Param,
    TrueF,
    Until,
)
from stlmine.traces import Trace

BIG = 1e9
_TOL_FRAC = 1e-9  # endpoint slack, as a fraction of the sample period


def _clip(v: float) -> float:
    return min(max(v, -BIG), BIG)


def _grid(trace: Trace) -> list[float]:
    return [trace.start_time + k * trace.period for k in range(trace.n_samples)]


def _window_members(trace: Trace, t: float, iv: Interval) -> list[int]:
    """Sample indices whose time lies in t + I, by explicit scan."""
    tol = _TOL_FRAC * trace.period
    lo = t + iv.lo.value
    hi = t + iv.hi.value
    out = []
    for k, tk in enumerate(_grid(trace)):
        lo_ok = tk >= lo - tol if iv.lo_closed else tk > lo + tol
        hi_ok = tk <= hi + tol if iv.hi_closed else tk < hi - tol
        if lo_ok and hi_ok:
            out.append(k)
    return out


def _sample_at(trace: Trace, signal: str, t: float) -> float:
    """Piecewise-constant hold: last sample at or before t, clamped to [0, n)."""
    tol = _TOL_FRAC * trace.period
    below = [k for k, tk in enumerate(_grid(trace)) if tk <= t + tol]
    idx = max(below) if below else 0
    return float(trace.values(signal)[idx])


def brute_robustness(phi: Formula, trace: Trace, t: float = 0.0) -> float:
    """Brute-force max/min robustness over the sample grid."""
    match phi:
        case TrueF():
            return BIG
        case Atom(sig, op, Const(c)):
            v = _sample_at(trace, sig, t)
            return _clip(v - c if op in (">", ">=") else c - v)
        case Not(child):
            return -brute_robustness(child, trace, t)
        case And(l, r):
            return min(brute_robustness(l, trace, t), brute_robustness(r, trace, t))
        case Or(l, r):
            return max(brute_robustness(l, trace, t), brute_robustness(r, trace, t))
        case Implies(l, r):
            return max(-brute_robustness(l, trace, t), brute_robustness(r, trace, t))
        case Finally(iv, child):
            idxs = _window_members(trace, t, iv)
            if not idxs:
                return -BIG
            grid = _grid(trace)
            return _clip(max(brute_robustness(child, trace, grid[k]) for k in idxs))
        case Globally(iv, child):
            idxs = _window_members(trace, t, iv)
            if not idxs:
                return BIG
            grid = _grid(trace)
            return _clip(min(brute_robustness(child, trace, grid[k]) for k in idxs))
        case Until(iv, l, r):
            idxs = _window_members(trace, t, iv)
            if not idxs:
                return -BIG
            grid = _grid(trace)
            tol = _TOL_FRAC * trace.period
            best = -math.inf
            for j in idxs:
                hold = [
                    brute_robustness(l, trace, grid[i])
                    for i in range(j)
                    if grid[i] >= t - tol
                ]
                inner = min(hold) if hold else math.inf
                best = max(best, min(brute_robustness(r, trace, grid[j]), inner))
            return _clip(best)
    raise TypeError(f"not a concrete formula: {phi!r}")


def brute_bool(phi: Formula, trace: Trace, t: float = 0.0) -> bool:
    """Direct Boolean semantics, honouring strict vs non-strict comparators."""
    match phi:
        case TrueF():
            return True
        case Atom(sig, op, Const(c)):
            v = _sample_at(trace, sig, t)
            return {"<": v < c, "<=": v <= c, ">": v > c, ">=": v >= c}[op]
        case Not(child):
            return not brute_bool(child, trace, t)
        case And(l, r):
            return brute_bool(l, trace, t) and brute_bool(r, trace, t)
        case Or(l, r):
            return brute_bool(l, trace, t) or brute_bool(r, trace, t)
        case Implies(l, r):
            return (not brute_bool(l, trace, t)) or brute_bool(r, trace, t)
        case Finally(iv, child):
            grid = _grid(trace)
            return any(
                brute_bool(child, trace, grid[k]) for k in _window_members(trace, t, iv)
            )
        case Globally(iv, child):
            grid = _grid(trace)
            return all(
                brute_bool(child, trace, grid[k]) for k in _window_members(trace, t, iv)
            )
        case Until(iv, l, r):
            grid = _grid(trace)
            tol = _TOL_FRAC * trace.period
            for j in _window_members(trace, t, iv):
                if not brute_bool(r, trace, grid[j]):
                    continue
                if all(
                    brute_bool(l, trace, grid[i])
                    for i in range(j)
                    if grid[i] >= t - tol
                ):
                    return True
            return False
    raise TypeError(f"not a concrete formula: {phi!r}")


def count_templates(n_atoms: int, n_unary: int, n_binary: int, max_len: int):
    """Template counts per length from the grammar size recurrence alone."""
    counts = {1: n_atoms}
    for length in range(2, max_len + 1):
        total = n_unary * counts[length - 1]
        for i in range(1, length - 1):
            total += n_binary * counts[i] * counts[length - 1 - i]
        counts[length] = total
    return counts


# --- random AST / trace generation for fuzz comparisons ---------------------

_CMPS = ("<", "<=", ">", ">=")


def random_trace(rng, signals=("x",), max_samples=6, period_choices=(0.5, 1.0)):
    """Short trace with values on a coarse lattice so exact ties do occur."""
    n = int(rng.integers(1, max_samples + 1))
    period = float(rng.choice(period_choices))
    sigs = {
        s: rng.integers(-20, 21, size=n).astype(float) * 0.25 for s in signals
    }
    return Trace(sigs, period)


def _random_interval(rng, horizon: float) -> Interval:
    lo = float(rng.choice([0.0, 0.5, 1.0, 2.0]))
    hi = lo + float(rng.choice([0.0, 0.5, 1.0, horizon]))
    if hi == lo:  # point windows are only well-formed when closed
        return Interval(Const(lo), Const(hi), True, True)
    lo_closed = bool(rng.random() < 0.85)
    hi_closed = bool(rng.random() < 0.85)
    return Interval(Const(lo), Const(hi), lo_closed, hi_closed)


def random_concrete_formula(rng, signals=("x",), budget=5, horizon=5.0) -> Formula:
    """Random well-formed concrete AST with exactly <= budget operators."""
    if budget <= 1:
        if rng.random() < 0.1:
            return TrueF()
        sig = str(rng.choice(list(signals)))
        op = str(rng.choice(_CMPS))
        return Atom(sig, op, Const(float(rng.integers(-12, 13)) * 0.25))
    roll = rng.random()
    if budget >= 3 and roll < 0.45:
        left_budget = int(rng.integers(1, budget - 1))
        left = random_concrete_formula(rng, signals, left_budget, horizon)
        right = random_concrete_formula(rng, signals, budget - 1 - left_budget, horizon)
        kind = rng.choice(["and", "or", "implies", "U"])
        if kind == "and":
            return And(left, right)
        if kind == "or":
            return Or(left, right)
        if kind == "implies":
            return Implies(left, right)
        return Until(_random_interval(rng, horizon), left, right)
    child = random_concrete_formula(rng, signals, budget - 1, horizon)
    kind = rng.choice(["not", "F", "G"])
    if kind == "not":
        return Not(child)
    if kind == "F":
        return Finally(_random_interval(rng, horizon), child)
    return Globally(_random_interval(rng, horizon), child)


def random_template(rng, signals=("x",), budget=4, horizon=5.0) -> Formula:
    """Like random_concrete_formula but with $-parameters in some slots."""
    phi = random_concrete_formula(rng, signals, budget, horizon)
    counter = [0]

    def sub(node: Formula) -> Formula:
        match node:
            case Atom(sig, op, Const(c)):
                if rng.random() < 0.5:
                    counter[0] += 1
                    return Atom(sig, op, Param(f"q{counter[0]}"))
                return Atom(sig, op, Const(c))
            case Not(ch):
                return Not(sub(ch))
            case And(l, r):
                return And(sub(l), sub(r))
            case Or(l, r):
                return Or(sub(l), sub(r))
            case Implies(l, r):
                return Implies(sub(l), sub(r))
            case Finally(iv, ch):
                return Finally(_sub_iv(iv), sub(ch))
            case Globally(iv, ch):
                return Globally(_sub_iv(iv), sub(ch))
            case Until(iv, l, r):
                return Until(_sub_iv(iv), sub(l), sub(r))
        return node

    def _sub_iv(iv: Interval) -> Interval:
        if rng.random() < 0.4:
            counter[0] += 1
            return Interval(Const(0.0), Param(f"q{counter[0]}"), True, True)
        return iv

    return sub(phi)
