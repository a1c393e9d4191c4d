"""Parameter spaces, valuations, and template instantiation.

A valuation is a plain dict mapping parameter names to floats.  A ParamSpace
is the axis-aligned box the boundary search works in: one row per parameter,
ordered by first occurrence on a pre-order walk of the template.
"""
from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

import numpy as np

from .errors import DegenerateBoundsError, InstantiationError, UnknownSignalError
from .formula import (
    And,
    Atom,
    Bound,
    Const,
    Finally,
    Formula,
    Globally,
    Implies,
    Interval,
    Not,
    Or,
    Param,
    Polarity,
    TrueF,
    Until,
    infer_polarity,
)
from .traces import Dataset

Valuation = dict[str, float]

# padding applied to per-signal value ranges when deriving threshold bounds
VALUE_PAD_FRACTION = 0.1
# absolute padding for constant signals, whose range is empty
CONSTANT_PAD = 1.0


class ParamKind(Enum):
    VALUE = "value"  # atom threshold
    TIME = "time"  # interval endpoint


@dataclass(frozen=True)
class ParamDef:
    name: str
    kind: ParamKind
    lo: float
    hi: float
    polarity: Polarity


@dataclass
class ParamSpace:
    params: list[ParamDef]

    def __post_init__(self):
        seen = set()
        for p in self.params:
            if p.name in seen:
                raise DegenerateBoundsError(f"duplicate parameter {p.name}")
            seen.add(p.name)
            if not p.lo < p.hi:
                raise DegenerateBoundsError(
                    f"parameter {p.name}: bounds [{p.lo}, {p.hi}] are not a proper interval"
                )
            if p.kind is ParamKind.TIME and p.lo < 0:
                raise DegenerateBoundsError(
                    f"time parameter {p.name} has negative lower bound {p.lo}"
                )

    @property
    def names(self) -> list[str]:
        return [p.name for p in self.params]

    @property
    def dim(self) -> int:
        return len(self.params)

    def lows(self) -> np.ndarray:
        return np.array([p.lo for p in self.params])

    def highs(self) -> np.ndarray:
        return np.array([p.hi for p in self.params])

    def to_valuation(self, vector) -> Valuation:
        vec = np.asarray(vector, dtype=float)
        if vec.shape != (self.dim,):
            raise InstantiationError(f"expected a {self.dim}-vector, got shape {vec.shape}")
        return {p.name: float(v) for p, v in zip(self.params, vec)}

    def contains(self, valuation: Valuation) -> bool:
        try:
            return all(p.lo <= valuation[p.name] <= p.hi for p in self.params)
        except KeyError:
            return False


def _subst_bound(b: Bound, valuation: Valuation) -> Const:
    if isinstance(b, Const):
        return b
    try:
        return Const(float(valuation[b.name]))
    except KeyError:
        raise InstantiationError(f"no value for parameter ${b.name}") from None


def instantiate(template: Formula, valuation: Valuation, *, validate: bool = True) -> Formula:
    """Substitute parameter values, returning a concrete formula.

    With validation on (the default) an interval whose substituted upper bound
    falls below its lower bound is an error.  Internal callers that walk
    monotone parameter boxes disable validation and rely on the evaluator's
    empty-window semantics instead.
    """

    def subst_iv(iv: Interval) -> Interval:
        lo = _subst_bound(iv.lo, valuation)
        hi = _subst_bound(iv.hi, valuation)
        if validate:
            if lo.value < 0:
                raise InstantiationError(f"interval lower bound {lo.value} is negative")
            if hi.value < lo.value:
                raise InstantiationError(
                    f"interval [{lo.value}, {hi.value}] is ill-formed after substitution"
                )
        return Interval(lo, hi, iv.lo_closed, iv.hi_closed)

    def walk(node: Formula) -> Formula:
        match node:
            case TrueF():
                return node
            case Atom(sig, op, b):
                return Atom(sig, op, _subst_bound(b, valuation))
            case Not(c):
                return Not(walk(c))
            case And(l, r):
                return And(walk(l), walk(r))
            case Or(l, r):
                return Or(walk(l), walk(r))
            case Implies(l, r):
                return Implies(walk(l), walk(r))
            case Finally(iv, c):
                return Finally(subst_iv(iv), walk(c))
            case Globally(iv, c):
                return Globally(subst_iv(iv), walk(c))
            case Until(iv, l, r):
                return Until(subst_iv(iv), walk(l), walk(r))
        raise TypeError(f"not a formula node: {node!r}")

    return walk(template)


def signal_ranges(ds: Dataset) -> dict[str, tuple[float, float]]:
    out = {}
    for name in ds.signal_names:
        lo = min(float(tr.values(name).min()) for tr in ds.traces)
        hi = max(float(tr.values(name).max()) for tr in ds.traces)
        out[name] = (lo, hi)
    return out


def default_bounds(
    template: Formula, ds: Dataset, polarity: dict[str, Polarity] | None = None
) -> ParamSpace:
    """Build the search box for a template from dataset statistics.

    Value parameters get the observed range of their atom's signal, padded by
    10% of that range on both sides (constant signals are padded by 1.0
    absolute).  Time parameters span [0, shortest trace duration].
    """
    if polarity is None:
        polarity = infer_polarity(template)
    ranges = signal_ranges(ds)
    min_duration = min(tr.duration for tr in ds.traces)
    if min_duration <= 0 and _has_time_params(template):
        raise DegenerateBoundsError(
            "time parameters need traces with at least two samples"
        )

    defs: list[ParamDef] = []
    seen: set[str] = set()

    def add(name: str, kind: ParamKind, lo: float, hi: float):
        if name in seen:
            return
        seen.add(name)
        defs.append(ParamDef(name, kind, lo, hi, polarity[name]))

    def add_interval(iv: Interval):
        for b in (iv.lo, iv.hi):
            if isinstance(b, Param):
                add(b.name, ParamKind.TIME, 0.0, min_duration)

    def walk(node: Formula):
        match node:
            case Atom(sig, _, Param(name)):
                if sig not in ranges:
                    raise UnknownSignalError(f"dataset has no signal {sig!r}")
                lo, hi = ranges[sig]
                pad = VALUE_PAD_FRACTION * (hi - lo) if hi > lo else CONSTANT_PAD
                add(name, ParamKind.VALUE, lo - pad, hi + pad)
            case Finally(iv, c) | Globally(iv, c):
                add_interval(iv)
                walk(c)
            case Until(iv, l, r):
                add_interval(iv)
                walk(l)
                walk(r)
            case Not(c):
                walk(c)
            case And(l, r) | Or(l, r) | Implies(l, r):
                walk(l)
                walk(r)

    walk(template)
    return ParamSpace(defs)


def _has_time_params(template: Formula) -> bool:
    match template:
        case Finally(iv, c) | Globally(iv, c):
            if isinstance(iv.lo, Param) or isinstance(iv.hi, Param):
                return True
            return _has_time_params(c)
        case Until(iv, l, r):
            if isinstance(iv.lo, Param) or isinstance(iv.hi, Param):
                return True
            return _has_time_params(l) or _has_time_params(r)
        case Not(c):
            return _has_time_params(c)
        case And(l, r) | Or(l, r) | Implies(l, r):
            return _has_time_params(l) or _has_time_params(r)
    return False
