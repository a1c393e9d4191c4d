"""STL / parametric STL abstract syntax.

Node types, pretty printing, size, and the syntactic polarity analysis that
classifies every parameter as Increasing or Decreasing with respect to
satisfaction.
"""
from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from .errors import FormulaStructureError

COMPARATORS = ("<", ">", "<=", ">=")

# complementary comparator: not (x < c) has the same robustness as x > c
COMPLEMENT = {"<": ">", ">": "<", "<=": ">=", ">=": "<="}


@dataclass(frozen=True)
class Const:
    value: float

    def __post_init__(self):
        object.__setattr__(self, "value", float(self.value))


@dataclass(frozen=True)
class Param:
    name: str


Bound = Const | Param


@dataclass(frozen=True)
class Interval:
    """Time interval attached to a temporal operator. Ends may be open or closed."""

    lo: Bound
    hi: Bound
    lo_closed: bool = True
    hi_closed: bool = True

    def __str__(self):
        lo = _fmt_bound(self.lo)
        hi = _fmt_bound(self.hi)
        left = "[" if self.lo_closed else "("
        right = "]" if self.hi_closed else ")"
        return f"{left}{lo},{hi}{right}"


class Formula:
    """Base class for all formula nodes."""

    __slots__ = ()

    def __str__(self):
        return format_formula(self)


@dataclass(frozen=True)
class TrueF(Formula):
    pass


@dataclass(frozen=True)
class Atom(Formula):
    signal: str
    op: str  # one of COMPARATORS
    bound: Bound

    def __post_init__(self):
        if self.op not in COMPARATORS:
            raise FormulaStructureError(f"bad comparator {self.op!r}")


@dataclass(frozen=True)
class Not(Formula):
    child: Formula


@dataclass(frozen=True)
class And(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Or(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Implies(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Finally(Formula):
    interval: Interval
    child: Formula


@dataclass(frozen=True)
class Globally(Formula):
    interval: Interval
    child: Formula


@dataclass(frozen=True)
class Until(Formula):
    interval: Interval
    left: Formula
    right: Formula


def children(phi: Formula) -> tuple[Formula, ...]:
    match phi:
        case TrueF() | Atom():
            return ()
        case Not(child) | Finally(_, child) | Globally(_, child):
            return (child,)
        case And(l, r) | Or(l, r) | Implies(l, r) | Until(_, l, r):
            return (l, r)
    raise TypeError(f"not a formula node: {phi!r}")


def formula_length(phi: Formula) -> int:
    """Node count of the AST. Intervals and comparison bounds are not extra nodes."""
    return 1 + sum(formula_length(c) for c in children(phi))


def _node_bounds(phi: Formula) -> tuple[Bound, ...]:
    """Bounds attached directly to a node, in printed order."""
    match phi:
        case Atom(_, _, b):
            return (b,)
        case Finally(iv, _) | Globally(iv, _) | Until(iv, _, _):
            return (iv.lo, iv.hi)
    return ()


def parameters(phi: Formula) -> list[str]:
    """Parameter names in order of first occurrence on a pre-order walk."""
    out: list[str] = []
    seen: set[str] = set()

    def walk(node: Formula):
        for b in _node_bounds(node):
            if isinstance(b, Param) and b.name not in seen:
                seen.add(b.name)
                out.append(b.name)
        for c in children(node):
            walk(c)

    walk(phi)
    return out


def signals_of(phi: Formula) -> set[str]:
    out: set[str] = set()

    def walk(node: Formula):
        if isinstance(node, Atom):
            out.add(node.signal)
        for c in children(node):
            walk(c)

    walk(phi)
    return out


def is_concrete(phi: Formula) -> bool:
    return not parameters(phi)


def rename_params(phi: Formula, mapping: dict[str, str]) -> Formula:
    def rb(b: Bound) -> Bound:
        if isinstance(b, Param) and b.name in mapping:
            return Param(mapping[b.name])
        return b

    def walk(node: Formula) -> Formula:
        match node:
            case TrueF():
                return node
            case Atom(sig, op, b):
                return Atom(sig, op, rb(b))
            case Not(c):
                return Not(walk(c))
            case And(l, r):
                return And(walk(l), walk(r))
            case Or(l, r):
                return Or(walk(l), walk(r))
            case Implies(l, r):
                return Implies(walk(l), walk(r))
            case Finally(iv, c):
                return Finally(_rename_iv(iv, rb), walk(c))
            case Globally(iv, c):
                return Globally(_rename_iv(iv, rb), walk(c))
            case Until(iv, l, r):
                return Until(_rename_iv(iv, rb), walk(l), walk(r))
        raise TypeError(f"not a formula node: {node!r}")

    return walk(phi)


def _rename_iv(iv: Interval, rb) -> Interval:
    return Interval(rb(iv.lo), rb(iv.hi), iv.lo_closed, iv.hi_closed)


def validate_formula(phi: Formula) -> None:
    """Check structural invariants.

    Every parameter id must occur at exactly one position, and concrete
    intervals must satisfy 0 <= lo <= hi with a point interval closed on
    both ends.
    """
    seen: set[str] = set()

    def check_interval(iv: Interval):
        if isinstance(iv.lo, Const) and iv.lo.value < 0:
            raise FormulaStructureError(f"interval lower bound {iv.lo.value} is negative")
        if isinstance(iv.lo, Const) and isinstance(iv.hi, Const):
            if iv.hi.value < iv.lo.value:
                raise FormulaStructureError(
                    f"interval upper bound {iv.hi.value} below lower bound {iv.lo.value}"
                )
            if iv.hi.value == iv.lo.value and not (iv.lo_closed and iv.hi_closed):
                raise FormulaStructureError("point interval must be closed on both ends")

    def walk(node: Formula):
        for b in _node_bounds(node):
            if isinstance(b, Param):
                if b.name in seen:
                    raise FormulaStructureError(
                        f"parameter ${b.name} occurs at more than one position"
                    )
                seen.add(b.name)
        match node:
            case Finally(iv, _) | Globally(iv, _) | Until(iv, _, _):
                check_interval(iv)
        for c in children(node):
            walk(c)

    walk(phi)


# ---------------------------------------------------------------------------
# printing

_PREC_IMPLIES, _PREC_OR, _PREC_AND, _PREC_NOT, _PREC_PRIMARY = 1, 2, 3, 4, 5


def _prec(phi: Formula) -> int:
    match phi:
        case Implies():
            return _PREC_IMPLIES
        case Or():
            return _PREC_OR
        case And():
            return _PREC_AND
        case Not():
            return _PREC_NOT
    return _PREC_PRIMARY


def _fmt_num(v: float) -> str:
    if v == int(v) and abs(v) < 1e15:
        return str(int(v))
    return repr(float(v))


def _fmt_bound(b: Bound) -> str:
    if isinstance(b, Param):
        return f"${b.name}"
    return _fmt_num(b.value)


def format_formula(phi: Formula) -> str:
    """Render a formula as text that parses back to a structurally equal AST."""

    def fmt(node: Formula) -> str:
        match node:
            case TrueF():
                return "true"
            case Atom(sig, op, b):
                return f"{sig} {op} {_fmt_bound(b)}"
            case Not(c):
                body = fmt(c)
                if _prec(c) < _PREC_NOT:
                    body = f"({body})"
                return f"not {body}"
            case And(l, r):
                return _fmt_bin(l, "and", r, _PREC_AND)
            case Or(l, r):
                return _fmt_bin(l, "or", r, _PREC_OR)
            case Implies(l, r):
                return _fmt_bin(l, "implies", r, _PREC_IMPLIES)
            case Finally(iv, c):
                return f"F{iv}({fmt(c)})"
            case Globally(iv, c):
                return f"G{iv}({fmt(c)})"
            case Until(iv, l, r):
                return f"({fmt(l)}) U{iv} ({fmt(r)})"
        raise TypeError(f"not a formula node: {node!r}")

    def _fmt_bin(l: Formula, kw: str, r: Formula, prec: int) -> str:
        # binary operators are left-associative: the left child may share the
        # precedence level, the right one needs parentheses to round-trip
        ls = fmt(l)
        if _prec(l) < prec:
            ls = f"({ls})"
        rs = fmt(r)
        if _prec(r) <= prec:
            rs = f"({rs})"
        return f"{ls} {kw} {rs}"

    return fmt(phi)


# ---------------------------------------------------------------------------
# polarity

class Polarity(Enum):
    INCREASING = "increasing"
    DECREASING = "decreasing"

    def flipped(self) -> "Polarity":
        if self is Polarity.INCREASING:
            return Polarity.DECREASING
        return Polarity.INCREASING


def infer_polarity(phi: Formula) -> dict[str, Polarity]:
    """Classify each parameter by the direction in which growing it preserves
    satisfaction.

    Works purely on syntax: the context sign starts positive at the root and is
    flipped by negation and by the left side of an implication.  In a positive
    context an atom threshold is Decreasing for ``>``-style atoms and Increasing
    for ``<``-style ones; a window upper bound is Increasing under F and U and
    Decreasing under G, and a window lower bound the other way around.  Because
    parameters never repeat, every parameter receives exactly one polarity.
    """
    out: dict[str, Polarity] = {}

    def put(b: Bound, pol: Polarity):
        if isinstance(b, Param):
            if b.name in out:
                raise FormulaStructureError(
                    f"parameter ${b.name} occurs at more than one position"
                )
            out[b.name] = pol

    def walk(node: Formula, positive: bool):
        def orient(pol: Polarity) -> Polarity:
            return pol if positive else pol.flipped()

        match node:
            case TrueF():
                pass
            case Atom(_, op, b):
                if op in ("<", "<="):
                    put(b, orient(Polarity.INCREASING))
                else:
                    put(b, orient(Polarity.DECREASING))
            case Not(c):
                walk(c, not positive)
            case And(l, r) | Or(l, r):
                walk(l, positive)
                walk(r, positive)
            case Implies(l, r):
                walk(l, not positive)
                walk(r, positive)
            case Finally(iv, c):
                put(iv.lo, orient(Polarity.DECREASING))
                put(iv.hi, orient(Polarity.INCREASING))
                walk(c, positive)
            case Globally(iv, c):
                put(iv.lo, orient(Polarity.INCREASING))
                put(iv.hi, orient(Polarity.DECREASING))
                walk(c, positive)
            case Until(iv, l, r):
                put(iv.lo, orient(Polarity.DECREASING))
                put(iv.hi, orient(Polarity.INCREASING))
                walk(l, positive)
                walk(r, positive)
            case _:
                raise TypeError(f"not a formula node: {node!r}")

    walk(phi, True)
    return out
