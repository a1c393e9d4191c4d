"""Classifier search: enumerate templates, fit each on the satisfaction
boundary of the label-1 traces, keep the first instantiation whose
misclassification rate beats the threshold.

The search is shortest-formula-first, so the returned classifier is as small
as the grammar allows.  Duplicate templates (same robustness fingerprint) are
skipped before any boundary work and excluded from reuse at greater lengths.
"""
from __future__ import annotations

import time
from dataclasses import dataclass, field

import numpy as np

from .boundary import BoundaryQuery
from .enumeration import CallbackResult, FormulaDB, Grammar, enumerate_templates
from .errors import DataFormatError, InstantiationError
from .formula import Formula, infer_polarity
from .monitor import robustness_many
from .params import Valuation, default_bounds, instantiate
from .signatures import SignatureConfig, SignatureIndex
from .traces import Dataset

MCR_ONESIDED = "onesided"
MCR_SYMMETRIC = "symmetric"

# boundary points examined per template before moving on; bounds the work a
# hopeless many-parameter template can absorb (its FIFO walk is coarse-first,
# so truncation behaves like a resolution cut, not a region cut)
DEFAULT_MAX_BOUNDARY_POINTS = 400


@dataclass(frozen=True)
class LearnerConfig:
    threshold: float = 0.1
    delta: float = 0.01
    diag_tol: float = 1e-3
    max_length: int = 5
    max_boundary_points: int | None = DEFAULT_MAX_BOUNDARY_POINTS
    mcr_mode: str = MCR_ONESIDED
    use_signatures: bool = True
    signature: SignatureConfig = SignatureConfig()

    def __post_init__(self):
        if not 0 < self.threshold < 1:
            raise ValueError(f"threshold must be in (0,1), got {self.threshold}")
        if self.mcr_mode not in (MCR_ONESIDED, MCR_SYMMETRIC):
            raise ValueError(f"unknown mcr mode {self.mcr_mode!r}")
        if self.max_length < 1:
            raise ValueError("max_length must be >= 1")


@dataclass
class LearnStats:
    templates_tried: int = 0
    templates_pruned: int = 0
    boundary_points: int = 0
    elapsed_s: float = 0.0


@dataclass
class LearnedClassifier:
    formula: Formula  # concrete
    mcr: float
    template: Formula
    valuation: Valuation
    stats: LearnStats


@dataclass
class TryResult:
    classifier: LearnedClassifier | None = None
    pruned: bool = False
    points_tested: int = 0


@dataclass
class LearnResult:
    classifier: LearnedClassifier | None
    stats: LearnStats
    per_length: dict[int, int] = field(default_factory=dict)

    @property
    def found(self) -> bool:
        return self.classifier is not None


def mcr(phi: Formula, ds: Dataset, mode: str = MCR_ONESIDED) -> float:
    """Misclassification rate of a concrete formula on a labeled dataset.

    One-sided mode counts only label-0 traces that satisfy the formula;
    the fitting procedure already pins label-1 traces to the satisfying side,
    so these are the misclassifications that matter there.  Symmetric mode
    additionally counts label-1 traces that fail to satisfy.
    """
    if ds.n == 0:
        raise DataFormatError("cannot score an empty dataset")
    sat = robustness_many(phi, ds.traces, 0.0) > 0
    labels = np.asarray(ds.labels)
    wrong = sat & (labels == 0)
    if mode == MCR_SYMMETRIC:
        wrong = wrong | (~sat & (labels == 1))
    elif mode != MCR_ONESIDED:
        raise ValueError(f"unknown mcr mode {mode!r}")
    return float(wrong.sum()) / ds.n


def try_classifier(
    template: Formula,
    ds: Dataset,
    cfg: LearnerConfig = LearnerConfig(),
    signatures: SignatureIndex | None = None,
    stats: LearnStats | None = None,
) -> TryResult:
    """Fit one template: fingerprint check, then walk its boundary points.

    Returns a classifier as soon as one instantiation scores under the
    threshold; a duplicate fingerprint short-circuits with ``pruned`` set and
    no boundary evaluations.
    """
    stats = stats if stats is not None else LearnStats()
    polarity = infer_polarity(template)
    space = default_bounds(template, ds, polarity)
    if signatures is not None and not signatures.check_and_insert(template, ds, space):
        stats.templates_pruned += 1
        return TryResult(pruned=True)

    positives = ds.with_label(1)
    if not positives:
        raise DataFormatError("boundary fitting needs at least one label-1 trace")
    query = BoundaryQuery(
        template,
        space,
        positives,
        delta=cfg.delta,
        diag_tol=cfg.diag_tol,
        max_points=cfg.max_boundary_points,
    )
    tested = 0
    for valuation in query:
        stats.boundary_points += 1
        tested += 1
        try:
            phi = instantiate(template, valuation)
        except InstantiationError:
            # an inverted two-sided window: legal point, degenerate formula
            continue
        score = mcr(phi, ds, cfg.mcr_mode)
        if score < cfg.threshold:
            classifier = LearnedClassifier(phi, score, template, valuation, stats)
            return TryResult(classifier=classifier, points_tested=tested)
    return TryResult(points_tested=tested)


def learn(
    ds: Dataset,
    grammar: Grammar | None = None,
    cfg: LearnerConfig = LearnerConfig(),
) -> LearnResult:
    """Search templates shortest-first and return the first classifier whose
    misclassification rate beats ``cfg.threshold``, or a not-found result
    carrying the search statistics."""
    if ds.count(0) == 0 or ds.count(1) == 0:
        raise DataFormatError("learning needs traces of both labels (0 and 1)")
    if grammar is None:
        grammar = Grammar.default(ds.signal_names)
    stats = LearnStats()
    signatures = SignatureIndex(cfg.signature, ds) if cfg.use_signatures else None
    db = FormulaDB(signatures)
    hit: list[LearnedClassifier] = []
    t0 = time.perf_counter()

    def callback(template: Formula, length: int) -> CallbackResult:
        stats.templates_tried += 1
        res = try_classifier(template, ds, cfg, signatures, stats)
        if res.classifier is not None:
            hit.append(res.classifier)
            return CallbackResult.STOP
        if res.pruned:
            return CallbackResult.PRUNED
        return CallbackResult.CONTINUE

    report = enumerate_templates(grammar, cfg.max_length, callback, db)
    stats.elapsed_s = time.perf_counter() - t0
    classifier = hit[0] if hit else None
    if classifier is not None:
        assert classifier.mcr < cfg.threshold
    return LearnResult(classifier, stats, report.per_length)
