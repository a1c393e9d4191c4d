"""stlmine: learn interpretable temporal-logic classifiers from labeled
time-series data, and monitor signal temporal logic formulas over traces.

The pipeline: enumerate parametric formula templates shortest-first, skip
templates whose robustness fingerprint duplicates an earlier one, then walk
each survivor's satisfaction boundary (exploiting parameter monotonicity)
until an instantiation classifies the training traces well enough.
"""

__version__ = "0.1.0"

from .boundary import BoundaryQuery, RegionLog, min_robustness
from .enumeration import (
    CallbackResult,
    EnumerationReport,
    FormulaDB,
    Grammar,
    enumerate_templates,
)
from .errors import (
    DataFormatError,
    DegenerateBoundsError,
    FormulaStructureError,
    FormulaSyntaxError,
    InstantiationError,
    StlmineError,
    TraceDomainError,
    UnknownSignalError,
)
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
    Param,
    Polarity,
    TrueF,
    Until,
    format_formula,
    formula_length,
    infer_polarity,
    is_concrete,
    parameters,
    validate_formula,
)
from .learner import (
    MCR_ONESIDED,
    MCR_SYMMETRIC,
    LearnedClassifier,
    LearnerConfig,
    LearnResult,
    LearnStats,
    TryResult,
    learn,
    mcr,
    try_classifier,
)
from .monitor import BIG, robustness, robustness_many, satisfies
from .params import (
    ParamDef,
    ParamKind,
    ParamSpace,
    Valuation,
    default_bounds,
    instantiate,
    signal_ranges,
)
from .parser import parse_formula
from .signatures import SignatureConfig, SignatureIndex
from .traces import (
    Dataset,
    Trace,
    load_csv_dir,
    load_trace_csv,
    read_label_manifest,
    save_csv_dir,
    save_trace_csv,
    split_dataset,
)
from .datagen import (
    gen_anomaly_threshold,
    gen_oscillator_inputs,
    gen_steps_and_sinusoids,
    load_har_std,
    load_robot_failures,
)

__all__ = [
    "__version__",
    "BIG",
    "And",
    "Atom",
    "BoundaryQuery",
    "CallbackResult",
    "Const",
    "DataFormatError",
    "Dataset",
    "DegenerateBoundsError",
    "EnumerationReport",
    "Finally",
    "Formula",
    "FormulaDB",
    "FormulaStructureError",
    "FormulaSyntaxError",
    "Globally",
    "Grammar",
    "Implies",
    "InstantiationError",
    "Interval",
    "LearnResult",
    "LearnStats",
    "LearnedClassifier",
    "LearnerConfig",
    "MCR_ONESIDED",
    "MCR_SYMMETRIC",
    "Not",
    "Or",
    "Param",
    "ParamDef",
    "ParamKind",
    "ParamSpace",
    "Polarity",
    "RegionLog",
    "SignatureConfig",
    "SignatureIndex",
    "StlmineError",
    "Trace",
    "TraceDomainError",
    "TrueF",
    "TryResult",
    "UnknownSignalError",
    "Until",
    "Valuation",
    "default_bounds",
    "enumerate_templates",
    "format_formula",
    "formula_length",
    "gen_anomaly_threshold",
    "gen_oscillator_inputs",
    "gen_steps_and_sinusoids",
    "infer_polarity",
    "instantiate",
    "is_concrete",
    "learn",
    "load_csv_dir",
    "load_har_std",
    "load_robot_failures",
    "load_trace_csv",
    "mcr",
    "min_robustness",
    "parameters",
    "parse_formula",
    "read_label_manifest",
    "robustness",
    "robustness_many",
    "satisfies",
    "save_csv_dir",
    "save_trace_csv",
    "signal_ranges",
    "split_dataset",
    "try_classifier",
    "validate_formula",
]
