"""Command-line front end: learn, monitor, enumerate, gen-data.

Exit codes: 0 on success (including a learn run that finds no classifier,
which still writes a structured report), 2 on usage errors, 1 on data or
file-format errors.  All randomness in a run flows from the single --seed.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import __version__
from .enumeration import CallbackResult, Grammar, enumerate_templates
from .errors import DataFormatError, FormulaSyntaxError, StlmineError
from .formula import is_concrete
from .learner import (
    MCR_ONESIDED,
    MCR_SYMMETRIC,
    DEFAULT_MAX_BOUNDARY_POINTS,
    LearnerConfig,
    learn,
    mcr,
)
from .monitor import robustness
from .parser import parse_formula
from .signatures import SignatureConfig
from .traces import load_csv_dir, load_trace_csv, save_csv_dir, split_dataset
from .datagen import GENERATORS


def _split_names(spec: str) -> list[str]:
    return [s.strip() for s in spec.split(",") if s.strip()]


def cmd_learn(args) -> int:
    ds = load_csv_dir(args.data, manifest=args.labels, require_both_classes=True)
    if args.signals:
        names = _split_names(args.signals)
        unknown = [s for s in names if s not in ds.signal_names]
        if unknown:
            raise DataFormatError(f"--signals names not in the data: {', '.join(unknown)}")
    else:
        names = list(ds.signal_names)
    if args.split is not None:
        if not 0 < args.split < 1:
            raise DataFormatError(f"--split must be in (0,1), got {args.split}")
        train, test = split_dataset(ds, args.split, args.seed)
    else:
        train, test = ds, None

    cfg = LearnerConfig(
        threshold=args.threshold,
        delta=args.delta,
        max_length=args.max_length,
        max_boundary_points=args.max_boundary_points,
        mcr_mode=args.mcr,
        use_signatures=not args.no_signatures,
        signature=SignatureConfig(seed=args.seed),
    )
    result = learn(train, Grammar.default(names), cfg)

    stats = {
        "templates_tried": result.stats.templates_tried,
        "templates_pruned": result.stats.templates_pruned,
        "boundary_points": result.stats.boundary_points,
        "elapsed_ms": round(result.stats.elapsed_s * 1000.0, 3),
    }
    if result.found:
        c = result.classifier
        payload = {
            "found": True,
            "formula": str(c.formula),
            "template": str(c.template),
            "valuation": {k: float(v) for k, v in c.valuation.items()},
            "mcr_train": c.mcr,
            "mcr_test": mcr(c.formula, test, cfg.mcr_mode) if test is not None else None,
            "stats": stats,
        }
    else:
        payload = {
            "found": False,
            "formula": None,
            "template": None,
            "valuation": None,
            "mcr_train": None,
            "mcr_test": None,
            "stats": stats,
        }
    Path(args.out).write_text(json.dumps(payload, sort_keys=True, indent=2) + "\n")

    if args.dump_robustness and result.found:
        lines = ["index,label,robustness"]
        for i, (tr, label) in enumerate(zip(ds.traces, ds.labels)):
            lines.append(f"{i},{label},{robustness(result.classifier.formula, tr)!r}")
        Path(args.dump_robustness).write_text("\n".join(lines) + "\n")

    if not args.quiet:
        if result.found:
            test_part = (
                f", mcr_test={payload['mcr_test']:g}" if payload["mcr_test"] is not None else ""
            )
            print(f"classifier: {payload['formula']}")
            print(f"mcr_train={payload['mcr_train']:g}{test_part}")
        else:
            print(f"no classifier under threshold {cfg.threshold:g}")
        print(
            f"templates tried={stats['templates_tried']} pruned={stats['templates_pruned']} "
            f"boundary points={stats['boundary_points']}"
        )
        print(f"report written to {args.out}")
    return 0


def cmd_monitor(args) -> int:
    try:
        phi = parse_formula(args.formula)
    except FormulaSyntaxError as e:
        print(f"error: --formula: {e}", file=sys.stderr)
        return 2
    if not is_concrete(phi):
        print("error: --formula: formula still has $parameters; monitor needs concrete values",
              file=sys.stderr)
        return 2
    tr = load_trace_csv(args.trace)
    rho = robustness(phi, tr, args.time)
    print(f"{'SAT' if rho > 0 else 'UNSAT'} robustness={rho!r}")
    return 0


def cmd_enumerate(args) -> int:
    grammar = Grammar.default(
        _split_names(args.signals), two_sided_intervals=args.two_sided_intervals
    )
    if args.no_negation:
        grammar.unary_ops = tuple(op for op in grammar.unary_ops if op != "not")

    def show(template, length):
        print(f"{length}\t{template}")
        return CallbackResult.CONTINUE

    report = enumerate_templates(grammar, args.max_length, show)
    if not args.quiet:
        print(f"emitted {report.emitted} templates", file=sys.stderr)
    return 0


def cmd_gen_data(args) -> int:
    ds = GENERATORS[args.case](seed=args.seed)
    save_csv_dir(ds, args.out)
    if not args.quiet:
        print(f"wrote {ds.n} traces ({ds.count(1)} label-1, {ds.count(0)} label-0) to {args.out}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="stlmine",
        description="Learn and monitor temporal-logic classifiers over time-series CSV data.",
    )
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    pl = sub.add_parser("learn", help="learn a classifier from a labeled trace directory")
    pl.add_argument("--data", required=True, help="directory of trace CSV files")
    pl.add_argument("--labels", default=None, help="label manifest CSV (default: DATA/labels.csv)")
    pl.add_argument("--signals", default=None, help="comma-separated signal subset to use")
    pl.add_argument("--max-length", type=int, default=5)
    pl.add_argument("--threshold", type=float, default=0.1)
    pl.add_argument("--delta", type=float, default=0.01)
    pl.add_argument("--seed", type=int, default=0)
    pl.add_argument("--no-signatures", action="store_true", help="disable duplicate pruning")
    pl.add_argument("--mcr", choices=[MCR_ONESIDED, MCR_SYMMETRIC], default=MCR_ONESIDED)
    pl.add_argument("--split", type=float, default=None, help="train fraction for a held-out split")
    pl.add_argument("--max-boundary-points", type=int, default=DEFAULT_MAX_BOUNDARY_POINTS)
    pl.add_argument("--out", default="result.json")
    pl.add_argument("--dump-robustness", default=None, metavar="CSV",
                    help="also write per-trace robustness of the learned formula")
    pl.add_argument("--quiet", action="store_true")
    pl.set_defaults(func=cmd_learn)

    pm = sub.add_parser("monitor", help="evaluate a concrete formula on one trace")
    pm.add_argument("--formula", required=True)
    pm.add_argument("--trace", required=True, help="trace CSV file")
    pm.add_argument("--time", type=float, default=0.0)
    pm.add_argument("--quiet", action="store_true")
    pm.set_defaults(func=cmd_monitor)

    pe = sub.add_parser("enumerate", help="print templates in emission order")
    pe.add_argument("--signals", required=True, help="comma-separated signal names")
    pe.add_argument("--max-length", type=int, required=True)
    pe.add_argument("--no-negation", action="store_true")
    pe.add_argument("--two-sided-intervals", action="store_true")
    pe.add_argument("--quiet", action="store_true")
    pe.set_defaults(func=cmd_enumerate)

    pg = sub.add_parser("gen-data", help="write a bundled synthetic dataset as CSV")
    pg.add_argument("--case", choices=sorted(GENERATORS), required=True)
    pg.add_argument("--seed", type=int, default=0)
    pg.add_argument("--out", required=True, help="output directory")
    pg.add_argument("--quiet", action="store_true")
    pg.set_defaults(func=cmd_gen_data)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except StlmineError as e:
        print(f"error: {e}", file=sys.stderr)
        return 1
    except FileNotFoundError as e:
        print(f"error: {e}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
