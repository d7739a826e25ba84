"""Command line front end.

    eventf1 evaluate --input data.csv --delta 0.501 --window 10s --window 5min --out report.md
    eventf1 scenarios --out suite.json
    eventf1 --version

Probabilities are thresholded inclusively: a sample is predicted as an
event when ``p >= delta``, so ``--delta 0`` marks every sample.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path
from typing import Optional, Sequence

from . import __version__
from .baselines import RNG_ALGORITHM
from .dataset import DatasetError
from .evaluation import DEFAULT_BETAS, DEFAULT_K, DEFAULT_WINDOWS, EvalConfig, run_evaluation
from .report import emit_plot_data, render_report, render_suite
from .scenarios import run_scenario_suite
from .series import WindowSpec, format_duration, parse_duration

_SUFFIX_FORMATS = {".md": "markdown", ".markdown": "markdown", ".csv": "csv", ".json": "json"}


def _probability(text: str) -> float:
    value = float(text)
    if not 0 <= value <= 1:
        raise argparse.ArgumentTypeError(f"{text} is not in [0, 1]")
    return value


def _duration(text: str) -> float:
    try:
        return parse_duration(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="eventf1", description=__doc__.split("\n\n")[0])
    parser.add_argument("--version", action="version", version=f"eventf1 {__version__} (rng: {RNG_ALGORITHM})")
    sub = parser.add_subparsers(dest="command", required=True)

    ev = sub.add_parser("evaluate", help="score predictions and test them against random/null baselines")
    ev.add_argument("--input", required=True, type=Path, help="per-subject CSV or JSONL file")
    ev.add_argument("--format", choices=("csv", "jsonl"), default=None, help="input format (default: from suffix)")
    ev.add_argument("--delta", type=_probability, default=0.5, help="event threshold, p >= delta (default 0.5)")
    ev.add_argument("--window", type=_duration, action="append", metavar="DUR",
                    help="F1_w window, e.g. 10s, 5min (repeatable; default 10s 30s 1min 5min 20min 60min)")
    ev.add_argument("--window-mode", choices=("radius", "span"), default="radius",
                    help="radius: +-DUR around each point; span: DUR total")
    ev.add_argument("--k", type=_probability, action="append", help="pa%%K threshold (repeatable)")
    ev.add_argument("--beta", type=float, action="append", help="F_beta weights for pointwise F (repeatable)")
    ev.add_argument("--alpha", type=float, default=0.05)
    ev.add_argument("--seed", type=int, default=0)
    ev.add_argument("--rate", type=float, default=4.0, help="samples per second (default 4)")
    ev.add_argument("--cap", type=int, default=10_000, help="max permutation/bootstrap replicates")
    ev.add_argument("--dataset-name", default=None)
    ev.add_argument("--out", type=Path, default=None, help="report file (default: stdout)")
    ev.add_argument("--out-format", choices=("json", "markdown", "csv"), default=None,
                    help="report format (default: from --out suffix, else json)")
    ev.add_argument("--emit-plot", type=Path, default=None, metavar="FILE", help="write grouped-bar plot data CSV")

    sc = sub.add_parser("scenarios", help="run the six synthetic validation scenarios")
    sc.add_argument("--out", type=Path, default=None)
    sc.add_argument("--out-format", choices=("json", "markdown"), default=None)
    sc.add_argument("--window-steps", type=int, default=10)
    sc.add_argument("--length", type=int, default=200)
    sc.add_argument("--seed", type=int, default=0)
    return parser


def _output_format(explicit: Optional[str], out: Optional[Path]) -> str:
    if explicit:
        return explicit
    if out is not None:
        return _SUFFIX_FORMATS.get(out.suffix.lower(), "json")
    return "json"


def _write(text: str, out: Optional[Path]) -> None:
    if out is None:
        sys.stdout.write(text)
    else:
        out.write_text(text, encoding="utf-8")


def _evaluate(args) -> int:
    windows = args.window or list(DEFAULT_WINDOWS)
    config = EvalConfig(
        input=str(args.input),
        input_format=args.format,
        delta=args.delta,
        windows=[WindowSpec(w, args.window_mode, label=format_duration(w)) for w in windows],
        k_values=args.k if args.k is not None else DEFAULT_K,
        betas=args.beta if args.beta is not None else DEFAULT_BETAS,
        alpha=args.alpha,
        seed=args.seed,
        rate=args.rate,
        cap=args.cap,
        output_format=_output_format(args.out_format, args.out),
        dataset_name=args.dataset_name or args.input.stem,
    )
    report = run_evaluation(config)
    _write(render_report(report, config.output_format), args.out)
    if args.emit_plot is not None:
        emit_plot_data(report, args.emit_plot)
    return 0


def _scenarios(args) -> int:
    suite = run_scenario_suite(window_steps=args.window_steps, length=args.length, seed=args.seed)
    _write(render_suite(suite, _output_format(args.out_format, args.out)), args.out)
    return 0 if suite.passed else 1


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "evaluate":
            return _evaluate(args)
        return _scenarios(args)
    except (DatasetError, ValueError, OSError) as exc:
        print(f"eventf1: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
