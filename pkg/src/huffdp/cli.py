"""Command-line entry point: perturb one CSV column and report MAE and noise counts."""

from __future__ import annotations

import argparse
import logging
import sys
from dataclasses import replace

from .budget_selection import BudgetConfig, Selector
from .config import load_budget_config
from .evaluation import DEFAULT_CAP, Dataset, MechanismSpec, ingest_csv, quantize, run_experiment
from .pipeline import Mechanism, RunConfig
from .synthetic import heavy_mode_stream, table1_stream


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="huffdp", description=__doc__)
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--input", metavar="PATH", help="CSV file to read")
    src.add_argument("--synthetic", choices=["table1", "heavy"],
                     help="use a built-in synthetic stream instead of a file")
    p.add_argument("--column", default="0",
                   help="header name, or a 0-based field index (default 0)")
    p.add_argument("--mechanism", action="append",
                   choices=[m.value for m in Mechanism],
                   help="repeatable; default huffdp")
    p.add_argument("--selector", choices=[s.value for s in Selector], default=None)
    p.add_argument("--beta", type=float, default=None)
    p.add_argument("--epsilon", type=float, default=1.0, help="baseline epsilon")
    p.add_argument("--delta", type=float, default=1e-5, help="gaussian delta")
    p.add_argument("--gamma", type=float, default=None, help="staircase gamma")
    p.add_argument("--sensitivity", default="1.0",
                   help="a positive number, or 'range' for max - min of the column")
    p.add_argument("--quantize", type=float, default=None, metavar="WIDTH")
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--cap", type=int, default=DEFAULT_CAP)
    p.add_argument("--config", metavar="PATH", help="JSON budget configuration")
    p.add_argument("--out", metavar="DIR", help="write CSVs and report.json here")
    p.add_argument("--no-abs", action="store_true",
                   help="do not fold Huff-DP outputs to absolute values")
    return p


def _sensitivity(arg: str, column) -> float:
    if arg == "range":
        span = max(column) - min(column)
        if span <= 0:
            raise SystemExit("error: --sensitivity range needs a non-constant column")
        return span
    value = float(arg)
    if value <= 0:
        raise SystemExit("error: --sensitivity must be > 0")
    return value


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.WARNING, format="%(levelname)s %(message)s")

    if args.input:
        column = int(args.column) if args.column.isdigit() else args.column
        try:
            dataset = ingest_csv(args.input, column, args.quantize, args.cap)
        except (OSError, ValueError) as exc:
            print(f"error: {exc}", file=sys.stderr)
            return 2
    else:
        raw = table1_stream() if args.synthetic == "table1" else heavy_mode_stream(args.cap)
        dataset = Dataset(args.synthetic, quantize(raw, args.quantize), quantization=args.quantize)

    budget, cfg_seed = load_budget_config(args.config) if args.config else (BudgetConfig(), None)
    if args.selector:
        budget = replace(budget, selector=Selector(args.selector))
    if args.beta is not None:
        budget = replace(budget, beta=args.beta)
    seed = args.seed if args.seed is not None else (cfg_seed or 0)

    cfg = RunConfig(budget=budget, sensitivity=_sensitivity(args.sensitivity, dataset.column),
                    seed=seed, abs_fold=not args.no_abs, delta=args.delta, gamma=args.gamma)
    specs = [
        MechanismSpec(Mechanism(m), budget.selector, budget.beta, args.epsilon)
        for m in (args.mechanism or [Mechanism.HUFFDP.value])
    ]
    reports = run_experiment(dataset, specs, cfg, args.out)

    print(f"{'mechanism':<28}{'mae':>12}{'noise count':>14}{'instances':>11}")
    for spec, r in zip(specs, reports):
        print(f"{spec.id:<28}{r.mae:>12.6g}{r.noise_computation_count:>14}{r.instance_count:>11}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
