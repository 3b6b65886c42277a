"""Command-line entry point.

Exit codes: 0 success, 1 domain or validation error, 2 internal error.
"""
from __future__ import annotations

import argparse
import json
import logging
import re
import sys
from pathlib import Path

import numpy as np

from . import experiment
from .config import load_config, validate
from .errors import ArgumentError, ConfigError, GQHTError, ParseError
from .hadamard import EstimatorConfig, gqht, gqht_batched, gqht_batched_circuit, gqht_circuit
from .repro import run_repro

log = logging.getLogger("gqht")

_VECTOR_FLAGS = {"--p", "--q", "--train", "--test"}
_NEGATIVE = re.compile(r"^-[\d.]")


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise ConfigError([("argv", message)])


def _normalize_argv(argv):
    """Glue ``--q -1,0.5`` into ``--q=-1,0.5`` so argparse does not read it as a flag."""
    out, i = [], 0
    while i < len(argv):
        tok = argv[i]
        if tok in _VECTOR_FLAGS and i + 1 < len(argv) and _NEGATIVE.match(argv[i + 1]):
            out.append(f"{tok}={argv[i + 1]}")
            i += 2
            continue
        out.append(tok)
        i += 1
    return out


def parse_vector(text: str) -> np.ndarray:
    try:
        values = [float(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise ParseError(f"cannot parse vector {text!r}; expected comma-separated reals") from None
    if not values:
        raise ParseError(f"empty vector {text!r}")
    return np.array(values)


def _estimator_args(p):
    g = p.add_mutually_exclusive_group()
    g.add_argument("--exact", action="store_true", help="exact <Z> from amplitudes (default)")
    g.add_argument("--shots", type=int, help="estimate <Z> from this many shots")
    p.add_argument("--seed", type=int, help="sampling seed")


def _estimator(args) -> EstimatorConfig:
    if args.shots is not None:
        return EstimatorConfig("shots", args.shots, args.seed or 0)
    return EstimatorConfig("exact", None, args.seed or 0)


def _experiment_args(p):
    p.add_argument("--config", help="JSON experiment config")
    p.add_argument("--dataset", dest="dataset.source", choices=["blobs", "moons", "csv"])
    p.add_argument("--data-path", dest="dataset.path")
    p.add_argument("--feature-columns", dest="dataset.feature_columns", type=lambda s: [int(t) for t in s.split(",")])
    p.add_argument("--label-column", dest="dataset.label_column", type=int)
    p.add_argument("--class-pair", dest="dataset.class_pair", type=lambda s: s.split(","))
    p.add_argument("--header", dest="dataset.header", action="store_const", const=True)
    p.add_argument("--delimiter", dest="dataset.delimiter")
    p.add_argument("--n-per-class", dest="dataset.n_per_class", type=int)
    p.add_argument("--sigma", dest="dataset.sigma", type=float)
    p.add_argument("--noise", dest="dataset.noise", type=float)
    p.add_argument("--data-seed", dest="dataset.seed", type=int)
    p.add_argument("--train-fraction", dest="split.train_fraction", type=float)
    p.add_argument("--split-seed", dest="split.seed", type=int)
    p.add_argument("--classifier", dest="classifier", choices=["logistic", "centroid"])
    p.add_argument("--shots", dest="estimator.shots", type=int)
    p.add_argument("--exact", action="store_true")
    p.add_argument("--seed", dest="estimator.seed", type=int)
    p.add_argument("--learning-rate", dest="hyperparams.learning_rate", type=float)
    p.add_argument("--batch-size", dest="hyperparams.batch_size", type=int)
    p.add_argument("--epochs", dest="hyperparams.epochs", type=int)
    p.add_argument("--train-seed", dest="hyperparams.seed", type=int)
    p.add_argument("--grid-resolution", dest="grid_resolution", type=int)
    p.add_argument("--workers", dest="workers", type=int)
    p.add_argument("--model", dest="outputs.model")
    p.add_argument("--metrics", dest="outputs.metrics")
    p.add_argument("--grid", dest="outputs.grid")
    p.add_argument("--svg", dest="outputs.svg")
    p.add_argument("--out", dest="outputs.data")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="gqht", description="Bounded-vector Hadamard test simulator and classifiers")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("inner", help="inner product of two bounded vectors")
    p.add_argument("--p", required=True)
    p.add_argument("--q", required=True)
    _estimator_args(p)

    p = sub.add_parser("batch-inner", help="sum of inner products of a training set with a test point")
    p.add_argument("--train", action="append", required=True, help="one training vector; repeat")
    p.add_argument("--test", required=True)
    _estimator_args(p)

    for name, text in (
        ("train", "train a classifier and write model + metrics JSON"),
        ("evaluate", "evaluate a saved model on the test split"),
        ("boundary", "decision-boundary grid CSV and SVG for a 2-feature model"),
        ("gen-data", "write a synthetic dataset CSV"),
    ):
        _experiment_args(sub.add_parser(name, help=text))

    sub.add_parser("repro", help="run the two worked circuit examples against classical oracles")

    p = sub.add_parser("export-qasm", help="OpenQASM 2.0 text of a pair or batched circuit")
    p.add_argument("--p")
    p.add_argument("--q")
    p.add_argument("--train", action="append")
    p.add_argument("--test")
    p.add_argument("--output", help="file to write (default stdout)")
    return parser


def _print_json(obj):
    sys.stdout.write(json.dumps(obj, indent=2, sort_keys=True) + "\n")


def _experiment_config(args, task):
    overrides = {k: v for k, v in vars(args).items() if "." in k or k in ("classifier", "grid_resolution", "workers")}
    if overrides.get("estimator.shots") is not None:
        overrides["estimator.mode"] = "shots"
    elif getattr(args, "exact", False):
        overrides["estimator.mode"] = "exact"
    return validate(load_config(args.config, overrides), task)


def dispatch(args) -> int:
    cmd = args.command
    if cmd == "inner":
        res = gqht(parse_vector(args.p), parse_vector(args.q), _estimator(args))
        _print_json(res.to_dict())
    elif cmd == "batch-inner":
        training = [parse_vector(t) for t in args.train]
        res = gqht_batched(training, parse_vector(args.test), _estimator(args))
        _print_json(res.to_dict())
    elif cmd == "repro":
        report = run_repro()
        _print_json(report)
        return 0 if report["all_pass"] else 1
    elif cmd == "export-qasm":
        if args.p and args.q:
            circ = gqht_circuit(parse_vector(args.p), parse_vector(args.q))
        elif args.train and args.test:
            circ = gqht_batched_circuit([parse_vector(t) for t in args.train], parse_vector(args.test))
        else:
            raise ArgumentError("export-qasm needs --p and --q, or --train (repeated) and --test")
        text = circ.to_qasm()
        if args.output:
            Path(args.output).write_text(text, encoding="utf-8")
        else:
            sys.stdout.write(text)
    else:
        cfg = _experiment_config(args, cmd)
        runner = {
            "train": experiment.run_train,
            "evaluate": experiment.run_evaluate,
            "boundary": experiment.run_boundary,
            "gen-data": experiment.run_gen_data,
        }[cmd]
        _print_json(runner(cfg))
    return 0


def main(argv=None) -> int:
    argv = _normalize_argv(list(sys.argv[1:] if argv is None else argv))
    try:
        args = build_parser().parse_args(argv)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s %(name)s: %(message)s")
    try:
        return dispatch(args)
    except (GQHTError, FileNotFoundError, IndexError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except Exception as exc:  # noqa: BLE001
        log.exception("internal error")
        print(f"internal error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
