import argparse
import json
import os
import sys
from typing import List, Optional, Sequence

from pydantic import ValidationError

import schemas
from config import ConfigError, default_tol, resolve_seed
from conjugates import FilterError
from jordan_algebra import JordanAlgebraError
from model_library import builtin_names, get_builtin_descriptor
from probabilistic_models import Model, ModelError, build_model
from reconstruction import RankError, SpectralFailure
from verification_suites import (
    CHECK_SUITES,
    THEOREM_SUITES,
    full_report_checks,
    gbit_demo_checks,
    theorem_checks,
    validation_checks,
)

EXIT_PASS = 0
EXIT_FAIL = 1
EXIT_USAGE = 2

# Errors that mean "bad input", reported with exit code 2
INPUT_ERRORS = (ModelError, JordanAlgebraError, FilterError, RankError, SpectralFailure, ConfigError)


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    """argparse exits on its own; route its errors through the usage exit code instead."""

    def error(self, message):
        raise UsageError(message)


def status(message: str) -> None:
    print(message, file=sys.stderr)


def load_descriptor(source: str) -> schemas.ModelDescriptor:
    """Read a descriptor from a JSON file, falling back to the built-in library."""
    if os.path.exists(source):
        with open(source, "r", encoding="utf-8") as handle:
            text = handle.read()
        try:
            raw = json.loads(text)
        except json.JSONDecodeError as e:
            raise UsageError(f"{source}: malformed JSON at line {e.lineno}, column {e.colno}: {e.msg}")
        return schemas.ModelDescriptor.model_validate(raw)
    builtin = get_builtin_descriptor(os.path.basename(source))
    if builtin is None:
        raise UsageError(f"{source}: no such file or built-in model (built-ins: {', '.join(builtin_names())})")
    return schemas.ModelDescriptor.model_validate(builtin)


def load_model(source: str) -> Model:
    return build_model(load_descriptor(source))


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="jordan-gpt", description="Verify Jordan-algebraic structure of probabilistic models.")
    parser.add_argument("--seed", type=int, default=None, help="RNG seed (JORDAN_GPT_SEED overrides)")
    parser.add_argument("--tol", type=float, default=None, help="numerical tolerance (default 1e-8)")
    commands = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    model = commands.add_parser("model", help="model descriptor utilities")
    model_actions = model.add_subparsers(dest="action", required=True, parser_class=_Parser)
    validate = model_actions.add_parser("validate", help="parse and validate a model descriptor")
    validate.add_argument("file", help="descriptor path or built-in name")

    check = commands.add_parser("check", help="run a named check suite on a model")
    check.add_argument("suite", choices=sorted(CHECK_SUITES))
    check.add_argument("file", help="descriptor path or built-in name")

    theorem = commands.add_parser("theorem", help="run a theorem pipeline on a Jordan model")
    theorem.add_argument("name", choices=sorted(list(THEOREM_SUITES) + ["thm3"]))
    theorem.add_argument("--rank", type=int, default=2, help="rank n (for spin factors: d)")
    theorem.add_argument("--kind", default="complex", help="real | complex | quaternion | spin")

    demo = commands.add_parser("demo", help="canned demonstrations")
    demo.add_argument("name", choices=["gbit"])

    report = commands.add_parser("report", help="run the full battery and write a report file")
    report.add_argument("--out", required=True, help="output JSON path")
    report.add_argument("--seed", type=int, default=None, dest="report_seed")
    report.add_argument("--tol", type=float, default=None, dest="report_tol")
    return parser


def _collect(args, seed: int, tol: float) -> schemas.Report:
    if args.command == "model":
        model = load_model(args.file)
        return schemas.make_report("model.validate", seed, tol, validation_checks(model, seed, tol))
    if args.command == "check":
        model = load_model(args.file)
        return schemas.make_report(f"check.{args.suite}", seed, tol, CHECK_SUITES[args.suite](model, seed, tol))
    if args.command == "theorem":
        checks = theorem_checks(args.name, args.kind, args.rank, seed, tol)
        return schemas.make_report(f"theorem.{args.name}", seed, tol, checks)
    if args.command == "demo":
        return schemas.make_report("demo.gbit", seed, tol, gbit_demo_checks(seed, tol))
    return schemas.make_report("report", seed, tol, full_report_checks(seed, tol))


def run(argv: Optional[Sequence[str]] = None) -> int:
    try:
        args = build_parser().parse_args(argv)
        cli_seed = getattr(args, "report_seed", None)
        cli_seed = cli_seed if cli_seed is not None else args.seed
        cli_tol = getattr(args, "report_tol", None)
        cli_tol = cli_tol if cli_tol is not None else args.tol
        seed = resolve_seed(cli_seed)
        tol = cli_tol if cli_tol is not None else default_tol()
        if not tol > 0:
            raise UsageError(f"--tol must be positive, got {tol}")
        report = _collect(args, seed, tol)
    except UsageError as e:
        status(f"❌ USAGE ERROR: {e}")
        return EXIT_USAGE
    except ValidationError as e:
        status(f"❌ DESCRIPTOR ERROR: {e}")
        return EXIT_USAGE
    except INPUT_ERRORS as e:
        status(f"❌ MODEL ERROR: {e}")
        return EXIT_USAGE

    text = report.model_dump_json(indent=2)
    if args.command == "report":
        with open(args.out, "w", encoding="utf-8") as handle:
            handle.write(text + "\n")
        status(f"📄 Report written to {args.out}")
    else:
        print(text)

    failed: List[str] = [check.name for check in report.checks if not check.passed]
    if failed:
        status(f"⚠️  {len(failed)} of {len(report.checks)} checks failed: {', '.join(failed)}")
        return EXIT_FAIL
    status(f"✅ All {len(report.checks)} checks passed ({report.suite}, seed {report.seed})")
    return EXIT_PASS


if __name__ == "__main__":
    sys.exit(run())
