"""Command-line front end: build, verify, saturate, export, sample, oracle.

Exit codes: 0 success, 1 a checked property failed (a bound violation or an
invalid behavior where validity is required), 2 usage or input errors.  All
randomness is seeded; identical invocations produce identical bytes on
stdout.  The default tolerance (1e-9) can be overridden per run with
--tolerance or the QUASIBELL_TOLERANCE environment variable.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

from .core import DEFAULT_TOLERANCE, assemble_behavior, validate_behavior
from .constructions import chained_saturating_model
from .inequalities import check_quasi_bell
from .oracle import (
    classical_bound_bruteforce,
    max_score_lp,
    min_negativity_lp,
    signed_sample,
)
from .serialization import (
    ModelFormatError,
    behavior_to_csv,
    load_behavior_csv,
    load_model,
    model_to_json_dict,
)
from .witnesses import witness_chained, witness_chsh

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_USAGE = 2

FORMATS = ("json", "csv", "pretty-table")


@dataclass(frozen=True)
class RunConfig:
    """Parsed invocation: one command plus its run-wide knobs."""

    command: str
    tolerance: float
    seed: int | None
    output_format: str
    input_path: Path | None
    output_path: Path | None

    def __post_init__(self) -> None:
        if self.tolerance <= 0:
            raise ValueError("tolerance must be positive")
        if self.output_format not in FORMATS:
            raise ValueError(f"unknown output format {self.output_format!r}")


def _default_tolerance() -> float:
    raw = os.environ.get("QUASIBELL_TOLERANCE")
    if raw is None:
        return DEFAULT_TOLERANCE
    try:
        value = float(raw)
    except ValueError as exc:
        raise ValueError(f"QUASIBELL_TOLERANCE={raw!r} is not a number") from exc
    return value


def _emit(text: str, output: Path | None) -> None:
    if output is None:
        sys.stdout.write(text)
        if not text.endswith("\n"):
            sys.stdout.write("\n")
    else:
        output.write_text(text if text.endswith("\n") else text + "\n")


def _json_text(payload) -> str:
    return json.dumps(payload, indent=2, sort_keys=True)


def _pretty_table(behavior) -> str:
    """Rows x_A x_B against the four outcome columns --, -+, +-, ++."""
    header = ["x_A x_B", "--", "-+", "+-", "++"]
    rows = []
    for (x_a, x_b) in behavior.setting_pairs():
        row = behavior.table[(x_a, x_b)]
        rows.append([f"{x_a}{x_b}", *(f"{float(v):.6g}" for v in row)])
    widths = [max(len(header[i]), *(len(r[i]) for r in rows)) for i in range(5)]
    lines = ["  ".join(h.rjust(widths[i]) for i, h in enumerate(header))]
    for r in rows:
        lines.append("  ".join(cell.rjust(widths[i]) for i, cell in enumerate(r)))
    return "\n".join(lines) + "\n"


def _parse_negativity(text: str):
    """Accept decimals and fractions like 1/2; fraction input keeps exact form."""
    try:
        if "/" in text:
            return Fraction(text)
        return float(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(f"bad negativity value {text!r}") from exc


def _parse_budget(text: str) -> float:
    if text.lower() in ("inf", "infinity"):
        return math.inf
    try:
        value = float(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"bad budget {text!r}") from exc
    if value < 0:
        raise argparse.ArgumentTypeError("budget must be non-negative or inf")
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="quasibell",
        description="Bell models over signed hidden-variable mixtures: "
        "scores, negativity witnesses, saturating families, and oracles.",
    )
    parser.add_argument("--tolerance", type=float, default=None, help="numeric tolerance")
    commands = parser.add_subparsers(dest="command", required=True)

    build = commands.add_parser("build", help="write a saturating model as JSON")
    build.add_argument("--n", type=int, default=2, help="settings per party")
    build.add_argument("--negativity", type=_parse_negativity, required=True)
    build.add_argument("--force", action="store_true", help="allow budgets outside [0, 2]")
    build.add_argument("--output", type=Path, default=None)

    saturate = commands.add_parser("saturate", help="saturating model report")
    saturate.add_argument("--n", type=int, default=2)
    saturate.add_argument("--negativity", type=_parse_negativity, required=True)
    saturate.add_argument("--format", choices=FORMATS, default="json")
    saturate.add_argument("--output", type=Path, default=None)

    verify = commands.add_parser("verify", help="check score <= bound for a model file")
    verify.add_argument("--model", type=Path, required=True)
    verify.add_argument("--n", type=int, default=None, help="chain length (default: settings)")
    verify.add_argument("--output", type=Path, default=None)

    export = commands.add_parser("export", help="write a model's behavior as CSV")
    export.add_argument("--model", type=Path, required=True)
    export.add_argument("--output", type=Path, default=None)

    sample = commands.add_parser("sample", help="sign-weighted sampling of a model")
    sample.add_argument("--model", type=Path, required=True)
    sample.add_argument("--shots", type=int, default=100_000)
    sample.add_argument("--seed", type=int, default=0)
    sample.add_argument("--output", type=Path, default=None)

    oracle = commands.add_parser("oracle", help="brute-force and LP oracles")
    oracle_sub = oracle.add_subparsers(dest="oracle_command", required=True)

    classical = oracle_sub.add_parser("classical-bound", help="exhaustive classical maximum")
    classical.add_argument("--n", type=int, required=True)
    classical.add_argument("--output", type=Path, default=None)

    lp = oracle_sub.add_parser("lp", help="max score under a negativity budget")
    lp.add_argument("--n", type=int, required=True)
    lp.add_argument("--budget", type=_parse_budget, default=math.inf)
    lp.add_argument("--output", type=Path, default=None)

    min_neg = oracle_sub.add_parser("min-neg", help="minimal negative mass for a behavior CSV")
    min_neg.add_argument("--behavior", type=Path, required=True)
    min_neg.add_argument("--output", type=Path, default=None)

    osample = oracle_sub.add_parser("sample", help="alias of the top-level sample command")
    osample.add_argument("--model", type=Path, required=True)
    osample.add_argument("--shots", type=int, default=100_000)
    osample.add_argument("--seed", type=int, default=0)
    osample.add_argument("--output", type=Path, default=None)

    return parser


def _cmd_build(args, tol: float) -> int:
    model = chained_saturating_model(args.n, args.negativity, force=args.force)
    _emit(_json_text(model_to_json_dict(model)), args.output)
    return EXIT_OK


def _cmd_saturate(args, tol: float) -> int:
    model = chained_saturating_model(args.n, args.negativity)
    behavior = assemble_behavior(model, tolerance=tol)
    if args.format == "csv":
        _emit(behavior_to_csv(behavior), args.output)
        return EXIT_OK
    if args.format == "pretty-table":
        _emit(_pretty_table(behavior), args.output)
        return EXIT_OK
    report = check_quasi_bell(model, args.n, tol=tol)
    if args.n == 2:
        witness = witness_chsh(model, behavior).to_json_dict()
    else:
        witness = witness_chained(model, args.n, behavior).to_json_dict()
    payload = {
        "model": model_to_json_dict(model),
        "behavior": {f"{xa},{xb}": [float(v) for v in row]
                     for (xa, xb), row in sorted(behavior.table.items())},
        "report": report.to_json_dict(),
        "witness": witness,
        "validity": validate_behavior(behavior, tol).to_json_dict(),
    }
    _emit(_json_text(payload), args.output)
    return EXIT_OK


def _cmd_verify(args, tol: float) -> int:
    model = load_model(args.model)
    n = args.n if args.n is not None else model.n_settings
    report = check_quasi_bell(model, n, tol=tol)
    behavior = assemble_behavior(model, tolerance=tol)
    payload = report.to_json_dict()
    payload["validity"] = validate_behavior(behavior, tol).to_json_dict()
    _emit(_json_text(payload), args.output)
    return EXIT_OK if report.holds else EXIT_CHECK_FAILED


def _cmd_export(args, tol: float) -> int:
    model = load_model(args.model)
    behavior = assemble_behavior(model, tolerance=tol)
    _emit(behavior_to_csv(behavior), args.output)
    return EXIT_OK


def _cmd_sample(args, tol: float) -> int:
    model = load_model(args.model)
    behavior = assemble_behavior(model, tolerance=tol)
    validity = validate_behavior(behavior, tol)
    if not validity.is_valid:
        sys.stderr.write(_json_text({"error": "model behavior is invalid; sampling refused",
                                     "validity": validity.to_json_dict()}) + "\n")
        return EXIT_CHECK_FAILED
    estimate = signed_sample(model, shots=args.shots, seed=args.seed)
    _emit(_json_text(estimate.to_json_dict()), args.output)
    return EXIT_OK


def _cmd_oracle(args, tol: float) -> int:
    if args.oracle_command == "classical-bound":
        bound = classical_bound_bruteforce(args.n)
        _emit(_json_text({"n": args.n, "classical_bound": bound}), args.output)
        return EXIT_OK
    if args.oracle_command == "lp":
        result = max_score_lp(args.n, args.budget)
        payload = result.to_json_dict()
        payload["budget"] = None if math.isinf(args.budget) else args.budget
        _emit(_json_text(payload), args.output)
        return EXIT_OK
    if args.oracle_command == "min-neg":
        target = load_behavior_csv(args.behavior, tolerance=tol)
        result = min_negativity_lp(target)
        _emit(_json_text(result.to_json_dict()), args.output)
        return EXIT_OK
    if args.oracle_command == "sample":
        return _cmd_sample(args, tol)
    raise AssertionError(f"unhandled oracle command {args.oracle_command!r}")


_HANDLERS = {
    "build": _cmd_build,
    "saturate": _cmd_saturate,
    "verify": _cmd_verify,
    "export": _cmd_export,
    "sample": _cmd_sample,
    "oracle": _cmd_oracle,
}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        tolerance = args.tolerance if args.tolerance is not None else _default_tolerance()
        config = RunConfig(
            command=args.command,
            tolerance=tolerance,
            seed=getattr(args, "seed", None),
            output_format=getattr(args, "format", "json"),
            input_path=getattr(args, "model", None) or getattr(args, "behavior", None),
            output_path=getattr(args, "output", None),
        )
    except ValueError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_USAGE
    try:
        return _HANDLERS[config.command](args, config.tolerance)
    except FileNotFoundError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_USAGE
    except json.JSONDecodeError as exc:
        sys.stderr.write(
            f"error: malformed model JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}\n"
        )
        return EXIT_USAGE
    except (ModelFormatError, ValueError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_USAGE


def entrypoint() -> None:
    raise SystemExit(main())


if __name__ == "__main__":
    entrypoint()
