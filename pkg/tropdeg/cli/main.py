"""
tropdeg Command-Line Entry Point

Usage:
    tropdeg star --model models/tropical_line_star.json --k-min 5 --k-max 8
    tropdeg classes --model models/anti_diagonal_segment.json --k-max 4
    tropdeg verify --model models/anti_diagonal_segment.json --certificate models/certificates/tampered.json
    tropdeg refine --model models/cross_lines.json --r 3 --certificate-out refined.json

Exit codes: 0 success or verified, 1 refuted, 2 usage or parse error,
3 budget exceeded, 4 any other library error.
"""

from __future__ import annotations

import argparse
import json
import logging
import logging.config
import sys
from pathlib import Path
from typing import Iterable, Optional

import yaml
from dotenv import load_dotenv

from ..errors import BudgetExceededError, ModelParseError, PreconditionError, TropdegError
from ..settings import PROJECT_ROOT, get_settings
from .commands import COMMANDS, merge_options, run
from .model import model_digest, parse_model_text
from .report import FORMATS

logger = logging.getLogger("tropdeg.cli")

EXIT_OK = 0
EXIT_REFUTED = 1
EXIT_USAGE = 2
EXIT_BUDGET = 3
EXIT_ERROR = 4


def configure_logging(verbose: bool = False) -> None:
    """dictConfig from the configured YAML; console output goes to stderr."""

    path = get_settings().logging_config_path()
    try:
        config = yaml.safe_load(path.read_text(encoding="utf-8"))
        logging.config.dictConfig(config)
    except (OSError, yaml.YAMLError, ValueError) as exc:
        logging.basicConfig(level=logging.INFO, stream=sys.stderr, format="%(asctime)s [%(levelname)s] %(name)s: %(message)s")
        logging.getLogger(__name__).warning("Logging config %s not usable (%s); using basicConfig", path, exc)
    if verbose:
        package_logger = logging.getLogger("tropdeg")
        package_logger.setLevel(logging.DEBUG)
        for handler in package_logger.handlers or logging.getLogger().handlers:
            handler.setLevel(logging.DEBUG)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--model", required=True, type=Path, help="Model file (JSON or YAML).")
    common.add_argument("--k-min", type=int, help="Smallest k (defaults to the model's parameters).")
    common.add_argument("--k-max", type=int, help="Largest k (defaults to the model's parameters).")
    common.add_argument("--shape", choices=("simplex", "box"), help="Monomial grid shape.")
    common.add_argument("--r", type=int, help="Refinement factor for 'refine'.")
    common.add_argument("--budget", type=int, help="Node budget of the independence search.")
    common.add_argument("--seed", type=int, help="Seed for randomized checks.")
    common.add_argument("--workers", type=int, help="Threads for per-k sweeps (output is identical).")
    common.add_argument("--search-k-max", type=int, help="'star': run the exhaustive search up to this k.")
    common.add_argument("--trials", type=int, help="'oracle': number of random matrices.")
    common.add_argument("--certificate", type=Path, help="Certificate file for 'verify' and 'refine'.")
    common.add_argument("--certificate-out", type=Path, help="'refine': write the refined certificate here.")
    common.add_argument("--format", choices=FORMATS, help="Report format (defaults to the model's format).")
    common.add_argument("--decimals", type=int, help="Render rationals as decimals with this many digits.")
    common.add_argument("--output", type=Path, help="Write the report to a file instead of stdout.")
    common.add_argument("--verbose", action="store_true", help="Debug logging on stderr.")

    parser = argparse.ArgumentParser(prog="tropdeg", description="Tropical Hilbert functions and degrees, exactly.")
    subparsers = parser.add_subparsers(dest="command", required=True)
    for command in COMMANDS:
        subparsers.add_parser(command, parents=[common], help=f"Run '{command}' on a model.")
    return parser


def _load_certificate(path: Optional[Path]):
    if path is None:
        return None
    try:
        return json.loads(path.read_text(encoding="utf-8"))
    except OSError as exc:
        raise ModelParseError(f"cannot read certificate file: {exc.strerror or exc}", field=str(path)) from exc
    except json.JSONDecodeError as exc:
        raise ModelParseError(f"malformed certificate JSON: {exc.msg}", field=str(path), line=exc.lineno) from exc


def main(argv: Optional[Iterable[str]] = None) -> int:
    load_dotenv(PROJECT_ROOT / ".env", override=False)
    parser = build_parser()
    args = parser.parse_args(None if argv is None else list(argv))
    configure_logging(args.verbose)

    try:
        try:
            text = args.model.read_text(encoding="utf-8")
        except OSError as exc:
            raise ModelParseError(f"cannot read model file: {exc.strerror or exc}", field=str(args.model)) from exc
        model = parse_model_text(text, args.model.name)
        options = merge_options(
            model,
            {
                "k_min": args.k_min,
                "k_max": args.k_max,
                "shape": args.shape,
                "r": args.r,
                "budget": args.budget,
                "seed": args.seed,
                "workers": args.workers,
                "search_k_max": args.search_k_max,
                "trials": args.trials,
                "certificate": _load_certificate(args.certificate),
            },
        )
    except ModelParseError as exc:
        print(f"tropdeg: parse error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except PreconditionError as exc:
        print(f"tropdeg: usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE

    try:
        report = run(args.command, model, options, model_digest(text))
    except ModelParseError as exc:
        print(f"tropdeg: parse error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except PreconditionError as exc:
        print(f"tropdeg: usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except BudgetExceededError as exc:
        print(f"tropdeg: budget exceeded: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except TropdegError as exc:
        print(f"tropdeg: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_ERROR

    rendered = report.render(args.format or model.format, args.decimals)
    if args.output is not None:
        args.output.write_text(rendered, encoding="utf-8")
        logger.info("Report written to %s", args.output)
    else:
        sys.stdout.write(rendered)
    if args.certificate_out is not None and report.attachment is not None:
        args.certificate_out.write_text(json.dumps(report.attachment, indent=2) + "\n", encoding="utf-8")
        logger.info("Refined certificate written to %s", args.certificate_out)
    if report.refuted:
        print(f"tropdeg: refuted: {report.diagnostic}", file=sys.stderr)
        return EXIT_REFUTED
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
