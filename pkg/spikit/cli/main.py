"""
spikit command-line entry point

Usage:
    spikit kernel A.tree B.tree [--lambda 1.0] [--mode delexicalized] [--json]
    spikit spi PP.tree NP.tree PS.tree [--gamma 3] [--variant tanh] [--json]
    spikit eval dataset.jsonl [--format json|csv] [--out report.json] [--workers 4]
    spikit gen bindings.txt [--out pairs.jsonl] [--scores ppl.txt] [--swap-roles]
    spikit sweep [--x-values=-1,0,1] [--gamma-grid 0.1,3,10] [--out sweep.csv]
    spikit stats corpus.txt [--perplexities ppl.txt] [--json]
    spikit correlate dataset.jsonl [--permutations 1000] [--scatter-out points.csv]

Exit codes: 0 success, 2 input error, 3 configuration error.
"""

from __future__ import annotations

import argparse
import sys
from collections.abc import Callable, Sequence
from pathlib import Path

import structlog
from pydantic import ValidationError

from .. import __version__
from ..config import SpikitSettings
from ..evalharness import EvalHarnessError
from ..logconfig import configure_logging
from ..primegen import DEFAULT_PERPLEXITY_THRESHOLD, PrimeGenError
from ..spi import SpiError, Variant
from ..syntree import TreeSyntaxError
from ..treekernel import InvalidKernelParams, KernelError, Mode
from .commands import (
    EXIT_CONFIG,
    EXIT_INPUT,
    CommandError,
    cmd_correlate,
    cmd_eval,
    cmd_gen,
    cmd_kernel,
    cmd_spi,
    cmd_stats,
    cmd_sweep,
)

log = structlog.get_logger(__name__)

Handler = Callable[[argparse.Namespace, SpikitSettings], int]

CONFIG_ERRORS: tuple[type[Exception], ...] = (
    InvalidKernelParams,
    SpiError,
    ValidationError,
)
INPUT_ERRORS: tuple[type[Exception], ...] = (
    TreeSyntaxError,
    KernelError,
    PrimeGenError,
    EvalHarnessError,
    OSError,
)


def _shared_flags() -> argparse.ArgumentParser:
    shared = argparse.ArgumentParser(add_help=False)
    shared.add_argument(
        "--lambda", dest="kernel_lambda", type=float, help="Kernel decay in (0, 1]"
    )
    shared.add_argument("--mode", choices=[m.value for m in Mode], help="Kernel mode")
    shared.add_argument("--gamma", type=float, help="SPI scaling factor in [0.1, 10]")
    shared.add_argument(
        "--variant", choices=[v.value for v in Variant], help="SPI map variant"
    )
    shared.add_argument("--epsilon", type=float, help="Neutral band for direction")
    shared.add_argument("--json", action="store_true", help="Machine-readable output")
    shared.add_argument("--out", type=Path, help="Write output to a file")
    return shared


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="spikit", description="Structural priming evaluation toolkit"
    )
    parser.add_argument("--version", action="version", version=f"spikit {__version__}")
    parser.add_argument("--log-level", help="Log level (default WARNING)")
    parser.add_argument(
        "--log-json", action="store_true", default=None, help="JSON log lines"
    )
    sub = parser.add_subparsers(dest="command", required=True)
    shared = _shared_flags()

    kernel = sub.add_parser("kernel", parents=[shared], help="Tree kernel K, K_norm, d")
    kernel.add_argument("tree_a", type=Path)
    kernel.add_argument("tree_b", type=Path)
    kernel.set_defaults(handler=cmd_kernel)

    spi = sub.add_parser("spi", parents=[shared], help="SPI for one priming probe")
    spi.add_argument("positive", type=Path, help="Positive prime tree")
    spi.add_argument("negative", type=Path, help="Negative prime tree")
    spi.add_argument("predicted", type=Path, help="Predicted sentence tree")
    spi.set_defaults(handler=cmd_spi)

    evaluate = sub.add_parser("eval", parents=[shared], help="Evaluate a dataset")
    evaluate.add_argument("dataset", type=Path)
    evaluate.add_argument("--format", choices=["json", "csv"], default="json")
    evaluate.add_argument("--workers", type=int, help="Scoring processes")
    evaluate.add_argument(
        "--metrics-out", type=Path, help="Write Prometheus metrics to a file"
    )
    evaluate.set_defaults(handler=cmd_eval)

    gen = sub.add_parser("gen", parents=[shared], help="Generate prime pairs")
    gen.add_argument("bindings", type=Path)
    gen.add_argument("--swap-roles", action="store_true", help="Second template leads")
    gen.add_argument("--scores", type=Path, help="Perplexity per generated sentence")
    gen.add_argument("--threshold", type=float, default=DEFAULT_PERPLEXITY_THRESHOLD)
    gen.set_defaults(handler=cmd_gen)

    sweep = sub.add_parser("sweep", parents=[shared], help="SPI over x and gamma")
    sweep.add_argument("--x-values", help="Comma-separated differences in [-1, 1]")
    sweep.add_argument("--gamma-grid", help="Comma-separated gamma values")
    sweep.set_defaults(handler=cmd_sweep)

    stats = sub.add_parser("stats", parents=[shared], help="Corpus statistics")
    stats.add_argument("corpus", type=Path, help="Sentences per line, or dataset JSONL")
    stats.add_argument("--perplexities", type=Path, help="One score per sentence")
    stats.set_defaults(handler=cmd_stats)

    corr = sub.add_parser("correlate", parents=[shared], help="Similarity vs SPI")
    corr.add_argument("dataset", type=Path)
    corr.add_argument("--permutations", type=int, default=0)
    corr.add_argument("--seed", type=int, default=0)
    corr.add_argument("--sample", type=int, default=1000, help="Scatter sample size")
    corr.add_argument("--scatter-out", type=Path, help="Write sampled points as CSV")
    corr.add_argument("--workers", type=int, help="Scoring processes")
    corr.set_defaults(handler=cmd_correlate)

    return parser


def resolve_settings(args: argparse.Namespace) -> SpikitSettings:
    """Environment and .env first, then any flag that was given"""
    return SpikitSettings().with_overrides(
        kernel_lambda=args.kernel_lambda,
        mode=args.mode,
        gamma=args.gamma,
        variant=args.variant,
        epsilon=args.epsilon,
        workers=getattr(args, "workers", None),
        log_level=args.log_level,
        log_json=args.log_json,
    )


def _fail(message: str, code: int) -> int:
    sys.stderr.write(f"spikit: {message}\n")
    return code


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)

    try:
        settings = resolve_settings(args)
        configure_logging(settings.log_level, settings.log_json)
        # range checks on lambda and gamma happen here
        settings.kernel_params()
        settings.spi_params()
    except (ValidationError, ValueError) as exc:
        return _fail(f"configuration error: {exc}", EXIT_CONFIG)

    handler: Handler = args.handler
    try:
        return handler(args, settings)
    except CommandError as exc:
        return _fail(exc.message, exc.exit_code)
    except CONFIG_ERRORS as exc:
        return _fail(f"configuration error: {exc}", EXIT_CONFIG)
    except INPUT_ERRORS as exc:
        log.debug("command_failed", command=args.command, error=repr(exc))
        return _fail(str(exc), EXIT_INPUT)


if __name__ == "__main__":
    sys.exit(main())
