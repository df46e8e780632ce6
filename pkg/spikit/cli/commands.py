"""
Subcommand handlers

Each handler takes the parsed arguments and resolved settings and returns an
exit code. Library errors propagate; main() maps them to exit codes.
"""

from __future__ import annotations

import argparse
import json
import sys
from collections.abc import Sequence
from pathlib import Path
from typing import Any

import structlog

from ..config import SpikitSettings
from ..evalharness import (
    SIMILARITY_FIELDS,
    CorrelationReport,
    EmptyInput,
    EvalMetrics,
    EvalReport,
    PrimingRecord,
    TooFewPoints,
    correlate,
    correlation_sample,
    corpus_stats,
    emit_report,
    evaluate,
    load_dataset,
)
from ..primegen import (
    GeneratedRecord,
    GeneratedSentence,
    MissingSlot,
    PrimeGenError,
    filter_by_perplexity,
    generate_pair,
    read_bindings,
)
from ..spi import (
    default_gamma_grid,
    default_x_values,
    gamma_sweep,
    spi_score,
    write_sweep_csv,
)
from ..syntree import SyntaxTree, TreeSyntaxError, read_tree_file, validate
from ..treekernel import kernel_value

log = structlog.get_logger(__name__)

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_CONFIG = 3

MAX_DIAGNOSTICS = 10


class CommandError(Exception):
    """Handled failure with a user-facing message and exit code"""

    def __init__(self, message: str, exit_code: int = EXIT_INPUT):
        self.message = message
        self.exit_code = exit_code
        super().__init__(message)


def _write(text: str, out: Path | None) -> None:
    if out is None:
        sys.stdout.write(text)
    else:
        out.write_text(text, encoding="utf-8")


def _write_bytes(data: bytes, out: Path | None) -> None:
    if out is None:
        sys.stdout.write(data.decode("utf-8"))
    else:
        out.write_bytes(data)


def _dump_json(payload: dict[str, Any]) -> str:
    return json.dumps(payload, indent=2) + "\n"


def _read_tree(path: Path) -> SyntaxTree:
    try:
        tree = read_tree_file(path)
    except TreeSyntaxError as exc:
        raise CommandError(f"{path}:{exc.line}:{exc.column}: {exc.message}") from exc
    violations = validate(tree)
    if violations:
        raise CommandError(f"{path}: invalid tree: {violations[0]}")
    return tree


def _load_records(
    path: Path, metrics: EvalMetrics | None = None
) -> list[PrimingRecord]:
    loaded = load_dataset(path, metrics)
    if loaded.errors:
        shown = loaded.errors[:MAX_DIAGNOSTICS]
        lines = [f"{path}: {error}" for error in shown]
        hidden = len(loaded.errors) - len(shown)
        if hidden > 0:
            lines.append(f"... and {hidden} more malformed lines")
        raise CommandError("\n".join(lines))
    if not loaded.records:
        raise CommandError(f"{path}: {EmptyInput('dataset has no records')}")
    return loaded.records


def cmd_kernel(args: argparse.Namespace, settings: SpikitSettings) -> int:
    """K, K_norm and d for two tree files"""
    tree_a = _read_tree(args.tree_a)
    tree_b = _read_tree(args.tree_b)
    value = kernel_value(tree_a, tree_b, settings.kernel_params())
    if args.json:
        payload = {
            "K": value.raw,
            "K_norm": value.normalized,
            "d": value.distance,
            "config": settings.kernel_params().as_dict(),
        }
        _write(_dump_json(payload), args.out)
    else:
        _write(
            f"K\t{value.raw!r}\n"
            f"K_norm\t{value.normalized:.6f}\n"
            f"d\t{value.distance:.6f}\n",
            args.out,
        )
    return EXIT_OK


def cmd_spi(args: argparse.Namespace, settings: SpikitSettings) -> int:
    positive = _read_tree(args.positive)
    negative = _read_tree(args.negative)
    predicted = _read_tree(args.predicted)
    result = spi_score(
        positive,
        negative,
        predicted,
        settings.kernel_params(),
        settings.spi_params(),
        settings.epsilon,
    )
    if args.json:
        payload = {
            "d_p": result.d_p,
            "d_n": result.d_n,
            "spi": result.spi,
            "direction": result.direction.value,
            "config": settings.echo(),
        }
        _write(_dump_json(payload), args.out)
    else:
        _write(
            f"d_p\t{result.d_p:.6f}\nd_n\t{result.d_n:.6f}\n"
            f"spi\t{result.spi:.6f}\ndirection\t{result.direction.value}\n",
            args.out,
        )
    return EXIT_OK


def _correlate_if_possible(
    report: EvalReport, records: Sequence[PrimingRecord]
) -> EvalReport:
    carried = (r.similarity(f) for r in records for f in SIMILARITY_FIELDS)
    if all(value is None for value in carried):
        return report
    try:
        return correlate(report, records)
    except TooFewPoints as exc:
        log.warning("correlation_skipped", reason=str(exc))
        return report


def _correlation_lines(correlations: CorrelationReport) -> list[str]:
    lines = []
    for field, value in zip(
        SIMILARITY_FIELDS, (correlations.sentence, correlations.image), strict=True
    ):
        skipped = correlations.skipped.get(field, 0)
        if value is None:
            lines.append(f"{field}\tomitted\tskipped={skipped}")
        else:
            lines.append(
                f"{field}\tr={value.r:.6f}\tp={value.p:.3e}\tn={value.n}"
                f"\tskipped={skipped}\tmethod={value.method}"
            )
    return lines


def _summary_payload(report: EvalReport) -> dict[str, Any]:
    payload: dict[str, Any] = {
        "config": report.config.model_dump(by_alias=True),
        "per_type": {
            name: {"n": s.n, "mean_spi": s.mean_spi, "positive_rate": s.positive_rate}
            for name, s in report.per_type.items()
        },
        "overall_mean_spi": report.overall.mean_spi if report.overall else None,
    }
    if report.correlations is not None:
        payload["correlations"] = report.correlations.model_dump()
    return payload


def _summary_text(report: EvalReport) -> str:
    lines = ["type\tn\tmean_spi\tpositive_rate"]
    for name, s in report.per_type.items():
        lines.append(f"{name}\t{s.n}\t{s.mean_spi:.6f}\t{s.positive_rate:.4f}")
    if report.overall is not None:
        lines.append(f"overall mean_spi\t{report.overall.mean_spi:.6f}")
    if report.correlations is not None:
        lines.extend(_correlation_lines(report.correlations))
    return "\n".join(lines) + "\n"


def cmd_eval(args: argparse.Namespace, settings: SpikitSettings) -> int:
    """Score a dataset; the report goes to --out (or stdout), the summary to stdout"""
    metrics = EvalMetrics() if args.metrics_out else None
    records = _load_records(args.dataset, metrics)
    report = evaluate(
        records,
        settings.kernel_params(),
        settings.spi_params(),
        epsilon=settings.epsilon,
        workers=settings.workers,
        metrics=metrics,
    )
    report = _correlate_if_possible(report, records)
    data = emit_report(report, args.format)

    if args.out is None:
        _write_bytes(data, None)
    else:
        _write_bytes(data, args.out)
        if args.json:
            _write(_dump_json(_summary_payload(report)), None)
        else:
            _write(_summary_text(report), None)
    if metrics is not None:
        metrics.write(args.metrics_out)
    return EXIT_OK


def _read_scores(path: Path) -> list[float]:
    scores: list[float] = []
    with open(path, encoding="utf-8") as handle:
        for line_no, raw in enumerate(handle, start=1):
            line = raw.strip()
            if not line:
                continue
            try:
                scores.append(float(line))
            except ValueError:
                message = f"{path}:{line_no}: not a number: {line!r}"
                raise CommandError(message) from None
    return scores


def cmd_gen(args: argparse.Namespace, settings: SpikitSettings) -> int:
    """Bindings file to generated prime pairs, one JSONL line per sentence"""
    sentences: list[GeneratedSentence] = []
    for record in read_bindings(args.bindings):
        try:
            pair = generate_pair(record.pair_type, record.bindings, args.swap_roles)
        except MissingSlot as exc:
            raise CommandError(
                f"{args.bindings}:{record.line_no}: missing slot {exc.slot!r}"
            ) from exc
        except PrimeGenError as exc:
            raise CommandError(f"{args.bindings}:{record.line_no}: {exc}") from exc
        sentences.extend(pair)

    if args.scores is not None:
        scores = _read_scores(args.scores)
        sentences, _ = filter_by_perplexity(sentences, scores, args.threshold)

    lines = [GeneratedRecord.from_sentence(s).to_json_line() + "\n" for s in sentences]
    _write("".join(lines), args.out)
    log.info("pairs_generated", sentences=len(sentences))
    return EXIT_OK


def _float_list(text: str) -> list[float]:
    try:
        return [float(part) for part in text.split(",") if part.strip()]
    except ValueError:
        message = f"not a comma-separated number list: {text!r}"
        raise CommandError(message, EXIT_CONFIG) from None


def cmd_sweep(args: argparse.Namespace, settings: SpikitSettings) -> int:
    """Plot-ready x,gamma,spi cross product"""
    x_values = _float_list(args.x_values) if args.x_values else default_x_values()
    grid = _float_list(args.gamma_grid) if args.gamma_grid else default_gamma_grid()
    rows = gamma_sweep(x_values, grid, settings.variant)
    if args.out is None:
        write_sweep_csv(rows, sys.stdout)
    else:
        with open(args.out, "w", encoding="utf-8", newline="") as handle:
            write_sweep_csv(rows, handle)
    return EXIT_OK


def _corpus_sentences(path: Path) -> list[str]:
    with open(path, encoding="utf-8") as handle:
        lines = [line.strip() for line in handle]
    lines = [line for line in lines if line]
    if not lines:
        raise CommandError(f"{path}: {EmptyInput('corpus is empty')}")
    if path.suffix == ".jsonl" or lines[0].startswith("{"):
        records = _load_records(path)
        return [
            " ".join(tree.leaves())
            for record in records
            for tree in (
                record.prime_pos_tree,
                record.prime_neg_tree,
                record.predicted_tree,
            )
        ]
    return lines


def cmd_stats(args: argparse.Namespace, settings: SpikitSettings) -> int:
    sentences = _corpus_sentences(args.corpus)
    perplexities = _read_scores(args.perplexities) if args.perplexities else None
    stats = corpus_stats(sentences, perplexities)
    if args.json:
        _write(_dump_json(stats.model_dump(mode="json")), args.out)
        return EXIT_OK
    lines = [
        f"sentence_count\t{stats.sentence_count}",
        f"token_count\t{stats.token_count}",
        f"word_type_count\t{stats.word_type_count}",
        f"ttr\t{stats.ttr:.4f}",
        f"mean_tokens_per_sentence\t{stats.mean_tokens_per_sentence:.2f}",
        f"token_range\t{stats.token_range[0]}-{stats.token_range[1]}",
    ]
    if stats.mean_perplexity is not None and stats.perplexity_range is not None:
        lines.append(f"mean_perplexity\t{stats.mean_perplexity:.2f}")
        low, high = stats.perplexity_range
        lines.append(f"perplexity_range\t{low:.2f}-{high:.2f}")
    _write("\n".join(lines) + "\n", args.out)
    return EXIT_OK


def cmd_correlate(args: argparse.Namespace, settings: SpikitSettings) -> int:
    """Evaluate a dataset and correlate each similarity field with SPI"""
    records = _load_records(args.dataset)
    report = evaluate(
        records,
        settings.kernel_params(),
        settings.spi_params(),
        epsilon=settings.epsilon,
        workers=settings.workers,
    )
    report = correlate(report, records, permutations=args.permutations, seed=args.seed)
    correlations = report.correlations
    assert correlations is not None

    if args.scatter_out is not None:
        rows = ["field,similarity,spi"]
        for field in SIMILARITY_FIELDS:
            sample = correlation_sample(report, records, field, args.sample, args.seed)
            for x, y in sample:
                rows.append(f"{field},{x!r},{y!r}")
        args.scatter_out.write_text("\n".join(rows) + "\n", encoding="utf-8")

    if args.json:
        payload = {
            "config": report.config.model_dump(by_alias=True),
            "correlations": correlations.model_dump(),
        }
        _write(_dump_json(payload), args.out)
        return EXIT_OK

    lines = _correlation_lines(correlations)
    _write("\n".join(lines) + "\n", args.out)
    return EXIT_OK

