"""
Batch SPI evaluation

Records are scored independently, optionally in a process pool, and then
reduced in record-id order so the report never depends on worker count.
"""

from __future__ import annotations

import math
import time
from collections import defaultdict
from collections.abc import Callable, Iterable, Sequence
from concurrent.futures import ProcessPoolExecutor

import numpy as np
import structlog

from ..primegen import family_of
from ..spi import DEFAULT_SPI_PARAMS, Direction, SpiParams, SpiResult, spi_score
from ..treekernel import DEFAULT_PARAMS, KernelParams
from .models import (
    SIMILARITY_FIELDS,
    Condition,
    Correlation,
    CorrelationReport,
    EmptyInput,
    EvalHarnessError,
    EvalReport,
    GroupSummary,
    PrimingRecord,
    RecordScore,
    ReportConfig,
)
from .monitoring import EvalMetrics
from .stats import TooFewPoints, ZeroVariance, pearson

log = structlog.get_logger(__name__)

CORRELATION_KEYS = {"sentence_similarity": "sentence", "image_similarity": "image"}

ScoreJob = tuple[list[PrimingRecord], KernelParams, SpiParams, float]


def preservation_rate(results: Sequence[SpiResult]) -> float:
    """Fraction of results classified positive; neutral is not preserved"""
    if not results:
        raise EmptyInput("preservation rate of no results")
    positive = sum(1 for r in results if r.direction is Direction.POSITIVE)
    return positive / len(results)


def _score_chunk(job: ScoreJob) -> list[SpiResult]:
    records, kparams, sparams, epsilon = job
    return [
        spi_score(
            r.prime_pos_tree,
            r.prime_neg_tree,
            r.predicted_tree,
            kparams,
            sparams,
            epsilon,
        )
        for r in records
    ]


def _chunks(records: list[PrimingRecord], count: int) -> list[list[PrimingRecord]]:
    size = max(1, math.ceil(len(records) / count))
    return [records[i : i + size] for i in range(0, len(records), size)]


def _ordered(records: Iterable[PrimingRecord]) -> list[PrimingRecord]:
    # stable, so duplicate ids keep input order
    return sorted(records, key=lambda record: record.id)


def _summary(scores: Sequence[RecordScore]) -> GroupSummary:
    n = len(scores)
    return GroupSummary(
        n=n,
        mean_spi=math.fsum(s.spi for s in scores) / n,
        positive_rate=preservation_rate([s.to_result() for s in scores]),
    )


def _group(
    scores: Iterable[RecordScore], key: Callable[[RecordScore], str | None]
) -> dict[str, GroupSummary]:
    groups: defaultdict[str, list[RecordScore]] = defaultdict(list)
    for score in scores:
        name = key(score)
        if name is not None:
            groups[name].append(score)
    return {name: _summary(groups[name]) for name in sorted(groups)}


def _family_name(score: RecordScore) -> str | None:
    family = family_of(score.type)
    return family.value if family is not None else None


def _condition_blocks(
    scores: list[RecordScore],
) -> tuple[dict[str, dict[str, GroupSummary]] | None, dict[str, float] | None]:
    conditions = {score.condition for score in scores}
    if len(conditions) < 2:
        return None, None
    per_condition = {
        condition.value: _group(
            (s for s in scores if s.condition is condition), lambda s: s.type
        )
        for condition in sorted(conditions, key=lambda c: c.value)
    }
    primed = per_condition.get(Condition.PRIMED.value, {})
    unprimed = per_condition.get(Condition.UNPRIMED.value, {})
    effect = {
        name: primed[name].mean_spi - unprimed[name].mean_spi
        for name in sorted(primed.keys() & unprimed.keys())
    }
    return per_condition, effect


def evaluate(
    records: Sequence[PrimingRecord],
    kparams: KernelParams = DEFAULT_PARAMS,
    sparams: SpiParams = DEFAULT_SPI_PARAMS,
    epsilon: float = 0.0,
    workers: int = 1,
    metrics: EvalMetrics | None = None,
) -> EvalReport:
    """
    Score every record and aggregate per structure type

    Args:
        records: priming records (any order; the report is ordered by id)
        kparams: kernel decay and matching mode
        sparams: SPI gamma and variant
        epsilon: neutral band for direction classification
        workers: process count for scoring; the report does not depend on it
        metrics: optional Prometheus metrics to update

    Returns:
        EvalReport with per-record, per-type, per-family and overall blocks
    """
    if not records:
        raise EmptyInput("no records to evaluate")
    ordered = _ordered(records)

    started = time.perf_counter()
    if workers > 1 and len(ordered) > 1:
        jobs = [
            (chunk, kparams, sparams, epsilon) for chunk in _chunks(ordered, workers)
        ]
        with ProcessPoolExecutor(max_workers=workers) as pool:
            # map keeps job order
            results = [res for batch in pool.map(_score_chunk, jobs) for res in batch]
    else:
        results = _score_chunk((ordered, kparams, sparams, epsilon))
    elapsed = time.perf_counter() - started

    scores = [RecordScore.from_result(r, res) for r, res in zip(ordered, results)]
    if metrics is not None:
        metrics.scoring_duration.observe(elapsed)
        for score in scores:
            metrics.record_scored(score.type, score.direction.value)

    per_condition, priming_effect = _condition_blocks(scores)
    report = EvalReport(
        config=ReportConfig.from_params(kparams, sparams, epsilon),
        per_record=scores,
        per_type=_group(scores, lambda s: s.type),
        per_family=_group(scores, _family_name),
        overall=_summary(scores),
        per_condition=per_condition,
        priming_effect=priming_effect,
    )
    log.info(
        "records_evaluated",
        records=len(scores),
        types=len(report.per_type),
        workers=workers,
        seconds=round(elapsed, 3),
    )
    return report


def _aligned(
    report: EvalReport, records: Sequence[PrimingRecord]
) -> list[PrimingRecord]:
    ordered = _ordered(records)
    if [r.id for r in ordered] != [s.id for s in report.per_record]:
        raise EvalHarnessError("records do not match the report's per-record ids")
    return ordered


def similarity_pairs(
    report: EvalReport, records: Sequence[PrimingRecord], field: str
) -> tuple[list[float], list[float], int]:
    """(similarity, spi) columns for one field and the number of skipped records"""
    xs: list[float] = []
    ys: list[float] = []
    skipped = 0
    for record, score in zip(_aligned(report, records), report.per_record):
        value = record.similarity(field)
        if value is None:
            skipped += 1
            continue
        xs.append(value)
        ys.append(score.spi)
    return xs, ys, skipped


def correlate(
    report: EvalReport,
    records: Sequence[PrimingRecord],
    permutations: int = 0,
    seed: int | None = None,
) -> EvalReport:
    """
    Pearson correlation of each similarity field with SPI

    A field no record carries is omitted; its skip count is still reported.
    A field whose values or paired SPI scores are constant has no defined r
    and is omitted with a warning. Records missing a field never enter that
    field's correlation.

    Raises:
        TooFewPoints: a field has between one and two usable values
    """
    correlations: dict[str, Correlation | None] = {}
    skipped: dict[str, int] = {}
    for field in SIMILARITY_FIELDS:
        xs, ys, skip = similarity_pairs(report, records, field)
        skipped[field] = skip
        key = CORRELATION_KEYS[field]
        if not xs:
            correlations[key] = None
            continue
        if len(xs) < 3:
            raise TooFewPoints(f"{field}: only {len(xs)} records carry a value")
        try:
            result = pearson(xs, ys, permutations=permutations, seed=seed)
        except ZeroVariance as exc:
            log.warning("correlation_skipped", field=field, reason=str(exc))
            correlations[key] = None
            continue
        correlations[key] = Correlation(
            r=result.r, p=result.p, n=result.n, method=result.method
        )
        log.info(
            "similarity_correlated",
            field=field,
            r=result.r,
            p=result.p,
            n=result.n,
            skipped=skip,
        )

    block = CorrelationReport(
        sentence=correlations["sentence"], image=correlations["image"], skipped=skipped
    )
    return report.model_copy(update={"correlations": block})


def correlation_sample(
    report: EvalReport,
    records: Sequence[PrimingRecord],
    field: str,
    size: int = 1000,
    seed: int | None = 0,
) -> list[tuple[float, float]]:
    """Seeded sample of (similarity, spi) points in record order, for scatter plots"""
    xs, ys, _ = similarity_pairs(report, records, field)
    if len(xs) <= size:
        return list(zip(xs, ys))
    rng = np.random.default_rng(seed)
    picked = np.sort(rng.choice(len(xs), size=size, replace=False))
    return [(xs[i], ys[i]) for i in picked]
