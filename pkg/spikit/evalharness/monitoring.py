"""Evaluation metrics module."""

from __future__ import annotations

from pathlib import Path

from prometheus_client import (  # type: ignore[import-untyped]
    CollectorRegistry,
    Counter,
    Histogram,
    generate_latest,
    write_to_textfile,
)


class EvalMetrics:
    """Prometheus metrics for one evaluation run, on a private registry."""

    def __init__(self, registry: CollectorRegistry | None = None) -> None:
        self.registry = registry or CollectorRegistry()
        self.records_scored = Counter(
            "spikit_records_scored_total",
            "Total priming records scored",
            ["type", "direction"],
            registry=self.registry,
        )
        self.scoring_duration = Histogram(
            "spikit_record_scoring_seconds",
            "Time taken to score one batch of records",
            registry=self.registry,
        )
        self.line_errors = Counter(
            "spikit_dataset_line_errors_total",
            "Dataset lines rejected while loading",
            ["kind"],
            registry=self.registry,
        )

    def record_scored(self, structure_type: str, direction: str) -> None:
        self.records_scored.labels(type=structure_type, direction=direction).inc()

    def line_rejected(self, kind: str) -> None:
        self.line_errors.labels(kind=kind).inc()

    def exposition(self) -> bytes:
        """Registry in Prometheus text format."""
        data: bytes = generate_latest(self.registry)
        return data

    def write(self, path: str | Path) -> None:
        write_to_textfile(str(path), self.registry)
