"""
Report serialization

JSON is the model dump in declared field order, two-space indented, with a
trailing newline; loading and re-emitting it reproduces the same bytes. CSV
carries one row per record, a blank line, then the per-type summary block.
"""

from __future__ import annotations

import csv
import io
import json
from enum import Enum

from .models import EvalReport

RECORD_HEADER = ("id", "type", "d_p", "d_n", "spi", "direction")
SUMMARY_HEADER = ("type", "n", "mean_spi", "positive_rate")


class ReportFormat(str, Enum):
    JSON = "json"
    CSV = "csv"


def _json(report: EvalReport) -> bytes:
    payload = report.model_dump(mode="json", by_alias=True)
    return (json.dumps(payload, indent=2, ensure_ascii=False) + "\n").encode("utf-8")


def _config_comment(report: EvalReport) -> str:
    config = report.config.model_dump(by_alias=True)
    return "# " + " ".join(f"{key}={value}" for key, value in config.items())


def _csv(report: EvalReport) -> bytes:
    buffer = io.StringIO()
    buffer.write(_config_comment(report) + "\n")
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(RECORD_HEADER)
    for score in report.per_record:
        writer.writerow(
            [
                score.id,
                score.type,
                repr(score.d_p),
                repr(score.d_n),
                repr(score.spi),
                score.direction.value,
            ]
        )
    buffer.write("\n")
    writer.writerow(SUMMARY_HEADER)
    for name, summary in report.per_type.items():
        writer.writerow(
            [name, summary.n, repr(summary.mean_spi), repr(summary.positive_rate)]
        )
    return buffer.getvalue().encode("utf-8")


def emit_report(
    report: EvalReport, fmt: ReportFormat | str = ReportFormat.JSON
) -> bytes:
    """Serialize a report as UTF-8 JSON or CSV"""
    if ReportFormat(fmt) is ReportFormat.CSV:
        return _csv(report)
    return _json(report)


def load_report(data: bytes | str) -> EvalReport:
    return EvalReport.model_validate_json(data)
