"""
Batch SPI evaluation, correlation analysis and corpus statistics
"""

from .dataset import (
    DatasetLineError,
    InvalidTree,
    LoadedDataset,
    MalformedLine,
    MissingField,
    load_dataset,
    parse_record,
)
from .evaluator import (
    correlate,
    correlation_sample,
    evaluate,
    preservation_rate,
    similarity_pairs,
)
from .models import (
    SIMILARITY_FIELDS,
    Condition,
    CorpusStats,
    Correlation,
    CorrelationReport,
    EmptyInput,
    EvalHarnessError,
    EvalReport,
    GroupSummary,
    PrimingRecord,
    PrimingRecordLine,
    RecordScore,
    ReportConfig,
)
from .monitoring import EvalMetrics
from .report import ReportFormat, emit_report, load_report
from .stats import (
    LengthMismatch,
    PearsonResult,
    TooFewPoints,
    ZeroVariance,
    corpus_stats,
    pearson,
    tokenize,
)

__all__ = [
    "SIMILARITY_FIELDS",
    "Condition",
    "CorpusStats",
    "Correlation",
    "CorrelationReport",
    "DatasetLineError",
    "EmptyInput",
    "EvalHarnessError",
    "EvalMetrics",
    "EvalReport",
    "GroupSummary",
    "InvalidTree",
    "LengthMismatch",
    "LoadedDataset",
    "MalformedLine",
    "MissingField",
    "PearsonResult",
    "PrimingRecord",
    "PrimingRecordLine",
    "RecordScore",
    "ReportConfig",
    "ReportFormat",
    "TooFewPoints",
    "ZeroVariance",
    "correlate",
    "correlation_sample",
    "corpus_stats",
    "emit_report",
    "evaluate",
    "load_dataset",
    "load_report",
    "parse_record",
    "pearson",
    "preservation_rate",
    "similarity_pairs",
    "tokenize",
]
