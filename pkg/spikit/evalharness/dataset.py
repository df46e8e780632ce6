"""
JSONL priming dataset loader

Each line is validated with PrimingRecordLine, then its three trees are
parsed and structurally validated. Bad lines are collected with their line
numbers; good lines still load.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path

import structlog
from pydantic import ValidationError

from ..syntree import SyntaxTree, TreeSyntaxError, parse_bracketed, validate
from .models import TREE_FIELDS, EvalHarnessError, PrimingRecord, PrimingRecordLine
from .monitoring import EvalMetrics

log = structlog.get_logger(__name__)


class DatasetLineError(EvalHarnessError):
    """A dataset line was rejected"""

    kind = "error"

    def __init__(self, line_no: int, cause: str):
        self.line_no = line_no
        self.cause = cause
        super().__init__(f"line {line_no}: {cause}")


class MalformedLine(DatasetLineError):
    """Not JSON, or a field has the wrong type or range"""

    kind = "malformed"


class MissingField(DatasetLineError):
    kind = "missing_field"

    def __init__(self, line_no: int, field_name: str):
        self.field = field_name
        super().__init__(line_no, f"missing field {field_name!r}")


class InvalidTree(DatasetLineError):
    """A tree string does not parse or breaks a tree invariant"""

    kind = "invalid_tree"

    def __init__(self, line_no: int, field_name: str, violation: str):
        self.field = field_name
        self.violation = violation
        super().__init__(line_no, f"{field_name}: {violation}")


@dataclass
class LoadedDataset:
    """Records that loaded plus the line errors, both in file order"""

    records: list[PrimingRecord] = field(default_factory=list)
    errors: list[DatasetLineError] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.errors

    def raise_for_errors(self) -> None:
        if self.errors:
            raise self.errors[0]


def _line_error(line_no: int, exc: ValidationError) -> DatasetLineError:
    for error in exc.errors():
        if error["type"] == "missing":
            return MissingField(line_no, str(error["loc"][0]))
    first = exc.errors()[0]
    if first["type"] == "json_invalid":
        return MalformedLine(line_no, f"invalid JSON: {first['msg']}")
    where = ".".join(str(part) for part in first["loc"]) or "line"
    return MalformedLine(line_no, f"{where}: {first['msg']}")


def _tree(line_no: int, field_name: str, text: str) -> SyntaxTree:
    try:
        tree = parse_bracketed(text)
    except TreeSyntaxError as exc:
        raise InvalidTree(line_no, field_name, str(exc)) from exc
    violations = validate(tree)
    if violations:
        raise InvalidTree(line_no, field_name, str(violations[0]))
    return tree


def parse_record(line: str, line_no: int) -> PrimingRecord:
    """Parse one dataset line; raises a DatasetLineError subclass"""
    try:
        raw = PrimingRecordLine.model_validate_json(line)
    except ValidationError as exc:
        raise _line_error(line_no, exc) from exc
    trees = {name: _tree(line_no, name, getattr(raw, name)) for name in TREE_FIELDS}
    return PrimingRecord(
        id=raw.id,
        structure_type=raw.type,
        sentence_similarity=raw.sentence_similarity,
        image_similarity=raw.image_similarity,
        condition=raw.condition,
        line_no=line_no,
        **trees,
    )


def load_dataset(
    path: str | Path, metrics: EvalMetrics | None = None
) -> LoadedDataset:
    """
    Load a JSONL priming dataset

    Blank lines are skipped. An empty file yields an empty dataset; callers
    that need records raise EmptyInput.
    """
    loaded = LoadedDataset()
    with open(path, encoding="utf-8") as handle:
        for line_no, raw in enumerate(handle, start=1):
            line = raw.strip()
            if not line:
                continue
            try:
                loaded.records.append(parse_record(line, line_no))
            except DatasetLineError as exc:
                log.warning(
                    "dataset_line_rejected",
                    line=line_no,
                    kind=exc.kind,
                    cause=exc.cause,
                )
                loaded.errors.append(exc)
                if metrics is not None:
                    metrics.line_rejected(exc.kind)

    log.info(
        "dataset_loaded",
        path=str(path),
        records=len(loaded.records),
        errors=len(loaded.errors),
    )
    return loaded
