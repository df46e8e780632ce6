"""
Bindings file reader and generated-sentence JSONL records

Bindings format, one record per line:

    simple_dative | subject=A man | verb=tells | direct_object=stories | prep=to | indirect_object=people

The first field names an alternation pair or a structure type (which then
becomes the positive prime). Blank lines and lines starting with ``#`` are
skipped.
"""

from __future__ import annotations

from collections.abc import Iterator
from dataclasses import dataclass, field
from pathlib import Path

from pydantic import BaseModel, ConfigDict, Field

from .generator import GeneratedSentence
from .phrases import PrimeGenError

FIELD_SEPARATOR = "|"
COMMENT = "#"


class BindingsFormatError(PrimeGenError, ValueError):
    """Bindings line cannot be split into a type and slot=value fields"""

    def __init__(self, line_no: int, reason: str):
        self.line_no = line_no
        self.reason = reason
        super().__init__(f"line {line_no}: {reason}")


@dataclass(frozen=True, slots=True)
class BindingsRecord:
    line_no: int
    pair_type: str
    bindings: dict[str, str] = field(default_factory=dict)


def parse_bindings_line(line: str, line_no: int) -> BindingsRecord:
    head, *fields = (part.strip() for part in line.split(FIELD_SEPARATOR))
    if not head:
        raise BindingsFormatError(line_no, "missing structure type or pair name")
    bindings: dict[str, str] = {}
    for item in fields:
        if not item:
            continue
        name, sep, value = item.partition("=")
        name = name.strip()
        if not sep or not name:
            raise BindingsFormatError(line_no, f"expected slot=value, got {item!r}")
        if name in bindings:
            raise BindingsFormatError(line_no, f"slot {name!r} bound twice")
        bindings[name] = value.strip()
    return BindingsRecord(line_no=line_no, pair_type=head, bindings=bindings)


def read_bindings(path: str | Path) -> Iterator[BindingsRecord]:
    with open(path, encoding="utf-8") as handle:
        for line_no, raw in enumerate(handle, start=1):
            line = raw.strip()
            if not line or line.startswith(COMMENT):
                continue
            yield parse_bindings_line(line, line_no)


class GeneratedRecord(BaseModel):
    """One JSONL output line of the gen command"""

    model_config = ConfigDict(frozen=True)

    type: str = Field(..., description="Structure type id")
    role: str | None = Field(None, description="positive_prime or negative_prime")
    text: str = Field(..., description="Surface sentence")
    tree: str = Field(..., description="Bracketed syntax tree")

    @classmethod
    def from_sentence(cls, sentence: GeneratedSentence) -> GeneratedRecord:
        return cls(
            type=sentence.structure_type.value,
            role=sentence.role.value if sentence.role else None,
            text=sentence.text,
            tree=sentence.tree.to_bracketed(),
        )

    def to_json_line(self) -> str:
        return self.model_dump_json()
