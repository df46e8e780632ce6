"""
Pydantic models for evaluation input lines and reports

Input lines are validated against PrimingRecordLine before any tree is
parsed; reports serialize with a fixed field order so JSON output is
byte-stable.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from pydantic import BaseModel, ConfigDict, Field

from ..spi import Direction, SpiParams, SpiResult
from ..syntree import SyntaxTree
from ..treekernel import KernelParams

SIMILARITY_FIELDS = ("sentence_similarity", "image_similarity")
TREE_FIELDS = ("prime_pos_tree", "prime_neg_tree", "predicted_tree")


class EvalHarnessError(Exception):
    """Base evaluation harness error"""

    pass


class EmptyInput(EvalHarnessError, ValueError):
    """Operation needs at least one record, result or sentence"""

    pass


class Condition(str, Enum):
    PRIMED = "primed"
    UNPRIMED = "unprimed"


class PrimingRecordLine(BaseModel):
    """One JSONL dataset line as stored on disk"""

    model_config = ConfigDict(extra="ignore", frozen=True)

    id: str = Field(..., description="Record identifier")
    type: str = Field(..., description="Declared structure type")
    prime_pos_tree: str = Field(..., description="Positive prime, bracketed")
    prime_neg_tree: str = Field(..., description="Negative prime, bracketed")
    predicted_tree: str = Field(..., description="Predicted sentence, bracketed")
    sentence_similarity: float | None = Field(
        None, ge=0.0, le=1.0, allow_inf_nan=False
    )
    image_similarity: float | None = Field(None, ge=0.0, le=1.0, allow_inf_nan=False)
    condition: Condition = Field(Condition.PRIMED, description="Priming condition")


@dataclass(frozen=True, slots=True)
class PrimingRecord:
    id: str
    structure_type: str
    prime_pos_tree: SyntaxTree
    prime_neg_tree: SyntaxTree
    predicted_tree: SyntaxTree
    sentence_similarity: float | None = None
    image_similarity: float | None = None
    condition: Condition = Condition.PRIMED
    line_no: int | None = None

    def similarity(self, field: str) -> float | None:
        if field not in SIMILARITY_FIELDS:
            raise ValueError(f"unknown similarity field {field!r}")
        value: float | None = getattr(self, field)
        return value


class ReportConfig(BaseModel):
    """Resolved kernel and SPI parameters echoed into every report"""

    model_config = ConfigDict(frozen=True, populate_by_name=True)

    kernel_lambda: float = Field(..., alias="lambda")
    mode: str
    gamma: float
    variant: str
    epsilon: float = 0.0

    @classmethod
    def from_params(
        cls, kparams: KernelParams, sparams: SpiParams, epsilon: float = 0.0
    ) -> ReportConfig:
        return cls(
            kernel_lambda=kparams.decay,
            mode=kparams.mode.value,
            gamma=sparams.gamma,
            variant=sparams.variant.value,
            epsilon=epsilon,
        )


class RecordScore(BaseModel):
    model_config = ConfigDict(frozen=True)

    id: str
    type: str
    d_p: float
    d_n: float
    spi: float
    direction: Direction
    condition: Condition = Condition.PRIMED

    @classmethod
    def from_result(cls, record: PrimingRecord, result: SpiResult) -> RecordScore:
        return cls(
            id=record.id,
            type=record.structure_type,
            d_p=result.d_p,
            d_n=result.d_n,
            spi=result.spi,
            direction=result.direction,
            condition=record.condition,
        )

    def to_result(self) -> SpiResult:
        return SpiResult(
            d_p=self.d_p, d_n=self.d_n, spi=self.spi, direction=self.direction
        )


class GroupSummary(BaseModel):
    """Aggregate over one group of records (a type, a family, or everything)"""

    model_config = ConfigDict(frozen=True)

    n: int = Field(..., ge=0)
    mean_spi: float
    positive_rate: float = Field(..., ge=0.0, le=1.0)


class Correlation(BaseModel):
    model_config = ConfigDict(frozen=True)

    r: float = Field(..., ge=-1.0, le=1.0)
    p: float = Field(..., ge=0.0, le=1.0)
    n: int
    method: str = "t"


class CorrelationReport(BaseModel):
    """Similarity-vs-SPI correlations; a field without usable values is None"""

    model_config = ConfigDict(frozen=True)

    sentence: Correlation | None = None
    image: Correlation | None = None
    skipped: dict[str, int] = Field(default_factory=dict)


class EvalReport(BaseModel):
    model_config = ConfigDict(frozen=True)

    config: ReportConfig
    per_record: list[RecordScore] = Field(default_factory=list)
    per_type: dict[str, GroupSummary] = Field(default_factory=dict)
    per_family: dict[str, GroupSummary] = Field(default_factory=dict)
    overall: GroupSummary | None = None
    per_condition: dict[str, dict[str, GroupSummary]] | None = None
    priming_effect: dict[str, float] | None = None
    correlations: CorrelationReport | None = None


class CorpusStats(BaseModel):
    model_config = ConfigDict(frozen=True)

    sentence_count: int
    token_count: int
    word_type_count: int
    ttr: float = Field(..., gt=0.0, le=1.0)
    mean_tokens_per_sentence: float
    token_range: tuple[int, int]
    mean_perplexity: float | None = None
    perplexity_range: tuple[float, float] | None = None
