"""
Syntactic Preservation Index

D_p and D_n are the normalized kernels of the predicted tree against the
positive and negative prime trees. Their difference x = D_p - D_n is mapped
into a signed score by a gamma-scaled exponential map:

    tanh     (e^{gx} - 1) / (e^{gx} + 1)    odd, bounded in (-1, 1)
    literal  (e^{gx} - 1) / (e^{-gx} + 1)   printed form, unbounded above

tanh is the default; literal exists so the two can be compared.
"""

from __future__ import annotations

import csv
import math
from collections.abc import Iterable, Sequence
from dataclasses import dataclass
from enum import Enum
from typing import TextIO

import numpy as np

from .syntree import SyntaxTree
from .treekernel import DEFAULT_PARAMS, KernelParams, normalized_kernel

GAMMA_MIN = 0.1
GAMMA_MAX = 10.0


class SpiError(Exception):
    """Base SPI error"""

    pass


class GammaOutOfRange(SpiError, ValueError):
    """Scaling factor outside [0.1, 10.0]"""

    pass


class InvalidDifference(SpiError, ValueError):
    """Kernel difference outside [-1, 1] or not finite"""

    pass


class Variant(str, Enum):
    TANH = "tanh"
    LITERAL = "literal"


class Direction(str, Enum):
    POSITIVE = "positive"
    NEGATIVE = "negative"
    NEUTRAL = "neutral"


@dataclass(frozen=True, slots=True)
class SpiParams:
    gamma: float = 3.0
    variant: Variant = Variant.TANH

    def __post_init__(self) -> None:
        if not math.isfinite(self.gamma) or not GAMMA_MIN <= self.gamma <= GAMMA_MAX:
            raise GammaOutOfRange(
                f"gamma must be in [{GAMMA_MIN}, {GAMMA_MAX}], got {self.gamma}"
            )
        try:
            object.__setattr__(self, "variant", Variant(self.variant))
        except ValueError:
            raise SpiError(f"unknown SPI variant {self.variant!r}") from None

    def as_dict(self) -> dict[str, float | str]:
        return {"gamma": self.gamma, "variant": self.variant.value}


@dataclass(frozen=True, slots=True)
class SpiResult:
    """Scores of one priming probe"""

    d_p: float
    d_n: float
    spi: float
    direction: Direction


@dataclass(frozen=True, slots=True)
class SweepRow:
    x: float
    gamma: float
    spi: float


DEFAULT_SPI_PARAMS = SpiParams()


def spi_from_difference(x: float, params: SpiParams = DEFAULT_SPI_PARAMS) -> float:
    """Map a kernel difference x to the signed index"""
    scaled = params.gamma * x
    if params.variant is Variant.TANH:
        # (e^{gx} - 1) / (e^{gx} + 1) == tanh(gx / 2), exactly odd in x
        return math.tanh(scaled / 2.0)
    return math.expm1(scaled) / (math.exp(-scaled) + 1.0)


def spi_value(d_p: float, d_n: float, params: SpiParams = DEFAULT_SPI_PARAMS) -> float:
    return spi_from_difference(d_p - d_n, params)


def classify(spi: float, epsilon: float = 0.0) -> Direction:
    """positive above epsilon, negative below -epsilon, neutral otherwise"""
    if spi > epsilon:
        return Direction.POSITIVE
    if spi < -epsilon:
        return Direction.NEGATIVE
    return Direction.NEUTRAL


def spi_score(
    positive: SyntaxTree,
    negative: SyntaxTree,
    predicted: SyntaxTree,
    kparams: KernelParams = DEFAULT_PARAMS,
    sparams: SpiParams = DEFAULT_SPI_PARAMS,
    epsilon: float = 0.0,
) -> SpiResult:
    """
    Score a predicted tree against its positive and negative primes

    Args:
        positive: positive prime tree (PP)
        negative: negative prime tree (NP)
        predicted: predicted sentence tree (PS)
    """
    d_p = normalized_kernel(positive, predicted, kparams)
    d_n = normalized_kernel(negative, predicted, kparams)
    spi = spi_value(d_p, d_n, sparams)
    return SpiResult(d_p=d_p, d_n=d_n, spi=spi, direction=classify(spi, epsilon))


def gamma_sweep(
    x_values: Iterable[float],
    gamma_grid: Iterable[float],
    variant: Variant | str = Variant.TANH,
) -> list[SweepRow]:
    """Full (x, gamma) cross product of SPI values, x-major"""
    grid = [SpiParams(gamma=float(g), variant=Variant(variant)) for g in gamma_grid]
    rows: list[SweepRow] = []
    for x in x_values:
        x = float(x)
        if not math.isfinite(x) or not -1.0 <= x <= 1.0:
            raise InvalidDifference(f"x must be in [-1, 1], got {x}")
        for params in grid:
            spi = spi_from_difference(x, params)
            rows.append(SweepRow(x=x, gamma=params.gamma, spi=spi))
    return rows


def default_gamma_grid(points: int = 100) -> list[float]:
    return [float(g) for g in np.linspace(GAMMA_MIN, GAMMA_MAX, points)]


def default_x_values() -> list[float]:
    return [float(x) for x in np.linspace(-1.0, 1.0, 9)]


def write_sweep_csv(rows: Sequence[SweepRow], stream: TextIO) -> None:
    writer = csv.writer(stream, lineterminator="\n")
    writer.writerow(["x", "gamma", "spi"])
    for row in rows:
        writer.writerow([repr(row.x), repr(row.gamma), repr(row.spi)])
