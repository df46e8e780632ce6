"""
Pearson correlation and corpus statistics
"""

from __future__ import annotations

import math
import string
from collections.abc import Iterable, Sequence
from dataclasses import dataclass

import numpy as np
from scipy.special import betainc

from .models import CorpusStats, EmptyInput, EvalHarnessError

MIN_POINTS = 3
EDGE_PUNCTUATION = string.punctuation + "‘’“”"


class LengthMismatch(EvalHarnessError, ValueError):
    """Paired arrays differ in length"""

    pass


class ZeroVariance(EvalHarnessError, ValueError):
    """An input array is constant"""

    pass


class TooFewPoints(EvalHarnessError, ValueError):
    """Fewer than three usable pairs"""

    pass


@dataclass(frozen=True, slots=True)
class PearsonResult:
    r: float
    p: float
    n: int
    method: str = "t"


def _pearson_r(x: np.ndarray, y: np.ndarray) -> float:
    dx = x - x.mean()
    dy = y - y.mean()
    sxy = math.fsum(dx * dy)
    sxx = math.fsum(dx * dx)
    syy = math.fsum(dy * dy)
    return max(-1.0, min(1.0, sxy / math.sqrt(sxx * syy)))


def t_test_p(r: float, n: int) -> float:
    """Two-tailed p for H0: rho = 0, from the Student-t with n - 2 df"""
    if abs(r) >= 1.0:
        return 0.0
    df = n - 2
    t_squared = r * r * df / (1.0 - r * r)
    # P(|T| >= t) = I_{df / (df + t^2)}(df / 2, 1 / 2)
    p = float(betainc(df / 2.0, 0.5, df / (df + t_squared)))
    return min(1.0, max(0.0, p))


def permutation_p(
    x: np.ndarray, y: np.ndarray, r: float, permutations: int, seed: int | None
) -> float:
    """Share of shuffles with |r| at least the observed |r|, add-one smoothed"""
    rng = np.random.default_rng(seed)
    observed = abs(r) - 1e-12
    hits = 0
    for _ in range(permutations):
        if abs(_pearson_r(x, rng.permutation(y))) >= observed:
            hits += 1
    return (hits + 1) / (permutations + 1)


def pearson(
    x: Sequence[float],
    y: Sequence[float],
    permutations: int = 0,
    seed: int | None = None,
) -> PearsonResult:
    """
    Pearson r with a two-tailed p-value

    The p-value is analytic (t distribution through the regularized
    incomplete beta function) unless permutations > 0.

    Raises:
        LengthMismatch: x and y differ in length
        TooFewPoints: fewer than three pairs
        ZeroVariance: x or y is constant
    """
    if len(x) != len(y):
        raise LengthMismatch(f"x has {len(x)} values, y has {len(y)}")
    n = len(x)
    if n < MIN_POINTS:
        raise TooFewPoints(f"need at least {MIN_POINTS} pairs, got {n}")
    xs = np.asarray(x, dtype=float)
    ys = np.asarray(y, dtype=float)
    if not (np.isfinite(xs).all() and np.isfinite(ys).all()):
        raise EvalHarnessError("pearson inputs must be finite")
    if np.ptp(xs) == 0.0 or np.ptp(ys) == 0.0:
        raise ZeroVariance("correlation is undefined for a constant array")

    r = _pearson_r(xs, ys)
    if permutations > 0:
        p = permutation_p(xs, ys, r, permutations, seed)
        return PearsonResult(r=r, p=p, n=n, method="permutation")
    return PearsonResult(r=r, p=t_test_p(r, n), n=n)


def tokenize(sentence: str) -> list[str]:
    """Lowercase, split on whitespace, strip punctuation from token edges"""
    tokens = (word.strip(EDGE_PUNCTUATION) for word in sentence.lower().split())
    return [token for token in tokens if token]


def corpus_stats(
    sentences: Iterable[str], perplexities: Sequence[float] | None = None
) -> CorpusStats:
    """Table-style corpus statistics; perplexities, if given, pair with sentences"""
    per_sentence = [tokenize(sentence) for sentence in sentences]
    if not per_sentence:
        raise EmptyInput("corpus has no sentences")
    token_count = sum(len(tokens) for tokens in per_sentence)
    if token_count == 0:
        raise EmptyInput("corpus has no tokens")
    types = {token for tokens in per_sentence for token in tokens}
    lengths = [len(tokens) for tokens in per_sentence]

    mean_perplexity = None
    perplexity_range = None
    if perplexities is not None:
        if len(perplexities) != len(per_sentence):
            raise LengthMismatch(
                f"{len(per_sentence)} sentences but {len(perplexities)} perplexities"
            )
        mean_perplexity = math.fsum(perplexities) / len(perplexities)
        perplexity_range = (float(min(perplexities)), float(max(perplexities)))

    return CorpusStats(
        sentence_count=len(per_sentence),
        token_count=token_count,
        word_type_count=len(types),
        ttr=len(types) / token_count,
        mean_tokens_per_sentence=token_count / len(per_sentence),
        token_range=(min(lengths), max(lengths)),
        mean_perplexity=mean_perplexity,
        perplexity_range=perplexity_range,
    )
