"""
Convolution (subset-tree) kernel over constituency trees

K(T1, T2) sums Delta over all pairs of internal nodes; Delta counts the
common fragments rooted at a node pair, each weighted by the decay factor.
The normalized kernel and the kernel-induced distance follow from K.
"""

from __future__ import annotations

import math
from collections import defaultdict
from collections.abc import Sequence
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .syntree import WILDCARD, Production, SyntaxTree, TreeNode


class KernelError(Exception):
    """Base tree kernel error"""

    pass


class InvalidKernelParams(KernelError, ValueError):
    """Decay factor outside (0, 1]"""

    pass


class DegenerateTree(KernelError):
    """A tree has a zero self-kernel and cannot be normalized"""

    pass


class KernelOverflow(KernelError):
    """Kernel value is not finite"""

    pass


class Mode(str, Enum):
    LEXICALIZED = "lexicalized"
    DELEXICALIZED = "delexicalized"


@dataclass(frozen=True, slots=True)
class KernelParams:
    """Decay factor and matching mode for Delta"""

    decay: float = 1.0
    mode: Mode = Mode.DELEXICALIZED

    def __post_init__(self) -> None:
        if not math.isfinite(self.decay) or not 0.0 < self.decay <= 1.0:
            raise InvalidKernelParams(f"lambda must be in (0, 1], got {self.decay}")
        try:
            object.__setattr__(self, "mode", Mode(self.mode))
        except ValueError:
            raise InvalidKernelParams(f"unknown kernel mode {self.mode!r}") from None

    def as_dict(self) -> dict[str, float | str]:
        return {"lambda": self.decay, "mode": self.mode.value}


@dataclass(frozen=True, slots=True)
class KernelValue:
    """K, K_norm and d for one tree pair"""

    raw: float
    normalized: float
    distance: float


DEFAULT_PARAMS = KernelParams()

Memo = dict[tuple[int, int], float]


def _match_key(node: TreeNode, mode: Mode) -> Production:
    production = node.production()
    if mode is Mode.DELEXICALIZED and production.lexical:
        return Production(production.parent, (WILDCARD,), lexical=True)
    return production


def delta(
    n1: TreeNode,
    n2: TreeNode,
    params: KernelParams = DEFAULT_PARAMS,
    memo: Memo | None = None,
) -> float:
    """
    Weighted number of common fragments rooted at n1 and n2

    memo is keyed by node-pair identity and must not outlive one kernel call.
    Child pairs are resolved on an explicit stack, so depth is not bounded by
    the recursion limit.
    """
    if memo is None:
        memo = {}
    stack = [(n1, n2, False)]
    while stack:
        a, b, expanded = stack.pop()
        key = (id(a), id(b))
        if key in memo:
            continue
        if a.is_leaf or b.is_leaf:
            memo[key] = 0.0
            continue
        if _match_key(a, params.mode) != _match_key(b, params.mode):
            memo[key] = 0.0
            continue
        if a.is_preterminal:
            memo[key] = params.decay
            continue
        # equal productions imply equal arity
        pairs = list(zip(a.children, b.children, strict=True))
        if not expanded:
            stack.append((a, b, True))
            stack.extend(
                (c1, c2, False) for c1, c2 in pairs if (id(c1), id(c2)) not in memo
            )
            continue
        value = params.decay
        for c1, c2 in pairs:
            value *= 1.0 + memo[(id(c1), id(c2))]
        memo[key] = value
    return memo[(id(n1), id(n2))]


def kernel(
    t1: SyntaxTree, t2: SyntaxTree, params: KernelParams = DEFAULT_PARAMS
) -> float:
    """
    Sum of Delta over all internal-node pairs; symmetric and deterministic

    Raises:
        KernelOverflow: the sum is not a finite float
    """
    by_production: defaultdict[Production, list[TreeNode]] = defaultdict(list)
    for n2 in t2.root.iter_internal():
        by_production[_match_key(n2, params.mode)].append(n2)

    memo: Memo = {}
    terms: list[float] = []
    for n1 in t1.root.iter_internal():
        for n2 in by_production.get(_match_key(n1, params.mode), ()):
            terms.append(delta(n1, n2, params, memo))
    # exactly rounded, so the sum does not depend on argument order
    try:
        total = math.fsum(terms)
    except OverflowError:
        raise KernelOverflow("kernel sum overflows a float") from None
    if not math.isfinite(total):
        raise KernelOverflow("kernel sum overflows a float")
    return total


def _normalize(k12: float, k11: float, k22: float) -> float:
    if not all(math.isfinite(k) for k in (k12, k11, k22)):
        raise KernelOverflow("kernel value is not finite")
    if k11 <= 0.0 or k22 <= 0.0:
        raise DegenerateTree("self-kernel is zero; tree has no internal nodes")
    # k11 * k22 can overflow where each square root does not
    return min(1.0, max(0.0, k12 / (math.sqrt(k11) * math.sqrt(k22))))


def _distance(normalized: float) -> float:
    return math.sqrt(max(0.0, 2.0 - 2.0 * normalized))


def normalized_kernel(
    t1: SyntaxTree, t2: SyntaxTree, params: KernelParams = DEFAULT_PARAMS
) -> float:
    """K(t1, t2) / sqrt(K(t1, t1) * K(t2, t2)), in [0, 1]"""
    return _normalize(
        kernel(t1, t2, params), kernel(t1, t1, params), kernel(t2, t2, params)
    )


def tree_distance(
    t1: SyntaxTree, t2: SyntaxTree, params: KernelParams = DEFAULT_PARAMS
) -> float:
    """sqrt(2 - 2 * K_norm), in [0, sqrt(2)]"""
    return _distance(normalized_kernel(t1, t2, params))


def kernel_value(
    t1: SyntaxTree, t2: SyntaxTree, params: KernelParams = DEFAULT_PARAMS
) -> KernelValue:
    raw = kernel(t1, t2, params)
    normalized = _normalize(raw, kernel(t1, t1, params), kernel(t2, t2, params))
    return KernelValue(raw=raw, normalized=normalized, distance=_distance(normalized))


def kernel_matrix(
    trees: Sequence[SyntaxTree], params: KernelParams = DEFAULT_PARAMS
) -> np.ndarray:
    """Symmetric normalized Gram matrix over a list of trees"""
    size = len(trees)
    diagonal = [kernel(t, t, params) for t in trees]
    gram = np.eye(size, dtype=float)
    for i in range(size):
        for j in range(i + 1, size):
            k12 = kernel(trees[i], trees[j], params)
            value = _normalize(k12, diagonal[i], diagonal[j])
            gram[i, j] = gram[j, i] = value
    return gram
