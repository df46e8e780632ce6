"""
Priming sentence generation

instantiate() fills a template skeleton with realized slot fillers and reads
the sentence off the finished tree, so text and tree always agree.
"""

from __future__ import annotations

from collections.abc import Mapping, Sequence
from dataclasses import dataclass, replace
from enum import Enum

import structlog

from ..syntree import SyntaxTree, TreeNode
from .phrases import PrimeGenError, attributive_np, realize
from .templates import (
    PAIRS,
    POSSESSIVE_MARKER,
    AlternationPair,
    Placeholder,
    StructureType,
    Template,
    UnknownStructureType,
    load_templates,
    resolve_pair,
    resolve_structure_type,
)

log = structlog.get_logger(__name__)

DEFAULT_PERPLEXITY_THRESHOLD = 300.0
SENTENCE_END = "."

SlotBindings = Mapping[str, str]


class MissingSlot(PrimeGenError, KeyError):
    """A slot the template references has no (non-empty) filler"""

    def __init__(self, slot: str, structure_type: str | None = None):
        self.slot = slot
        self.structure_type = structure_type
        super().__init__(slot)

    def __str__(self) -> str:
        where = f" for {self.structure_type}" if self.structure_type else ""
        return f"missing slot {self.slot!r}{where}"


class LengthMismatch(PrimeGenError, ValueError):
    """Sentence and score lists differ in length"""

    pass


class Role(str, Enum):
    POSITIVE_PRIME = "positive_prime"
    NEGATIVE_PRIME = "negative_prime"


@dataclass(frozen=True, slots=True)
class GeneratedSentence:
    text: str
    tree: SyntaxTree
    structure_type: StructureType
    role: Role | None = None

    def with_role(self, role: Role) -> GeneratedSentence:
        return replace(self, role=role)


def _is_clitic(node: TreeNode) -> bool:
    return node.label == "POS"


def surface_text(tree: SyntaxTree) -> str:
    """Leaf words joined by spaces, possessive markers attached, final period"""
    pieces: list[str] = []
    for node in tree.preterminals():
        word = node.children[0].label
        if _is_clitic(node) and pieces:
            pieces[-1] += word
        else:
            pieces.append(word)
    return " ".join(pieces) + SENTENCE_END


def _possessive_marker(previous: TreeNode) -> str:
    words = previous.leaves()
    if words and words[-1].lower().endswith("s"):
        return "'"
    return POSSESSIVE_MARKER


def _fill(node: TreeNode, bindings: SlotBindings) -> TreeNode:
    children: list[TreeNode] = []
    for child in node.children:
        placeholder = Placeholder.parse(child.label) if child.is_leaf else None
        if placeholder is not None:
            children.extend(_realize_placeholder(placeholder, bindings))
        elif child.is_preterminal and _is_clitic(child) and children:
            marker = _possessive_marker(children[-1])
            children.append(TreeNode(child.label, (TreeNode(marker),)))
        elif child.is_leaf:
            children.append(child)
        else:
            children.append(_fill(child, bindings))
    return TreeNode(node.label, tuple(children))


def _realize_placeholder(
    placeholder: Placeholder, bindings: SlotBindings
) -> list[TreeNode]:
    filler = bindings[placeholder.slot]
    if placeholder.attribute is None:
        return realize(placeholder.slot, placeholder.kind, filler)
    attribute = placeholder.attribute
    (adjp,) = realize(attribute.name, attribute.kind, bindings[attribute.name])
    (head,) = realize(placeholder.slot, placeholder.kind, filler)
    return [attributive_np(head.leaves(), adjp)]


def _capitalize_first(node: TreeNode) -> TreeNode:
    if node.is_leaf:
        word = node.label
        return TreeNode(word[:1].upper() + word[1:])
    first, *rest = node.children
    return TreeNode(node.label, (_capitalize_first(first), *rest))


def _check_bindings(template: Template, bindings: SlotBindings) -> None:
    for name in template.required_slots:
        value = bindings.get(name)
        if value is None or not value.strip():
            raise MissingSlot(name, template.structure_type.value)


def instantiate(
    structure_type: str | StructureType,
    bindings: SlotBindings,
    role: Role | None = None,
) -> GeneratedSentence:
    """
    Build one sentence and its tree from a template

    Args:
        structure_type: canonical id, display name or StructureType
        bindings: slot name to filler; slots the template does not use are ignored
        role: optional prime role stamped on the result

    Raises:
        UnknownStructureType: name resolves to no built-in template
        MissingSlot: a referenced slot is unbound or blank
        InvalidFiller: a filler cannot be realized as its slot's phrase kind
    """
    template = load_templates()[resolve_structure_type(structure_type)]
    _check_bindings(template, bindings)

    root = _capitalize_first(_fill(template.tree_shape.root, bindings))
    tree = SyntaxTree(root)
    return GeneratedSentence(
        text=surface_text(tree),
        tree=tree,
        structure_type=template.structure_type,
        role=role,
    )


def _pair_order(
    pair_type: str | AlternationPair | StructureType,
) -> tuple[StructureType, StructureType]:
    """(positive, negative) structure types; a structure type name leads its pair"""
    if isinstance(pair_type, AlternationPair):
        spec = PAIRS[pair_type]
        return spec.first, spec.second
    try:
        pair = resolve_pair(pair_type)
    except UnknownStructureType:
        template = load_templates()[resolve_structure_type(pair_type)]
        return template.structure_type, template.alternate
    spec = PAIRS[pair]
    return spec.first, spec.second


def generate_pair(
    pair_type: str | AlternationPair | StructureType,
    bindings: SlotBindings,
    swap_roles: bool = False,
) -> tuple[GeneratedSentence, GeneratedSentence]:
    """
    Generate (positive prime, negative prime) from shared bindings

    The first template of the pair is the positive prime unless pair_type
    names a structure type, which then leads. swap_roles flips the result.
    """
    positive_type, negative_type = _pair_order(pair_type)
    if swap_roles:
        positive_type, negative_type = negative_type, positive_type
    positive = instantiate(positive_type, bindings, Role.POSITIVE_PRIME)
    negative = instantiate(negative_type, bindings, Role.NEGATIVE_PRIME)
    return positive, negative


def filter_by_perplexity(
    sentences: Sequence[GeneratedSentence],
    scores: Sequence[float],
    threshold: float = DEFAULT_PERPLEXITY_THRESHOLD,
) -> tuple[list[GeneratedSentence], list[GeneratedSentence]]:
    """Split into (kept, dropped); kept iff score <= threshold, order preserved"""
    if len(sentences) != len(scores):
        raise LengthMismatch(
            f"{len(sentences)} sentences but {len(scores)} perplexity scores"
        )
    kept: list[GeneratedSentence] = []
    dropped: list[GeneratedSentence] = []
    for sentence, score in zip(sentences, scores):
        # NaN compares false, so it is dropped
        if score <= threshold:
            kept.append(sentence)
        else:
            dropped.append(sentence)
    log.info(
        "perplexity_filtered",
        threshold=threshold,
        kept=len(kept),
        dropped=len(dropped),
    )
    return kept, dropped
