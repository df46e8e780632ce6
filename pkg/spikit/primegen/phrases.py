"""
Slot filler realization

Turns a filler string into tree nodes for one phrase kind. Tagging is a
closed-class lookup; every open-class word gets the kind's default tag. No
parser is involved, so the same filler always yields the same nodes.
"""

from __future__ import annotations

from collections.abc import Callable

from ..syntree import TreeNode


class PrimeGenError(Exception):
    """Base priming-pair generation error"""

    pass


class InvalidFiller(PrimeGenError, ValueError):
    """Filler cannot be realized as its slot's phrase kind"""

    def __init__(self, slot: str, reason: str):
        self.slot = slot
        self.reason = reason
        super().__init__(f"slot {slot!r}: {reason}")


DETERMINERS = frozenset(
    {"a", "an", "the", "this", "that", "these", "those", "some", "every", "each",
     "another", "any", "no"}
)
POSSESSIVE_PRONOUNS = frozenset({"my", "your", "his", "her", "its", "our", "their"})
PREPOSITIONS = frozenset(
    {"about", "above", "across", "after", "against", "along", "among", "around",
     "as", "at", "before", "behind", "below", "beneath", "beside", "between",
     "by", "during", "for", "from", "in", "inside", "into", "near", "of", "off",
     "on", "onto", "outside", "over", "past", "through", "to", "toward",
     "towards", "under", "underneath", "upon", "while", "with", "within",
     "without"}
)
CONJUNCTIONS = frozenset({"and", "or", "but"})
RELATIVIZERS = frozenset({"that", "which", "who", "whom"})
NUMERALS = frozenset(
    {"one", "two", "three", "four", "five", "six", "seven", "eight", "nine", "ten"}
)
FUNCTION_WORDS = DETERMINERS | POSSESSIVE_PRONOUNS | PREPOSITIONS | CONJUNCTIONS

# Phrase kinds a slot may declare
PHRASE_KINDS = frozenset(
    {"NP", "XNP", "RELNP", "PARTNP", "NOM", "PP", "ADJP", "ADVP", "SBAR"}
)


def leaf(tag: str, word: str) -> TreeNode:
    return TreeNode(tag, (TreeNode(word),))


def tokens_of(slot: str, filler: str) -> list[str]:
    """Split a filler; a capitalized leading function word is lowercased"""
    tokens = filler.split()
    if not tokens:
        raise InvalidFiller(slot, "filler is empty")
    if any("(" in w or ")" in w for w in tokens):
        raise InvalidFiller(slot, "brackets are not allowed in words")
    if tokens[0].lower() in FUNCTION_WORDS and tokens[0] != tokens[0].lower():
        tokens[0] = tokens[0].lower()
    return tokens


def tag_word(word: str, default: str, position: int = 0) -> str:
    lower = word.lower()
    if lower in DETERMINERS and (position == 0 or lower != "that"):
        return "DT"
    if lower in POSSESSIVE_PRONOUNS:
        return "PRP$"
    if lower in CONJUNCTIONS:
        return "CC"
    if lower in PREPOSITIONS:
        return "IN"
    if lower in NUMERALS or word.isdigit():
        return "CD"
    return default


def flat(label: str, tokens: list[str], default: str) -> TreeNode:
    return TreeNode(
        label, tuple(leaf(tag_word(w, default, i), w) for i, w in enumerate(tokens))
    )


def noun_phrase(tokens: list[str]) -> TreeNode:
    return flat("NP", tokens, "NN")


def complements(slot: str, tokens: list[str]) -> list[TreeNode]:
    """Chunk a word run into NP and PP siblings, opening a PP at each preposition"""
    chunks: list[list[str]] = []
    for word in tokens:
        if word.lower() in PREPOSITIONS or not chunks:
            chunks.append([word])
        else:
            chunks[-1].append(word)

    nodes: list[TreeNode] = []
    for chunk in chunks:
        if chunk[0].lower() in PREPOSITIONS:
            if len(chunk) == 1:
                raise InvalidFiller(slot, f"preposition {chunk[0]!r} has no object")
            nodes.append(TreeNode("PP", (leaf("IN", chunk[0]), noun_phrase(chunk[1:]))))
        else:
            nodes.append(noun_phrase(chunk))
    return nodes


def _split_at(tokens: list[str], predicate: Callable[[str], bool]) -> int | None:
    for index in range(1, len(tokens)):
        if predicate(tokens[index]):
            return index
    return None


def _is_relativizer(word: str) -> bool:
    return word.lower() in RELATIVIZERS


def _is_participle(word: str) -> bool:
    return len(word) > 4 and word.lower().endswith("ing")


def relative_np(slot: str, tokens: list[str]) -> TreeNode:
    """(NP (NP head) (SBAR (WDT that) (S (VP (VB verb) complements...))))"""
    split = _split_at(tokens, _is_relativizer)
    if split is None:
        raise InvalidFiller(slot, "expected a relative clause (that/which/who ...)")
    body = tokens[split + 1 :]
    if not body:
        raise InvalidFiller(slot, "relative clause has no verb")
    verb_phrase = TreeNode("VP", (leaf("VB", body[0]), *complements(slot, body[1:])))
    clause = TreeNode(
        "SBAR", (leaf("WDT", tokens[split]), TreeNode("S", (verb_phrase,)))
    )
    return TreeNode("NP", (noun_phrase(tokens[:split]), clause))


def participial_np(slot: str, tokens: list[str]) -> TreeNode:
    """(NP (NP head) (VP (VBG participle) complements...))"""
    split = _split_at(tokens, _is_participle)
    if split is None:
        raise InvalidFiller(slot, "expected a participial modifier (...ing)")
    modifier = TreeNode(
        "VP", (leaf("VBG", tokens[split]), *complements(slot, tokens[split + 1 :]))
    )
    return TreeNode("NP", (noun_phrase(tokens[:split]), modifier))


def complex_np(slot: str, tokens: list[str]) -> TreeNode:
    if _split_at(tokens, _is_relativizer) is not None:
        return relative_np(slot, tokens)
    if _split_at(tokens, _is_participle) is not None:
        return participial_np(slot, tokens)
    return noun_phrase(tokens)


def prepositional_phrase(slot: str, tokens: list[str]) -> TreeNode:
    if tokens[0].lower() not in PREPOSITIONS:
        raise InvalidFiller(
            slot, f"PP must start with a preposition, got {tokens[0]!r}"
        )
    if len(tokens) == 1:
        raise InvalidFiller(slot, "PP has no object")
    return TreeNode("PP", (leaf("IN", tokens[0]), noun_phrase(tokens[1:])))


def attributive_np(head: list[str], attribute: TreeNode) -> TreeNode:
    """Insert an ADJP after the head's determiner: the [green and purple] sidewalk"""
    noun = noun_phrase(head)
    children = list(noun.children)
    at = 1 if children[0].label in ("DT", "PRP$") else 0
    children.insert(at, attribute)
    return TreeNode("NP", tuple(children))


def realize(slot: str, kind: str, filler: str) -> list[TreeNode]:
    """
    Build the nodes for one slot

    Phrase kinds return one phrase node except NOM, whose tagged nouns are
    spliced into the enclosing phrase. Any other kind is a part-of-speech tag
    for a single-word slot.
    """
    tokens = tokens_of(slot, filler)
    if kind == "NP":
        return [noun_phrase(tokens)]
    if kind == "XNP":
        return [complex_np(slot, tokens)]
    if kind == "RELNP":
        return [relative_np(slot, tokens)]
    if kind == "PARTNP":
        return [participial_np(slot, tokens)]
    if kind == "NOM":
        return list(flat("NOM", tokens, "NN").children)
    if kind == "PP":
        return [prepositional_phrase(slot, tokens)]
    if kind == "ADJP":
        return [flat("ADJP", tokens, "JJ")]
    if kind == "ADVP":
        return [flat("ADVP", tokens, "RB")]
    if kind == "SBAR":
        return [flat("SBAR", tokens, "NN")]
    if len(tokens) != 1:
        raise InvalidFiller(slot, f"single-word slot ({kind}) got {len(tokens)} words")
    return [leaf(kind, tokens[0])]
