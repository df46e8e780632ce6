"""
Built-in priming templates

Sixteen structure types in eight alternation pairs. Each template is a
skeleton tree in bracketed form; ``{slot:KIND}`` placeholders mark where slot
fillers go, every other word is a fixed function word. The surface pattern is
the in-order reading of the skeleton, so pattern and tree cannot drift apart.

Placeholder KIND is a phrase kind (see phrases.PHRASE_KINDS) or a tag for a
single-word slot. ``{head:NP+attr:ADJP}`` realizes ``head`` as an NP with the
``attr`` ADJP inserted after its determiner.
"""

from __future__ import annotations

import re
from collections.abc import Mapping
from dataclasses import dataclass
from enum import Enum
from functools import lru_cache
from types import MappingProxyType

from ..syntree import SyntaxTree, parse_bracketed
from .phrases import PrimeGenError

PLACEHOLDER_RE = re.compile(r"^\{(\w+):([\w$]+)(?:\+(\w+):([\w$]+))?\}$")

# Realized as "'" after an s-final word
POSSESSIVE_MARKER = "'s"


class UnknownStructureType(PrimeGenError, KeyError):
    """Name does not resolve to a structure type or alternation pair"""

    def __str__(self) -> str:
        return str(self.args[0]) if self.args else "unknown structure type"


class StructureType(str, Enum):
    SIMPLE_ACTIVE = "simple_active"
    SIMPLE_PASSIVE = "simple_passive"
    PO_PASSIVE = "po_passive"
    PO_ACTIVE = "po_active"
    EMBEDDED_PASSIVE = "embedded_passive"
    EMBEDDED_ACTIVE = "embedded_active"
    MEDIOPASSIVE = "mediopassive"
    MEDIOPASSIVE_LIKE_ACTIVE = "mediopassive_like_active"
    SIMPLE_PO = "simple_po"
    SIMPLE_DO = "simple_do"
    COMPLEX_PO = "complex_po"
    COMPLEX_DO = "complex_do"
    PO_CLAUSE = "po_clause"
    DO_CLAUSE = "do_clause"
    S_GENITIVE = "s_genitive"
    OF_GENITIVE = "of_genitive"

    @property
    def display_name(self) -> str:
        return _DISPLAY_NAMES[self]


_DISPLAY_NAMES = {
    StructureType.SIMPLE_ACTIVE: "Simple Active",
    StructureType.SIMPLE_PASSIVE: "Simple Passive",
    StructureType.PO_PASSIVE: "PO Passive",
    StructureType.PO_ACTIVE: "PO Active",
    StructureType.EMBEDDED_PASSIVE: "Embedded Passive",
    StructureType.EMBEDDED_ACTIVE: "Embedded Active",
    StructureType.MEDIOPASSIVE: "Mediopassive",
    StructureType.MEDIOPASSIVE_LIKE_ACTIVE: "Mediopassive-like Active",
    StructureType.SIMPLE_PO: "Simple PO",
    StructureType.SIMPLE_DO: "Simple DO",
    StructureType.COMPLEX_PO: "Complex PO",
    StructureType.COMPLEX_DO: "Complex DO",
    StructureType.PO_CLAUSE: "PO Clause",
    StructureType.DO_CLAUSE: "DO Clause",
    StructureType.S_GENITIVE: "S-Genitive",
    StructureType.OF_GENITIVE: "Of-Genitive",
}


class Family(str, Enum):
    VOICE = "voice"
    DATIVE = "dative"
    POSSESSIVE = "possessive"


class AlternationPair(str, Enum):
    SIMPLE_VOICE = "simple_voice"
    PO_VOICE = "po_voice"
    EMBEDDED_VOICE = "embedded_voice"
    MEDIOPASSIVE = "mediopassive_voice"
    SIMPLE_DATIVE = "simple_dative"
    COMPLEX_DATIVE = "complex_dative"
    CLAUSE_DATIVE = "clause_dative"
    GENITIVE = "genitive"


@dataclass(frozen=True, slots=True)
class PairSpec:
    first: StructureType
    second: StructureType
    family: Family


PAIRS: Mapping[AlternationPair, PairSpec] = MappingProxyType(
    {
        AlternationPair.SIMPLE_VOICE: PairSpec(
            StructureType.SIMPLE_ACTIVE, StructureType.SIMPLE_PASSIVE, Family.VOICE
        ),
        AlternationPair.PO_VOICE: PairSpec(
            StructureType.PO_PASSIVE, StructureType.PO_ACTIVE, Family.VOICE
        ),
        AlternationPair.EMBEDDED_VOICE: PairSpec(
            StructureType.EMBEDDED_PASSIVE, StructureType.EMBEDDED_ACTIVE, Family.VOICE
        ),
        AlternationPair.MEDIOPASSIVE: PairSpec(
            StructureType.MEDIOPASSIVE,
            StructureType.MEDIOPASSIVE_LIKE_ACTIVE,
            Family.VOICE,
        ),
        AlternationPair.SIMPLE_DATIVE: PairSpec(
            StructureType.SIMPLE_PO, StructureType.SIMPLE_DO, Family.DATIVE
        ),
        AlternationPair.COMPLEX_DATIVE: PairSpec(
            StructureType.COMPLEX_PO, StructureType.COMPLEX_DO, Family.DATIVE
        ),
        AlternationPair.CLAUSE_DATIVE: PairSpec(
            StructureType.PO_CLAUSE, StructureType.DO_CLAUSE, Family.DATIVE
        ),
        AlternationPair.GENITIVE: PairSpec(
            StructureType.S_GENITIVE, StructureType.OF_GENITIVE, Family.POSSESSIVE
        ),
    }
)

# Skeletons. Mediopassive attaches its clause at sentence level, the
# mediopassive-like active inside the VP; the two read alike on the surface.
SKELETONS: Mapping[StructureType, str] = MappingProxyType(
    {
        StructureType.SIMPLE_ACTIVE: (
            "(S {subject:NP} (VP {verb:VB} {object:NP}))"
        ),
        StructureType.SIMPLE_PASSIVE: (
            "(S {object:NP} (VP {auxiliary:AUX} (VP {participle:VBN}"
            " (PP (IN by) {subject:NP}))))"
        ),
        StructureType.PO_PASSIVE: (
            "(S {direct_object:NP} (VP {auxiliary:AUX} (VP {participle:VBN}"
            " (PP {prep:IN} {prepositional_object:NP}) (PP (IN by) {subject:NP})"
            " {instrument:PP})))"
        ),
        StructureType.PO_ACTIVE: (
            "(S {subject:NP} (VP {verb:VB} {direct_object:NP}"
            " (PP {prep:IN} {prepositional_object:NP}) {instrument:PP}))"
        ),
        StructureType.EMBEDDED_PASSIVE: (
            "(S (NP {patient:NP} (SBAR (WDT that) (S (VP {auxiliary:AUX}"
            " (VP {participle:VBN} (PP (IN by) {agent:NP}))))))"
            " (VP {copula:AUX} {attribute:ADJP}))"
        ),
        StructureType.EMBEDDED_ACTIVE: (
            "(S {agent:NP} (VP {verb:VB} {patient:NP+attribute:ADJP}))"
        ),
        StructureType.MEDIOPASSIVE: (
            "(S (S {subject:NP} (VP {verb:VB} {adverb:ADVP})) {clause:SBAR})"
        ),
        StructureType.MEDIOPASSIVE_LIKE_ACTIVE: (
            "(S {subject:NP} (VP {verb:VB} {adverb:ADVP} {clause:SBAR}))"
        ),
        StructureType.SIMPLE_PO: (
            "(S {subject:NP} (VP {verb:VB} {direct_object:NP}"
            " (PP {prep:IN} {indirect_object:NP})))"
        ),
        StructureType.SIMPLE_DO: (
            "(S {subject:NP} (VP {verb:VB} {indirect_object:NP} {direct_object:NP}))"
        ),
        StructureType.COMPLEX_PO: (
            "(S {subject_phrase:XNP} (VP {verb_phrase:VB} {object_phrase:XNP}"
            " (PP {prep:IN} {indirect_object_phrase:XNP})))"
        ),
        StructureType.COMPLEX_DO: (
            "(S {subject_phrase:XNP} (VP {verb_phrase:VB}"
            " {indirect_object_phrase:XNP} {object_phrase:XNP}))"
        ),
        StructureType.PO_CLAUSE: (
            "(S {subject:XNP} (VP {verb:VB} {direct_object:NP}"
            " (PP {prep:IN} {indirect_object_clause:RELNP})))"
        ),
        StructureType.DO_CLAUSE: (
            "(S {subject:XNP} (VP {verb:VB} {indirect_object_clause:RELNP}"
            " {direct_object:NP}))"
        ),
        StructureType.S_GENITIVE: (
            "(NP {head:NP} (PP {prep:IN} (NP (NP {possessor:NP} (POS 's))"
            " {possessed:NOM})))"
        ),
        StructureType.OF_GENITIVE: (
            "(NP {head:NP} (PP {prep:IN} (NP (NP {determiner:DT} {possessed:NOM})"
            " (PP (IN of) {possessor:NP}))))"
        ),
    }
)

EXAMPLES: Mapping[StructureType, str] = MappingProxyType(
    {
        StructureType.SIMPLE_ACTIVE: "A boy carries a ball.",
        StructureType.SIMPLE_PASSIVE: "A ball is carried by a boy.",
        StructureType.PO_PASSIVE: (
            "The colors were painted on paper by a girl with the brush."
        ),
        StructureType.PO_ACTIVE: "A girl painted the colors on paper with the brush.",
        StructureType.EMBEDDED_PASSIVE: (
            "The sidewalk that was washed by the women is green and purple."
        ),
        StructureType.EMBEDDED_ACTIVE: "A woman washed the green and purple sidewalk.",
        StructureType.MEDIOPASSIVE: (
            "The music plays loudly as the singer performs in front of the audience."
        ),
        StructureType.MEDIOPASSIVE_LIKE_ACTIVE: (
            "The audience listens intently as the band plays their music."
        ),
        StructureType.SIMPLE_PO: "A man tells stories to people.",
        StructureType.SIMPLE_DO: "A man tells people stories.",
        StructureType.COMPLEX_PO: (
            "A woman wearing black glasses share sweets with a toddler girl wearing a princess hat."
        ),
        StructureType.COMPLEX_DO: (
            "A woman wearing black glasses share a toddler girl wearing a princess hat sweets."
        ),
        StructureType.PO_CLAUSE: (
            "The teacher that carrys books give assignments to the student that studys in the library."
        ),
        StructureType.DO_CLAUSE: (
            "The teacher that carries books give the student that studys in the library assignments."
        ),
        StructureType.S_GENITIVE: "Reflections from the firefighters' uniforms.",
        StructureType.OF_GENITIVE: "Reflections from the uniforms of the firefighters.",
    }
)


@dataclass(frozen=True, slots=True)
class Slot:
    name: str
    kind: str


@dataclass(frozen=True, slots=True)
class Placeholder:
    """One ``{slot:KIND}`` reference in a skeleton"""

    slot: str
    kind: str
    attribute: Slot | None = None

    @classmethod
    def parse(cls, token: str) -> Placeholder | None:
        match = PLACEHOLDER_RE.match(token)
        if match is None:
            return None
        slot, kind, attr_name, attr_kind = match.groups()
        attribute = Slot(attr_name, attr_kind) if attr_name else None
        return cls(slot=slot, kind=kind, attribute=attribute)

    def slots(self) -> list[Slot]:
        refs = [Slot(self.slot, self.kind)]
        if self.attribute is not None:
            refs.append(self.attribute)
        return refs


@dataclass(frozen=True, slots=True)
class Template:
    """
    One structure type

    slots is the shared schema of the alternation pair (identical for both
    templates of a pair); required_slots are the ones this template's
    skeleton actually references.
    """

    structure_type: StructureType
    pair: AlternationPair
    family: Family
    slots: tuple[Slot, ...]
    tree_shape: SyntaxTree
    surface_pattern: tuple[str, ...]
    example: str

    @property
    def required_slots(self) -> tuple[str, ...]:
        return tuple(
            name
            for token in self.surface_pattern
            if token.startswith("{")
            for name in token[1:-1].split("+")
        )

    @property
    def alternate(self) -> StructureType:
        spec = PAIRS[self.pair]
        return spec.second if spec.first is self.structure_type else spec.first


def _placeholders(shape: SyntaxTree) -> list[Placeholder]:
    found = (Placeholder.parse(word) for word in shape.leaves())
    return [p for p in found if p is not None]


def _surface_pattern(shape: SyntaxTree) -> tuple[str, ...]:
    pattern: list[str] = []
    for word in shape.leaves():
        placeholder = Placeholder.parse(word)
        if placeholder is None:
            pattern.append(word)
        else:
            names = [slot.name for slot in placeholder.slots()]
            pattern.append("{" + "+".join(names) + "}")
    return tuple(pattern)


def _pair_schema(pair: AlternationPair) -> tuple[Slot, ...]:
    spec = PAIRS[pair]
    schema: dict[str, Slot] = {}
    for structure_type in (spec.first, spec.second):
        shape = parse_bracketed(SKELETONS[structure_type])
        for placeholder in _placeholders(shape):
            for slot in placeholder.slots():
                known = schema.setdefault(slot.name, slot)
                if known.kind != slot.kind:
                    raise ValueError(
                        f"{pair.value}: slot {slot.name!r} declared as "
                        f"{known.kind} and {slot.kind}"
                    )
    return tuple(schema.values())


@lru_cache(maxsize=1)
def load_templates() -> Mapping[StructureType, Template]:
    """Registry of the sixteen built-in templates, keyed by structure type"""
    registry: dict[StructureType, Template] = {}
    for pair, spec in PAIRS.items():
        schema = _pair_schema(pair)
        for structure_type in (spec.first, spec.second):
            shape = parse_bracketed(SKELETONS[structure_type])
            registry[structure_type] = Template(
                structure_type=structure_type,
                pair=pair,
                family=spec.family,
                slots=schema,
                tree_shape=shape,
                surface_pattern=_surface_pattern(shape),
                example=EXAMPLES[structure_type],
            )
    return MappingProxyType({t: registry[t] for t in StructureType})


def _normalize_name(name: str) -> str:
    return re.sub(r"[\s\-/]+", "_", name.strip().lower())


def resolve_structure_type(name: str | StructureType) -> StructureType:
    """Accept canonical ids, display names and hyphen/space variants"""
    if isinstance(name, StructureType):
        return name
    key = _normalize_name(name)
    for structure_type in StructureType:
        if key in (structure_type.value, _normalize_name(structure_type.display_name)):
            return structure_type
    raise UnknownStructureType(f"unknown structure type {name!r}")


def resolve_pair(name: str | AlternationPair) -> AlternationPair:
    if isinstance(name, AlternationPair):
        return name
    key = _normalize_name(name)
    for pair in AlternationPair:
        if key == pair.value:
            return pair
    raise UnknownStructureType(f"unknown alternation pair {name!r}")


def pair_of(structure_type: str | StructureType) -> AlternationPair:
    return load_templates()[resolve_structure_type(structure_type)].pair


def family_of(structure_type: str) -> Family | None:
    """Family for a structure type name, or None when the name is not built in"""
    try:
        return load_templates()[resolve_structure_type(structure_type)].family
    except UnknownStructureType:
        return None
