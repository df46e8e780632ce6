"""
Priming pair generation from the sixteen built-in structure templates
"""

from .bindings import (
    BindingsFormatError,
    BindingsRecord,
    GeneratedRecord,
    parse_bindings_line,
    read_bindings,
)
from .generator import (
    DEFAULT_PERPLEXITY_THRESHOLD,
    GeneratedSentence,
    LengthMismatch,
    MissingSlot,
    Role,
    SlotBindings,
    filter_by_perplexity,
    generate_pair,
    instantiate,
    surface_text,
)
from .phrases import InvalidFiller, PrimeGenError
from .templates import (
    PAIRS,
    AlternationPair,
    Family,
    Slot,
    StructureType,
    Template,
    UnknownStructureType,
    family_of,
    load_templates,
    pair_of,
    resolve_pair,
    resolve_structure_type,
)

__all__ = [
    "AlternationPair",
    "BindingsFormatError",
    "BindingsRecord",
    "DEFAULT_PERPLEXITY_THRESHOLD",
    "Family",
    "GeneratedRecord",
    "GeneratedSentence",
    "InvalidFiller",
    "LengthMismatch",
    "MissingSlot",
    "PAIRS",
    "PrimeGenError",
    "Role",
    "Slot",
    "SlotBindings",
    "StructureType",
    "Template",
    "UnknownStructureType",
    "family_of",
    "filter_by_perplexity",
    "generate_pair",
    "instantiate",
    "load_templates",
    "pair_of",
    "parse_bindings_line",
    "read_bindings",
    "resolve_pair",
    "resolve_structure_type",
    "surface_text",
]
