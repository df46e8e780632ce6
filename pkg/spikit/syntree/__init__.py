"""
Constituency syntax trees: value types, bracketed I/O and validation
"""

from .bracketed import (
    BareLeaf,
    EmptyNode,
    TrailingContent,
    TreeSyntaxError,
    UnbalancedBrackets,
    parse_bracketed,
    read_tree_file,
    read_trees,
)
from .nodes import (
    WILDCARD,
    Production,
    SyntaxTree,
    TreeNode,
    delexicalize,
    productions,
    to_bracketed,
)
from .validation import Violation, ViolationKind, is_valid, validate

__all__ = [
    "BareLeaf",
    "EmptyNode",
    "Production",
    "SyntaxTree",
    "TrailingContent",
    "TreeNode",
    "TreeSyntaxError",
    "UnbalancedBrackets",
    "Violation",
    "ViolationKind",
    "WILDCARD",
    "delexicalize",
    "is_valid",
    "parse_bracketed",
    "productions",
    "read_tree_file",
    "read_trees",
    "to_bracketed",
    "validate",
]
