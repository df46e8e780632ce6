"""
Structural validation for syntax trees

Violations are returned as values; nothing here raises.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from .nodes import SyntaxTree, TreeNode


class ViolationKind(str, Enum):
    BARE_LEAF = "BareLeaf"
    EMPTY_LABEL = "EmptyLabel"
    ILLEGAL_LABEL = "IllegalLabel"
    MIXED_CHILDREN = "MixedChildren"
    FLAT_LEAVES = "FlatLeaves"


@dataclass(frozen=True, slots=True)
class Violation:
    """One broken invariant, located by child-index path from the root"""

    kind: ViolationKind
    path: tuple[int, ...]
    message: str

    @property
    def location(self) -> str:
        return "/" + "/".join(str(i) for i in self.path)

    def __str__(self) -> str:
        return f"{self.kind.value} at {self.location}: {self.message}"


def _label_problem(label: str) -> ViolationKind | None:
    if not label:
        return ViolationKind.EMPTY_LABEL
    if "(" in label or ")" in label:
        return ViolationKind.ILLEGAL_LABEL
    if any(ch.isspace() for ch in label) or not label.isprintable():
        return ViolationKind.ILLEGAL_LABEL
    return None


def validate(tree: SyntaxTree) -> list[Violation]:
    """Check every SyntaxTree/TreeNode invariant; empty list means valid"""
    violations: list[Violation] = []
    if tree.root.is_leaf:
        violations.append(
            Violation(ViolationKind.BARE_LEAF, (), "root must have children")
        )

    stack: list[tuple[TreeNode, tuple[int, ...]]] = [(tree.root, ())]
    while stack:
        node, path = stack.pop()
        problem = _label_problem(node.label)
        if problem is not None:
            violations.append(Violation(problem, path, f"bad label {node.label!r}"))
        if node.is_leaf:
            continue

        leaf_count = sum(1 for child in node.children if child.is_leaf)
        if 0 < leaf_count < len(node.children):
            violations.append(
                Violation(
                    ViolationKind.MIXED_CHILDREN,
                    path,
                    f"{node.label!r} mixes words with phrase children",
                )
            )
        elif leaf_count > 1:
            violations.append(
                Violation(
                    ViolationKind.FLAT_LEAVES,
                    path,
                    f"{node.label!r} holds {leaf_count} words; tag each word",
                )
            )

        for index in range(len(node.children) - 1, -1, -1):
            stack.append((node.children[index], path + (index,)))

    violations.sort(key=lambda v: v.path)
    return violations


def is_valid(tree: SyntaxTree) -> bool:
    return not validate(tree)
