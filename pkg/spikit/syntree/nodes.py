"""
Constituency tree value types

TreeNode, SyntaxTree and Production are immutable; every helper here is a
pure function over them. Helpers walk trees with explicit stacks; the
generated dataclass equality, hashing and repr still recurse, so they stay
bounded by the interpreter recursion limit on very deep trees.
"""

from __future__ import annotations

from collections import Counter
from collections.abc import Iterator
from dataclasses import dataclass

# Sentinel word used by delexicalized trees
WILDCARD = "*"


@dataclass(frozen=True, slots=True)
class Production:
    """One rewrite rule instance: a node label and its ordered child labels"""

    parent: str
    children: tuple[str, ...]
    lexical: bool = False

    def __str__(self) -> str:
        return f"{self.parent} -> {' '.join(self.children)}"


@dataclass(frozen=True, slots=True)
class TreeNode:
    """A labeled node; a node without children is a word leaf"""

    label: str
    children: tuple[TreeNode, ...] = ()

    @property
    def is_leaf(self) -> bool:
        return not self.children

    @property
    def is_preterminal(self) -> bool:
        return len(self.children) == 1 and self.children[0].is_leaf

    def production(self) -> Production:
        """Production rule at this node (internal nodes only)"""
        return Production(
            parent=self.label,
            children=tuple(child.label for child in self.children),
            lexical=self.is_preterminal,
        )

    def iter_internal(self) -> Iterator[TreeNode]:
        """Internal nodes in pre-order (words excluded)"""
        if self.is_leaf:
            return
        stack: list[TreeNode] = [self]
        while stack:
            node = stack.pop()
            yield node
            stack.extend(
                child for child in reversed(node.children) if not child.is_leaf
            )

    def leaves(self) -> list[str]:
        words: list[str] = []
        stack: list[TreeNode] = [self]
        while stack:
            node = stack.pop()
            if node.is_leaf:
                words.append(node.label)
            else:
                stack.extend(reversed(node.children))
        return words


@dataclass(frozen=True, slots=True)
class SyntaxTree:
    """Ordered labeled tree for one sentence"""

    root: TreeNode

    def internal_nodes(self) -> list[TreeNode]:
        return list(self.root.iter_internal())

    def node_count(self) -> int:
        return len(self.internal_nodes())

    def leaves(self) -> list[str]:
        return self.root.leaves()

    def preterminals(self) -> list[TreeNode]:
        return [node for node in self.root.iter_internal() if node.is_preterminal]

    def to_bracketed(self) -> str:
        return to_bracketed(self)

    def __str__(self) -> str:
        return to_bracketed(self)


def to_bracketed(tree: SyntaxTree | TreeNode) -> str:
    """Canonical single-space bracketed form"""
    node = tree.root if isinstance(tree, SyntaxTree) else tree
    tokens: list[str] = []
    # None closes the most recently opened node
    stack: list[TreeNode | None] = [node]
    while stack:
        item = stack.pop()
        if item is None:
            tokens[-1] += ")"
        elif item.is_leaf:
            tokens.append(item.label)
        else:
            tokens.append(f"({item.label}")
            stack.append(None)
            stack.extend(reversed(item.children))
    return " ".join(tokens)


def productions(tree: SyntaxTree) -> Counter[Production]:
    """Multiset of productions, one per internal node"""
    return Counter(node.production() for node in tree.root.iter_internal())


def _delexicalize_node(root: TreeNode) -> TreeNode:
    built: dict[int, TreeNode] = {}
    stack = [(root, False)]
    while stack:
        node, expanded = stack.pop()
        if node.is_leaf:
            built[id(node)] = TreeNode(WILDCARD)
        elif not expanded:
            stack.append((node, True))
            stack.extend((child, False) for child in node.children)
        else:
            built[id(node)] = TreeNode(
                node.label, tuple(built[id(child)] for child in node.children)
            )
    return built[id(root)]


def delexicalize(tree: SyntaxTree) -> SyntaxTree:
    """Replace every word leaf by the wildcard; labels and shape unchanged"""
    return SyntaxTree(_delexicalize_node(tree.root))
