"""
Bracketed treebank format reader

Label first, children after: ``(S (NP (DT the) (NN dog)) (VP (VB runs)))``.
Tokens are parentheses or maximal runs of non-space, non-bracket characters.
"""

from __future__ import annotations

import re
from collections.abc import Iterator
from dataclasses import dataclass, field
from pathlib import Path

from .nodes import SyntaxTree, TreeNode

_TOKEN_RE = re.compile(r"\(|\)|[^\s()]+")


class TreeSyntaxError(Exception):
    """Bracketed text could not be read as a tree"""

    def __init__(self, message: str, text: str = "", position: int = 0):
        self.message = message
        self.text = text
        self.position = position
        self.line_no: int | None = None
        super().__init__(self._render())

    @property
    def line(self) -> int:
        """1-based line of the offending character within the text"""
        return self.text.count("\n", 0, self.position) + 1

    @property
    def column(self) -> int:
        """1-based column of the offending character within its line"""
        return self.position - (self.text.rfind("\n", 0, self.position) + 1) + 1

    def with_line(self, line_no: int) -> TreeSyntaxError:
        """Attach the line number of a multi-tree file"""
        self.line_no = line_no
        self.args = (self._render(),)
        return self

    def _render(self) -> str:
        where = f"line {self.line_no}, " if self.line_no is not None else ""
        return f"{where}column {self.column}: {self.message}"


class UnbalancedBrackets(TreeSyntaxError):
    """Opening and closing parentheses do not pair up"""

    pass


class EmptyNode(TreeSyntaxError):
    """A bracket pair holds no label or no children"""

    pass


class TrailingContent(TreeSyntaxError):
    """Input continues after the root closes"""

    pass


class BareLeaf(TreeSyntaxError):
    """Input is a word, not a bracketed tree"""

    pass


@dataclass
class _Frame:
    position: int
    label: str | None = None
    children: list[TreeNode] = field(default_factory=list)


def _tokenize(text: str) -> list[tuple[str, int]]:
    return [(m.group(), m.start()) for m in _TOKEN_RE.finditer(text)]


def parse_bracketed(text: str) -> SyntaxTree:
    """
    Parse one bracketed tree

    A PTB-style unlabeled wrapper ``( (S ...) )`` is unwrapped. The result is
    not validated; see ``validate`` for structural invariants.

    Raises:
        UnbalancedBrackets, EmptyNode, TrailingContent, BareLeaf
    """
    tokens = _tokenize(text)
    if not tokens:
        raise EmptyNode("no tree found", text, 0)

    opens = sum(1 for tok, _ in tokens if tok == "(")
    closes = sum(1 for tok, _ in tokens if tok == ")")
    if opens != closes:
        raise UnbalancedBrackets(
            f"{opens} opening vs {closes} closing brackets",
            text,
            _first_unmatched(tokens, len(text)),
        )

    first, first_pos = tokens[0]
    if first == ")":
        raise UnbalancedBrackets("closing bracket before any opening", text, first_pos)
    if first != "(":
        raise BareLeaf(f"expected '(' but found word {first!r}", text, first_pos)

    stack: list[_Frame] = []
    root: TreeNode | None = None
    for token, position in tokens:
        if root is not None:
            raise TrailingContent(
                f"unexpected {token!r} after the root closed", text, position
            )
        if token == "(":
            stack.append(_Frame(position))
        elif token == ")":
            if not stack:
                raise UnbalancedBrackets("unmatched closing bracket", text, position)
            node = _close(stack.pop(), text)
            if stack:
                stack[-1].children.append(node)
            else:
                root = node
        else:
            frame = stack[-1]
            if frame.label is None and not frame.children:
                frame.label = token
            else:
                frame.children.append(TreeNode(token))

    if root is None:  # pragma: no cover - balanced input always closes
        raise UnbalancedBrackets("tree never closed", text, len(text))
    if root.is_leaf:
        raise BareLeaf("root is a bare word", text, first_pos)
    return SyntaxTree(root)


def _close(frame: _Frame, text: str) -> TreeNode:
    if frame.label is None:
        if len(frame.children) == 1:
            return frame.children[0]
        raise EmptyNode("node without a label", text, frame.position)
    if not frame.children:
        raise EmptyNode(f"node {frame.label!r} has no children", text, frame.position)
    return TreeNode(frame.label, tuple(frame.children))


def _first_unmatched(tokens: list[tuple[str, int]], end: int) -> int:
    depth = 0
    pending: list[int] = []
    for token, position in tokens:
        if token == "(":
            depth += 1
            pending.append(position)
        elif token == ")":
            if depth == 0:
                return position
            depth -= 1
            pending.pop()
    return pending[0] if pending else end


def read_trees(path: str | Path) -> Iterator[tuple[int, SyntaxTree]]:
    """
    Read a newline-delimited multi-tree file

    Yields (line_no, tree) pairs; blank lines are skipped. Syntax errors carry
    the line number of the offending tree.
    """
    with open(path, encoding="utf-8") as f:
        for line_no, line in enumerate(f, start=1):
            if not line.strip():
                continue
            try:
                yield line_no, parse_bracketed(line)
            except TreeSyntaxError as e:
                raise e.with_line(line_no) from None


def read_tree_file(path: str | Path) -> SyntaxTree:
    """Read a file holding exactly one tree (it may span several lines)"""
    with open(path, encoding="utf-8") as f:
        return parse_bracketed(f.read())
