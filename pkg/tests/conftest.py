"""
Shared fixtures for the spikit test suites
"""

import json
import os
import random
from pathlib import Path
from typing import Any, Callable, Dict, Iterator, List, Optional

import pytest
import structlog

from spikit.syntree import SyntaxTree, TreeNode, parse_bracketed

FIXTURES_DIR = Path(__file__).parent / "fixtures"

# T and its cat variant, used across kernel, SPI and CLI tests
DOG_TREE = "(S (NP (DT the) (NN dog)) (VP (VB runs)))"
CAT_TREE = "(S (NP (DT the) (NN cat)) (VP (VB runs)))"
# Shares no production with DOG_TREE in either mode
DISJOINT_TREE = "(X (Y (Z w)))"

PO_TREE = (
    "(S (NP (DT a) (NN man)) (VP (VB tells) (NP (NN stories))"
    " (PP (IN to) (NP (NN people)))))"
)
DO_TREE = "(S (NP (DT a) (NN man)) (VP (VB tells) (NP (NN people)) (NP (NN stories))))"

PHRASE_LABELS = ("S", "NP", "VP", "PP")
TAG_LABELS = ("DT", "NN", "VB", "IN")
WORDS = ("a", "b", "c")


@pytest.fixture
def fixtures_dir() -> Path:
    return FIXTURES_DIR


@pytest.fixture
def tree() -> Callable[[str], SyntaxTree]:
    """Parse a bracketed string"""
    return parse_bracketed


def random_tree(rng: random.Random, max_internal: int = 10) -> SyntaxTree:
    """Random valid tree with at most max_internal internal nodes"""
    budget = [max_internal]

    def build(depth: int) -> TreeNode:
        budget[0] -= 1
        if depth >= 3 or budget[0] <= 1 or rng.random() < 0.35:
            return TreeNode(rng.choice(TAG_LABELS), (TreeNode(rng.choice(WORDS)),))
        children = []
        for _ in range(rng.randint(1, 3)):
            if budget[0] <= 0:
                break
            children.append(build(depth + 1))
        return TreeNode(rng.choice(PHRASE_LABELS), tuple(children))

    return SyntaxTree(build(0))


@pytest.fixture
def random_trees() -> Callable[[int, int], List[SyntaxTree]]:
    """Deterministic batch of random trees: random_trees(count, seed)"""

    def make(count: int, seed: int = 0) -> List[SyntaxTree]:
        rng = random.Random(seed)
        return [random_tree(rng) for _ in range(count)]

    return make


def make_record(
    record_id: str,
    structure_type: str = "simple_po",
    positive: str = PO_TREE,
    negative: str = DO_TREE,
    predicted: str = PO_TREE,
    sentence_similarity: Optional[float] = None,
    image_similarity: Optional[float] = None,
    **extra: Any,
) -> Dict[str, Any]:
    """One dataset line as a dict"""
    line: Dict[str, Any] = {
        "id": record_id,
        "type": structure_type,
        "prime_pos_tree": positive,
        "prime_neg_tree": negative,
        "predicted_tree": predicted,
    }
    if sentence_similarity is not None:
        line["sentence_similarity"] = sentence_similarity
    if image_similarity is not None:
        line["image_similarity"] = image_similarity
    line.update(extra)
    return line


@pytest.fixture
def write_jsonl(tmp_path: Path) -> Callable[..., Path]:
    """Write dicts (or raw strings) as JSONL lines into tmp_path"""

    def write(lines: List[Any], name: str = "dataset.jsonl") -> Path:
        path = tmp_path / name
        rendered = [line if isinstance(line, str) else json.dumps(line) for line in lines]
        path.write_text("\n".join(rendered) + "\n", encoding="utf-8")
        return path

    return write


@pytest.fixture
def write_tree(tmp_path: Path) -> Callable[[str, str], Path]:
    def write(name: str, text: str) -> Path:
        path = tmp_path / name
        path.write_text(text + "\n", encoding="utf-8")
        return path

    return write


@pytest.fixture(autouse=True)
def _reset_logging() -> Iterator[None]:
    """CLI runs point structlog at captured streams; restore the defaults"""
    yield
    structlog.reset_defaults()


@pytest.fixture(autouse=True)
def _isolated_env(monkeypatch: pytest.MonkeyPatch, tmp_path: Path) -> None:
    """No SPIKIT_* variables or .env file leak into a test"""
    for key in list(os.environ):
        if key.startswith("SPIKIT_"):
            monkeypatch.delenv(key)
    monkeypatch.chdir(tmp_path)
