#!/usr/bin/env python3
"""
PRISMATIC export adapter

Converts a downloaded PRISMATIC export (CSV, JSON array or JSONL) into the
one-sentence-per-line text format read by ``spikit stats``.

Usage:
    python scripts/prismatic_adapter.py export.csv sentences.txt
    python scripts/prismatic_adapter.py export.jsonl sentences.txt --column caption
"""

import argparse
import csv
import json
import sys
from pathlib import Path
from typing import Any, Dict, Iterator, List, Optional

# Tried in order when --column is not given
SENTENCE_COLUMNS = ("sentence", "text", "caption", "prime_sentence", "prime")


def _rows(path: Path) -> Iterator[Dict[str, Any]]:
    suffix = path.suffix.lower()
    with open(path, encoding="utf-8", newline="") as f:
        if suffix == ".csv":
            yield from csv.DictReader(f)
        elif suffix == ".json":
            data = json.load(f)
            if isinstance(data, dict):
                data = next((v for v in data.values() if isinstance(v, list)), [])
            yield from data
        else:
            for line in f:
                if line.strip():
                    yield json.loads(line)


def pick_column(row: Dict[str, Any], column: Optional[str]) -> str:
    if column is not None:
        if column not in row:
            raise KeyError(f"column {column!r} not in export (have {sorted(row)})")
        return column
    for name in SENTENCE_COLUMNS:
        if name in row:
            return name
    raise KeyError(f"no sentence column found (have {sorted(row)})")


def convert(source: Path, column: Optional[str] = None) -> List[str]:
    """Sentences of an export, whitespace-normalized, in file order"""
    sentences: List[str] = []
    chosen: Optional[str] = None
    for row in _rows(source):
        if chosen is None:
            chosen = pick_column(row, column)
        value = row.get(chosen)
        if value is None:
            continue
        sentence = " ".join(str(value).split())
        if sentence:
            sentences.append(sentence)
    return sentences


def main() -> int:
    parser = argparse.ArgumentParser(description="PRISMATIC export to sentence lines")
    parser.add_argument("source", type=Path, help="CSV, JSON or JSONL export")
    parser.add_argument("target", type=Path, help="Output text file")
    parser.add_argument("--column", help="Sentence column name")
    args = parser.parse_args()

    try:
        sentences = convert(args.source, args.column)
    except (OSError, KeyError, ValueError) as e:
        print(f"Conversion failed: {e}", file=sys.stderr)
        return 2

    args.target.write_text("\n".join(sentences) + "\n", encoding="utf-8")
    print(f"Wrote {len(sentences)} sentences to {args.target}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
