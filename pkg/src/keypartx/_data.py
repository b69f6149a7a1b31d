"""Location of bundled data files (lexica, treebank, tables).

``KEYPARTX_DATA_DIR`` points at a directory whose files shadow the bundled
ones; files missing there fall back to the bundled copy.
"""
from __future__ import annotations

import os
from pathlib import Path

DATA_ENV = "KEYPARTX_DATA_DIR"
BUNDLED = Path(__file__).resolve().parent / "data"


def data_path(name: str) -> Path:
    root = os.environ.get(DATA_ENV)
    if root:
        p = Path(root) / name
        if p.exists():
            return p
    return BUNDLED / name


def read_lines(path) -> list[str]:
    """Non-blank, non-comment lines of a UTF-8 text file, stripped."""
    out = []
    with open(path, encoding="utf-8") as f:
        for line in f:
            line = line.strip()
            if line and not line.startswith("#"):
                out.append(line)
    return out


def read_word_list(path) -> list[str]:
    return [line.lower() for line in read_lines(path)]


def read_tsv(path) -> list[list[str]]:
    return [line.split("\t") for line in read_lines(path)]
