"""Plain-text table and triple files.

A table file is the order on its own line followed by ``n`` lines of ``n``
space-separated entries.  A triple file holds three lines of comma-separated
image lists: ``U``, ``V`` and ``W``.
"""

from __future__ import annotations

from pathlib import Path

from .isotopy import IsotopismTriple
from .magma import MagmaTable, parse_permutation


class TableParseError(ValueError):
    def __init__(self, message: str, line: int, column: int = 1):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column


def parse_table(text: str) -> MagmaTable:
    lines = text.splitlines()
    while lines and not lines[-1].strip():
        lines.pop()
    if not lines:
        raise TableParseError("empty file", 1)
    head = lines[0].strip()
    try:
        n = int(head)
    except ValueError:
        raise TableParseError(f"expected the table order, got {head!r}", 1) from None
    if n < 1:
        raise TableParseError("order must be positive", 1)
    if len(lines) - 1 != n:
        raise TableParseError(f"expected {n} rows, found {len(lines) - 1}", min(len(lines), n + 1) + 1)
    rows = []
    for i, line in enumerate(lines[1:], start=2):
        tokens = line.split()
        if len(tokens) != n:
            raise TableParseError(f"row has {len(tokens)} entries, expected {n}", i, len(line) + 1)
        row = []
        col = 1
        for tok in tokens:
            col = line.index(tok, col - 1) + 1
            try:
                v = int(tok)
            except ValueError:
                raise TableParseError(f"not an integer: {tok!r}", i, col) from None
            if not 0 <= v < n:
                raise TableParseError(f"entry {v} outside 0..{n - 1}", i, col)
            row.append(v)
            col += len(tok)
        rows.append(row)
    return MagmaTable(rows)


def serialize_table(t: MagmaTable) -> str:
    return f"{t.order}\n" + "".join(" ".join(str(v) for v in row) + "\n" for row in t.cells)


def read_table(path) -> MagmaTable:
    return parse_table(Path(path).read_text(encoding="utf-8"))


def write_table(path, t: MagmaTable) -> None:
    Path(path).write_text(serialize_table(t), encoding="utf-8")


def parse_triple(text: str) -> IsotopismTriple:
    parts = [ln.strip() for ln in text.splitlines() if ln.strip()]
    if len(parts) != 3:
        raise TableParseError(f"expected 3 permutation lines, found {len(parts)}", len(parts) + 1)
    return IsotopismTriple(*(parse_permutation(p) for p in parts))


def serialize_triple(a: IsotopismTriple) -> str:
    return "".join(p.to_spec() + "\n" for p in a.components())


def read_triple(path) -> IsotopismTriple:
    return parse_triple(Path(path).read_text(encoding="utf-8"))
