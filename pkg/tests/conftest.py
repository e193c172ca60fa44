from __future__ import annotations

import random

import pytest

from sisotopy.magma import MagmaTable


def random_latin_square(rng: random.Random, n: int) -> MagmaTable:
    """Random Latin square by randomized backtracking; independent of the census code."""
    rows = [[None] * n for _ in range(n)]

    def fill(k):
        if k == n * n:
            return True
        x, y = divmod(k, n)
        used = set(rows[x][:y]) | {rows[i][y] for i in range(x)}
        symbols = [s for s in range(n) if s not in used]
        rng.shuffle(symbols)
        for s in symbols:
            rows[x][y] = s
            if fill(k + 1):
                return True
        rows[x][y] = None
        return False

    assert fill(0)
    return MagmaTable(rows)


@pytest.fixture
def rng():
    return random.Random(20240611)


ACCEPTANCE_LINES: list = []


def record_acceptance(number: int, title: str, passed, seconds: float, detail: str = "") -> str:
    status = passed if isinstance(passed, str) else ("PASS" if passed else "FAIL")
    line = f"criterion {number:>2} {status:<5} {seconds:7.2f}s  {title}"
    if detail:
        line += f"  [{detail}]"
    ACCEPTANCE_LINES.append(line)
    print(line)
    return line


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(line)
