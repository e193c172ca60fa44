"""Multiplication tables, permutations and translations of finite binary systems.

Elements are always ``0..n-1``.  Maps act on the right, so the image of ``x``
under ``P`` is ``xP`` and ``compose(P, Q)`` means "first ``P``, then ``Q``".
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import permutations as _iter_permutations
from typing import Iterable, Iterator, Optional, Sequence

from .errors import DegreeMismatch, NotBijective


class Permutation:
    """A bijection of ``{0, ..., n-1}`` stored as its image list."""

    __slots__ = ("images",)

    def __init__(self, images: Iterable[int]):
        images = tuple(int(i) for i in images)
        if not images:
            raise ValueError("a permutation needs degree >= 1")
        if sorted(images) != list(range(len(images))):
            raise NotBijective(f"{list(images)} is not a permutation of 0..{len(images) - 1}")
        self.images = images

    @classmethod
    def identity(cls, n: int) -> "Permutation":
        return cls(range(n))

    @classmethod
    def _trusted(cls, images: tuple) -> "Permutation":
        p = object.__new__(cls)
        p.images = images
        return p

    @property
    def degree(self) -> int:
        return len(self.images)

    def __call__(self, x: int) -> int:
        return self.images[x]

    def __len__(self) -> int:
        return len(self.images)

    def __iter__(self) -> Iterator[int]:
        return iter(self.images)

    def __eq__(self, other) -> bool:
        return isinstance(other, Permutation) and self.images == other.images

    def __hash__(self) -> int:
        return hash(self.images)

    def __lt__(self, other: "Permutation") -> bool:
        return self.images < other.images

    def __repr__(self) -> str:
        return f"Permutation({list(self.images)})"

    def __mul__(self, other: "Permutation") -> "Permutation":
        return compose(self, other)

    def inverse(self) -> "Permutation":
        inv = [0] * len(self.images)
        for x, y in enumerate(self.images):
            inv[y] = x
        return Permutation._trusted(tuple(inv))

    def is_identity(self) -> bool:
        return all(x == y for x, y in enumerate(self.images))

    def image_of(self, subset: Iterable[int]) -> frozenset:
        """Set image ``(M)P``."""
        return frozenset(self.images[x] for x in subset)

    def cycle_type(self) -> tuple:
        seen = [False] * len(self.images)
        lengths = []
        for start in range(len(self.images)):
            if seen[start]:
                continue
            length = 0
            x = start
            while not seen[x]:
                seen[x] = True
                x = self.images[x]
                length += 1
            lengths.append(length)
        return tuple(sorted(lengths))

    def to_spec(self) -> str:
        return ",".join(str(i) for i in self.images)


def compose(p: Permutation, q: Permutation) -> Permutation:
    """``x(pq) = (xp)q``."""
    if p.degree != q.degree:
        raise DegreeMismatch(f"degrees {p.degree} and {q.degree} differ")
    qi = q.images
    return Permutation._trusted(tuple(qi[y] for y in p.images))


def inverse(p: Permutation) -> Permutation:
    return p.inverse()


def all_permutations(n: int) -> Iterator[Permutation]:
    """Every permutation of degree ``n`` in lexicographic image order."""
    for images in _iter_permutations(range(n)):
        yield Permutation._trusted(images)


def parse_permutation(spec: str) -> Permutation:
    """Parse a comma-separated image list such as ``"1,2,3,4,0"``."""
    parts = [s for s in spec.replace(" ", "").split(",") if s]
    try:
        return Permutation(int(s) for s in parts)
    except ValueError as exc:
        raise ValueError(f"bad permutation {spec!r}: {exc}") from None


class MagmaTable:
    """An immutable ``n x n`` multiplication table, ``t[x][y] = x*y``."""

    __slots__ = ("cells", "_hash")

    def __init__(self, rows: Iterable[Iterable[int]]):
        cells = tuple(tuple(int(v) for v in row) for row in rows)
        n = len(cells)
        if n == 0:
            raise ValueError("a table needs order >= 1")
        for x, row in enumerate(cells):
            if len(row) != n:
                raise ValueError(f"row {x} has length {len(row)}, expected {n}")
            for v in row:
                if not 0 <= v < n:
                    raise ValueError(f"row {x} has entry {v} outside 0..{n - 1}")
        self.cells = cells
        self._hash = hash(cells)

    @classmethod
    def _trusted(cls, cells: tuple) -> "MagmaTable":
        t = object.__new__(cls)
        t.cells = cells
        t._hash = hash(cells)
        return t

    @classmethod
    def from_function(cls, n: int, op) -> "MagmaTable":
        return cls([[op(x, y) for y in range(n)] for x in range(n)])

    @property
    def order(self) -> int:
        return len(self.cells)

    def __len__(self) -> int:
        return len(self.cells)

    def __getitem__(self, x: int) -> tuple:
        return self.cells[x]

    def op(self, x: int, y: int) -> int:
        return self.cells[x][y]

    def column(self, y: int) -> tuple:
        return tuple(row[y] for row in self.cells)

    def __eq__(self, other) -> bool:
        return isinstance(other, MagmaTable) and self.cells == other.cells

    def __hash__(self) -> int:
        return self._hash

    def __repr__(self) -> str:
        return f"MagmaTable({[list(r) for r in self.cells]})"

    def __str__(self) -> str:
        return "\n".join(" ".join(str(v) for v in row) for row in self.cells)


@dataclass(frozen=True)
class AlgebraClass:
    is_groupoid: bool = True
    is_semigroup: bool = False
    is_quasigroup: bool = False
    is_loop: bool = False
    is_group: bool = False
    identity: Optional[int] = None

    @property
    def name(self) -> str:
        if self.is_group:
            return "group"
        if self.is_loop:
            return "loop"
        if self.is_quasigroup:
            return "quasigroup"
        if self.is_semigroup:
            return "semigroup"
        return "groupoid"

    def as_dict(self) -> dict:
        return {
            "groupoid": self.is_groupoid,
            "semigroup": self.is_semigroup,
            "quasigroup": self.is_quasigroup,
            "loop": self.is_loop,
            "group": self.is_group,
            "identity": self.identity,
            "name": self.name,
        }


def is_latin(t: MagmaTable) -> bool:
    n = t.order
    full = set(range(n))
    return all(set(row) == full for row in t.cells) and all(
        set(t.column(y)) == full for y in range(n)
    )


def is_associative(t: MagmaTable) -> bool:
    c = t.cells
    n = len(c)
    for x in range(n):
        cx = c[x]
        for y in range(n):
            cxy = c[cx[y]]
            cy = c[y]
            for z in range(n):
                if cxy[z] != cx[cy[z]]:
                    return False
    return True


def two_sided_identity(t: MagmaTable) -> Optional[int]:
    c = t.cells
    n = len(c)
    for e in range(n):
        if all(c[e][x] == x and c[x][e] == x for x in range(n)):
            return e
    return None


def classify(t: MagmaTable) -> AlgebraClass:
    semigroup = is_associative(t)
    quasigroup = is_latin(t)
    e = two_sided_identity(t)
    loop = quasigroup and e is not None
    return AlgebraClass(
        is_semigroup=semigroup,
        is_quasigroup=quasigroup,
        is_loop=loop,
        is_group=loop and semigroup,
        identity=e,
    )


def left_translation(t: MagmaTable, x: int) -> Permutation:
    """``L_x : y -> x*y``."""
    row = t.cells[x]
    if len(set(row)) != len(row):
        raise NotBijective(f"row {x} is not a permutation: {list(row)}")
    return Permutation._trusted(row)


def right_translation(t: MagmaTable, x: int) -> Permutation:
    """``R_x : y -> y*x``."""
    col = t.column(x)
    if len(set(col)) != len(col):
        raise NotBijective(f"column {x} is not a permutation: {list(col)}")
    return Permutation._trusted(col)


def relabel(t: MagmaTable, p: Permutation) -> MagmaTable:
    """Isomorphic image of ``t`` under ``p``: ``r[xp][yp] = (t[x][y])p``."""
    n = t.order
    if p.degree != n:
        raise DegreeMismatch(f"permutation degree {p.degree} != table order {n}")
    im = p.images
    inv = p.inverse().images
    c = t.cells
    return MagmaTable._trusted(
        tuple(tuple(im[c[inv[x]][inv[y]]] for y in range(n)) for x in range(n))
    )


def subset_is_closed(t: MagmaTable, subset: Sequence[int]) -> bool:
    s = set(subset)
    c = t.cells
    return all(c[x][y] in s for x in s for y in s)
