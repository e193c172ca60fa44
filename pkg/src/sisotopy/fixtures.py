"""Worked example tables and small groups used by the audits and tests."""

from __future__ import annotations

from itertools import permutations, product

from .magma import MagmaTable, Permutation

EXAMPLE1_DOT = MagmaTable([
    [0, 1, 3, 4, 2],
    [1, 0, 2, 3, 4],
    [3, 4, 1, 2, 0],
    [4, 2, 0, 1, 3],
    [2, 3, 4, 0, 1],
])

EXAMPLE1_STAR = MagmaTable([
    [1, 0, 4, 2, 3],
    [3, 1, 2, 0, 4],
    [4, 2, 1, 3, 0],
    [0, 4, 3, 1, 2],
    [2, 3, 0, 4, 1],
])

EXAMPLE1_TRIPLE_IMAGES = ([1, 2, 3, 4, 0], [1, 2, 4, 0, 3], [1, 2, 0, 4, 3])

EXAMPLE2_TIMES6 = MagmaTable.from_function(6, lambda x, y: (x * y) % 6)

EXAMPLE2_STAR = MagmaTable([
    [0, 1, 2, 3, 4, 5],
    [4, 1, 1, 4, 4, 1],
    [5, 1, 5, 2, 1, 2],
    [3, 1, 5, 0, 4, 2],
    [1, 1, 1, 1, 1, 1],
    [2, 1, 2, 5, 1, 5],
])

EXAMPLE2_TRIPLE_IMAGES = ([4, 3, 5, 1, 2, 0], [1, 3, 2, 4, 5, 0], [1, 0, 5, 4, 2, 3])


def example1_triple():
    from .isotopy import IsotopismTriple

    return IsotopismTriple(*(Permutation(p) for p in EXAMPLE1_TRIPLE_IMAGES))


def example2_triple():
    from .isotopy import IsotopismTriple

    return IsotopismTriple(*(Permutation(p) for p in EXAMPLE2_TRIPLE_IMAGES))


def cyclic(n: int) -> MagmaTable:
    return MagmaTable.from_function(n, lambda x, y: (x + y) % n)


def direct_product(a: MagmaTable, b: MagmaTable) -> MagmaTable:
    """Pairs ``(i, j)`` are encoded as ``i * |b| + j``."""
    m = b.order
    pairs = list(product(range(a.order), range(m)))
    return MagmaTable([
        [a[x1][y1] * m + b[x2][y2] for (y1, y2) in pairs] for (x1, x2) in pairs
    ])


def klein_four() -> MagmaTable:
    return direct_product(cyclic(2), cyclic(2))


def symmetric_group(k: int) -> MagmaTable:
    """S_k on ``k!`` elements, identity first; product ``x*y`` is "x then y"."""
    elems = list(permutations(range(k)))
    index = {p: i for i, p in enumerate(elems)}
    return MagmaTable([
        [index[tuple(q[p[i]] for i in range(k))] for q in elems] for p in elems
    ])


def dihedral(m: int) -> MagmaTable:
    """Dihedral group of order ``2m``: ``r^i s^j`` encoded as ``i + m*j``."""
    def op(x, y):
        i1, j1 = x % m, x // m
        i2, j2 = y % m, y // m
        i = (i1 + (i2 if j1 == 0 else -i2)) % m
        return i + m * ((j1 + j2) % 2)

    return MagmaTable.from_function(2 * m, op)


def quaternion() -> MagmaTable:
    # 0..7 = 1, -1, i, -i, j, -j, k, -k
    basis = ["1", "i", "j", "k"]
    mult = {("1", b): (1, b) for b in basis}
    mult.update({(a, "1"): (1, a) for a in basis})
    mult.update({
        ("i", "i"): (-1, "1"), ("j", "j"): (-1, "1"), ("k", "k"): (-1, "1"),
        ("i", "j"): (1, "k"), ("j", "k"): (1, "i"), ("k", "i"): (1, "j"),
        ("j", "i"): (-1, "k"), ("k", "j"): (-1, "i"), ("i", "k"): (-1, "j"),
    })

    def decode(x):
        return (1 if x % 2 == 0 else -1), basis[x // 2]

    def encode(sign, b):
        return 2 * basis.index(b) + (0 if sign == 1 else 1)

    def op(x, y):
        s1, b1 = decode(x)
        s2, b2 = decode(y)
        s, b = mult[(b1, b2)]
        return encode(s1 * s2 * s, b)

    return MagmaTable.from_function(8, op)


def groups_of_order_8() -> dict:
    z2 = cyclic(2)
    return {
        "Z8": cyclic(8),
        "Z4xZ2": direct_product(cyclic(4), z2),
        "Z2^3": direct_product(direct_product(z2, z2), z2),
        "D4": dihedral(4),
        "Q8": quaternion(),
    }


def small_groups() -> dict:
    """Every group of order <= 8 up to isomorphism, one table each."""
    groups = {
        "Z1": cyclic(1),
        "Z2": cyclic(2),
        "Z3": cyclic(3),
        "Z4": cyclic(4),
        "Z2^2": klein_four(),
        "Z5": cyclic(5),
        "Z6": cyclic(6),
        "S3": symmetric_group(3),
        "Z7": cyclic(7),
    }
    groups.update(groups_of_order_8())
    return groups
