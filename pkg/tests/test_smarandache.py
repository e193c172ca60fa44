from __future__ import annotations

import random
from itertools import combinations

import pytest

from sisotopy import fixtures
from sisotopy.errors import OrderTooLarge
from sisotopy.magma import MagmaTable, Permutation, relabel
from sisotopy.smarandache import (
    SCertificate,
    certificate_problem,
    find_s_structures,
    is_smarandache,
    s_structures,
    subset_certificate,
    verify_certificate,
)


def brute_force_subgroups(t: MagmaTable):
    """Every proper subset of size >= 2 closed under the operation (a subgroup in a finite group)."""
    n = t.order
    out = []
    for m in range(2, n):
        for sub in combinations(range(n), m):
            s = set(sub)
            if all(t[x][y] in s for x in sub for y in sub):
                out.append(sub)
    return sorted(out)


def groups_up_to_12():
    gs = dict(fixtures.small_groups())
    z3 = fixtures.cyclic(3)
    gs.update({
        "Z9": fixtures.cyclic(9),
        "Z3xZ3": fixtures.direct_product(z3, z3),
        "Z10": fixtures.cyclic(10),
        "D5": fixtures.dihedral(5),
        "Z11": fixtures.cyclic(11),
        "Z12": fixtures.cyclic(12),
        "Z6xZ2": fixtures.direct_product(fixtures.cyclic(6), fixtures.cyclic(2)),
        "D6": fixtures.dihedral(6),
    })
    return gs


@pytest.mark.parametrize("name,group", sorted(groups_up_to_12().items()))
def test_subgroups_match_brute_force(name, group):
    got = [c.subset for c in find_s_structures(group, "subgroup")]
    assert got == brute_force_subgroups(group)


def test_known_subgroup_counts():
    # proper nontrivial subgroups: Z4 -> {0,2}; S3 -> three of order 2, one of order 3; Q8 -> 4
    assert len(find_s_structures(fixtures.cyclic(4), "subgroup")) == 1
    assert len(find_s_structures(fixtures.symmetric_group(3), "subgroup")) == 4
    assert len(find_s_structures(fixtures.quaternion(), "subgroup")) == 4
    assert len(find_s_structures(fixtures.dihedral(4), "subgroup")) == 8


def test_example_certificates():
    assert [c.subset for c in s_structures(fixtures.EXAMPLE1_DOT)] == [(0, 1)]
    assert [c.subset for c in s_structures(fixtures.EXAMPLE1_STAR)] == [(1, 2)]
    times6 = s_structures(fixtures.EXAMPLE2_TIMES6)
    assert {c.subset for c in times6} >= {(1, 5), (2, 4)}
    assert all(c.kind == "subgroup" for c in times6)
    star = s_structures(fixtures.EXAMPLE2_STAR)
    assert {c.subset for c in star} >= {(2, 5), (0, 3)}
    assert all(c.kind == "subsemigroup" for c in star)


def test_prime_cyclic_groups_are_not_smarandache():
    for p in (2, 3, 5, 7):
        assert is_smarandache(fixtures.cyclic(p)) is None


def test_trivial_sizes_never_certified():
    t = fixtures.cyclic(4)
    assert certificate_problem(t, SCertificate((0,), "subgroup", 0)) == "trivial_size"
    assert certificate_problem(t, SCertificate((0, 1, 2, 3), "subgroup", 0)) == "trivial_size"


def test_certificate_rejections():
    t = fixtures.cyclic(4)
    assert certificate_problem(t, SCertificate((0, 1), "subgroup", 0)) == "not_closed"
    assert certificate_problem(t, SCertificate((0, 2), "subgroup", 2)) == "identity_mismatch"
    assert certificate_problem(t, SCertificate((0, 2), "subgroup", 0)) is None
    assert subset_certificate(t, [2, 0], "subgroup").identity == 0
    assert subset_certificate(t, [1, 3], "subgroup") is None


def test_subgroup_needs_associativity_on_the_subset():
    # non-associative closed Latin subsquare on {0,1,2}: the quasigroup x*y = 2x+2y mod 3
    q = [[(2 * x + 2 * y) % 3 for y in range(3)] for x in range(3)]
    rows = [r + [3] for r in q] + [[3, 3, 3, 0]]
    t = MagmaTable(rows)
    assert subset_certificate(t, (0, 1, 2), "subgroup") is None
    assert subset_certificate(t, (0, 1, 2), "subsemigroup") is None


def test_every_certificate_verifies():
    tables = list(groups_up_to_12().values()) + [
        fixtures.EXAMPLE1_DOT, fixtures.EXAMPLE1_STAR, fixtures.EXAMPLE2_TIMES6, fixtures.EXAMPLE2_STAR,
    ]
    for t in tables:
        for c in s_structures(t):
            assert verify_certificate(t, c)


def test_isomorphism_invariance():
    rng = random.Random(3)
    tables = [fixtures.EXAMPLE1_DOT, fixtures.EXAMPLE1_STAR, fixtures.EXAMPLE2_TIMES6,
              fixtures.EXAMPLE2_STAR, fixtures.cyclic(6), fixtures.cyclic(5), fixtures.symmetric_group(3)]
    for t in tables:
        for _ in range(20):
            p = Permutation(rng.sample(range(t.order), t.order))
            before = {c.members for c in s_structures(t)}
            after = {c.members for c in s_structures(relabel(t, p))}
            assert {p.image_of(m) for m in before} == after


def test_order_bound():
    with pytest.raises(OrderTooLarge):
        find_s_structures(fixtures.cyclic(17), "subgroup")
    assert find_s_structures(fixtures.cyclic(17), "subgroup", max_order=17) == []
