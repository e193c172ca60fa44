from __future__ import annotations

from itertools import permutations

import pytest

from sisotopy.errors import InvalidSubgroupSize, OrderTooLarge
from sisotopy.isotopism_group import (
    _generators,
    check_group_axioms,
    enumerate_isot,
    generated_subgroup,
    isot_order,
    nsisot_count,
    pisot_check,
    restricted_triple_count,
    sisot_restricted_count,
    sisot_stabilizer,
)
from sisotopy.isotopy import IsotopismTriple
from sisotopy.magma import Permutation


@pytest.mark.parametrize("n,size", [(1, 1), (2, 8), (3, 216), (4, 13824)])
def test_isot_sizes(n, size):
    isot = enumerate_isot(n)
    assert len(isot) == len(set(isot)) == size == isot_order(n)


@pytest.mark.parametrize("n", [2, 3])
def test_isot_axioms_pairwise(n):
    check = check_group_axioms(enumerate_isot(n))
    assert check.method == "pairwise" and check.is_group


def test_isot_axioms_n4_by_generators():
    check = check_group_axioms(enumerate_isot(4), _generators(4))
    assert check.method == "generated" and check.is_group


def test_large_set_requires_generators():
    with pytest.raises(ValueError):
        check_group_axioms(enumerate_isot(4))


def test_non_group_detected():
    e = Permutation.identity(3)
    c = Permutation([1, 2, 0])
    s = [IsotopismTriple(e, e, e), IsotopismTriple(c, e, e)]
    assert not check_group_axioms(s).is_group


def test_generated_subgroup_sizes():
    assert len(generated_subgroup(_generators(3))) == 216
    assert len(generated_subgroup(_generators(3, principal=True))) == 36


@pytest.mark.parametrize("n,order", [(1, 1), (2, 4), (3, 36), (4, 576)])
def test_pisot(n, order):
    report = pisot_check(n)
    assert report.order == order
    assert report.passed


def test_stabilizer_n4():
    stab = sisot_stabilizer(4, (0, 1))
    assert stab.order == stab.expected_order == 64
    assert stab.axioms.is_group
    assert len(stab.restriction_image) == 8
    assert stab.restriction_homomorphic
    # independent count: permutations of 0..3 preserving {0,1} setwise, cubed
    fixers = sum(1 for p in permutations(range(4)) if {p[0], p[1]} == {0, 1})
    assert fixers ** 3 == 64


def test_stabilizer_n3():
    stab = sisot_stabilizer(3, (0, 2))
    assert stab.order == 8 and stab.axioms.is_group


def test_restricted_counts():
    assert restricted_triple_count(4, (0, 1), (2, 3)) == 8
    assert restricted_triple_count(4, (0, 1, 2), (1, 2, 3)) == 216
    assert sisot_restricted_count(4, 2) == 8
    assert sisot_restricted_count(4, 3) == 216
    assert sisot_restricted_count(6, 3, verify=True) == 216


def test_nsisot_counts():
    assert nsisot_count(4, 2) == 13816
    assert nsisot_count(3, 2) == 208
    assert nsisot_count(5, 2) == 1727992


def test_bounds():
    with pytest.raises(OrderTooLarge):
        enumerate_isot(5)
    with pytest.raises(InvalidSubgroupSize):
        nsisot_count(4, 1)
    with pytest.raises(InvalidSubgroupSize):
        sisot_stabilizer(4, (0, 1, 2, 3))
