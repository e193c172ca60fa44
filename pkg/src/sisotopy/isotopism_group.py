"""The group of isotopism triples of degree ``n`` and its Smarandache parts.

Two readings of the Smarandache isotopisms are kept apart:

* restricted triples ``(U|H, V|H, W|H)`` of all triples carrying ``H`` onto a
  fixed ``K`` (count ``(m!)^3``), and
* the full-degree setwise stabilizer of ``H`` (order ``(m!(n-m)!)^3``), which
  is the reading under which the set is a subgroup of ISOT.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from math import factorial
from typing import List

from .errors import InvalidSubgroupSize, OrderTooLarge
from .isotopy import IsotopismTriple, compose_triples
from .magma import Permutation, all_permutations

MATERIALIZE_BOUND = 4


def isot_order(n: int) -> int:
    if n < 1:
        raise ValueError("order must be positive")
    return factorial(n) ** 3


def _check_materializable(n: int):
    if n < 1:
        raise ValueError("order must be positive")
    if n > MATERIALIZE_BOUND:
        raise OrderTooLarge(f"cannot materialize ISOT beyond degree {MATERIALIZE_BOUND}")


def enumerate_isot(n: int) -> List[IsotopismTriple]:
    _check_materializable(n)
    perms = list(all_permutations(n))
    return [IsotopismTriple(u, v, w) for u, v, w in product(perms, repeat=3)]


def _check_m(n: int, m: int):
    if not 2 <= m <= n - 1:
        raise InvalidSubgroupSize(f"S-subset size {m} must satisfy 2 <= m <= {n - 1}")


def _generators(n: int, principal: bool = False) -> List[IsotopismTriple]:
    """A transposition and an n-cycle in each slot; they generate S_n^3 (or S_n^2 x 1)."""
    e = Permutation.identity(n)
    if n == 1:
        return [IsotopismTriple(e, e, e)]
    swap = Permutation([1, 0] + list(range(2, n)))
    cycle = Permutation(list(range(1, n)) + [0])
    gens = []
    for p in (swap, cycle):
        gens += [IsotopismTriple(p, e, e), IsotopismTriple(e, p, e)]
        if not principal:
            gens.append(IsotopismTriple(e, e, p))
    return gens


def generated_subgroup(gens: List[IsotopismTriple]) -> set:
    n = gens[0].degree
    seen = {IsotopismTriple.identity(n)}
    frontier = list(seen)
    while frontier:
        nxt = []
        for a in frontier:
            for g in gens:
                b = compose_triples(a, g)
                if b not in seen:
                    seen.add(b)
                    nxt.append(b)
        frontier = nxt
    return seen


@dataclass
class GroupCheck:
    size: int
    has_identity: bool
    closed: bool
    inverses: bool
    associative: bool
    method: str

    @property
    def is_group(self) -> bool:
        return self.has_identity and self.closed and self.inverses and self.associative

    def as_dict(self) -> dict:
        return {
            "size": self.size,
            "identity": self.has_identity,
            "closed": self.closed,
            "inverses": self.inverses,
            "associative": self.associative,
            "is_group": self.is_group,
            "method": self.method,
        }


def _associative_on(sample) -> bool:
    return all(
        compose_triples(compose_triples(a, b), c) == compose_triples(a, compose_triples(b, c))
        for a in sample for b in sample for c in sample
    )


def check_group_axioms(
    elements: List[IsotopismTriple],
    generators: List[IsotopismTriple] = None,
    pairwise_limit: int = 50_000,
) -> GroupCheck:
    """Verify the group axioms on a finite set of triples.

    Closure is checked on every pair while ``|S|^2`` stays under
    ``pairwise_limit``.  Larger sets must come with ``generators``; closure
    then means ``S`` equals the set generated from them by composition.
    Composition of maps is associative, so associativity is spot-checked on a
    bounded sample.
    """
    elems = set(elements)
    n = elements[0].degree
    has_identity = IsotopismTriple.identity(n) in elems
    inverses = all(a.inverse() in elems for a in elems)
    if len(elems) ** 2 <= pairwise_limit:
        closed = all(compose_triples(a, b) in elems for a in elems for b in elems)
        associative = _associative_on(sorted(elems, key=lambda a: (a.u.images, a.v.images, a.w.images))[:24])
        return GroupCheck(len(elems), has_identity, closed, inverses, associative, "pairwise")
    if generators is None:
        raise ValueError("set too large for pairwise closure; pass generators")
    closed = all(g in elems for g in generators) and generated_subgroup(generators) == elems
    associative = _associative_on(generators)
    return GroupCheck(len(elems), has_identity, closed, inverses, associative, "generated")


def sisot_restricted_count(n: int, m: int, verify: bool = True) -> int:
    """``(m!)^3``; for ``n <= 4`` also recomputed by enumerating all of ISOT."""
    _check_m(n, m)
    expected = factorial(m) ** 3
    if verify and n <= MATERIALIZE_BOUND:
        counted = restricted_triple_count(n, tuple(range(m)), tuple(range(n - m, n)))
        if counted != expected:
            raise AssertionError(f"enumeration found {counted} restrictions, formula says {expected}")
    return expected


def restricted_triple_count(n: int, h: tuple, k: tuple) -> int:
    """Distinct ``(U|H, V|H, W|H)`` over all triples with ``(H)A = K`` for every component."""
    h_set, k_set = frozenset(h), frozenset(k)
    seen = set()
    for a in enumerate_isot(n):
        if a.maps_subset(h_set) == k_set:
            seen.add(_restrict(a, h))
    return len(seen)


@dataclass
class Stabilizer:
    degree: int
    subset: tuple
    elements: List[IsotopismTriple]
    axioms: GroupCheck
    restriction_image: set
    restriction_homomorphic: bool

    @property
    def order(self) -> int:
        return len(self.elements)

    @property
    def expected_order(self) -> int:
        m = len(self.subset)
        return (factorial(m) * factorial(self.degree - m)) ** 3

    def as_dict(self) -> dict:
        m = len(self.subset)
        return {
            "reading": "setwise stabilizer (full-degree triples)",
            "degree": self.degree,
            "subset": list(self.subset),
            "order": self.order,
            "expected_order": self.expected_order,
            "axioms": self.axioms.as_dict(),
            "restriction_image_order": len(self.restriction_image),
            "restriction_expected": factorial(m) ** 3,
            "restriction_homomorphic": self.restriction_homomorphic,
        }


def _restrict(a: IsotopismTriple, h: tuple) -> tuple:
    return tuple(tuple(p(x) for x in h) for p in a.components())


def sisot_stabilizer(n: int, subset) -> Stabilizer:
    h = tuple(sorted(set(subset)))
    _check_m(n, len(h))
    _check_materializable(n)
    h_set = frozenset(h)
    fixers = [p for p in all_permutations(n) if p.image_of(h_set) == h_set]
    elements = [IsotopismTriple(u, v, w) for u, v, w in product(fixers, repeat=3)]
    axioms = check_group_axioms(elements)
    image = {_restrict(a, h) for a in elements}
    # restriction to H commutes with composition
    pos = {x: i for i, x in enumerate(h)}

    def compose_restricted(r1, r2):
        return tuple(tuple(c2[pos[y]] for y in c1) for c1, c2 in zip(r1, r2))

    sample = elements[:: max(1, len(elements) // 64)]
    homomorphic = all(
        _restrict(compose_triples(a, b), h) == compose_restricted(_restrict(a, h), _restrict(b, h))
        for a in sample for b in sample
    )
    return Stabilizer(n, h, elements, axioms, image, homomorphic)


def nsisot_count(n: int, m: int) -> int:
    """``(n!)^3 - (m!)^3``; the identity triple always lies in the Smarandache part."""
    _check_m(n, m)
    e = Permutation.identity(n)
    h = frozenset(range(m))
    if IsotopismTriple(e, e, e).maps_subset(h) != h:
        raise AssertionError("identity triple failed to stabilize H")
    return isot_order(n) - factorial(m) ** 3


@dataclass
class PisotReport:
    degree: int
    order: int
    isot_order: int
    axioms: GroupCheck
    onto_component: bool
    bijective: bool
    preserves_composition: bool

    @property
    def passed(self) -> bool:
        return (
            self.axioms.is_group
            and self.order == factorial(self.degree) ** 2
            and self.onto_component
            and self.bijective
            and self.preserves_composition
        )

    def as_dict(self) -> dict:
        return {
            "degree": self.degree,
            "pisot_order": self.order,
            "expected_order": factorial(self.degree) ** 2,
            "isot_order": self.isot_order,
            "axioms": self.axioms.as_dict(),
            "onto_SnxSnx1": self.onto_component,
            "bijective": self.bijective,
            "preserves_composition": self.preserves_composition,
            "passed": self.passed,
        }


def pisot_check(n: int) -> PisotReport:
    """Principal isotopisms ``(A, B, I)`` and their correspondence with ``S_n x S_n x {I}``."""
    _check_materializable(n)
    isot = enumerate_isot(n)
    pisot = [a for a in isot if a.is_principal()]
    axioms = check_group_axioms(pisot, _generators(n, principal=True))

    # Upsilon: (A, B, I) -> <A, B, I> as a point of S_n x S_n x S_n (image tuples)
    def upsilon(a):
        return (a.u.images, a.v.images, a.w.images)

    e = tuple(range(n))
    images = {upsilon(a) for a in pisot}
    component = {(u.images, v.images, e) for u in all_permutations(n) for v in all_permutations(n)}

    def mult(x, y):
        return tuple(tuple(q[i] for i in p) for p, q in zip(x, y))

    preserves = all(
        upsilon(compose_triples(a, b)) == mult(upsilon(a), upsilon(b)) for a in pisot for b in pisot
    )
    return PisotReport(
        degree=n,
        order=len(pisot),
        isot_order=len(isot),
        axioms=axioms,
        onto_component=images == component,
        bijective=len(images) == len(pisot),
        preserves_composition=preserves,
    )
