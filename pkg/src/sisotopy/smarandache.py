"""Detection and certification of Smarandache substructures.

A table is Smarandache when it has a proper subset ``M`` with
``2 <= |M| <= n-1`` that is a subsemigroup (for plain groupoids) or a
subgroup (for semigroups, quasigroups and loops).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, List, Optional

from .errors import OrderTooLarge
from .magma import AlgebraClass, MagmaTable, classify

SUBSEMIGROUP = "subsemigroup"
SUBGROUP = "subgroup"
KINDS = (SUBSEMIGROUP, SUBGROUP)

DEFAULT_MAX_ORDER = 16


@dataclass(frozen=True)
class SCertificate:
    subset: tuple
    kind: str
    identity: Optional[int] = None
    closure_checked: bool = True

    @property
    def members(self) -> frozenset:
        return frozenset(self.subset)

    def as_dict(self) -> dict:
        return {
            "subset": list(self.subset),
            "kind": self.kind,
            "identity": self.identity,
            "closure_checked": self.closure_checked,
        }


def kind_for(cls: AlgebraClass) -> str:
    if cls.is_semigroup or cls.is_quasigroup:
        return SUBGROUP
    return SUBSEMIGROUP


def _associative_on(c, members) -> bool:
    for x in members:
        cx = c[x]
        for y in members:
            cxy = c[cx[y]]
            cy = c[y]
            for z in members:
                if cxy[z] != cx[cy[z]]:
                    return False
    return True


def _local_identity(c, members) -> Optional[int]:
    for e in members:
        ce = c[e]
        if all(ce[x] == x and c[x][e] == x for x in members):
            return e
    return None


def certificate_problem(t: MagmaTable, cert: SCertificate) -> Optional[str]:
    """Reason code for the first failed certificate invariant, or ``None``."""
    n = t.order
    c = t.cells
    subset = cert.subset
    if cert.kind not in KINDS:
        return "bad_kind"
    if any(not 0 <= x < n for x in subset):
        return "out_of_range"
    members = set(subset)
    if len(members) != len(subset):
        return "repeated_element"
    if not 2 <= len(members) <= n - 1:
        return "trivial_size"
    if any(c[x][y] not in members for x in members for y in members):
        return "not_closed"
    if not _associative_on(c, members):
        return "not_associative"
    if cert.kind == SUBGROUP:
        e = _local_identity(c, members)
        if e is None:
            return "no_identity"
        if cert.identity is not None and cert.identity != e:
            return "identity_mismatch"
        for x in members:
            if not any(c[x][y] == e and c[y][x] == e for y in members):
                return "no_inverse"
    return None


def verify_certificate(t: MagmaTable, cert: SCertificate) -> bool:
    return certificate_problem(t, cert) is None


def _close(c, members: list, mask: int, n: int) -> Optional[int]:
    """Grow ``members`` in place to its closure; ``None`` once it fills the set."""
    full = (1 << n) - 1
    if mask == full:
        return None
    k = 0
    while k < len(members):
        x = members[k]
        cx = c[x]
        for j in range(k + 1):
            y = members[j]
            for z in (cx[y], c[y][x]):
                if not mask >> z & 1:
                    mask |= 1 << z
                    if mask == full:
                        return None
                    members.append(z)
        k += 1
    return mask


def closed_subsets(t: MagmaTable) -> List[int]:
    """Bitmasks of every closed proper non-empty subset of ``t``."""
    c = t.cells
    n = len(c)
    found = {}
    stack = []
    for x in range(n):
        members = [x]
        mask = _close(c, members, 1 << x, n)
        if mask is not None and mask not in found:
            found[mask] = members
            stack.append(mask)
    while stack:
        mask = stack.pop()
        base = found[mask]
        for y in range(n):
            if mask >> y & 1:
                continue
            members = base + [y]
            grown = _close(c, members, mask | 1 << y, n)
            if grown is not None and grown not in found:
                found[grown] = members
                stack.append(grown)
    return list(found)


def _mask_to_tuple(mask: int) -> tuple:
    out = []
    x = 0
    while mask:
        if mask & 1:
            out.append(x)
        mask >>= 1
        x += 1
    return tuple(out)


def find_s_structures(
    t: MagmaTable, kind: str, max_order: int = DEFAULT_MAX_ORDER
) -> List[SCertificate]:
    """All certified S-subsets of ``t`` of the given kind, in lexicographic order."""
    if kind not in KINDS:
        raise ValueError(f"unknown kind {kind!r}")
    if t.order > max_order:
        raise OrderTooLarge(f"order {t.order} exceeds bound {max_order}")
    c = t.cells
    certs = []
    for subset in sorted(_mask_to_tuple(m) for m in closed_subsets(t)):
        if not 2 <= len(subset) <= t.order - 1:
            continue
        if not _associative_on(c, subset):
            continue
        identity = None
        if kind == SUBGROUP:
            identity = _local_identity(c, subset)
            if identity is None:
                continue
            if not all(any(c[x][y] == identity and c[y][x] == identity for y in subset)
                       for x in subset):
                continue
        certs.append(SCertificate(subset, kind, identity))
    return certs


def s_structures(t: MagmaTable, max_order: int = DEFAULT_MAX_ORDER) -> List[SCertificate]:
    """Certificates of the kind demanded by the classification of ``t``."""
    return find_s_structures(t, kind_for(classify(t)), max_order)


def is_smarandache(t: MagmaTable, max_order: int = DEFAULT_MAX_ORDER) -> Optional[SCertificate]:
    certs = s_structures(t, max_order)
    return certs[0] if certs else None


def has_subgroup(t: MagmaTable) -> bool:
    """Fast existence test used by the census."""
    return bool(find_s_structures(t, SUBGROUP))


def subset_certificate(t: MagmaTable, subset: Iterable[int], kind: str) -> Optional[SCertificate]:
    """Certificate for ``subset`` if it qualifies, else ``None``."""
    subset = tuple(sorted(subset))
    c = t.cells
    identity = _local_identity(c, subset) if kind == SUBGROUP else None
    cert = SCertificate(subset, kind, identity)
    return cert if verify_certificate(t, cert) else None
