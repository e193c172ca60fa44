"""Enumeration and classification of small loops.

Loops are enumerated in reduced form (identity ``0``, first row and column in
natural order), so the number of loops of order ``n`` is the number of
reduced Latin squares.  Isomorphy classes are keyed by a canonical form;
isotopy classes are unions of isomorphy classes linked by f,g-principal
isotopes, since every loop isotope of a loop is isomorphic to one of those.
"""

from __future__ import annotations

import hashlib
import logging
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import permutations, product
from pathlib import Path
from typing import Dict, Iterator, List, Optional, Tuple

import numpy as np

from .errors import NotALoop, OrderTooLarge
from .isotopy import fg_principal_isotope
from .magma import MagmaTable, Permutation, classify
from .smarandache import SUBGROUP, find_s_structures

log = logging.getLogger(__name__)

DEFAULT_MAX_ORDER = 6
LONG_RUN_ORDER = 7
CHECKPOINT_FORMAT = "sisotopy-census-checkpoint-1"
WORKERS_ENV = "SISOTOPY_WORKERS"


def default_workers() -> int:
    try:
        return max(1, int(os.environ.get(WORKERS_ENV, "1")))
    except ValueError:
        return 1


def _check_order(n: int, long_run: bool, max_order: int = DEFAULT_MAX_ORDER):
    if n < 1:
        raise ValueError("order must be positive")
    if n > LONG_RUN_ORDER:
        raise OrderTooLarge(f"order {n} is beyond the census range (<= {LONG_RUN_ORDER})")
    if n > max_order and not long_run:
        raise OrderTooLarge(f"order {n} needs the long-run flag")


# -- enumeration -------------------------------------------------------------

def _complete(n: int, fixed_rows: List[tuple], stop_row: Optional[int] = None) -> Iterator[tuple]:
    """Fill rows ``len(fixed_rows)..stop_row-1`` of a reduced Latin square, lexicographically."""
    stop_row = n if stop_row is None else stop_row
    grid = [list(r) for r in fixed_rows]
    for x in range(len(fixed_rows), n):
        grid.append([x] + [-1] * (n - 1))
    rowm = [0] * n
    colm = [0] * n
    for x in range(n):
        for y in range(n):
            v = grid[x][y]
            if v >= 0 and (x < len(fixed_rows) or y == 0):
                rowm[x] |= 1 << v
                colm[y] |= 1 << v
    cells = [(x, y) for x in range(len(fixed_rows), stop_row) for y in range(1, n)]
    k = len(cells)
    vals = [-1] * k
    i = 0
    while True:
        if i == k:
            yield tuple(tuple(row) for row in grid[:stop_row])
            i -= 1
        if i < 0:
            return
        x, y = cells[i]
        v = vals[i]
        if v >= 0:
            bit = 1 << v
            rowm[x] ^= bit
            colm[y] ^= bit
        used = rowm[x] | colm[y]
        v += 1
        while v < n and used >> v & 1:
            v += 1
        if v < n:
            vals[i] = v
            bit = 1 << v
            rowm[x] |= bit
            colm[y] |= bit
            grid[x][y] = v
            i += 1
        else:
            vals[i] = -1
            grid[x][y] = -1
            i -= 1


def partitions(n: int) -> List[tuple]:
    """Search-tree split points: each admissible second row (empty for ``n <= 1``)."""
    if n <= 1:
        return [()]
    row0 = tuple(range(n))
    return [rows[1] for rows in _complete(n, [row0], stop_row=2)]


def enumerate_partition(n: int, second_row: tuple) -> Iterator[MagmaTable]:
    row0 = tuple(range(n))
    fixed = [row0] if n <= 1 else [row0, second_row]
    for cells in _complete(n, fixed):
        yield MagmaTable._trusted(cells)


def enumerate_reduced_loops(n: int, long_run: bool = False) -> Iterator[MagmaTable]:
    _check_order(n, long_run)
    for part in partitions(n):
        yield from enumerate_partition(n, part)


# -- canonical forms ---------------------------------------------------------

@lru_cache(maxsize=None)
def _fixing_perms(n: int) -> Tuple[np.ndarray, np.ndarray]:
    perms = np.array([(0,) + p for p in permutations(range(1, n))], dtype=np.int64)
    perms = perms.reshape(-1, n)
    inv = np.argsort(perms, axis=1)
    return perms, inv


def _loop_identity(t: MagmaTable) -> int:
    cls = classify(t)
    if not cls.is_loop:
        raise NotALoop("canonical forms are defined for loops only")
    return cls.identity


def canonical_with_perm(t: MagmaTable, identity: Optional[int] = None) -> Tuple[bytes, Permutation]:
    """Canonical key of a loop and a relabeling ``p`` with ``relabel(t, p)`` canonical.

    The key is the lexicographically least row-major cell string over all
    relabelings sending the identity to ``0``.
    """
    n = t.order
    e = _loop_identity(t) if identity is None else identity
    arr = np.array(t.cells, dtype=np.int64)
    swap = np.arange(n)
    if e != 0:
        swap[0], swap[e] = e, 0
        # relabel by the transposition (0 e)
        arr = swap[arr[np.ix_(swap, swap)]]
    perms, inv = _fixing_perms(n)
    k = perms.shape[0]
    idx = arr[inv[:, :, None], inv[:, None, :]].reshape(k, n * n)
    relabeled = np.take_along_axis(perms, idx, axis=1)
    best = int(np.lexsort(relabeled.T[::-1])[0])
    key = relabeled[best].astype(np.uint8).tobytes()
    p = perms[best][swap]
    return key, Permutation._trusted(tuple(int(v) for v in p))


def canonical_form(t: MagmaTable) -> bytes:
    return canonical_with_perm(t)[0]


def table_from_key(key: bytes) -> MagmaTable:
    n = int(round(len(key) ** 0.5))
    return MagmaTable._trusted(tuple(tuple(key[x * n:(x + 1) * n]) for x in range(n)))


# -- per-partition work ------------------------------------------------------

def _s_iso_to_canonical(t, z, canon, canon_certs) -> bool:
    """Does the canonicalizing isomorphism carry some S-subgroup of ``t`` onto one of ``canon``?"""
    for cert in find_s_structures(t, SUBGROUP):
        if tuple(sorted(z.image_of(cert.subset))) in canon_certs:
            return True
    from .isotopy import find_isomorphism

    return find_isomorphism(t, canon, smarandache=True) is not None


def census_partition(n: int, second_row: tuple, with_s: bool) -> dict:
    """Counts per canonical key for one partition.

    Each value is ``[loops, s_loops, s_loops_s_isomorphic_to_rep]``; the
    ``digest`` entry hashes the enumerated stream in order.
    """
    counts: Dict[bytes, list] = {}
    canon_certs: Dict[bytes, set] = {}
    digest = hashlib.sha256()
    for t in enumerate_partition(n, second_row):
        for row in t.cells:
            digest.update(bytes(row))
        key, z = canonical_with_perm(t, 0)
        entry = counts.setdefault(key, [0, 0, 0])
        entry[0] += 1
        if with_s and find_s_structures(t, SUBGROUP):
            entry[1] += 1
            if key not in canon_certs:
                canon_certs[key] = {c.subset for c in find_s_structures(table_from_key(key), SUBGROUP)}
            if _s_iso_to_canonical(t, z, table_from_key(key), canon_certs[key]):
                entry[2] += 1
    return {"counts": counts, "digest": digest.hexdigest()}


def _partition_job(args):
    return census_partition(*args)


# -- checkpoints -------------------------------------------------------------

def write_checkpoint(path: Path, n: int, cursor: int, total_parts: int, counts: dict, digests: list):
    lines = [
        f"format={CHECKPOINT_FORMAT}",
        f"order={n}",
        f"cursor={cursor}",
        f"partitions={total_parts}",
        f"digests={','.join(digests)}",
    ]
    for key in sorted(counts):
        lines.append(f"class.{key.hex()}={','.join(str(v) for v in counts[key])}")
    tmp = Path(str(path) + ".tmp")
    tmp.write_text("\n".join(lines) + "\n", encoding="utf-8")
    tmp.replace(path)


def read_checkpoint(path: Path) -> dict:
    data = {"counts": {}}
    for line in Path(path).read_text(encoding="utf-8").splitlines():
        if not line.strip():
            continue
        key, _, value = line.partition("=")
        if key.startswith("class."):
            data["counts"][bytes.fromhex(key[6:])] = [int(v) for v in value.split(",")]
        elif key in ("order", "cursor", "partitions"):
            data[key] = int(value)
        elif key == "digests":
            data[key] = [d for d in value.split(",") if d]
        else:
            data[key] = value
    if data.get("format") != CHECKPOINT_FORMAT:
        raise ValueError(f"{path} is not a census checkpoint")
    return data


# -- classification ----------------------------------------------------------

class _UnionFind:
    def __init__(self, keys):
        self.parent = {k: k for k in keys}

    def find(self, k):
        root = k
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[k] != root:
            self.parent[k], k = root, self.parent[k]
        return root

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            if rb < ra:
                ra, rb = rb, ra
            self.parent[rb] = ra

    def groups(self):
        out = {}
        for k in self.parent:
            out.setdefault(self.find(k), []).append(k)
        return out


def _isotopy_partition(keys, *, s_only_sets=None, edges=None) -> Dict[bytes, List[bytes]]:
    """Union isomorphy keys connected by f,g-principal isotopes.

    With ``s_only_sets`` (key -> set of certified subgroup tuples), only
    S-element pairs are used and the isotope's subgroup must land on a
    certified subgroup of the target representative.
    """
    uf = _UnionFind(keys)
    keyset = set(keys)
    for key in keys:
        t = table_from_key(key)
        n = t.order
        if s_only_sets is None:
            pairs = product(range(n), repeat=2)
            certs = None
        else:
            certs = find_s_structures(t, SUBGROUP)
            pairs = sorted({(f, g) for c in certs for f, g in product(c.subset, repeat=2)})
        for f, g in pairs:
            r = fg_principal_isotope(t, f, g)
            target, z = canonical_with_perm(r, t[f][g])
            if target not in keyset:
                if s_only_sets is None:
                    raise AssertionError("isotope outside the enumerated loops")
                continue
            if s_only_sets is not None:
                ok = any(
                    f in c.members and g in c.members
                    and tuple(sorted(z.image_of(c.subset))) in s_only_sets[target]
                    for c in certs
                )
                if not ok:
                    continue
            uf.union(key, target)
            if edges is not None:
                edges.add((key, target))
                edges.add((target, key))
    return uf.groups()


@dataclass
class ClassResult:
    count: int
    sizes: List[int]
    representatives: List[bytes]

    def as_dict(self) -> dict:
        return {
            "count": self.count,
            "sizes": self.sizes,
            "representatives": [k.hex() for k in self.representatives],
        }


def _class_result(groups: Dict[bytes, List[bytes]], weight: Dict[bytes, int]) -> ClassResult:
    reps = sorted(groups)
    return ClassResult(len(reps), [sum(weight[k] for k in groups[r]) for r in reps], reps)


@dataclass
class CensusReport:
    order: int
    total_loops: int
    isomorphy: ClassResult
    isotopy: Optional[ClassResult]
    s_census: Optional[dict] = None
    stream_digest: str = ""
    config: dict = field(default_factory=dict)

    @property
    def isomorphy_class_count(self) -> int:
        return self.isomorphy.count

    @property
    def isotopy_class_count(self) -> Optional[int]:
        return None if self.isotopy is None else self.isotopy.count

    @property
    def s_loop_count(self) -> Optional[int]:
        return None if self.s_census is None else self.s_census["s_loop_count"]

    @property
    def non_s_loop_count(self) -> Optional[int]:
        return None if self.s_census is None else self.s_census["non_s_loop_count"]

    def invariant_problems(self) -> List[str]:
        problems = []
        if sum(self.isomorphy.sizes) != self.total_loops:
            problems.append("isomorphy class sizes do not sum to the loop count")
        if self.isotopy is not None and sum(self.isotopy.sizes) != self.total_loops:
            problems.append("isotopy class sizes do not sum to the loop count")
        for key in self.isomorphy.representatives:
            t = table_from_key(key)
            if not classify(t).is_loop or t[0] != tuple(range(self.order)) or t.column(0) != t[0]:
                problems.append(f"representative {key.hex()} is not a reduced loop")
        if self.s_census is not None:
            if not self.s_census["identities"]["all_hold"]:
                problems.append("a class-sum identity failed")
            if self.s_census["flag_inconsistent_classes"]:
                problems.append("S flag varies inside an isomorphy class")
        return problems

    def as_dict(self) -> dict:
        out = {
            "order": self.order,
            "total_loops": self.total_loops,
            "isomorphy_class_count": self.isomorphy.count,
            "isomorphy_classes": self.isomorphy.as_dict(),
            "isotopy_class_count": self.isotopy_class_count,
            "isotopy_classes": None if self.isotopy is None else self.isotopy.as_dict(),
            "stream_digest": self.stream_digest,
            "config": self.config,
        }
        if self.s_census is not None:
            out["s_census"] = self.s_census
        return out


def _run_partitions(n, parts, with_s, workers, checkpoint, progress_every=1):
    counts: Dict[bytes, list] = {}
    digests: List[str] = []
    start = 0
    if checkpoint is not None and Path(checkpoint).exists():
        state = read_checkpoint(checkpoint)
        if state["order"] != n or state["partitions"] != len(parts):
            raise ValueError(f"checkpoint {checkpoint} belongs to a different run")
        start = state["cursor"]
        counts = state["counts"]
        digests = state["digests"]
        log.info("resuming order %d census at partition %d/%d", n, start, len(parts))

    def merge(result):
        for key, vals in result["counts"].items():
            entry = counts.setdefault(key, [0, 0, 0])
            for i, v in enumerate(vals):
                entry[i] += v
        digests.append(result["digest"])

    jobs = [(n, p, with_s) for p in parts[start:]]
    if workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            for i, result in enumerate(pool.map(_partition_job, jobs, chunksize=1), start=start + 1):
                merge(result)
                if checkpoint is not None and i % progress_every == 0:
                    write_checkpoint(checkpoint, n, i, len(parts), counts, digests)
    else:
        for i, job in enumerate(jobs, start=start + 1):
            merge(_partition_job(job))
            if checkpoint is not None and i % progress_every == 0:
                write_checkpoint(checkpoint, n, i, len(parts), counts, digests)
    if checkpoint is not None:
        write_checkpoint(checkpoint, n, len(parts), len(parts), counts, digests)
    return counts, digests


def run_census(
    n: int,
    classes: str = "both",
    with_s: bool = True,
    workers: int = 1,
    long_run: bool = False,
    checkpoint: Optional[Path] = None,
) -> CensusReport:
    """Enumerate all reduced loops of order ``n`` and classify them."""
    _check_order(n, long_run)
    if classes not in ("both", "isomorphy", "isotopy"):
        raise ValueError(f"unknown class mode {classes!r}")
    parts = partitions(n)
    counts, digests = _run_partitions(n, parts, with_s, workers, checkpoint)
    keys = sorted(counts)
    weight = {k: counts[k][0] for k in keys}
    total = sum(weight.values())
    stream = hashlib.sha256("".join(digests).encode()).hexdigest()
    isomorphy = _class_result({k: [k] for k in keys}, weight)
    isotopy = None
    groups = None
    if classes in ("both", "isotopy") or with_s:
        groups = _isotopy_partition(keys)
        isotopy = _class_result(groups, weight)
    report = CensusReport(
        order=n,
        total_loops=total,
        isomorphy=isomorphy,
        isotopy=isotopy,
        stream_digest=stream,
        config={"classes": classes, "s_census": with_s, "long_run": long_run, "workers": workers},
    )
    if with_s:
        report.s_census = _s_summary(counts, keys, groups)
    if classes == "isomorphy" and not with_s:
        report.isotopy = None
    return report


def _s_summary(counts, keys, isotopy_groups) -> dict:
    total = sum(counts[k][0] for k in keys)
    s_total = sum(counts[k][1] for k in keys)
    non_s = total - s_total
    inconsistent = [k.hex() for k in keys if counts[k][1] not in (0, counts[k][0])]
    s_keys = [k for k in keys if counts[k][1] > 0]

    # reading A: ordinary classes restricted to S-loops
    iso_plain = [counts[k][1] for k in s_keys]
    isot_plain = []
    for root in sorted(isotopy_groups):
        s_members = sum(counts[k][1] for k in isotopy_groups[root])
        if s_members:
            isot_plain.append(s_members)

    # reading B: classes under S-isomorphisms / S-isotopisms only; members
    # without an S-isomorphism to their representative stand alone
    iso_s = []
    for k in s_keys:
        ok, s_count = counts[k][2], counts[k][1]
        iso_s.append(ok)
        iso_s.extend([1] * (s_count - ok))
    s_sets = {k: {c.subset for c in find_s_structures(table_from_key(k), SUBGROUP)} for k in s_keys}
    edges = set()
    s_groups = _isotopy_partition(s_keys, s_only_sets=s_sets, edges=edges) if s_keys else {}
    isot_s = [sum(counts[k][1] for k in s_groups[r]) for r in sorted(s_groups)]
    # components are transitive closures; the direct relation is transitive
    # exactly when every component is a clique of direct S-isotopies
    non_transitive = [
        r.hex() for r in sorted(s_groups)
        if any((a, b) not in edges for a in s_groups[r] for b in s_groups[r] if a != b)
    ]

    identities = {
        "s_plus_non_s_equals_total": s_total + non_s == total,
        "isomorphy_sum_plain": non_s == total - sum(iso_plain),
        "isomorphy_sum_s_morphisms": non_s == total - sum(iso_s),
        "isotopy_sum_plain": non_s == total - sum(isot_plain),
        "isotopy_sum_s_morphisms": non_s == total - sum(isot_s),
    }
    identities["all_hold"] = all(identities.values())
    return {
        "s_loop_count": s_total,
        "non_s_loop_count": non_s,
        "s_isomorphy_classes_plain": {"count": len(iso_plain), "sizes": iso_plain},
        "s_isomorphy_classes_s_morphisms": {"count": len(iso_s), "sizes": iso_s},
        "s_isotopy_classes_plain": {"count": len(isot_plain), "sizes": isot_plain},
        "s_isotopy_classes_s_morphisms": {
            "count": len(isot_s),
            "sizes": isot_s,
            "direct_relation_transitive": not non_transitive,
            "components_needing_closure": non_transitive,
        },
        "per_class_s_flags": {k.hex(): counts[k][1] > 0 for k in keys},
        "flag_inconsistent_classes": inconsistent,
        "identities": identities,
    }


def isomorphy_classes(n: int, workers: int = 1) -> ClassResult:
    return run_census(n, classes="isomorphy", with_s=False, workers=workers).isomorphy


def isotopy_classes(n: int, workers: int = 1) -> ClassResult:
    return run_census(n, classes="isotopy", with_s=False, workers=workers).isotopy


def s_census(n: int, workers: int = 1) -> CensusReport:
    return run_census(n, classes="both", with_s=True, workers=workers)
