"""Randomized and exhaustive verification suites.

Each suite returns a plain dict with ``passed``/``checked`` counts and a
``counterexamples`` list holding enough data (tables, triples, seed) to
replay every failure.
"""

from __future__ import annotations

import zlib
from itertools import product
from typing import Dict, List

import numpy as np

from . import fixtures
from .isotopism_group import (
    _generators,
    check_group_axioms,
    enumerate_isot,
    isot_order,
    nsisot_count,
    pisot_check,
    restricted_triple_count,
    sisot_stabilizer,
)
from .isotopy import (
    IsotopismTriple,
    apply_isotopism,
    audit_corollaries,
    compose_triples,
    decompose_to_principal,
    fg_principal_isotope,
    fg_triple,
    find_fg_decomposition,
    gs_group_check,
    s_decomposition_problems,
    s_isotopism_witnesses,
)
from .magma import MagmaTable, Permutation
from .smarandache import SCertificate, s_structures

DEFAULT_SEED = 42


def rng_for(seed: int, name: str) -> np.random.Generator:
    """Independent named stream derived from one user seed."""
    ss = np.random.SeedSequence(entropy=seed, spawn_key=(zlib.crc32(name.encode()),))
    return np.random.default_rng(ss)


def _table_json(t: MagmaTable) -> list:
    return [list(r) for r in t.cells]


def random_carrier(rng, n: int, source: tuple, target: tuple) -> Permutation:
    """Uniform permutation with ``(source)P = target`` as sets."""
    src_rest = [x for x in range(n) if x not in source]
    dst_rest = [x for x in range(n) if x not in target]
    images = [0] * n
    for x, y in zip(source, rng.permutation(target)):
        images[x] = int(y)
    for x, y in zip(src_rest, rng.permutation(dst_rest)):
        images[x] = int(y)
    return Permutation(images)


def random_s_triple(rng, n: int, source: tuple, target: tuple) -> IsotopismTriple:
    return IsotopismTriple(*(random_carrier(rng, n, source, target) for _ in range(3)))


def _smallest_cert(t: MagmaTable) -> SCertificate:
    certs = s_structures(t)
    return min(certs, key=lambda c: (len(c.subset), c.subset))


def random_s_isotopism(rng, t: MagmaTable, cert: SCertificate, max_tries: int = 100):
    """A random triple carrying ``cert`` onto a random subset, with a valid S-witness."""
    n = t.order
    m = len(cert.subset)
    for _ in range(max_tries):
        target = tuple(sorted(int(v) for v in rng.choice(n, size=m, replace=False)))
        a = random_s_triple(rng, n, cert.subset, target)
        t2 = apply_isotopism(t, a)
        if any(w.source_cert == cert for w in s_isotopism_witnesses(t, t2, a)):
            return a, t2, target
    raise RuntimeError("no S-isotopism found in the sampling budget")


# -- equivalence relation ----------------------------------------------------

def equivalence_fixtures() -> Dict[str, MagmaTable]:
    return {
        "example1_dot": fixtures.EXAMPLE1_DOT,
        "example1_star": fixtures.EXAMPLE1_STAR,
        "example2_times6": fixtures.EXAMPLE2_TIMES6,
        "example2_star": fixtures.EXAMPLE2_STAR,
        "Z4": fixtures.cyclic(4),
        "Z6": fixtures.cyclic(6),
        "S3": fixtures.symmetric_group(3),
    }


def equivalence_suite(tables: Dict[str, MagmaTable], seed: int = DEFAULT_SEED) -> dict:
    """Reflexivity, symmetry and transitivity on explicit witnesses."""
    rng = rng_for(seed, "equivalence")
    checks = []
    counterexamples = []

    def record(name, label, ok, **data):
        checks.append({"fixture": name, "step": label, "passed": ok})
        if not ok:
            counterexamples.append({"fixture": name, "step": label, **data})

    planted = {
        "example1_dot": (fixtures.example1_triple(), fixtures.EXAMPLE1_STAR),
        "example2_times6": (fixtures.example2_triple(), fixtures.EXAMPLE2_STAR),
    }
    for name, t in tables.items():
        ident = IsotopismTriple.identity(t.order)
        record(name, "reflexive", bool(s_isotopism_witnesses(t, t, ident)), table=_table_json(t))
        pairs = []
        if name in planted:
            a, t2 = planted[name]
            wit = s_isotopism_witnesses(t, t2, a)
            pairs.append((a, t2, wit[0].source_cert if wit else None))
        cert = _smallest_cert(t)
        a, t2, _ = random_s_isotopism(rng, t, cert)
        pairs.append((a, t2, cert))
        for a, t2, cert in pairs:
            wit = [w for w in s_isotopism_witnesses(t, t2, a) if cert is None or w.source_cert == cert]
            record(name, "witness", bool(wit), triple=a.as_dict(), table=_table_json(t))
            if not wit:
                continue
            back = s_isotopism_witnesses(t2, t, a.inverse())
            record(name, "symmetric", any(w.target_cert == wit[0].source_cert for w in back),
                   triple=a.inverse().as_dict(), table=_table_json(t2))
            mid = wit[0].target_cert
            b, t3, _ = random_s_isotopism(rng, t2, mid)
            ab = compose_triples(a, b)
            chained = s_isotopism_witnesses(t, t3, ab)
            record(name, "transitive", any(w.source_cert == wit[0].source_cert for w in chained),
                   a=a.as_dict(), b=b.as_dict(), table=_table_json(t))
    return _summary("equivalence", checks, counterexamples, seed=seed)


# -- decompositions ----------------------------------------------------------

def decomposition_suite(t: MagmaTable, trials: int = 1000, seed: int = DEFAULT_SEED) -> dict:
    """Round-trip random S-isotopisms through the principal-isotope factorization."""
    rng = rng_for(seed, "decompose")
    cert = _smallest_cert(t)
    checks = []
    counterexamples = []
    for i in range(trials):
        a, t2, _ = random_s_isotopism(rng, t, cert)
        dec = decompose_to_principal(t, t2, a)
        problems = s_decomposition_problems(t, t2, a, dec)
        checks.append({"trial": i, "passed": not problems})
        if problems:
            counterexamples.append({"trial": i, "triple": a.as_dict(), "problems": problems})
    return _summary("decompose", checks, counterexamples, seed=seed, trials=trials,
                    table=_table_json(t), subset=list(cert.subset))


def fg_recovery_suite(tables: Dict[str, MagmaTable]) -> dict:
    """Build each Smarandache f,g-isotope and recover ``f, g`` from its triple."""
    checks = []
    counterexamples = []
    for name, tq in tables.items():
        for cert in s_structures(tq):
            if cert.kind != "subgroup":
                continue
            for f, g in product(cert.subset, repeat=2):
                tl = fg_principal_isotope(tq, f, g)
                a = fg_triple(tq, f, g)
                try:
                    got = find_fg_decomposition(tq, tl, a)
                    ok = (got.f, got.g) == (f, g) and got.s_subgroup is not None
                    detail = {"recovered": [got.f, got.g]}
                except ValueError as exc:
                    ok = False
                    detail = {"error": f"{type(exc).__name__}: {exc}"}
                checks.append({"fixture": name, "subgroup": list(cert.subset), "f": f, "g": g,
                               "passed": ok})
                if not ok:
                    counterexamples.append({"fixture": name, "f": f, "g": g,
                                            "table": _table_json(tq), **detail})
    return _summary("fg_recovery", checks, counterexamples)


# -- GS loops ----------------------------------------------------------------

def gs_fixtures() -> Dict[str, MagmaTable]:
    groups = {"Z4": fixtures.cyclic(4), "Z6": fixtures.cyclic(6), "S3": fixtures.symmetric_group(3)}
    groups.update(fixtures.groups_of_order_8())
    return groups


def gs_suite(tables: Dict[str, MagmaTable]) -> dict:
    checks = []
    counterexamples = []
    for name, t in tables.items():
        report = gs_group_check(t)
        for entry in report.entries:
            checks.append({"fixture": name, "passed": entry["passed"]})
        counterexamples.extend({"fixture": name, **c} for c in report.counterexamples)
    return _summary("gs", checks, counterexamples)


# -- isotopism group ---------------------------------------------------------

def isotgroup_suite(orders=(2, 3, 4)) -> dict:
    checks = []
    results = {}
    for n in orders:
        isot = enumerate_isot(n)
        axioms = check_group_axioms(isot, _generators(n))
        pisot = pisot_check(n)
        results[str(n)] = {
            "isot_size": len(isot),
            "isot_formula": isot_order(n),
            "axioms": axioms.as_dict(),
            "pisot": pisot.as_dict(),
        }
        checks.append({"order": n, "claim": "isot_size",
                       "passed": len(isot) == isot_order(n)})
        checks.append({"order": n, "claim": "group_axioms", "passed": axioms.is_group})
        checks.append({"order": n, "claim": "pisot", "passed": pisot.passed})
        if n >= 3:
            h = (0, 1)
            stab = sisot_stabilizer(n, h)
            restricted = restricted_triple_count(n, h, tuple(range(n - 2, n)))
            nsisot = nsisot_count(n, 2)
            results[str(n)].update(
                stabilizer=stab.as_dict(),
                restricted_count=restricted,
                nsisot_count=nsisot,
            )
            checks.append({"order": n, "claim": "stabilizer_order",
                           "passed": stab.order == stab.expected_order and stab.axioms.is_group})
            checks.append({"order": n, "claim": "restriction_image",
                           "passed": len(stab.restriction_image) == 8 and restricted == 8})
            checks.append({"order": n, "claim": "nsisot_arithmetic",
                           "passed": nsisot == isot_order(n) - 8})
    failures = [c for c in checks if not c["passed"]]
    out = _summary("isotgroup", checks, failures)
    out["results"] = results
    return out


# -- corollary audits --------------------------------------------------------

def corollary_suite(tables: Dict[str, MagmaTable]) -> dict:
    checks = []
    counterexamples = []
    reports = {}
    for name, t in tables.items():
        report = audit_corollaries(t)
        reports[name] = report
        for cid, entry in report.items():
            status = entry["status"]
            checks.append({"fixture": name, "corollary": cid, "status": status,
                           "passed": status != "counterexample"})
            if status == "counterexample":
                counterexamples.append({"fixture": name, "corollary": cid,
                                        "table": _table_json(t),
                                        "details": entry.get("counterexamples", [])})
    out = _summary("corollaries", checks, counterexamples)
    out["reports"] = reports
    return out


def _summary(suite: str, checks: List[dict], counterexamples: List[dict], **extra) -> dict:
    passed = sum(1 for c in checks if c["passed"])
    return {
        "suite": suite,
        "checked": len(checks),
        "passed": passed,
        "all_passed": passed == len(checks) and not counterexamples,
        "checks": checks,
        "counterexamples": counterexamples,
        **extra,
    }
