"""Acceptance criteria, one pass/fail line each.

Run under pytest (the lines appear in the terminal summary) or directly with
``python tests/test_acceptance.py``.  Tier-2 criteria print TRIAGE instead of
failing; the set of appendix graphs they run is chosen by the environment
variable ``KAPCHECK_TIER2`` (``quick`` by default, ``all`` for every graph).
"""
from __future__ import annotations

import itertools
import os
import random
import sys
import time

import networkx as nx
import pytest

from kapcheck.cycletuples import S10, S12, CycleTuple, dihedral_images, enumerate_cycle_classes, relation_class
from kapcheck.decide import todd_coxeter
from kapcheck.forbid import run_forbidden_check
from kapcheck.graphs import (
    SimpleGraph,
    are_isomorphic,
    brute_force_isomorphic,
    forbidden_catalog,
    generate_connected_regular,
    multicycle,
)
from kapcheck.oracle import ProtectedSet, verify_certificate
from kapcheck.pipeline import reproduce, table_fixtures
from kapcheck.present import Presentation, minor_gcds, smith_normal_form

try:
    from conftest import ACCEPTANCE_LINES
except ImportError:  # direct execution
    ACCEPTANCE_LINES = []

# certificates checked by every criterion, for the soundness criterion
VERIFIED: dict[str, bool] = {}

TIER2_QUICK = ("app-h1/K122",)


def record(number: int, title: str, ok: bool | None, detail: str, seconds: float) -> str:
    status = {True: "PASS", False: "FAIL", None: "TRIAGE"}[ok]
    line = f"[{status}] {number:>2}. {title}: {detail} ({seconds:.1f}s)"
    ACCEPTANCE_LINES.append(line)
    print(line, flush=True)
    return line


def _reports(ids):
    reps = [reproduce(t) for t in ids]
    return reps, all(r.status == "match" for r in reps)


def _summary(reps) -> str:
    parts = []
    for r in reps:
        if r.diffs:
            parts.append(f"{r.table_id} mismatch [{'; '.join(r.diffs)}]")
        else:
            parts.append(f"{r.table_id} match")
    return ", ".join(parts)


def criterion_1():
    start = time.perf_counter()
    reps, ok = _reports(["t1-count", "t1-starred"])
    secs = time.perf_counter() - start
    VERIFIED["1"] = reps[0].actual.get("torsion certificates verified", False)
    ok = ok and secs < 5
    return ok, _summary(reps), secs


def criterion_2():
    start = time.perf_counter()
    reps, ok = _reports(["c4-counts"])
    secs = time.perf_counter() - start
    VERIFIED["2"] = reps[0].actual.get("torsion certificates verified", False)
    return ok and secs < 30, _summary(reps), secs


def criterion_3():
    start = time.perf_counter()
    reps, ok = _reports(["tt10", "c3e", "tt1", "tt011"])
    secs = time.perf_counter() - start
    VERIFIED["3"] = all(r.actual.get("certificates verified", False) for r in reps)
    return ok and secs < 300, _summary(reps), secs


def criterion_4():
    start = time.perf_counter()
    counts = [len(generate_connected_regular(4, n)) for n in range(5, 10)]
    reps, ok = _reports(["forbidden-table"])
    secs = time.perf_counter() - start
    ok = ok and counts == [1, 1, 2, 6, 16] and secs < 120
    notes = "; ".join(reps[0].notes)
    return ok, f"quartic counts {counts}, {_summary(reps)}; {notes}", secs


def criterion_5():
    start = time.perf_counter()
    reps, ok = _reports(["degseq-counts"])
    secs = time.perf_counter() - start
    return ok and secs < 300, _summary(reps), secs


def criterion_6():
    start = time.perf_counter()
    reps, ok = _reports(["example-c10"])
    secs = time.perf_counter() - start
    return ok and secs < 1, _summary(reps), secs


def criterion_7():
    start = time.perf_counter()
    reps, ok = _reports(["delta-profiles"])
    return ok, _summary(reps), time.perf_counter() - start


def _forbidden(graph, regime):
    res = run_forbidden_check(graph, regime)
    ps = ProtectedSet.for_regime(regime.template)
    audited = all(verify_certificate(o.presentation, o.verdict, ps)[0] for o in res.disposed)
    return res, audited


def criterion_8():
    start = time.perf_counter()
    k113 = next(g for g in forbidden_catalog("fig1") if g.name == "K113")
    runs = [(k113, S12)] + [(multicycle(n), S10) for n in (3, 4, 5)]
    parts, ok = [], True
    for graph, regime in runs:
        res, audited = _forbidden(graph, regime)
        ok = ok and res.forbidden and audited
        parts.append(f"{graph.name} {res.status} {res.kind_counts()}")
    VERIFIED["8"] = ok
    return ok, "; ".join(parts), time.perf_counter() - start


def criterion_9():
    start = time.perf_counter()
    fx = table_fixtures()["appendix-counts"]["expected"]
    keys = list(fx) if os.environ.get("KAPCHECK_TIER2") == "all" else list(TIER2_QUICK)
    parts, exact = [], True
    for key in keys:
        cat, name = key.split("/")
        graph = next(g for g in forbidden_catalog(cat) if g.name == name)
        res, audited = _forbidden(graph, S12)
        VERIFIED[f"9:{key}"] = audited
        want = fx[key]["residual"]
        got = len(res.residual)
        exact = exact and got == want
        parts.append(f"{key} residual {got} (expected {want}), {res.status}")
    skipped = [k for k in fx if k not in keys]
    if skipped:
        parts.append(f"not run in quick mode: {', '.join(skipped)}")
    # tier 2 never fails the build; a mismatch is reported for triage
    return (True if exact and not skipped else None), "; ".join(parts), time.perf_counter() - start


def criterion_10():
    start = time.perf_counter()
    if not VERIFIED:
        criterion_1()
        criterion_8()
    bad = sorted(k for k, v in VERIFIED.items() if not v)
    detail = f"{len(VERIFIED)} runs audited" + (f", failures in {bad}" if bad else ", every certificate accepted")
    return not bad, detail, time.perf_counter() - start


def criterion_11():
    start = time.perf_counter()
    groups = {
        "S3": (Presentation.parse(2, "xxx,yy,xyxy"), 6),
        "A5": (Presentation.parse(2, "xx,yyy,xyxyxyxyxy"), 60),
        "C7": (Presentation.parse(1, "xxxxxxx"), 7),
        "C12": (Presentation.parse(2, "xxxx,yyy,xyXY"), 12),
    }
    tc_ok = all(todd_coxeter(p).index == order for p, order in groups.values())

    rng = random.Random(11)
    atlas = [SimpleGraph.from_networkx(g) for g in nx.graph_atlas_g()[1:]]
    iso_ok = True
    for g in atlas:
        perm = list(range(g.n))
        rng.shuffle(perm)
        iso_ok = iso_ok and are_isomorphic(g, g.relabel(perm))
    small = [g for g in atlas if g.n <= 5]
    for g, h in itertools.combinations(small, 2):
        iso_ok = iso_ok and are_isomorphic(g, h) == brute_force_isomorphic(g, h)

    snf_ok = True
    for _ in range(200):
        rows = [[rng.randint(-9, 9) for _ in range(3)] for _ in range(rng.randint(1, 4))]
        sf = smith_normal_form(rows)
        prods = list(itertools.accumulate([d for d in sf.diagonal if d], lambda a, b: a * b))
        snf_ok = snf_ok and sf.check() and minor_gcds(rows)[: len(prods)] == prods

    tuple_ok = True
    for t in enumerate_cycle_classes(S12, 3).classes:
        cls = relation_class(t)
        tuple_ok = tuple_ok and all(relation_class(CycleTuple(S12, img)) == cls for img in dihedral_images(t.labels))
    ok = tc_ok and iso_ok and snf_ok and tuple_ok
    detail = f"coset indices {tc_ok}, isomorphism {iso_ok}, Smith forms {snf_ok}, tuple classes {tuple_ok}"
    return ok, detail, time.perf_counter() - start


CRITERIA = [
    (1, "S12 triangle classes", criterion_1),
    (2, "S12 square classes", criterion_2),
    (3, "S10 cycle classes and disposals", criterion_3),
    (4, "quartic graphs and forbidden-subgraph table", criterion_4),
    (5, "degree-sequence graph counts", criterion_5),
    (6, "worked example in F2[C10]", criterion_6),
    (7, "delta-profile feasibility", criterion_7),
    (8, "forbidden driver on K113 and multicycles", criterion_8),
    (9, "appendix system counts (tier 2)", criterion_9),
    (10, "oracle soundness", criterion_10),
    (11, "engine oracles", criterion_11),
]


@pytest.mark.parametrize("number,title,check", CRITERIA, ids=[f"criterion_{c[0]}" for c in CRITERIA])
def test_criterion(number, title, check):
    ok, detail, secs = check()
    record(number, title, ok, detail, secs)
    assert ok is not False, detail


if __name__ == "__main__":
    failed = 0
    for number, title, check in CRITERIA:
        ok, detail, secs = check()
        record(number, title, ok, detail, secs)
        failed += ok is False
    sys.exit(1 if failed else 0)
