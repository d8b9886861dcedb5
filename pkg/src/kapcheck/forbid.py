"""Staged forbidden-subgraph driver.

Labeling systems are built one basis cycle at a time.  After each stage the
partial systems are reduced to orbits under the graph automorphisms that fix
the stage edge set and the label relabelings of the regime, then the relators
collected so far are classified.  A contradiction on a partial system covers
every extension, because the full presentation is a quotient of the partial one.
"""
from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import Callable, Sequence

import networkx as nx
from networkx.algorithms.isomorphism import GraphMatcher

from .cycletuples import (
    LabelingSystem,
    Regime,
    cycle_basis,
    enumerate_graph_systems,
    label_relabelings,
    system_orbit_key,
)
from .decide import DEFAULT_BUDGET, Budget
from .graphs import AnnotatedGraph, Multigraph, SimpleGraph
from .oracle import (
    BSBounds,
    Inconclusive,
    ProtectedSet,
    classify,
    presentation_key,
    verify_certificate,
)
from .present import Presentation


def graph_edge_list(g: SimpleGraph | Multigraph) -> list[tuple[int, int]]:
    if isinstance(g, Multigraph):
        return [e for e, k in g.multiplicity for _ in range(k)]
    return sorted(g.edges)


def automorphisms(n: int, edges: Sequence[tuple[int, int]], annotations: Sequence[str]) -> list[tuple[int, ...]]:
    """Vertex permutations preserving edge multiplicities and annotations."""
    g = nx.Graph()
    g.add_nodes_from((v, {"ann": annotations[v]}) for v in range(n))
    for u, v in edges:
        if g.has_edge(u, v):
            g[u][v]["mult"] += 1
        else:
            g.add_edge(u, v, mult=1)
    gm = GraphMatcher(
        g, g, node_match=lambda a, b: a["ann"] == b["ann"], edge_match=lambda a, b: a["mult"] == b["mult"]
    )
    return sorted(tuple(m[v] for v in range(n)) for m in gm.isomorphisms_iter())


def _edge_multiset(edges: Sequence[tuple[int, int]], vm: Sequence[int] | None = None) -> list[tuple[int, int]]:
    out = []
    for u, v in edges:
        a, b = (vm[u], vm[v]) if vm is not None else (u, v)
        out.append((min(a, b), max(a, b)))
    return sorted(out)


@dataclass
class StagePlan:
    edges: tuple[tuple[int, int], ...]
    cycles: tuple[tuple[tuple[int, int], ...], ...]
    boundaries: tuple[int, ...]  # number of edges labeled after each stage


def plan_stages(n: int, edges: Sequence[tuple[int, int]]) -> StagePlan:
    """Order basis cycles shortest first and renumber edges so each stage is a prefix."""
    cycles = sorted(cycle_basis(n, edges), key=len)
    order: list[int] = []
    bounds: list[int] = []
    for c in cycles:
        for k, _ in c:
            if k not in order:
                order.append(k)
        bounds.append(len(order))
    order += [k for k in range(len(edges)) if k not in order]
    if bounds:
        bounds[-1] = len(order)
    else:
        bounds = [len(order)]
    remap = {old: new for new, old in enumerate(order)}
    return StagePlan(
        tuple(tuple(edges[k]) for k in order),
        tuple(tuple((remap[k], d) for k, d in c) for c in cycles),
        tuple(bounds),
    )


@dataclass
class SystemOutcome:
    stage: int
    system: LabelingSystem
    presentation: Presentation
    verdict: object
    verified: bool


@dataclass
class ForbiddenResult:
    name: str
    regime: Regime
    forbidden: bool
    stage_counts: list[dict] = field(default_factory=list)
    disposed: list[SystemOutcome] = field(default_factory=list)
    residual: list[SystemOutcome] = field(default_factory=list)
    seconds: float = 0.0

    @property
    def status(self) -> str:
        return "Forbidden" if self.forbidden else "Undecided"

    def kind_counts(self) -> dict[str, int]:
        out: dict[str, int] = {}
        for o in self.disposed:
            out[o.verdict.kind] = out.get(o.verdict.kind, 0) + 1
        return dict(sorted(out.items()))

    def all_certificates_verified(self) -> bool:
        return all(o.verified for o in self.disposed)


def run_forbidden_check(
    graph: AnnotatedGraph,
    regime: Regime,
    budget: Budget = DEFAULT_BUDGET,
    bounds: BSBounds = BSBounds(),
    cycle_rules: bool = True,
    prefilter: Callable[[LabelingSystem], bool] | None = None,
) -> ForbiddenResult:
    """Forbidden iff every labeling system is disposed with a verified certificate.

    ``cycle_rules=False`` keeps only the per-vertex label injectivity (used for
    multigraphs whose cycles run through parallel edges).
    """
    start = time.perf_counter()
    n = graph.graph.n
    ann = tuple(graph.annotations)
    plan = plan_stages(n, graph_edge_list(graph.graph))
    ps = ProtectedSet.for_regime(regime.template)
    auts = automorphisms(n, plan.edges, ann)
    relabel = label_relabelings(regime)
    cache: dict[str, tuple[object, bool]] = {}
    result = ForbiddenResult(graph.name, regime, False)

    partials: list[tuple[tuple[int, int], ...]] = [()]
    for stage, bound in enumerate(plan.boundaries):
        stage_edges = plan.edges[:bound]
        stage_cycles = plan.cycles[: stage + 1]
        target = _edge_multiset(stage_edges)
        stab = [vm for vm in auts if _edge_multiset(stage_edges, vm) == target]
        final = stage == len(plan.boundaries) - 1
        raw = 0
        reps: dict[tuple, LabelingSystem] = {}
        for fixed in partials:
            for s in enumerate_graph_systems(
                n,
                stage_edges,
                regime,
                ann,
                cycles=stage_cycles,
                fixed=fixed,
                check_cycle_rules=cycle_rules,
                prefilter=prefilter if final else None,
            ):
                raw += 1
                key = system_orbit_key(stage_edges, s.labels, stab, relabel)
                reps.setdefault(key, s)
        survivors = []
        disposed_here = 0
        for key in sorted(reps):
            s = reps[key]
            p = Presentation(regime.rank, tuple(s.relators()))
            pkey = presentation_key(p)
            if pkey not in cache:
                v = classify(p, ps, budget, bounds)
                ok = not isinstance(v, Inconclusive) and verify_certificate(p, v, ps)[0]
                cache[pkey] = (v, ok)
            v, ok = cache[pkey]
            outcome = SystemOutcome(stage, s, p, v, ok)
            if isinstance(v, Inconclusive):
                if final:
                    result.residual.append(outcome)
                else:
                    survivors.append(s.labels)
            else:
                result.disposed.append(outcome)
                disposed_here += 1
        result.stage_counts.append(
            {"stage": stage, "edges": bound, "raw": raw, "orbits": len(reps), "disposed": disposed_here}
        )
        partials = survivors
        if not partials and not final:
            break
    result.forbidden = not result.residual and result.all_certificates_verified()
    result.seconds = time.perf_counter() - start
    return result


__all__ = [
    "ForbiddenResult",
    "StagePlan",
    "SystemOutcome",
    "automorphisms",
    "graph_edge_list",
    "plan_stages",
    "run_forbidden_check",
]
