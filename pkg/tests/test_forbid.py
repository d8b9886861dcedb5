import pytest

from kapcheck.cycletuples import S10, S12
from kapcheck.forbid import automorphisms, graph_edge_list, plan_stages, run_forbidden_check
from kapcheck.graphs import AnnotatedGraph, SimpleGraph, forbidden_catalog, multicycle
from kapcheck.oracle import Inconclusive, ProtectedSet, verify_certificate


def test_stage_plan_edges_form_prefixes():
    g = forbidden_catalog("fig1")[0]
    edges = graph_edge_list(g.graph)
    plan = plan_stages(g.graph.n, edges)
    assert sorted(plan.edges) == sorted(edges)
    assert plan.boundaries[-1] == len(edges)
    for stage, cycle in enumerate(plan.cycles):
        assert max(k for k, _ in cycle) < plan.boundaries[stage]


def test_automorphism_counts():
    k4 = SimpleGraph.from_edges(4, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)])
    assert len(automorphisms(4, sorted(k4.edges), ("deg4",) * 4)) == 24
    assert len(automorphisms(4, sorted(k4.edges), ("deg4", "deg4", "deg4", "deg5"))) == 6


@pytest.mark.parametrize("n", [3, 4, 5])
def test_multicycle_is_forbidden(n):
    res = run_forbidden_check(multicycle(n), S10)
    assert res.forbidden
    assert res.all_certificates_verified()
    ps = ProtectedSet.s10()
    for o in res.disposed:
        assert verify_certificate(o.presentation, o.verdict, ps)[0]


def test_multicycle_final_stage_is_fully_disposed():
    res = run_forbidden_check(multicycle(4), S10)
    final = [o for o in res.disposed if o.stage == len(res.stage_counts) - 1]
    assert final and all(o.verdict.kind in ("Torsion", "Collision", "Abelian") for o in final)


def test_single_triangle_is_not_forbidden():
    triangle = AnnotatedGraph("C3", SimpleGraph.from_edges(3, [(0, 1), (1, 2), (2, 0)]), ("deg4",) * 3)
    res = run_forbidden_check(triangle, S12)
    assert not res.forbidden
    assert res.residual
    assert all(isinstance(o.verdict, Inconclusive) for o in res.residual)
    assert res.kind_counts() == {"Torsion": 1}
