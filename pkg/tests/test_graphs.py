import random

import networkx as nx
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from kapcheck.graphs import (
    GraphError,
    Multigraph,
    SimpleGraph,
    are_isomorphic,
    brute_force_connected_regular,
    brute_force_isomorphic,
    canonical_form,
    catalog_ids,
    contains_subgraph,
    find_subgraph,
    forbidden_catalog,
    generate_connected_by_degseq,
    generate_connected_regular,
    is_graphical,
    multicycle,
)


@st.composite
def small_graphs(draw, max_n=7):
    n = draw(st.integers(1, max_n))
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    chosen = draw(st.lists(st.sampled_from(pairs), unique=True) if pairs else st.just([]))
    return SimpleGraph(n, frozenset(chosen))


@given(small_graphs(), st.randoms(use_true_random=False))
@settings(max_examples=150, deadline=None)
def test_relabeled_graph_has_same_canonical_form(g, rnd):
    perm = list(range(g.n))
    rnd.shuffle(perm)
    h = g.relabel(perm)
    assert canonical_form(g) == canonical_form(h)
    assert are_isomorphic(g, h)


@given(small_graphs(max_n=6), small_graphs(max_n=6))
@settings(max_examples=200, deadline=None)
def test_isomorphism_matches_brute_force(g, h):
    assert are_isomorphic(g, h) == brute_force_isomorphic(g, h)


def test_isomorphism_matches_brute_force_on_sampled_seven_vertex_graphs():
    rng = random.Random(7)
    atlas = [SimpleGraph.from_networkx(g) for g in nx.graph_atlas_g() if g.number_of_nodes() == 7]
    sample = rng.sample(atlas, 60)
    for g in sample:
        perm = list(range(7))
        rng.shuffle(perm)
        other = rng.choice(sample)
        assert are_isomorphic(g, g.relabel(perm))
        assert are_isomorphic(g, other) == brute_force_isomorphic(g, other)


def test_atlas_classes_are_distinct_up_to_seven_vertices():
    forms = [canonical_form(SimpleGraph.from_networkx(g)) for g in nx.graph_atlas_g()[1:]]
    assert len(set(forms)) == len(forms)


@given(small_graphs())
@settings(max_examples=100, deadline=None)
def test_graph6_round_trip(g):
    assert SimpleGraph.from_graph6(g.to_graph6()) == g


@pytest.mark.parametrize("n,count", [(5, 1), (6, 1), (7, 2), (8, 6), (9, 16)])
def test_connected_quartic_counts(n, count):
    graphs = generate_connected_regular(4, n)
    assert len(graphs) == count
    assert all(g.is_connected() and set(g.degrees()) == {4} for g in graphs)
    assert len({canonical_form(g) for g in graphs}) == count


@pytest.mark.parametrize("k,n", [(3, 6), (4, 7), (2, 7)])
def test_generator_agrees_with_brute_force(k, n):
    fast = {canonical_form(g) for g in generate_connected_regular(k, n)}
    slow = {canonical_form(g) for g in brute_force_connected_regular(k, n)}
    assert fast == slow


def test_degree_sequence_generation_matches_atlas():
    seq = [4, 4, 3, 3, 2, 2]
    want = {
        canonical_form(SimpleGraph.from_networkx(g))
        for g in nx.graph_atlas_g()
        if g.number_of_nodes() == 6 and nx.is_connected(g) and sorted((d for _, d in g.degree()), reverse=True) == seq
    }
    assert {canonical_form(g) for g in generate_connected_by_degseq(seq)} == want


def test_erdos_gallai():
    assert is_graphical([3, 3, 3, 3])
    assert not is_graphical([3, 3, 1, 1])
    assert not is_graphical([1, 1, 1])


def test_subgraph_embedding_is_an_embedding():
    k5 = SimpleGraph.from_networkx(nx.complete_graph(5))
    c4 = SimpleGraph.from_networkx(nx.cycle_graph(4))
    emb = find_subgraph(k5, c4)
    assert emb is not None and len(set(emb.values())) == 4
    assert not contains_subgraph(c4, k5)


def test_catalogs_load_with_matching_annotations():
    for cid in catalog_ids():
        if cid == "multicycle(n)":
            continue
        for g in forbidden_catalog(cid):
            assert len(g.annotations) == g.graph.n
    names = [g.name for g in forbidden_catalog("fig1")]
    assert names == ["K113", "K122", "Γ1", "Γ2", "Γ3", "Γ4", "Γ5", "Γ6", "Γ7"]
    with pytest.raises(GraphError):
        forbidden_catalog("no-such-figure")


def test_multicycle_doubles_every_edge():
    g = multicycle(5)
    assert isinstance(g.graph, Multigraph)
    assert g.graph.degrees() == [4] * 5
    assert g.graph.max_multiplicity() == 2
    with pytest.raises(GraphError):
        multicycle(2)


def test_multigraph_text_round_trip():
    m = Multigraph.from_edge_list(3, [(0, 1), (1, 0), (1, 2)])
    assert Multigraph.parse(m.text()) == m
