import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from abcs.graph import (
    AttributedBipartiteGraph,
    KeywordTable,
    Layer,
    SubgraphMask,
    VertexRef,
    alive_edges,
    connected_component_of,
    contains,
    csr_gather,
    effective_degree,
    induced_edges,
    keyword_filtered_mask,
)
from abcs.core import CoreParams, core_mask

from corpus import random_instance
from oracles import component_of_upper


def test_intern_is_idempotent_and_injective():
    t = KeywordTable()
    a = t.intern("drama")
    assert t.intern("drama") == a
    assert t.intern("romance") != a


def test_intern_ids_follow_first_seen_order():
    t = KeywordTable()
    assert [t.intern(w) for w in "abcwxy"] == [0, 1, 2, 3, 4, 5]
    assert t.intern("b") == 1
    assert t.words([5, 0]) == ["y", "a"]


def test_edges_deduplicated_and_sorted():
    g = AttributedBipartiteGraph(2, 3, [(1, 0), (0, 2), (1, 0), (0, 1)])
    assert g.m == 3
    assert g.edges() == [(0, 1), (0, 2), (1, 0)]
    assert g.upper_neighbors(0).tolist() == [1, 2]
    assert g.lower_neighbors(0).tolist() == [1]


def test_arrays_are_read_only():
    g = AttributedBipartiteGraph(1, 1, [(0, 0)])
    with pytest.raises(ValueError):
        g.upper_adj[0] = 5


def test_out_of_range_edge_rejected():
    with pytest.raises(ValueError):
        AttributedBipartiteGraph(1, 1, [(0, 1)])


def test_duplicate_labels_rejected():
    with pytest.raises(ValueError):
        AttributedBipartiteGraph(2, 1, [(0, 0)], upper_labels=["x", "x"])


def test_from_labeled_assigns_attribute_vertices_first():
    g = AttributedBipartiteGraph.from_labeled([("p", "1"), ("r", "1")], {"r": ["k"]})
    assert g.upper_labels == ["r", "p"]
    assert g.keywords_of(VertexRef.upper(0)) == ["k"]
    assert g.keywords_of(VertexRef.upper(1)) == []


def test_csr_matches_edge_list(fig2):
    for u in range(fig2.n_upper):
        assert fig2.upper_neighbors(u).tolist() == sorted(v for x, v in fig2.edges() if x == u)
    for v in range(fig2.n_lower):
        assert fig2.lower_neighbors(v).tolist() == sorted(u for u, y in fig2.edges() if y == v)
    assert fig2.upper_degrees().sum() == fig2.lower_degrees().sum() == fig2.m


def test_degree_and_neighbors_by_ref(fig2):
    a = fig2.vertex("A")
    h = fig2.vertex("H", Layer.LOWER)
    assert fig2.degree(a) == 3
    assert {fig2.label(x) for x in fig2.neighbors(h)} == {"A", "C", "D", "E"}


@settings(max_examples=60, deadline=None)
@given(st.lists(st.sets(st.integers(0, 129), max_size=6), min_size=1, max_size=12),
       st.sets(st.integers(0, 129), max_size=4))
def test_contains_matches_set_inclusion(sets, query):
    # 130 words spans three 64-bit words
    table = KeywordTable([f"k{i}" for i in range(130)])
    g = AttributedBipartiteGraph(len(sets), 1, [], [sorted(s) for s in sets], None, table)
    got = contains(g.upper_bits, sorted(query), g.n_words)
    assert got.tolist() == [query <= s for s in sets]


def test_contains_unknown_id_matches_nothing(fig2):
    assert not contains(fig2.upper_bits, [10_000], fig2.n_words).any()


def test_effective_degree():
    g = AttributedBipartiteGraph(1, 3, [(0, 0), (0, 1), (0, 2)])
    mask = SubgraphMask.full(g)
    assert effective_degree(g, mask, VertexRef.upper(0)) == 3
    mask.kill(VertexRef.lower(1))
    assert effective_degree(g, mask, VertexRef.upper(0)) == 2
    mask.removed_edges = frozenset({(0, 2)})
    assert effective_degree(g, mask, VertexRef.upper(0)) == 1
    mask.kill(VertexRef.upper(0))
    assert effective_degree(g, mask, VertexRef.upper(0)) == 0


def test_effective_degree_in_core(fig2):
    core = core_mask(fig2, CoreParams(2, 2))
    assert effective_degree(fig2, core, fig2.vertex("A")) >= 2


def test_keyword_filter_empty_sets_keep_everything(fig2):
    assert keyword_filtered_mask(fig2) == SubgraphMask.full(fig2)


def test_keyword_filter_b_x(fig2):
    mask = keyword_filtered_mask(fig2, fig2.ids_of(["b"]), fig2.ids_of(["x"]))
    up = {fig2.upper_labels[i] for i in mask.upper_indices()}
    lo = {fig2.lower_labels[i] for i in mask.lower_indices()}
    assert up == {lab for lab in fig2.upper_labels
                  if "b" in fig2.keywords_of(fig2.vertex(lab))}
    assert up == {"A", "C", "D", "E"}
    assert lo == {"G", "H", "I"}


@pytest.mark.parametrize("seed", range(10))
def test_keyword_filter_matches_scan(seed):
    g, _ = random_instance(seed)
    for k in range(6):
        mask = keyword_filtered_mask(g, [k])
        assert mask.upper_indices().tolist() == [u for u in range(g.n_upper)
                                                 if k in g.upper_keywords[u]]


def test_component_of_a_excludes_j_k(fig2):
    comp = connected_component_of(fig2, SubgraphMask.full(fig2), fig2.vertex("A"))
    up, lo = comp.vertex_sets()
    assert {fig2.upper_labels[i] for i in up} == set("ABCDE")
    assert {fig2.lower_labels[i] for i in lo} == set("FGHI")


def test_component_of_dead_vertex_is_empty(fig2):
    mask = SubgraphMask.full(fig2)
    mask.kill(fig2.vertex("A"))
    assert connected_component_of(fig2, mask, fig2.vertex("A")).is_empty()


def test_component_respects_removed_edges():
    g = AttributedBipartiteGraph(2, 1, [(0, 0), (1, 0)])
    mask = SubgraphMask.full(g)
    mask.removed_edges = frozenset({(1, 0)})
    assert connected_component_of(g, mask, VertexRef.upper(0)).upper_indices().tolist() == [0]
    assert len(alive_edges(g, mask)[0]) == 1


@pytest.mark.parametrize("seed", range(40))
def test_component_matches_union_find(seed):
    g, spec = random_instance(seed)
    rng = np.random.default_rng(seed)
    mask = SubgraphMask(rng.random(g.n_upper) < 0.8, rng.random(g.n_lower) < 0.8)
    mask.alive_upper[spec.q] = True
    got = connected_component_of(g, mask, VertexRef.upper(spec.q)).vertex_sets()
    want = component_of_upper(g, set(mask.upper_indices().tolist()),
                              set(mask.lower_indices().tolist()), spec.q)
    assert got == want


def test_mask_set_operations(fig2):
    a = SubgraphMask.from_indices(fig2, [0, 1], [0])
    b = SubgraphMask.from_indices(fig2, [1, 2], [0, 1])
    both = a & b
    assert both.vertex_sets() == (frozenset({1}), frozenset({0}))
    assert both.issubset(a) and both.issubset(b)
    assert not a.issubset(b)
    assert a.vertex_count() == 3
    c = a.copy()
    c.kill(VertexRef.upper(0))
    assert a.is_alive(VertexRef.upper(0)) and not c.is_alive(VertexRef.upper(0))


@pytest.mark.parametrize("seed", range(10))
def test_csr_gather_and_induced_edges(seed):
    g, _ = random_instance(seed)
    rng = np.random.default_rng(seed)
    rows = np.flatnonzero(rng.random(g.n_upper) < 0.5)
    owner, nbr = csr_gather(g.upper_indptr, g.upper_adj, rows)
    assert list(zip(rows[owner].tolist(), nbr.tolist())) == [
        (u, v) for u in rows.tolist() for v in g.upper_neighbors(u).tolist()]
    lower_alive = rng.random(g.n_lower) < 0.5
    eu, ev = induced_edges(g, rows, lower_alive)
    assert set(zip(eu.tolist(), ev.tolist())) == {
        (u, v) for u, v in g.edges() if u in set(rows.tolist()) and lower_alive[v]}
