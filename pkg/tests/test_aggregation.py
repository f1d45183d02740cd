import random

import pytest

from densistream import Engine
from densistream.aggregation import (
    CurationSession,
    UnionFind,
    build_noyau_graph,
    connected_components,
    load_classification,
    size_distribution,
    write_classification,
)
from densistream.errors import CurationError

from corpora import curation_corpus
from oracles import bfs_components


def test_valence_below_two_rejected():
    with pytest.raises(ValueError):
        build_noyau_graph([[0]], 1)


def test_no_multivalent_documents_gives_edgeless_graph():
    lcc = [[0], [0], [2]]
    graph = build_noyau_graph(lcc, 2)
    assert graph.edges == {}
    assert graph.heads == [0, 2]


def test_bivalent_document_creates_single_edge():
    lcc = [[0], [1], [0, 1]]
    graph = build_noyau_graph(lcc, 2)
    assert graph.edges == {(0, 1): [2]}


def test_trivalent_document_excluded_at_valence_two():
    lcc = [[0], [1], [2], [0, 1, 2]]
    assert build_noyau_graph(lcc, 2).edges == {}
    assert build_noyau_graph(lcc, 3).edges == {(0, 1): [3], (0, 2): [3], (1, 2): [3]}


def test_min_mode_includes_higher_valences():
    lcc = [[0], [1], [2], [0, 1, 2]]
    graph = build_noyau_graph(lcc, 2, min_mode=True)
    assert set(graph.edges) == {(0, 1), (0, 2), (1, 2)}


def test_edgeless_graph_gives_singleton_components():
    lcc = [[0], [1], [2]]
    components = connected_components(build_noyau_graph(lcc, 2))
    assert [c.heads for c in components] == [[0], [1], [2]]
    assert all(c.doc_count == 1 for c in components)


def test_transitive_edges_form_one_component():
    # edges (A,B), (B,C) through two bivalent docs
    lcc = [[0], [1], [2], [0, 1], [1, 2]]
    components = connected_components(build_noyau_graph(lcc, 2))
    assert len(components) == 1
    assert components[0].heads == [0, 1, 2]
    assert components[0].doc_count == 5


def test_two_disjoint_edges_form_two_components():
    lcc = [[0], [1], [2], [3], [0, 1], [2, 3]]
    components = connected_components(build_noyau_graph(lcc, 2))
    assert len(components) == 2
    assert {tuple(c.heads) for c in components} == {(0, 1), (2, 3)}


def test_component_ordering_by_count_then_smallest_head():
    engine = Engine()
    engine.ingest_all(curation_corpus())
    components = connected_components(build_noyau_graph(engine.lcc, 2))
    counts = [c.doc_count for c in components]
    assert counts == sorted(counts, reverse=True)
    # equal counts resolved by the smaller first head
    assert components[0].heads[0] < components[1].heads[0]
    assert [c.index for c in components] == list(range(len(components)))


def random_lcc(rng: random.Random, n_heads: int) -> list[list[int]]:
    """Synthetic head lists: heads, strict members, and bivalent bridges."""
    lcc = [[h] for h in range(n_heads)]
    for _ in range(rng.randint(0, 2 * n_heads)):
        a, b = rng.sample(range(n_heads), 2)
        lcc.append(sorted((a, b)))
    for _ in range(rng.randint(0, n_heads)):
        lcc.append([rng.randrange(n_heads)])
    return lcc


def test_components_match_bfs_oracle_on_random_graphs():
    rng = random.Random(99)
    for trial in range(100):
        lcc = random_lcc(rng, rng.randint(1, 200))
        graph = build_noyau_graph(lcc, 2)
        got = {frozenset(c.heads) for c in connected_components(graph)}
        expected = {
            frozenset(c) for c in bfs_components(graph.heads, list(graph.edges))
        }
        assert got == expected, f"trial {trial}"


def test_components_listing_is_deterministic():
    engine = Engine()
    engine.ingest_all(curation_corpus())
    first = connected_components(build_noyau_graph(engine.lcc, 2))
    second = connected_components(build_noyau_graph(engine.lcc, 2))
    assert [(c.heads, c.doc_count) for c in first] == [(c.heads, c.doc_count) for c in second]


def test_union_find_matches_bfs_on_shuffled_edges():
    rng = random.Random(5)
    vertices = list(range(50))
    edges = [tuple(sorted(rng.sample(vertices, 2))) for _ in range(60)]
    uf = UnionFind(len(vertices))
    shuffled = list(edges)
    rng.shuffle(shuffled)
    for a, b in shuffled:
        uf.union(a, b)
    got: dict[int, set[int]] = {}
    for v in vertices:
        got.setdefault(uf.find(v), set()).add(v)
    assert {frozenset(s) for s in got.values()} == {
        frozenset(c) for c in bfs_components(vertices, edges)
    }


def session_over_curation_corpus() -> tuple[Engine, CurationSession]:
    engine = Engine()
    engine.ingest_all(curation_corpus())
    return engine, CurationSession(build_noyau_graph(engine.lcc, 2))


def test_merge_union_semantics():
    engine, session = session_over_curation_corpus()
    a1, c1 = engine.node_of("a1"), engine.node_of("c1")
    session.merge([a1], "first")
    group = session.merge([a1, c1], "geo zone")
    assert group.heads == {a1, c1}
    assert [g.label for g in session.groups] == ["geo zone"]


def test_merge_rejects_cross_component_and_empty_label():
    engine, session = session_over_curation_corpus()
    a1, b1 = engine.node_of("a1"), engine.node_of("b1")
    with pytest.raises(CurationError):
        session.merge([a1, b1], "nope")
    with pytest.raises(CurationError):
        session.merge([a1], "   ")
    with pytest.raises(CurationError):
        session.merge([999], "ghost")


def test_merge_rejects_duplicate_label_for_disjoint_group():
    engine, session = session_over_curation_corpus()
    session.merge([engine.node_of("a1")], "zone")
    with pytest.raises(CurationError):
        session.merge([engine.node_of("b1")], "zone")


def test_set_status_transitions_and_journal():
    engine, session = session_over_curation_corpus()
    session.set_status(0, "validated")
    session.set_status(0, "invalidated")
    session.set_status(0, "pending")
    with pytest.raises(CurationError):
        session.set_status(0, "bogus")
    with pytest.raises(CurationError):
        session.set_status(99, "validated")
    assert [entry["action"] for entry in session.journal] == ["set_status"] * 3


def test_merge_in_invalidated_component_rejected():
    engine, session = session_over_curation_corpus()
    a1 = engine.node_of("a1")
    session.set_status(session.component_of(a1), "invalidated")
    with pytest.raises(CurationError):
        session.merge([a1], "late")


def test_export_includes_pending_excludes_invalidated(tmp_path):
    engine, session = session_over_curation_corpus()
    a1, c1 = engine.node_of("a1"), engine.node_of("c1")
    b1, d1 = engine.node_of("b1"), engine.node_of("d1")
    session.merge([a1, c1], "kept")
    session.merge([b1, d1], "dropped")
    session.set_status(session.component_of(b1), "invalidated")
    exported = session.export(engine)
    assert [g["label"] for g in exported] == ["kept"]
    assert set(exported[0]["doc_ids"]) == {
        "a0", "a1", "a2", "bridge_ac", "c0", "c1", "c2",
    }

    path = tmp_path / "classes.json"
    write_classification(str(path), exported)
    assert load_classification(str(path)) == {"kept": set(exported[0]["doc_ids"])}


def test_export_validated_only_filter():
    engine, session = session_over_curation_corpus()
    a1, c1 = engine.node_of("a1"), engine.node_of("c1")
    b1, d1 = engine.node_of("b1"), engine.node_of("d1")
    session.merge([a1, c1], "validated zone")
    session.merge([b1, d1], "pending zone")
    session.set_status(session.component_of(a1), "validated")
    assert [g["label"] for g in session.export(engine, validated_only=True)] == [
        "validated zone"
    ]
    assert len(session.export(engine)) == 2


def test_partial_group_excludes_straddling_multivalent():
    engine, session = session_over_curation_corpus()
    a1 = engine.node_of("a1")
    session.merge([a1], "a only")
    exported = session.export(engine)
    # bridge_ac has heads {a1, c1}, not contained in the group -> excluded
    assert set(exported[0]["doc_ids"]) == {"a0", "a1", "a2"}


def test_empty_session_exports_nothing():
    engine, session = session_over_curation_corpus()
    assert session.export(engine) == []


def test_size_distribution_examples():
    assert size_distribution([[0], [1], [2]]) == {1: 3}
    assert size_distribution([[0], [0], [0], [3], [4]]) == {1: 2, 3: 1}
    assert size_distribution([]) == {}


def test_size_distribution_counts_match_paper_categories():
    engine = Engine()
    engine.ingest_all(curation_corpus())
    histogram = size_distribution(engine.lcc)
    # four 3-member noyaux plus the two isolated documents
    assert histogram == {1: 2, 3: 4}
