"""Parsing, validation, and closure tests, checked against DFS oracles."""

from __future__ import annotations

from random import Random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ontorank.errors import (
    CycleError,
    DanglingReferenceError,
    DuplicateIdError,
    ParseError,
    UnknownConceptError,
)
from ontorank.ontology import (
    Concept,
    OntologyGraph,
    build_closure,
    common_ancestors,
    is_hyponym,
    parse_ontology,
)

from conftest import O1_TEXT, graph_from
from oracles import ancestor_sets, descendant_sets, random_dag


# ---------------------------------------------------------------- parsing

def test_parse_single_stanza():
    graph = parse_ontology("[Term]\nid: X\nname: alone\n")
    assert set(graph.concepts) == {"X"}
    assert graph.concepts["X"].label == "alone"
    assert graph.edges == frozenset()


def test_parse_o1_counts(o1_graph):
    assert len(o1_graph.concepts) == 6
    assert len(o1_graph.edges) == 5
    assert ("A1", "A") in o1_graph.edges


def test_parse_is_a_comment_stripped(o1_graph):
    # the "! the root" trailer on A's is_a line must not leak into the target
    assert ("A", "R") in o1_graph.edges


def test_parse_synonyms_first_quoted_string():
    text = '[Term]\nid: X\nname: x\nsynonym: "heart attack" EXACT [DB:1]\nsynonym: "MI" []\n'
    graph = parse_ontology(text)
    assert graph.concepts["X"].synonyms == ("heart attack", "MI")


def test_parse_missing_name_falls_back_to_id():
    graph = parse_ontology("[Term]\nid: X\n")
    assert graph.concepts["X"].label == "X"


def test_parse_ignores_other_stanzas_and_loose_lines():
    text = (
        "format-version: 1.2\n"
        "\n"
        "[Typedef]\n"
        "id: part_of\n"
        "\n"
        "[Term]\n"
        "id: X\n"
        "name: x\n"
        "def: something\n"
    )
    graph = parse_ontology(text)
    assert set(graph.concepts) == {"X"}
    assert graph.report.ignored_stanzas == 1


def test_parse_relationship_lines_skipped_but_counted():
    text = "[Term]\nid: X\nname: x\n\n[Term]\nid: Y\nname: y\nrelationship: part_of X\nis_a: X\n"
    graph = parse_ontology(text)
    assert graph.edges == frozenset({("Y", "X")})
    assert graph.report.skipped_relationships == 1


def test_parse_cycle_rejected():
    text = "[Term]\nid: X\nis_a: Y\n\n[Term]\nid: Y\nis_a: X\n"
    with pytest.raises(CycleError):
        parse_ontology(text)


def test_parse_self_edge_rejected():
    with pytest.raises(CycleError):
        parse_ontology("[Term]\nid: X\nis_a: X\n")


def test_parse_dangling_reference():
    with pytest.raises(DanglingReferenceError) as exc:
        parse_ontology("[Term]\nid: X\nis_a: GHOST\n")
    assert exc.value.concept_id == "GHOST"


def test_parse_duplicate_id():
    with pytest.raises(DuplicateIdError):
        parse_ontology("[Term]\nid: X\n\n[Term]\nid: X\n")


def test_parse_bad_line_reports_line_number():
    with pytest.raises(ParseError) as exc:
        parse_ontology("[Term]\nid: X\nthis line has no colon\n")
    assert exc.value.line == 3


def test_parse_whitespace_id_rejected():
    with pytest.raises(ParseError):
        parse_ontology("[Term]\nid: two words\n")


def test_parse_stanza_without_id_rejected():
    with pytest.raises(ParseError):
        parse_ontology("[Term]\nname: nameless\n")


def test_parse_duplicate_edges_merged():
    graph = parse_ontology("[Term]\nid: X\n\n[Term]\nid: Y\nis_a: X\nis_a: X\n")
    assert len(graph.edges) == 1


def test_graph_rejects_programmatic_duplicates():
    with pytest.raises(DuplicateIdError):
        OntologyGraph([Concept("X", "x"), Concept("X", "x2")], [])


# ---------------------------------------------------------------- closure

def test_closure_o1_sets(o1_closure):
    assert o1_closure.hypo_set("R") == frozenset({"R", "A", "B", "A1", "A2", "B1"})
    assert o1_closure.hypo_set("A") == frozenset({"A", "A1", "A2"})
    assert o1_closure.anc_set("A1") == frozenset({"A1", "A", "R"})


def test_closure_single_concept_is_reflexive():
    closure = build_closure(graph_from(["X"], []))
    assert closure.hypo_set("X") == frozenset({"X"})
    assert closure.anc_set("X") == frozenset({"X"})


def test_closure_unknown_concept(o1_closure):
    with pytest.raises(UnknownConceptError):
        o1_closure.hypo_set("NOPE")


def test_is_hyponym_examples(o1_closure):
    assert is_hyponym(o1_closure, "A1", "R")
    assert is_hyponym(o1_closure, "A", "A")
    assert not is_hyponym(o1_closure, "R", "A1")
    assert not is_hyponym(o1_closure, "A1", "B")


def test_common_ancestors_examples(o1_closure):
    assert common_ancestors(o1_closure, "A1", "A2") == frozenset({"A", "R"})
    assert common_ancestors(o1_closure, "A1", "B1") == frozenset({"R"})
    assert common_ancestors(o1_closure, "A", "A") == frozenset({"A", "R"})


def test_closure_matches_dfs_oracle_on_random_dags():
    rng = Random(0xC10)
    for _ in range(100):
        ids, edges = random_dag(rng)
        closure = build_closure(graph_from(ids, edges))
        hypo = descendant_sets(ids, edges)
        anc = ancestor_sets(ids, edges)
        for cid in ids:
            assert closure.hypo_set(cid) == hypo[cid]
            assert closure.anc_set(cid) == anc[cid]


def test_closure_duality_and_monotonicity():
    rng = Random(0xD0A1)
    for _ in range(30):
        ids, edges = random_dag(rng, max_nodes=60)
        closure = build_closure(graph_from(ids, edges))
        hypo = {cid: closure.hypo_set(cid) for cid in ids}
        anc = {cid: closure.anc_set(cid) for cid in ids}
        for c1 in ids:
            for c2 in ids:
                assert (c1 in hypo[c2]) == (c2 in anc[c1])
        for child, parent in edges:
            assert hypo[child] <= hypo[parent]
            assert anc[parent] <= anc[child]


def test_injected_back_edge_creates_cycle():
    rng = Random(0xBAD)
    injected = 0
    while injected < 20:
        ids, edges = random_dag(rng, max_nodes=40)
        hypo = descendant_sets(ids, edges)
        pairs = [
            (anc, desc)
            for anc in ids
            for desc in hypo[anc]
            if desc != anc
        ]
        if not pairs:
            continue
        ancestor, descendant = rng.choice(pairs)
        # ancestor is-a descendant closes a loop
        with pytest.raises(CycleError):
            graph_from(ids, edges + [(ancestor, descendant)])
        injected += 1


def test_closure_deterministic_across_parses():
    a = build_closure(parse_ontology(O1_TEXT))
    b = build_closure(parse_ontology(O1_TEXT))
    assert a.ids == b.ids
    assert a.ordinal == b.ordinal
    assert a.hypo_bits == b.hypo_bits
    assert a.anc_bits == b.anc_bits


@st.composite
def small_dags(draw):
    n = draw(st.integers(min_value=1, max_value=12))
    ids = [f"N{i}" for i in range(n)]
    edges = []
    for i in range(1, n):
        for p in range(i):
            if draw(st.booleans()):
                edges.append((ids[i], ids[p]))
    return ids, edges


@given(small_dags())
@settings(max_examples=60, deadline=None)
def test_closure_oracle_property(dag):
    ids, edges = dag
    closure = build_closure(graph_from(ids, edges))
    hypo = descendant_sets(ids, edges)
    anc = ancestor_sets(ids, edges)
    for cid in ids:
        assert closure.hypo_set(cid) == hypo[cid]
        assert closure.anc_set(cid) == anc[cid]
