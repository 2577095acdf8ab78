"""Shared fixtures: the small six-concept ontology and four-document corpus
used throughout, plus builders for randomised instances."""

from __future__ import annotations

import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from ontorank.corpus import Document, build_corpus_index, load_annotations
from ontorank.ontology import Concept, OntologyGraph, build_closure, parse_ontology
from ontorank.similarity import ic_extensional

O1_TEXT = """\
[Term]
id: R
name: root concept

[Term]
id: A
name: alpha branch
is_a: R ! the root

[Term]
id: B
name: beta branch
is_a: R

[Term]
id: A1
name: alpha one
is_a: A

[Term]
id: A2
name: alpha two
is_a: A

[Term]
id: B1
name: beta one
is_a: B
"""

C1_TEXT = """\
D1\tA1\tdoc one
D2\tA2\tdoc two
D3\tB1\tdoc three
D4\tB\tdoc four
"""


@pytest.fixture(scope="session")
def o1_graph():
    return parse_ontology(O1_TEXT)


@pytest.fixture(scope="session")
def o1_closure(o1_graph):
    return build_closure(o1_graph)


@pytest.fixture(scope="session")
def c1_docs(o1_closure):
    docs, report = load_annotations(C1_TEXT, o1_closure)
    assert report.dropped_rows == 0
    return docs


@pytest.fixture(scope="session")
def c1_index(c1_docs):
    return build_corpus_index(c1_docs)


@pytest.fixture(scope="session")
def c1_ic(o1_closure, c1_index):
    return ic_extensional(o1_closure, c1_index)


def graph_from(ids, edges) -> OntologyGraph:
    return OntologyGraph([Concept(cid, cid) for cid in ids], edges)


def corpus_from(annotations: dict[str, frozenset[str]]):
    return build_corpus_index(
        [Document(doc_id, doc_id, concepts) for doc_id, concepts in annotations.items()]
    )
