"""Concept-annotated documents and the concept-to-documents inverted index."""

from __future__ import annotations

import threading
from dataclasses import dataclass
from typing import Iterable, Literal

from .errors import (
    DuplicateDocIdError,
    EmptyInputError,
    ParseError,
    UnknownConceptError,
)
from .ontology import ClosureIndex

IngestMode = Literal["strict", "lenient"]


@dataclass(frozen=True)
class Document:
    id: str
    title: str
    annotation: frozenset[str]


@dataclass(frozen=True)
class IngestReport:
    rows: int
    dropped_rows: int
    dropped_docs: tuple[str, ...]


def load_annotations(
    text: str, closure: ClosureIndex, mode: IngestMode = "strict"
) -> tuple[list[Document], IngestReport]:
    """Read tab-separated ``doc_id, concept_id[, title]`` rows into documents.

    ``#`` comment lines and blank lines are skipped.  Rows naming a concept the
    ontology does not define raise :class:`UnknownConceptError` in strict mode
    and are dropped (and counted) in lenient mode.  The first title seen for a
    document wins; documents left with no valid annotation are dropped.
    """
    if mode not in ("strict", "lenient"):
        raise ValueError(f"mode must be 'strict' or 'lenient', got {mode!r}")
    titles: dict[str, str] = {}
    annotations: dict[str, set[str]] = {}
    rows = 0
    dropped_rows = 0
    for line_no, raw in enumerate(text.splitlines(), start=1):
        if not raw.strip() or raw.lstrip().startswith("#"):
            continue
        parts = raw.split("\t")
        if len(parts) < 2:
            raise ParseError("expected doc_id<TAB>concept_id", line_no)
        doc_id = parts[0].strip()
        concept_id = parts[1].strip()
        if not doc_id or not concept_id:
            raise ParseError("empty doc or concept id", line_no)
        rows += 1
        annotations.setdefault(doc_id, set())
        if len(parts) > 2 and parts[2].strip() and doc_id not in titles:
            titles[doc_id] = parts[2].strip()
        if concept_id not in closure:
            if mode == "strict":
                raise UnknownConceptError(concept_id, line=line_no)
            dropped_rows += 1
            continue
        annotations[doc_id].add(concept_id)
    if rows == 0:
        raise EmptyInputError()

    documents: list[Document] = []
    dropped_docs: list[str] = []
    for doc_id, concepts in annotations.items():
        if not concepts:
            dropped_docs.append(doc_id)
            continue
        documents.append(Document(doc_id, titles.get(doc_id, doc_id), frozenset(concepts)))
    return documents, IngestReport(rows, dropped_rows, tuple(dropped_docs))


class CorpusIndex:
    """Documents keyed by id plus the transposed concept -> doc-ids index."""

    def __init__(self, documents: Iterable[Document]):
        by_id: dict[str, Document] = {}
        for doc in documents:
            if doc.id in by_id:
                raise DuplicateDocIdError(doc.id)
            by_id[doc.id] = doc
        self.documents: dict[str, Document] = {k: by_id[k] for k in sorted(by_id)}
        inverted: dict[str, set[str]] = {}
        for doc in self.documents.values():
            for cid in doc.annotation:
                inverted.setdefault(cid, set()).add(doc.id)
        self.inverted: dict[str, frozenset[str]] = {
            cid: frozenset(hits) for cid, hits in sorted(inverted.items())
        }
        # engine-facing array views, built lazily per closure (see relevance)
        self._numeric_lock = threading.Lock()
        self._numeric_cache: dict[int, object] = {}


def build_corpus_index(documents: Iterable[Document]) -> CorpusIndex:
    return CorpusIndex(documents)


def candidate_docs(
    index: CorpusIndex, closure: ClosureIndex, query_concepts: Iterable[str]
) -> set[str]:
    """Ids of documents annotated by any concept related to a query concept.

    "Related" means lying in the reflexive descendant or ancestor set, which
    is exactly the region where the descendant-overlap similarity is nonzero.
    """
    out: set[str] = set()
    for concept_id in query_concepts:
        o = closure.require(concept_id)
        related = closure.hypo_bits[o] | closure.anc_bits[o]
        for ro in closure.ordinals_of(related):
            hits = index.inverted.get(closure.ids[ro])
            if hits:
                out |= hits
    return out
