"""HTTP query service, semantic-map layout, and concept autocomplete.

The service holds an immutable snapshot (graph + closure + corpus index);
reindexing builds a fresh snapshot off to the side and swaps the reference,
so every request sees exactly one consistent state.
"""

from __future__ import annotations

import math
import os
import time
from dataclasses import dataclass
from typing import Iterable, Sequence

from fastapi import FastAPI, Request
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse

from .corpus import CorpusIndex, Document, build_corpus_index
from .errors import BadQueryError, UnknownConceptError
from .ontology import ClosureIndex, Concept, OntologyGraph, build_closure
from .relevance import (
    MeasureKind,
    MeasureSpec,
    Query,
    ScoredDocument,
    _numeric,
    evaluate_query,
)

GOLDEN_ANGLE_DEG = 137.508


@dataclass(frozen=True)
class LayoutPoint:
    doc_id: str
    x: float
    y: float
    radius: float
    angle_deg: float


def compute_layout(results: Sequence[ScoredDocument]) -> list[LayoutPoint]:
    """Radial coordinates: better-scoring documents sit closer to the centre
    (radius = 1 - rsv) and successive ranks advance by the golden angle."""
    points: list[LayoutPoint] = []
    for k, scored in enumerate(results):
        radius = 1.0 - scored.rsv
        angle_deg = (k * GOLDEN_ANGLE_DEG) % 360.0
        angle = math.radians(angle_deg)
        points.append(
            LayoutPoint(
                scored.doc_id,
                radius * math.cos(angle),
                radius * math.sin(angle),
                radius,
                angle_deg,
            )
        )
    return points


def autocomplete(concepts: Iterable[Concept], prefix: str, limit: int = 10) -> list[Concept]:
    """Case-insensitive substring search over labels and synonyms.

    Results are ordered by earliest match position, then label length, then
    concept id; an empty or whitespace prefix matches nothing.
    """
    if limit < 1:
        raise ValueError(f"limit must be positive, got {limit}")
    needle = prefix.strip().lower()
    if not needle:
        return []
    hits: list[tuple[int, int, str, Concept]] = []
    for concept in concepts:
        positions = [
            text.lower().find(needle) for text in (concept.label, *concept.synonyms)
        ]
        positions = [p for p in positions if p >= 0]
        if not positions:
            continue
        hits.append((min(positions), len(concept.label), concept.id, concept))
    hits.sort(key=lambda h: h[:3])
    return [h[3] for h in hits[:limit]]


class Snapshot:
    """One immutable, query-ready state: graph, closure, and corpus index."""

    def __init__(
        self,
        graph: OntologyGraph,
        closure: ClosureIndex,
        corpus: CorpusIndex,
        digests: dict[str, str] | None = None,
    ):
        self.graph = graph
        self.closure = closure
        self.corpus = corpus
        self.digests = digests or {}
        self.concept_count = len(graph.concepts)
        self.doc_count = len(corpus.documents)

    @classmethod
    def assemble(
        cls,
        graph: OntologyGraph,
        documents: Iterable[Document],
        digests: dict[str, str] | None = None,
    ) -> "Snapshot":
        closure = build_closure(graph)
        return cls(graph, closure, build_corpus_index(documents), digests)

    def warm(self) -> None:
        """Pre-build the engine's array views so first queries pay no setup."""
        _numeric(self.corpus, self.closure)


class SnapshotHolder:
    """Mutable cell whose reference assignment is the atomic swap point."""

    def __init__(self, snapshot: Snapshot):
        self._current = snapshot

    @property
    def current(self) -> Snapshot:
        return self._current

    def swap(self, snapshot: Snapshot) -> None:
        self._current = snapshot


_MEASURE_NAMES = {kind.value: kind for kind in MeasureKind}


def parse_query_payload(payload: object) -> Query:
    """Turn a request body into a Query, defaulting omitted fields."""
    if not isinstance(payload, dict):
        raise BadQueryError("request body must be a JSON object")
    concepts = payload.get("concepts")
    if not isinstance(concepts, list) or not all(isinstance(c, str) for c in concepts):
        raise BadQueryError("concepts must be a list of strings")
    q = _number(payload.get("q", 1.0), "q")
    threshold = _number(payload.get("threshold", 0.1), "threshold")
    limit = payload.get("limit", 50)
    if isinstance(limit, bool) or not isinstance(limit, int):
        raise BadQueryError("limit must be an integer")
    measure_name = payload.get("measure", "jd")
    if not isinstance(measure_name, str) or measure_name not in _MEASURE_NAMES:
        raise BadQueryError(f"unknown measure {measure_name!r}")
    K = _number(payload.get("K", 2.0), "K")
    if K < 0.0:
        raise BadQueryError("K must be >= 0")
    weights = payload.get("weights")
    if weights is not None:
        if not isinstance(weights, list):
            raise BadQueryError("weights must be a list of numbers")
        weights = tuple(_number(w, "weight") for w in weights)
    return Query(
        concepts=tuple(concepts),
        q=q,
        threshold=threshold,
        limit=limit,
        weights=weights,
        measure=MeasureSpec(_MEASURE_NAMES[measure_name], K=K),
    )


def _number(value: object, name: str) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise BadQueryError(f"{name} must be a number")
    return float(value)


def build_query_response(snapshot: Snapshot, query: Query) -> dict:
    """Evaluate a query and assemble the full wire-format response.

    The CLI emits exactly this structure, so its JSON output and the HTTP
    service stay byte-identical (timing aside).
    """
    started = time.perf_counter()
    results = evaluate_query(snapshot.corpus, snapshot.closure, query)
    layout = compute_layout(results)
    body = {
        "query": {
            "concepts": list(query.concepts),
            "q": query.q,
            "threshold": query.threshold,
            "limit": query.limit,
            "measure": query.measure.kind.value,
            "weights": list(query.weights) if query.weights is not None else None,
        },
        "results": [
            {
                "docId": scored.doc_id,
                "title": snapshot.corpus.documents[scored.doc_id].title,
                "rsv": scored.rsv,
                "rank": scored.rank,
                "layout": {
                    "docId": point.doc_id,
                    "x": point.x,
                    "y": point.y,
                    "radius": point.radius,
                    "angleDeg": point.angle_deg,
                },
                "elementary": [
                    {
                        "queryConcept": e.query_concept,
                        "bestDocConcept": e.best_concept,
                        "score": e.score,
                        "kind": e.kind.value,
                    }
                    for e in scored.elementary
                ],
            }
            for scored, point in zip(results, layout)
        ],
        "timingMs": (time.perf_counter() - started) * 1000.0,
    }
    return body


def _error(status: int, code: str, message: str) -> JSONResponse:
    return JSONResponse({"error": {"code": code, "message": message}}, status_code=status)


def create_app(snapshot: Snapshot | SnapshotHolder) -> FastAPI:
    holder = snapshot if isinstance(snapshot, SnapshotHolder) else SnapshotHolder(snapshot)
    app = FastAPI(title="ontorank", docs_url=None, redoc_url=None)
    app.state.holder = holder
    app.add_middleware(
        CORSMiddleware, allow_origins=["*"], allow_methods=["*"], allow_headers=["*"]
    )

    @app.get("/api/health")
    def health() -> dict:
        snap = holder.current
        return {
            "status": "ok",
            "docCount": snap.doc_count,
            "conceptCount": snap.concept_count,
        }

    @app.get("/api/concepts")
    def concepts(prefix: str = "", limit: int = 10):
        snap = holder.current
        if limit < 1:
            return _error(400, "BAD_QUERY", "limit must be positive")
        found = autocomplete(snap.graph.concepts.values(), prefix, limit)
        return [{"id": c.id, "label": c.label} for c in found]

    @app.post("/api/query")
    async def query(request: Request):
        snap = holder.current
        try:
            payload = await request.json()
        except Exception:
            return _error(400, "BAD_QUERY", "request body is not valid JSON")
        try:
            parsed = parse_query_payload(payload)
            return JSONResponse(build_query_response(snap, parsed))
        except BadQueryError as exc:
            return _error(400, "BAD_QUERY", str(exc))
        except UnknownConceptError as exc:
            return _error(422, "UNKNOWN_CONCEPT", str(exc))

    @app.get("/api/documents/{doc_id}")
    def document(doc_id: str):
        snap = holder.current
        doc = snap.corpus.documents.get(doc_id)
        if doc is None:
            return _error(404, "NOT_FOUND", f"no document {doc_id!r}")
        concepts_map = snap.graph.concepts
        return {
            "id": doc.id,
            "title": doc.title,
            "annotation": [
                {"id": cid, "label": concepts_map[cid].label}
                for cid in sorted(doc.annotation)
            ],
        }

    ui_dir = os.environ.get("ONTORANK_UI", "")
    if ui_dir and os.path.isdir(ui_dir):
        from fastapi.staticfiles import StaticFiles

        app.mount("/", StaticFiles(directory=ui_dir, html=True), name="ui")
    return app


def serve(snapshot: Snapshot | SnapshotHolder, bind: str = "127.0.0.1:8034") -> None:
    """Run the HTTP service on ``host:port`` until interrupted."""
    import uvicorn

    host, _, port_text = bind.rpartition(":")
    if not host or not port_text.isdigit():
        raise ValueError(f"bind must look like host:port, got {bind!r}")
    app = create_app(snapshot)
    uvicorn.run(app, host=host, port=int(port_text), log_level="warning")
