"""Ontology-driven document ranking with an explainable semantic-map output."""

__version__ = "0.1.0"

from .corpus import (
    CorpusIndex,
    Document,
    IngestReport,
    build_corpus_index,
    candidate_docs,
    load_annotations,
)
from .ontology import (
    ClosureIndex,
    Concept,
    OntologyGraph,
    ParseReport,
    build_closure,
    common_ancestors,
    is_hyponym,
    parse_ontology,
)
from .relevance import (
    ElementaryRelevance,
    MatchKind,
    Query,
    ScoredDocument,
    elementary_relevance,
    evaluate_query,
    weighted_yager,
    yager_aggregate,
)
from .server import (
    LayoutPoint,
    Snapshot,
    SnapshotHolder,
    autocomplete,
    build_query_response,
    compute_layout,
    create_app,
    serve,
)
from .similarity import (
    ICSource,
    ICTable,
    MeasureKind,
    MeasureSpec,
    as_similarity,
    concept_similarity,
    d_isa,
    ho_distance,
    ic_extensional,
    ic_intrinsic,
    mica,
    rada_distance,
    sim_jd,
    sim_lin,
    sim_resnik,
)

__all__ = [
    "__version__",
    "ClosureIndex",
    "Concept",
    "CorpusIndex",
    "Document",
    "ElementaryRelevance",
    "ICSource",
    "ICTable",
    "IngestReport",
    "LayoutPoint",
    "MatchKind",
    "MeasureKind",
    "MeasureSpec",
    "OntologyGraph",
    "ParseReport",
    "Query",
    "ScoredDocument",
    "Snapshot",
    "SnapshotHolder",
    "as_similarity",
    "autocomplete",
    "build_closure",
    "build_corpus_index",
    "build_query_response",
    "candidate_docs",
    "common_ancestors",
    "compute_layout",
    "concept_similarity",
    "create_app",
    "d_isa",
    "elementary_relevance",
    "evaluate_query",
    "ho_distance",
    "ic_extensional",
    "ic_intrinsic",
    "is_hyponym",
    "load_annotations",
    "mica",
    "parse_ontology",
    "rada_distance",
    "serve",
    "sim_jd",
    "sim_lin",
    "sim_resnik",
    "weighted_yager",
    "yager_aggregate",
]
