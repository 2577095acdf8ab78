"""Concept-to-concept similarity and distance measures over the is-a DAG.

All logarithms are natural.  Distances are mapped onto [0, 1] similarities
with ``as_similarity``; measures that are already similarities pass through.
"""

from __future__ import annotations

import heapq
import math
from collections import deque
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .corpus import CorpusIndex
from .errors import (
    DegenerateOntologyError,
    EmptyCorpusError,
    NoCommonAncestorError,
    UnreachableError,
)
from .ontology import ClosureIndex, OntologyGraph, UnknownConceptError

DEFAULT_DIRECTION_PENALTY = 2.0


class MeasureKind(str, Enum):
    JD = "jd"
    RADA = "rada"
    HIRST_ST_ONGE = "ho"
    D_ISA = "disa"
    RESNIK = "resnik"
    LIN = "lin"


class ICSource(str, Enum):
    EXTENSIONAL = "extensional"
    INTRINSIC = "intrinsic"


@dataclass(frozen=True)
class MeasureSpec:
    """A measure selection: the kind plus its parameters.

    ``K`` is the direction-change penalty and only affects ``HIRST_ST_ONGE``;
    ``ic_source`` applies to the information-content measures and defaults to
    the corpus-based (extensional) table.
    """

    kind: MeasureKind
    K: float = DEFAULT_DIRECTION_PENALTY
    ic_source: ICSource | None = None

    def __post_init__(self) -> None:
        if not (self.K >= 0.0):
            raise ValueError(f"direction penalty K must be >= 0, got {self.K}")
        if self.kind in (MeasureKind.RESNIK, MeasureKind.LIN):
            if self.ic_source is None:
                object.__setattr__(self, "ic_source", ICSource.EXTENSIONAL)
        elif self.ic_source is not None:
            raise ValueError(f"{self.kind.value} does not take an ic_source")


def sim_jd(closure: ClosureIndex, c1: str, c2: str) -> float:
    """Descendant-set Jaccard overlap, zero unless one concept subsumes the other."""
    o1 = closure.require(c1)
    o2 = closure.require(c2)
    h1 = closure.hypo_bits[o1]
    h2 = closure.hypo_bits[o2]
    if not ((h2 >> o1) & 1 or (h1 >> o2) & 1):
        return 0.0
    return (h1 & h2).bit_count() / (h1 | h2).bit_count()


def rada_distance(graph: OntologyGraph, c1: str, c2: str) -> int:
    """Length of the shortest undirected edge path between two concepts."""
    for cid in (c1, c2):
        if cid not in graph.concepts:
            raise UnknownConceptError(cid)
    if c1 == c2:
        return 0
    adjacency = graph.adjacency
    dist = {c1: 0}
    queue = deque([c1])
    while queue:
        node = queue.popleft()
        step = dist[node] + 1
        for neighbour in adjacency[node]:
            if neighbour not in dist:
                if neighbour == c2:
                    return step
                dist[neighbour] = step
                queue.append(neighbour)
    raise UnreachableError(c1, c2)


def ho_distance(
    graph: OntologyGraph, c1: str, c2: str, K: float = DEFAULT_DIRECTION_PENALTY
) -> float:
    """Cheapest path cost where each edge costs 1 and each up/down turn costs ``K``.

    Exact least-cost search over (node, entry-direction) states; with ``K = 0``
    this degenerates to the plain shortest path length.
    """
    if not (K >= 0.0):
        raise ValueError(f"direction penalty K must be >= 0, got {K}")
    for cid in (c1, c2):
        if cid not in graph.concepts:
            raise UnknownConceptError(cid)
    if c1 == c2:
        return 0.0
    parents = graph.parents_of
    children = graph.children_of
    best: dict[tuple[str, str], float] = {}
    heap: list[tuple[float, str, str]] = [(0.0, c1, "")]
    while heap:
        cost, node, direction = heapq.heappop(heap)
        if node == c2:
            return cost
        if best.get((node, direction), math.inf) < cost:
            continue
        for step_dir, neighbours in (("u", parents[node]), ("d", children[node])):
            step = cost + 1.0 + (K if direction and direction != step_dir else 0.0)
            for neighbour in neighbours:
                key = (neighbour, step_dir)
                if step < best.get(key, math.inf):
                    best[key] = step
                    heapq.heappush(heap, (step, neighbour, step_dir))
    raise UnreachableError(c1, c2)


def d_isa(closure: ClosureIndex, c1: str, c2: str) -> int:
    """Count of descendants of the exclusive ancestors and of either concept,
    minus the shared descendants.  The set difference is applied last."""
    o1 = closure.require(c1)
    o2 = closure.require(c2)
    h1 = closure.hypo_bits[o1]
    h2 = closure.hypo_bits[o2]
    exclusive = closure.anc_bits[o1] ^ closure.anc_bits[o2]
    hypo_exclusive = 0
    for o in closure.ordinals_of(exclusive):
        hypo_exclusive |= closure.hypo_bits[o]
    union = hypo_exclusive | h1 | h2
    return (union & ~(h1 & h2)).bit_count()


class ICTable:
    """Per-concept information content, ordinal-aligned with a ClosureIndex."""

    def __init__(
        self,
        closure: ClosureIndex,
        by_ordinal: np.ndarray,
        source: ICSource,
        doc_count: int | None = None,
    ):
        self._closure = closure
        self.by_ordinal = by_ordinal
        self.source = source
        self.doc_count = doc_count

    def value(self, concept_id: str) -> float:
        return float(self.by_ordinal[self._closure.require(concept_id)])

    @property
    def max_ic(self) -> float:
        return float(self.by_ordinal.max()) if self.by_ordinal.size else 0.0

    def as_dict(self) -> dict[str, float]:
        return {cid: float(v) for cid, v in zip(self._closure.ids, self.by_ordinal)}


def ic_extensional(closure: ClosureIndex, corpus: CorpusIndex) -> ICTable:
    """Corpus-based information content: -ln of the fraction of documents
    annotated by the concept or any of its descendants.  Concepts that match
    no document are capped at ln(doc_count + 1)."""
    if not corpus.documents:
        raise EmptyCorpusError()
    counts = np.zeros(closure.size, dtype=np.int64)
    for doc in corpus.documents.values():
        covered = 0
        for cid in doc.annotation:
            covered |= closure.anc_bits[closure.require(cid)]
        counts[closure.ordinals_of(covered)] += 1
    total = len(corpus.documents)
    values = np.where(
        counts > 0,
        -np.log(np.maximum(counts, 1) / total),
        math.log(total + 1),
    )
    return ICTable(closure, values + 0.0, ICSource.EXTENSIONAL, total)


def ic_intrinsic(closure: ClosureIndex) -> ICTable:
    """Structure-only information content: 1 - ln|descendants| / ln N."""
    n = closure.size
    if n < 2:
        raise DegenerateOntologyError(n)
    values = 1.0 - np.log(closure.hypo_sizes.astype(np.float64)) / math.log(n)
    return ICTable(closure, values + 0.0, ICSource.INTRINSIC, None)


def mica(closure: ClosureIndex, ic: ICTable, c1: str, c2: str) -> str:
    """The common ancestor with maximum information content.

    Ties go to the lexicographically smallest concept id (ordinals are sorted,
    so the first argmax hit is already the smallest id)."""
    shared = closure.anc_bits[closure.require(c1)] & closure.anc_bits[closure.require(c2)]
    if shared == 0:
        raise NoCommonAncestorError(c1, c2)
    ordinals = closure.ordinals_of(shared)
    values = ic.by_ordinal[ordinals]
    return closure.ids[int(ordinals[int(np.argmax(values))])]


def sim_resnik(closure: ClosureIndex, ic: ICTable, c1: str, c2: str) -> float:
    """Information content of the most informative common ancestor (0 if none)."""
    try:
        ancestor = mica(closure, ic, c1, c2)
    except NoCommonAncestorError:
        closure.require(c1)
        closure.require(c2)
        return 0.0
    return ic.value(ancestor)


def sim_lin(closure: ClosureIndex, ic: ICTable, c1: str, c2: str) -> float:
    """2*IC(mica) / (IC(c1) + IC(c2)), clamped to [0, 1].

    Identical concepts score 1 even when their IC is 0 (the 0/0 convention);
    distinct concepts with no shared information score 0."""
    if c1 == c2:
        closure.require(c1)
        return 1.0
    try:
        ancestor = mica(closure, ic, c1, c2)
    except NoCommonAncestorError:
        closure.require(c1)
        closure.require(c2)
        return 0.0
    denominator = ic.value(c1) + ic.value(c2)
    if denominator <= 0.0:
        return 0.0
    return min(1.0, max(0.0, 2.0 * ic.value(ancestor) / denominator))


def as_similarity(
    measure: MeasureSpec | MeasureKind, value: float, *, max_ic: float | None = None
) -> float:
    """Map a raw measure value onto [0, 1].

    Similarities (JD, Lin) pass through; Resnik is normalised by the table
    maximum; distances map through 1/(1+d), with an unreachable pair
    (``value = inf``) mapping to 0."""
    kind = measure.kind if isinstance(measure, MeasureSpec) else measure
    if kind in (MeasureKind.JD, MeasureKind.LIN):
        similarity = value
    elif kind is MeasureKind.RESNIK:
        if max_ic is None:
            raise ValueError("Resnik normalisation needs the table maximum")
        similarity = 0.0 if max_ic <= 0.0 else value / max_ic
    else:
        similarity = 0.0 if math.isinf(value) else 1.0 / (1.0 + value)
    return min(1.0, max(0.0, similarity))


def concept_similarity(
    closure: ClosureIndex,
    measure: MeasureSpec,
    c1: str,
    c2: str,
    *,
    ic: ICTable | None = None,
) -> float:
    """One pair through the selected measure, already mapped onto [0, 1]."""
    kind = measure.kind
    if kind is MeasureKind.JD:
        return sim_jd(closure, c1, c2)
    if kind is MeasureKind.LIN:
        if ic is None:
            raise ValueError("lin needs an ICTable")
        return sim_lin(closure, ic, c1, c2)
    if kind is MeasureKind.RESNIK:
        if ic is None:
            raise ValueError("resnik needs an ICTable")
        raw = sim_resnik(closure, ic, c1, c2)
        return as_similarity(kind, raw, max_ic=ic.max_ic)
    if kind is MeasureKind.D_ISA:
        return as_similarity(kind, float(d_isa(closure, c1, c2)))
    try:
        if kind is MeasureKind.RADA:
            raw = float(rada_distance(closure.graph, c1, c2))
        else:
            raw = ho_distance(closure.graph, c1, c2, measure.K)
    except UnreachableError:
        raw = math.inf
    return as_similarity(kind, raw)
