"""Per-concept relevance, score aggregation, and ranked query evaluation.

A document's elementary relevance for one query concept is the best measure
score over its annotation concepts.  The per-concept scores are then fused
into one retrieval status value by a power mean whose exponent ``q`` slides
the behaviour between strict conjunction (very negative) and tolerant
disjunction (very positive).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Iterable, Sequence

import numpy as np

from .corpus import CorpusIndex, Document
from .errors import (
    BadQueryError,
    BadWeightsError,
    EmptyScoresError,
    WeightMismatchError,
)
from .ontology import ClosureIndex, is_hyponym
from .similarity import (
    ICSource,
    ICTable,
    MeasureKind,
    MeasureSpec,
    concept_similarity,
    ic_extensional,
    ic_intrinsic,
)

WEIGHT_SUM_TOLERANCE = 1e-9


class MatchKind(str, Enum):
    EXACT = "Exact"
    HYPONYM = "Hyponym"
    HYPERNYM = "Hypernym"
    NONE = "None"
    # a positive best match that is neither ancestor nor descendant; only the
    # path- and IC-based measures can produce one
    OTHER = "Other"


_KIND_PREFERENCE = {
    MatchKind.EXACT: 0,
    MatchKind.HYPONYM: 1,
    MatchKind.HYPERNYM: 2,
    MatchKind.OTHER: 3,
}


@dataclass(frozen=True)
class ElementaryRelevance:
    query_concept: str
    best_concept: str | None
    score: float
    kind: MatchKind


@dataclass(frozen=True)
class Query:
    concepts: tuple[str, ...]
    q: float = 1.0
    threshold: float = 0.1
    limit: int = 50
    weights: tuple[float, ...] | None = None
    measure: MeasureSpec = MeasureSpec(MeasureKind.JD)

    def validate(self, closure: ClosureIndex) -> None:
        """Structural problems raise BadQueryError; unknown concepts raise
        UnknownConceptError (so callers can map them to distinct failures)."""
        if not self.concepts:
            raise BadQueryError("query needs at least one concept")
        if len(set(self.concepts)) != len(self.concepts):
            raise BadQueryError("duplicate query concepts")
        if not math.isfinite(self.q):
            raise BadQueryError("q must be finite")
        if not (0.0 <= self.threshold <= 1.0):
            raise BadQueryError(f"threshold must lie in [0, 1], got {self.threshold}")
        if self.limit < 1:
            raise BadQueryError(f"limit must be positive, got {self.limit}")
        if self.weights is not None:
            if len(self.weights) != len(self.concepts):
                raise WeightMismatchError(len(self.weights), len(self.concepts))
            _check_weights(self.weights)
        for concept_id in self.concepts:
            closure.require(concept_id)


@dataclass(frozen=True)
class ScoredDocument:
    doc_id: str
    rsv: float
    elementary: tuple[ElementaryRelevance, ...]
    rank: int


def _check_weights(weights: Sequence[float]) -> None:
    if any(w < 0.0 for w in weights):
        raise BadWeightsError("weights must be non-negative")
    total = math.fsum(weights)
    if abs(total - 1.0) > WEIGHT_SUM_TOLERANCE:
        raise BadWeightsError(f"weights must sum to 1, got {total}")


def _aggregate(scores: np.ndarray, q: float, weights: np.ndarray | None = None) -> np.ndarray:
    """Row-wise power mean of scores in [0, 1]; the single implementation all
    aggregation entry points share.

    Limit conventions: q = 0 is the geometric mean; a zero score with q <= 0
    annihilates the row; zero-weight entries are excluded before anything else.
    Large |q| is kept stable by working in log space with a max shift, and the
    result is finally clamped between the smallest and largest included score.
    """
    n_rows, n_cols = scores.shape
    included = np.ones((1, n_cols), dtype=bool) if weights is None else (weights > 0.0)[None, :]
    included_rows = np.broadcast_to(included, scores.shape)
    low = np.where(included_rows, scores, np.inf).min(axis=1)
    high = np.where(included_rows, scores, -np.inf).max(axis=1)
    positive = included_rows & (scores > 0.0)
    has_zero = (included_rows & (scores == 0.0)).any(axis=1)

    if q == 1.0:
        out = scores.mean(axis=1) if weights is None else scores @ weights
    elif abs(q) < 1e-12:
        # at (and numerically indistinguishable from) q = 0 the limit is the
        # geometric mean; evaluating the general formula here would divide
        # rounding noise by q
        logs = np.where(positive, np.log(np.where(positive, scores, 1.0)), 0.0)
        out = np.exp(logs.mean(axis=1)) if weights is None else np.exp(logs @ weights)
        out = np.where(has_zero, 0.0, out)
    else:
        with np.errstate(divide="ignore"):
            t = np.where(included_rows, q * np.log(scores), 0.0)
        bounded = np.where(positive, t, 0.0)
        small = np.abs(bounded).max(axis=1) <= 0.5

        # small exponents: expm1/log1p keeps full precision uniformly in q
        # (the mean degrades smoothly into the geometric limit as q -> 0,
        # and zero scores enter as expm1(-inf) = -1); the cutoff must stay
        # well below the point where sum(w * exp(t)) itself nears 0 and the
        # reconstruction 1 + sum(w * expm1(t)) would cancel
        with np.errstate(over="ignore", divide="ignore"):
            growth = np.expm1(t)
            s_mean = growth.mean(axis=1) if weights is None else growth @ weights
            out_small = np.exp(np.log1p(np.maximum(s_mean, -1.0)) / q)

        # larger exponents: max-shifted log-sum-exp; |q * ln s| > 0.5 bounds
        # |q| away from 0, so dividing the O(eps) log-sum noise by q is safe
        terms = np.where(positive, t, -np.inf)
        if weights is not None:
            log_w = np.where(included, np.log(np.where(included, weights, 1.0)), -np.inf)
            terms = terms + log_w
        shift = terms.max(axis=1)
        finite = shift > -np.inf  # false only when every included score is 0
        safe_shift = np.where(finite, shift, 0.0)
        sum_exp = np.exp(terms - safe_shift[:, None]).sum(axis=1)
        with np.errstate(divide="ignore", over="ignore"):
            log_part = np.log(sum_exp)
            if weights is None:
                log_part = log_part - math.log(n_cols)
            out_large = np.where(finite, np.exp(safe_shift / q + log_part / q), 0.0)

        out = np.where(small, out_small, out_large)
        if q < 0.0:
            out = np.where(has_zero, 0.0, out)
    out = np.clip(out, low, high)
    return np.clip(out, 0.0, 1.0)


def yager_aggregate(scores: Sequence[float], q: float) -> float:
    """Unweighted power mean ((sum s^q) / n)^(1/q) with the limit conventions."""
    if len(scores) == 0:
        raise EmptyScoresError()
    row = np.asarray(scores, dtype=np.float64)[None, :]
    return float(_aggregate(row, float(q))[0])


def weighted_yager(scores: Sequence[float], weights: Sequence[float], q: float) -> float:
    """Weighted power mean (sum p*s^q)^(1/q); weights must sum to 1."""
    if len(scores) == 0:
        raise EmptyScoresError()
    if len(weights) != len(scores):
        raise WeightMismatchError(len(weights), len(scores))
    _check_weights(weights)
    row = np.asarray(scores, dtype=np.float64)[None, :]
    return float(_aggregate(row, float(q), np.asarray(weights, dtype=np.float64))[0])


def _classify(closure: ClosureIndex, query_concept: str, candidate: str) -> MatchKind:
    if candidate == query_concept:
        return MatchKind.EXACT
    if is_hyponym(closure, candidate, query_concept):
        return MatchKind.HYPONYM
    if is_hyponym(closure, query_concept, candidate):
        return MatchKind.HYPERNYM
    return MatchKind.OTHER


def elementary_relevance(
    closure: ClosureIndex,
    measure: MeasureSpec,
    query_concept: str,
    doc: Document,
    *,
    ic: ICTable | None = None,
) -> ElementaryRelevance:
    """Best single annotation concept for one query concept.

    Score ties are broken by match kind (exact beats descendant beats
    ancestor), then by concept id.  A best score of 0 reports no concept.
    """
    closure.require(query_concept)
    best: tuple[float, int, str] | None = None
    best_kind = MatchKind.NONE
    for cid in sorted(doc.annotation):
        score = concept_similarity(closure, measure, query_concept, cid, ic=ic)
        if score <= 0.0:
            continue
        kind = _classify(closure, query_concept, cid)
        key = (-score, _KIND_PREFERENCE[kind], cid)
        if best is None or key < best:
            best = key
            best_kind = kind
    if best is None:
        return ElementaryRelevance(query_concept, None, 0.0, MatchKind.NONE)
    return ElementaryRelevance(query_concept, best[2], -best[0], best_kind)


class _NumericIndex:
    """Array views of one (corpus, closure) pair used by the query engine.

    Annotations are kept as one flat ordinal array plus per-document offsets
    (documents in id order), and transposed as doc-ordinal postings per
    concept ordinal.  Built once and cached on the corpus index.
    """

    def __init__(self, corpus: CorpusIndex, closure: ClosureIndex):
        self.doc_ids: tuple[str, ...] = tuple(corpus.documents)
        ann_lists = [
            sorted(closure.require(cid) for cid in corpus.documents[doc_id].annotation)
            for doc_id in self.doc_ids
        ]
        lengths = np.array([len(a) for a in ann_lists], dtype=np.int64)
        self.ann_offsets = np.concatenate(([0], np.cumsum(lengths)))
        self.ann_flat = np.array(
            [o for per_doc in ann_lists for o in per_doc], dtype=np.int64
        )
        doc_of = np.repeat(np.arange(len(ann_lists), dtype=np.int64), lengths)
        order = np.argsort(self.ann_flat, kind="stable")
        self.inv_flat = doc_of[order]
        sorted_concepts = self.ann_flat[order]
        self.inv_offsets = np.searchsorted(
            sorted_concepts, np.arange(closure.size + 1, dtype=np.int64)
        )
        self._ic_tables: dict[ICSource, ICTable] = {}

    def ic_for(
        self, corpus: CorpusIndex, closure: ClosureIndex, measure: MeasureSpec
    ) -> ICTable | None:
        if measure.kind not in (MeasureKind.RESNIK, MeasureKind.LIN):
            return None
        source = measure.ic_source or ICSource.EXTENSIONAL
        table = self._ic_tables.get(source)
        if table is None:
            table = (
                ic_extensional(closure, corpus)
                if source is ICSource.EXTENSIONAL
                else ic_intrinsic(closure)
            )
            self._ic_tables[source] = table
        return table


def _numeric(corpus: CorpusIndex, closure: ClosureIndex) -> _NumericIndex:
    key = id(closure)
    with corpus._numeric_lock:
        cached = corpus._numeric_cache.get(key)
        if cached is None:
            cached = _NumericIndex(corpus, closure)
            corpus._numeric_cache[key] = cached
        return cached  # type: ignore[return-value]


def _multi_range(starts: np.ndarray, lengths: np.ndarray) -> np.ndarray:
    """Concatenation of ranges [starts[i], starts[i] + lengths[i])."""
    total = int(lengths.sum())
    if total == 0:
        return np.empty(0, dtype=np.int64)
    before = np.cumsum(lengths) - lengths
    return np.arange(total, dtype=np.int64) - np.repeat(before, lengths) + np.repeat(
        starts, lengths
    )


def _score_jd(
    num: _NumericIndex, closure: ClosureIndex, query: Query, use_candidates: bool
) -> tuple[np.ndarray, np.ndarray]:
    """JD scoring over all documents or just the inverted-index candidates.

    For one query concept the measure is nonzero only inside its related set
    (descendants plus ancestors), where the subset relation collapses the
    Jaccard ratio to min/max of the descendant-set sizes.
    """
    query_ordinals = [closure.require(cid) for cid in query.concepts]
    related_ordinals = [
        closure.ordinals_of(closure.hypo_bits[o] | closure.anc_bits[o])
        for o in query_ordinals
    ]
    n_docs = len(num.doc_ids)
    if use_candidates:
        mask = np.zeros(n_docs, dtype=bool)
        for ordinals in related_ordinals:
            starts = num.inv_offsets[ordinals]
            lengths = num.inv_offsets[ordinals + 1] - starts
            mask[num.inv_flat[_multi_range(starts, lengths)]] = True
        selection = np.flatnonzero(mask)
    else:
        selection = np.arange(n_docs, dtype=np.int64)
    if selection.size == 0:
        return selection, np.empty(0, dtype=np.float64)

    starts = num.ann_offsets[selection]
    lengths = num.ann_offsets[selection + 1] - starts
    flat_annotations = num.ann_flat[_multi_range(starts, lengths)]
    segment_starts = np.cumsum(lengths) - lengths

    columns = np.empty((selection.size, len(query_ordinals)), dtype=np.float64)
    sizes = closure.hypo_sizes.astype(np.float64)
    per_concept = np.zeros(closure.size, dtype=np.float64)
    for t, (qo, ordinals) in enumerate(zip(query_ordinals, related_ordinals)):
        per_concept[:] = 0.0
        if ordinals.size:
            related_sizes = sizes[ordinals]
            query_size = sizes[qo]
            per_concept[ordinals] = np.minimum(related_sizes, query_size) / np.maximum(
                related_sizes, query_size
            )
        columns[:, t] = np.maximum.reduceat(per_concept[flat_annotations], segment_starts)
    w = np.asarray(query.weights, dtype=np.float64) if query.weights is not None else None
    return selection, _aggregate(columns, float(query.q), w)


def _score_generic(
    num: _NumericIndex,
    corpus: CorpusIndex,
    closure: ClosureIndex,
    query: Query,
    ic: ICTable | None,
) -> tuple[np.ndarray, np.ndarray]:
    """Exhaustive scoring used by every measure without an index shortcut."""
    n_docs = len(num.doc_ids)
    columns = np.zeros((n_docs, len(query.concepts)), dtype=np.float64)
    cache: dict[tuple[str, str], float] = {}
    for t, query_concept in enumerate(query.concepts):
        for d, doc_id in enumerate(num.doc_ids):
            best = 0.0
            for cid in corpus.documents[doc_id].annotation:
                key = (query_concept, cid)
                score = cache.get(key)
                if score is None:
                    score = concept_similarity(closure, query.measure, query_concept, cid, ic=ic)
                    cache[key] = score
                if score > best:
                    best = score
            columns[d, t] = best
    w = np.asarray(query.weights, dtype=np.float64) if query.weights is not None else None
    return np.arange(n_docs, dtype=np.int64), _aggregate(columns, float(query.q), w)


def evaluate_query(
    corpus_index: CorpusIndex,
    closure: ClosureIndex,
    query: Query,
    *,
    use_candidates: bool = True,
) -> list[ScoredDocument]:
    """Score, filter, and rank documents for a multi-concept query.

    Documents whose fused score reaches the threshold are sorted by score
    descending, then id ascending, truncated to the limit, and ranked 1..k.
    Candidate pruning is only sound for the JD measure and only when the
    threshold is positive (zero-score documents can never be pruned away
    when a threshold of 0 would retain them).
    """
    query.validate(closure)
    num = _numeric(corpus_index, closure)
    if not num.doc_ids:
        return []
    ic = num.ic_for(corpus_index, closure, query.measure)
    if query.measure.kind is MeasureKind.JD:
        prune = use_candidates and query.threshold > 0.0
        selection, rsv = _score_jd(num, closure, query, prune)
    else:
        selection, rsv = _score_generic(num, corpus_index, closure, query, ic)

    kept = np.flatnonzero(rsv >= query.threshold)
    order = np.lexsort((selection[kept], -rsv[kept]))
    top = kept[order[: query.limit]]

    results: list[ScoredDocument] = []
    for rank, i in enumerate(top, start=1):
        doc = corpus_index.documents[num.doc_ids[selection[i]]]
        elementary = tuple(
            elementary_relevance(closure, query.measure, qc, doc, ic=ic)
            for qc in query.concepts
        )
        results.append(ScoredDocument(doc.id, float(rsv[i]), elementary, rank))
    return results
