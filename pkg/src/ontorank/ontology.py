"""Is-a ontology parsing, validation, and reflexive transitive closure.

The closure keeps one descendant bitset and one ancestor bitset per concept,
stored as arbitrary-precision Python ints indexed by a lexicographic ordinal.
Set algebra on whole concept sets then reduces to integer bit operations.
"""

from __future__ import annotations

import re
from collections import deque
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable

import numpy as np

from .errors import (
    CycleError,
    DanglingReferenceError,
    DuplicateIdError,
    ParseError,
    UnknownConceptError,
)

_QUOTED = re.compile(r'"([^"]*)"')


@dataclass(frozen=True)
class Concept:
    """A named node of the is-a DAG."""

    id: str
    label: str
    synonyms: tuple[str, ...] = ()


@dataclass(frozen=True)
class ParseReport:
    """Counts collected while reading an ontology file."""

    concept_count: int
    edge_count: int
    skipped_relationships: int = 0
    ignored_stanzas: int = 0


def _check_token(value: str, line: int) -> str:
    if not value or any(ch.isspace() for ch in value):
        raise ParseError(f"invalid concept identifier {value!r}", line)
    return value


class OntologyGraph:
    """A validated is-a DAG.  Edges are ordered ``(child, parent)`` pairs.

    Construction rejects duplicate concept ids, edges whose endpoints are
    undefined, self-edges, and cycles.  Duplicate edges are silently merged.
    """

    def __init__(
        self,
        concepts: Iterable[Concept],
        edges: Iterable[tuple[str, str]],
        *,
        skipped_relationships: int = 0,
        ignored_stanzas: int = 0,
    ):
        by_id: dict[str, Concept] = {}
        for concept in concepts:
            if concept.id in by_id:
                raise DuplicateIdError(concept.id)
            by_id[concept.id] = concept
        edge_set: set[tuple[str, str]] = set()
        for child, parent in edges:
            for end in (child, parent):
                if end not in by_id:
                    raise DanglingReferenceError(end)
            if child == parent:
                raise CycleError(child)
            edge_set.add((child, parent))
        self.concepts: dict[str, Concept] = by_id
        self.edges: frozenset[tuple[str, str]] = frozenset(edge_set)
        self.report = ParseReport(
            concept_count=len(by_id),
            edge_count=len(edge_set),
            skipped_relationships=skipped_relationships,
            ignored_stanzas=ignored_stanzas,
        )
        self._check_acyclic()

    def _check_acyclic(self) -> None:
        remaining = {cid: 0 for cid in self.concepts}  # outstanding parent edges
        children: dict[str, list[str]] = {cid: [] for cid in self.concepts}
        for child, parent in self.edges:
            remaining[child] += 1
            children[parent].append(child)
        ready = deque(cid for cid, n in sorted(remaining.items()) if n == 0)
        seen = 0
        while ready:
            node = ready.popleft()
            seen += 1
            for child in children[node]:
                remaining[child] -= 1
                if remaining[child] == 0:
                    ready.append(child)
        if seen != len(self.concepts):
            stuck = min(cid for cid, n in remaining.items() if n > 0)
            raise CycleError(stuck)

    @cached_property
    def parents_of(self) -> dict[str, tuple[str, ...]]:
        out: dict[str, list[str]] = {cid: [] for cid in self.concepts}
        for child, parent in self.edges:
            out[child].append(parent)
        return {cid: tuple(sorted(ps)) for cid, ps in out.items()}

    @cached_property
    def children_of(self) -> dict[str, tuple[str, ...]]:
        out: dict[str, list[str]] = {cid: [] for cid in self.concepts}
        for child, parent in self.edges:
            out[parent].append(child)
        return {cid: tuple(sorted(cs)) for cid, cs in out.items()}

    @cached_property
    def adjacency(self) -> dict[str, tuple[str, ...]]:
        """Undirected neighbour map (parents and children together)."""
        return {
            cid: tuple(sorted(set(self.parents_of[cid]) | set(self.children_of[cid])))
            for cid in self.concepts
        }


def parse_ontology(text: str) -> OntologyGraph:
    """Read ``[Term]`` stanzas from OBO-style text into a validated graph.

    Recognised keys are ``id``, ``name``, ``synonym`` (first quoted string),
    and ``is_a`` (anything after ``!`` is a comment).  ``relationship`` lines
    and unknown keys are skipped, non-``[Term]`` stanzas and lines outside any
    stanza are ignored, and a blank line terminates the current stanza.
    """
    concepts: list[Concept] = []
    seen: set[str] = set()
    edges: list[tuple[str, str]] = []
    skipped_relationships = 0
    ignored_stanzas = 0
    stanza: dict | None = None

    def commit() -> None:
        nonlocal stanza
        if stanza is None or stanza["kind"] != "Term":
            stanza = None
            return
        cid = stanza.get("id")
        if cid is None:
            raise ParseError("[Term] stanza has no id", stanza["line"])
        if cid in seen:
            raise DuplicateIdError(cid)
        seen.add(cid)
        label = stanza.get("name") or cid
        concepts.append(Concept(cid, label, tuple(stanza["synonyms"])))
        edges.extend((cid, parent) for parent in stanza["is_a"])
        stanza = None

    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line:
            commit()
            continue
        if line.startswith("[") and line.endswith("]"):
            commit()
            if line == "[Term]":
                stanza = {"kind": "Term", "line": line_no, "synonyms": [], "is_a": []}
            else:
                ignored_stanzas += 1
                stanza = {"kind": "other", "line": line_no}
            continue
        if stanza is None or stanza["kind"] != "Term":
            continue
        if ":" not in line:
            raise ParseError(f"expected 'key: value', got {line!r}", line_no)
        key, _, value = line.partition(":")
        key = key.strip()
        value = value.strip()
        if key == "id":
            if "id" in stanza:
                raise ParseError("duplicate id line in stanza", line_no)
            stanza["id"] = _check_token(value, line_no)
        elif key == "name":
            if value:
                stanza["name"] = value
        elif key == "synonym":
            match = _QUOTED.search(value)
            synonym = match.group(1) if match else value
            if synonym:
                stanza["synonyms"].append(synonym)
        elif key == "is_a":
            target = value.split("!", 1)[0].strip()
            stanza["is_a"].append(_check_token(target, line_no))
        elif key == "relationship":
            skipped_relationships += 1
        # any other key is ignored
    commit()

    return OntologyGraph(
        concepts,
        edges,
        skipped_relationships=skipped_relationships,
        ignored_stanzas=ignored_stanzas,
    )


class ClosureIndex:
    """Reflexive transitive descendant/ancestor bitsets for one graph.

    Ordinals are assigned by sorting concept ids, so bit ``i`` of any set
    refers to ``ids[i]`` and iterating set bits yields lexicographic order.
    """

    def __init__(self, graph: OntologyGraph):
        self.graph = graph
        self.ids: tuple[str, ...] = tuple(sorted(graph.concepts))
        self.ordinal: dict[str, int] = {cid: i for i, cid in enumerate(self.ids)}
        n = len(self.ids)
        parents: list[list[int]] = [[] for _ in range(n)]
        children: list[list[int]] = [[] for _ in range(n)]
        for child, parent in graph.edges:
            c, p = self.ordinal[child], self.ordinal[parent]
            parents[c].append(p)
            children[p].append(c)
        for row in parents:
            row.sort()
        for row in children:
            row.sort()
        self.parents = parents
        self.children = children

        order = self._topological(parents, children)
        anc = [0] * n
        for o in order:  # parents are settled before their children
            bits = 1 << o
            for p in parents[o]:
                bits |= anc[p]
            anc[o] = bits
        hypo = [0] * n
        for o in reversed(order):
            bits = 1 << o
            for c in children[o]:
                bits |= hypo[c]
            hypo[o] = bits
        self.anc_bits = anc
        self.hypo_bits = hypo
        self.hypo_sizes = np.array([b.bit_count() for b in hypo], dtype=np.int64)

    @staticmethod
    def _topological(parents: list[list[int]], children: list[list[int]]) -> list[int]:
        pending = [len(ps) for ps in parents]
        ready = deque(o for o, n in enumerate(pending) if n == 0)
        order: list[int] = []
        while ready:
            o = ready.popleft()
            order.append(o)
            for c in children[o]:
                pending[c] -= 1
                if pending[c] == 0:
                    ready.append(c)
        return order

    @property
    def size(self) -> int:
        return len(self.ids)

    def __contains__(self, concept_id: str) -> bool:
        return concept_id in self.ordinal

    def require(self, concept_id: str) -> int:
        try:
            return self.ordinal[concept_id]
        except KeyError:
            raise UnknownConceptError(concept_id) from None

    def ordinals_of(self, bits: int) -> np.ndarray:
        """Ordinals of the set bits of ``bits``, ascending."""
        n = len(self.ids)
        raw = bits.to_bytes(max((n + 7) // 8, 1), "little")
        flags = np.unpackbits(np.frombuffer(raw, dtype=np.uint8), bitorder="little", count=n)
        return np.flatnonzero(flags)

    def ids_of(self, bits: int) -> frozenset[str]:
        return frozenset(self.ids[i] for i in self.ordinals_of(bits))

    def hypo_set(self, concept_id: str) -> frozenset[str]:
        """The concept itself plus every direct or transitive descendant."""
        return self.ids_of(self.hypo_bits[self.require(concept_id)])

    def anc_set(self, concept_id: str) -> frozenset[str]:
        """The concept itself plus every direct or transitive ancestor."""
        return self.ids_of(self.anc_bits[self.require(concept_id)])


def build_closure(graph: OntologyGraph) -> ClosureIndex:
    return ClosureIndex(graph)


def is_hyponym(closure: ClosureIndex, c1: str, c2: str) -> bool:
    """True when ``c1`` lies in the reflexive descendant set of ``c2``."""
    o1 = closure.require(c1)
    o2 = closure.require(c2)
    return bool((closure.hypo_bits[o2] >> o1) & 1)


def common_ancestors(closure: ClosureIndex, c1: str, c2: str) -> frozenset[str]:
    o1 = closure.require(c1)
    o2 = closure.require(c2)
    return closure.ids_of(closure.anc_bits[o1] & closure.anc_bits[o2])
