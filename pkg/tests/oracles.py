"""Brute-force reference implementations used to pin expected values.

Everything here is deliberately naive: plain Python sets, breadth-first
search, and exhaustive path enumeration.  The engine must agree with these.
"""

from __future__ import annotations

import math
from collections import deque
from random import Random


def descendant_sets(ids: list[str], edges: list[tuple[str, str]]) -> dict[str, frozenset[str]]:
    """Reflexive descendant set per concept, by DFS over child edges."""
    children: dict[str, list[str]] = {cid: [] for cid in ids}
    for child, parent in edges:
        children[parent].append(child)
    out: dict[str, frozenset[str]] = {}
    for cid in ids:
        seen = {cid}
        stack = [cid]
        while stack:
            node = stack.pop()
            for nxt in children[node]:
                if nxt not in seen:
                    seen.add(nxt)
                    stack.append(nxt)
        out[cid] = frozenset(seen)
    return out


def ancestor_sets(ids: list[str], edges: list[tuple[str, str]]) -> dict[str, frozenset[str]]:
    """Reflexive ancestor set per concept, by DFS over parent edges."""
    parents: dict[str, list[str]] = {cid: [] for cid in ids}
    for child, parent in edges:
        parents[child].append(parent)
    out: dict[str, frozenset[str]] = {}
    for cid in ids:
        seen = {cid}
        stack = [cid]
        while stack:
            node = stack.pop()
            for nxt in parents[node]:
                if nxt not in seen:
                    seen.add(nxt)
                    stack.append(nxt)
        out[cid] = frozenset(seen)
    return out


def jaccard_similarity(hypo: dict[str, frozenset[str]], c1: str, c2: str) -> float:
    if c1 not in hypo[c2] and c2 not in hypo[c1]:
        return 0.0
    return len(hypo[c1] & hypo[c2]) / len(hypo[c1] | hypo[c2])


def shortest_path(ids: list[str], edges: list[tuple[str, str]], c1: str, c2: str) -> int | None:
    """Undirected BFS hop count, or None when disconnected."""
    if c1 == c2:
        return 0
    adjacency: dict[str, set[str]] = {cid: set() for cid in ids}
    for child, parent in edges:
        adjacency[child].add(parent)
        adjacency[parent].add(child)
    dist = {c1: 0}
    queue = deque([c1])
    while queue:
        node = queue.popleft()
        for nxt in adjacency[node]:
            if nxt not in dist:
                dist[nxt] = dist[node] + 1
                if nxt == c2:
                    return dist[nxt]
                queue.append(nxt)
    return None


def cheapest_turn_path(
    ids: list[str], edges: list[tuple[str, str]], c1: str, c2: str, K: float
) -> float | None:
    """Minimum of edge-count + K * direction-changes over all simple paths.

    Exhaustive DFS enumeration; only usable on small graphs.
    """
    if c1 == c2:
        return 0.0
    steps: dict[str, list[tuple[str, str]]] = {cid: [] for cid in ids}
    for child, parent in edges:
        steps[child].append((parent, "u"))
        steps[parent].append((child, "d"))
    best: float | None = None

    def walk(node: str, direction: str, cost: float, visited: set[str]) -> None:
        nonlocal best
        if node == c2:
            if best is None or cost < best:
                best = cost
            return
        for nxt, step_dir in steps[node]:
            if nxt in visited:
                continue
            extra = 1.0 + (K if direction and direction != step_dir else 0.0)
            visited.add(nxt)
            walk(nxt, step_dir, cost + extra, visited)
            visited.discard(nxt)

    walk(c1, "", 0.0, {c1})
    return best


def isa_distance(
    hypo: dict[str, frozenset[str]], anc: dict[str, frozenset[str]], c1: str, c2: str
) -> int:
    exclusive = anc[c1] ^ anc[c2]
    hypo_exclusive: set[str] = set()
    for a in exclusive:
        hypo_exclusive |= hypo[a]
    union = hypo_exclusive | hypo[c1] | hypo[c2]
    return len(union - (hypo[c1] & hypo[c2]))


def extensional_ic(
    hypo: dict[str, frozenset[str]], annotations: dict[str, frozenset[str]]
) -> dict[str, float]:
    """IC per concept by literally counting matching documents."""
    total = len(annotations)
    out: dict[str, float] = {}
    for cid, below in hypo.items():
        count = sum(1 for doc_concepts in annotations.values() if doc_concepts & below)
        out[cid] = -math.log(count / total) if count else math.log(total + 1)
    return out


def best_common_ancestor(
    anc: dict[str, frozenset[str]], ic: dict[str, float], c1: str, c2: str
) -> str | None:
    shared = anc[c1] & anc[c2]
    if not shared:
        return None
    return min(shared, key=lambda a: (-ic[a], a))


def lin_similarity(
    anc: dict[str, frozenset[str]], ic: dict[str, float], c1: str, c2: str
) -> float:
    if c1 == c2:
        return 1.0
    ancestor = best_common_ancestor(anc, ic, c1, c2)
    if ancestor is None:
        return 0.0
    denominator = ic[c1] + ic[c2]
    if denominator <= 0.0:
        return 0.0
    return min(1.0, max(0.0, 2.0 * ic[ancestor] / denominator))


def random_dag(
    rng: Random,
    max_nodes: int = 200,
    max_parents: int = 2,
    extra_root_chance: float = 0.1,
    min_nodes: int = 2,
) -> tuple[list[str], list[tuple[str, str]]]:
    """Random multi-rooted DAG; every node links only to earlier nodes, so
    node count <= 200 with max_parents = 2 keeps the edge count <= 400."""
    n = rng.randint(min_nodes, max_nodes)
    ids = [f"N{i:03d}" for i in range(n)]
    edges: list[tuple[str, str]] = []
    for i in range(1, n):
        if rng.random() < extra_root_chance:
            continue
        for p in rng.sample(range(i), min(i, rng.randint(1, max_parents))):
            edges.append((ids[i], ids[p]))
    return ids, edges


def random_corpus(
    rng: Random, ids: list[str], max_docs: int = 40, max_annotations: int = 4
) -> dict[str, frozenset[str]]:
    n_docs = rng.randint(1, max_docs)
    out: dict[str, frozenset[str]] = {}
    for j in range(n_docs):
        size = min(len(ids), rng.randint(1, max_annotations))
        out[f"D{j:03d}"] = frozenset(rng.sample(ids, size))
    return out
