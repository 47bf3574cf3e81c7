"""Deterministic edge-order linearizers (dfs, bfs, topological, random).

All three deterministic orderings share the same tie-breaking rule: roots are
the in-degree-0 nodes in lexicographic label order, and a node's outgoing
edges are visited sorted by (tail label, relation).  An edge is emitted when
it is traversed, including edges into already-visited nodes.
"""

from __future__ import annotations

import heapq
import random
from collections import deque

from .errors import DisconnectedGraphError, NotADagError
from .graph import Edge, ExplanationGraph
from .structure import is_acyclic, is_weakly_connected

ORDERINGS = ("dfs", "bfs", "topological", "random")


def _check(g: ExplanationGraph) -> None:
    if not is_acyclic(g):
        raise NotADagError("linearization requires a DAG")
    if not is_weakly_connected(g):
        raise DisconnectedGraphError("linearization requires a connected graph")


def _outgoing(g: ExplanationGraph) -> dict[str, list[Edge]]:
    out: dict[str, list[Edge]] = {c.normalized: [] for c in g.nodes}
    for e in g.edges:
        out[e.head.normalized].append(e)
    for edges in out.values():
        edges.sort(key=lambda e: (e.tail.normalized, e.relation.lower()))
    return out


def _roots(g: ExplanationGraph) -> list[str]:
    indeg = {c.normalized: 0 for c in g.nodes}
    for e in g.edges:
        indeg[e.tail.normalized] += 1
    return sorted(k for k, d in indeg.items() if d == 0)


def _dfs_order(g: ExplanationGraph) -> list[Edge]:
    out = _outgoing(g)
    visited: set[str] = set()
    emitted: list[Edge] = []

    def visit(k: str) -> None:
        visited.add(k)
        for e in out[k]:
            emitted.append(e)
            t = e.tail.normalized
            if t not in visited:
                visit(t)

    for r in _roots(g):
        if r not in visited:
            visit(r)
    return emitted


def _bfs_order(g: ExplanationGraph) -> list[Edge]:
    out = _outgoing(g)
    queue = deque(_roots(g))
    visited = set(queue)
    emitted: list[Edge] = []
    while queue:
        k = queue.popleft()
        for e in out[k]:
            emitted.append(e)
            t = e.tail.normalized
            if t not in visited:
                visited.add(t)
                queue.append(t)
    return emitted


def _topological_order(g: ExplanationGraph) -> list[Edge]:
    out = _outgoing(g)
    indeg = {c.normalized: 0 for c in g.nodes}
    for e in g.edges:
        indeg[e.tail.normalized] += 1
    heap = [k for k, d in indeg.items() if d == 0]
    heapq.heapify(heap)
    emitted: list[Edge] = []
    while heap:
        k = heapq.heappop(heap)
        for e in out[k]:
            emitted.append(e)
            t = e.tail.normalized
            indeg[t] -= 1
            if indeg[t] == 0:
                heapq.heappush(heap, t)
    return emitted


def linearize(g: ExplanationGraph, ordering: str, seed: int = 0) -> list[Edge]:
    """Return a permutation of ``g.edges`` in the requested traversal order."""
    if ordering not in ORDERINGS:
        raise ValueError(f"unknown ordering {ordering!r}, expected one of {ORDERINGS}")
    _check(g)
    if ordering == "dfs":
        return _dfs_order(g)
    if ordering == "bfs":
        return _bfs_order(g)
    if ordering == "topological":
        return _topological_order(g)
    edges = list(g.edges)
    random.Random(seed).shuffle(edges)
    return edges


def reorder_graph(g: ExplanationGraph, ordering: str, seed: int = 0) -> ExplanationGraph:
    return ExplanationGraph(linearize(g, ordering, seed))
