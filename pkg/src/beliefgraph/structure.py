"""Structural validation, node-origin classification and graph statistics."""

from __future__ import annotations

import string
from dataclasses import dataclass
from enum import Enum

from .errors import NotADagError
from .graph import Concept, ExplanationGraph
from .vocab import RelationVocabulary

MIN_EDGES = 3
MAX_EDGES = 8
MAX_CONCEPT_WORDS = 3

_PUNCT_TABLE = str.maketrans("", "", string.punctuation)


class NodeOrigin(Enum):
    BELIEF = "belief"
    ARGUMENT = "argument"
    BOTH = "both"
    EXTERNAL = "external"


@dataclass(frozen=True, slots=True)
class ValidationReport:
    relation_in_vocab: bool
    concepts_max_three_words: bool
    edge_count_in_range: bool
    min_two_belief_concepts: bool
    min_two_argument_concepts: bool
    connected: bool
    acyclic: bool

    @property
    def overall(self) -> bool:
        return (self.relation_in_vocab and self.concepts_max_three_words
                and self.edge_count_in_range and self.min_two_belief_concepts
                and self.min_two_argument_concepts and self.connected and self.acyclic)

    def as_dict(self) -> dict[str, bool]:
        return {
            "relation_in_vocab": self.relation_in_vocab,
            "concepts_max_three_words": self.concepts_max_three_words,
            "edge_count_in_range": self.edge_count_in_range,
            "min_two_belief_concepts": self.min_two_belief_concepts,
            "min_two_argument_concepts": self.min_two_argument_concepts,
            "connected": self.connected,
            "acyclic": self.acyclic,
            "overall": self.overall,
        }


@dataclass(frozen=True, slots=True)
class GraphStats:
    node_count: int
    edge_count: int
    external_node_count: int
    depth: int
    is_linear: bool


def _tokens(text: str) -> list[str]:
    """Lowercased tokens with punctuation stripped; empty tokens dropped."""
    out = []
    for tok in text.lower().split():
        tok = tok.translate(_PUNCT_TABLE)
        if tok:
            out.append(tok)
    return out


def _contains_subsequence(haystack: list[str], needle: list[str]) -> bool:
    if not needle:
        return False
    k = len(needle)
    return any(haystack[i:i + k] == needle for i in range(len(haystack) - k + 1))


def classify_origins(g: ExplanationGraph, belief: str, argument: str) -> dict[Concept, NodeOrigin]:
    """Assign each node belief/argument/both/external.

    A node is internal to a text iff its token sequence occurs contiguously in
    that text, after lowercasing and stripping punctuation on both sides.
    """
    belief_toks = _tokens(belief)
    argument_toks = _tokens(argument)
    origins: dict[Concept, NodeOrigin] = {}
    for node in g.nodes:
        node_toks = _tokens(node.label)
        in_belief = _contains_subsequence(belief_toks, node_toks)
        in_argument = _contains_subsequence(argument_toks, node_toks)
        if in_belief and in_argument:
            origins[node] = NodeOrigin.BOTH
        elif in_belief:
            origins[node] = NodeOrigin.BELIEF
        elif in_argument:
            origins[node] = NodeOrigin.ARGUMENT
        else:
            origins[node] = NodeOrigin.EXTERNAL
    return origins


def is_weakly_connected(g: ExplanationGraph) -> bool:
    """Union-find connectivity on the underlying undirected graph."""
    idx = {c.normalized: i for i, c in enumerate(g.nodes)}
    parent = list(range(len(g.nodes)))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for e in g.edges:
        a, b = find(idx[e.head.normalized]), find(idx[e.tail.normalized])
        if a != b:
            parent[a] = b
    return len({find(i) for i in range(len(g.nodes))}) == 1


def topological_order(g: ExplanationGraph) -> list[Concept] | None:
    """Kahn's algorithm; returns None if the graph has a directed cycle."""
    indeg = {c.normalized: 0 for c in g.nodes}
    succ: dict[str, list[str]] = {c.normalized: [] for c in g.nodes}
    for e in g.edges:
        indeg[e.tail.normalized] += 1
        succ[e.head.normalized].append(e.tail.normalized)
    by_key = {c.normalized: c for c in g.nodes}
    ready = [k for k in indeg if indeg[k] == 0]
    order: list[Concept] = []
    while ready:
        k = ready.pop()
        order.append(by_key[k])
        for t in succ[k]:
            indeg[t] -= 1
            if indeg[t] == 0:
                ready.append(t)
    if len(order) != len(g.nodes):
        return None
    return order


def is_acyclic(g: ExplanationGraph) -> bool:
    return topological_order(g) is not None


def validate(g: ExplanationGraph, belief: str, argument: str,
             vocab: RelationVocabulary) -> ValidationReport:
    """Run the seven structural checks; failures are report fields, not errors."""
    origins = classify_origins(g, belief, argument)
    belief_n = sum(1 for o in origins.values() if o in (NodeOrigin.BELIEF, NodeOrigin.BOTH))
    argument_n = sum(1 for o in origins.values() if o in (NodeOrigin.ARGUMENT, NodeOrigin.BOTH))
    return ValidationReport(
        relation_in_vocab=all(e.relation in vocab for e in g.edges),
        concepts_max_three_words=all(len(c.label.split()) <= MAX_CONCEPT_WORDS for c in g.nodes),
        edge_count_in_range=MIN_EDGES <= len(g.edges) <= MAX_EDGES,
        min_two_belief_concepts=belief_n >= 2,
        min_two_argument_concepts=argument_n >= 2,
        connected=is_weakly_connected(g),
        acyclic=is_acyclic(g),
    )


def compute_stats(g: ExplanationGraph, belief: str, argument: str) -> GraphStats:
    """Node/edge/external counts, longest-directed-path depth and linearity."""
    order = topological_order(g)
    if order is None:
        raise NotADagError("stats require a directed acyclic graph")
    # longest path in edges via DP over a topological order
    dist = {c.normalized: 0 for c in g.nodes}
    succ: dict[str, list[str]] = {c.normalized: [] for c in g.nodes}
    for e in g.edges:
        succ[e.head.normalized].append(e.tail.normalized)
    for c in reversed(order):
        k = c.normalized
        for t in succ[k]:
            dist[k] = max(dist[k], 1 + dist[t])
    depth = max(dist.values())

    # linear iff the graph is one directed chain: given connectivity and
    # acyclicity, that is exactly "every in-degree and out-degree <= 1"
    # (a V-structure converging on a node makes the graph non-linear)
    indeg = {c.normalized: 0 for c in g.nodes}
    outdeg = {c.normalized: 0 for c in g.nodes}
    for e in g.edges:
        outdeg[e.head.normalized] += 1
        indeg[e.tail.normalized] += 1
    is_linear = (all(d <= 1 for d in indeg.values())
                 and all(d <= 1 for d in outdeg.values()))

    origins = classify_origins(g, belief, argument)
    external = sum(1 for o in origins.values() if o is NodeOrigin.EXTERNAL)
    return GraphStats(
        node_count=len(g.nodes),
        edge_count=len(g.edges),
        external_node_count=external,
        depth=depth,
        is_linear=is_linear,
    )
