"""Scorer interfaces and the deterministic built-in defaults."""

from __future__ import annotations

from collections import Counter
from typing import Protocol, runtime_checkable

from .graph import parse_graph
from .vocab import NEGATION_PREFIX

SUPPORT = "support"
COUNTER = "counter"
INCORRECT = "incorrect"


@runtime_checkable
class EdgeSimilarityScorer(Protocol):
    def score(self, sentence_a: str, sentence_b: str) -> float: ...


@runtime_checkable
class StanceScorer(Protocol):
    def probability(self, belief: str, argument: str, graph_text: str,
                    target_stance: str) -> float: ...


@runtime_checkable
class GraphStanceClassifier(Protocol):
    def classify(self, belief: str, graph_text: str) -> str: ...


def token_f1(a: str, b: str) -> float:
    """Multiset-overlap F1 of lowercased whitespace tokens."""
    ca, cb = Counter(a.lower().split()), Counter(b.lower().split())
    overlap = sum((ca & cb).values())
    if overlap == 0:
        return 0.0
    p = overlap / sum(ca.values())
    r = overlap / sum(cb.values())
    return 2 * p * r / (p + r)


class TokenF1Scorer:
    """Stateless token-F1 edge similarity; reflexive-1 and symmetric."""

    reentrant = True

    def score(self, sentence_a: str, sentence_b: str) -> float:
        return token_f1(sentence_a, sentence_b)


class LexicalOverlapStanceScorer:
    """Deterministic stance-probability stub.

    Probability is the recall of belief+argument tokens inside the graph
    text, so removing an edge that mentions context tokens lowers it.
    """

    reentrant = True

    def probability(self, belief: str, argument: str, graph_text: str,
                    target_stance: str) -> float:
        context = Counter((belief + " " + argument).lower().split())
        graph = Counter(graph_text.lower().replace("(", " ").replace(")", " ")
                        .replace(";", " ").split())
        if not context:
            return 0.0
        return sum((context & graph).values()) / sum(context.values())


class NegationHeuristicClassifier:
    """Rule-based stand-in for the semantic-correctness classifier.

    Unparseable graphs are incorrect; otherwise an odd number of negated
    relations reads as a counter explanation, an even number as support.
    """

    reentrant = True

    def classify(self, belief: str, graph_text: str) -> str:
        try:
            g = parse_graph(graph_text)
        except Exception:
            return INCORRECT
        negated = sum(1 for e in g.edges
                      if e.relation.lower().strip().startswith(NEGATION_PREFIX))
        return COUNTER if negated % 2 == 1 else SUPPORT
