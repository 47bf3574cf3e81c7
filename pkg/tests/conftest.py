"""Shared fixtures: the worked example graph, random graphs and corpora."""

from __future__ import annotations

import random

import pytest

from beliefgraph import (
    Concept,
    Edge,
    ExplanationGraph,
    RelationVocabulary,
    Sample,
    parse_graph,
    serialize_graph,
    validate,
)

EXAMPLE_TEXT = ("(factory farming; causes; food)"
            "(millions; desires; food)"
            "(factory farming; has context; necessary)"
            "(necessary; not desires; banned)")
EXAMPLE_BELIEF = "Factory farming should be banned"
EXAMPLE_ARGUMENT = "Factory farming feeds millions"
EXAMPLE_STANCE = "counter"

# single-word labels that never collide with the template words below
WORD_POOL = [
    "farming", "food", "millions", "necessary", "banned", "animals", "cities",
    "health", "taxes", "schools", "energy", "freedom", "justice", "children",
    "safety", "nature", "culture", "money", "science", "travel", "housing",
    "privacy", "voting", "music", "sports", "forests", "rivers",
]


@pytest.fixture(scope="session")
def vocab() -> RelationVocabulary:
    return RelationVocabulary.default()


@pytest.fixture()
def example_graph() -> ExplanationGraph:
    return parse_graph(EXAMPLE_TEXT)


def random_small_graph(rng: random.Random, max_nodes: int = 4,
                       labels=("a", "b", "c", "d"),
                       relations=("causes", "not causes", "desires")) -> ExplanationGraph:
    """A random graph for distance tests; may be disconnected or cyclic."""
    n = rng.randint(2, max_nodes)
    nodes = list(labels[:n])
    edges: list[Edge] = []
    seen = set()
    for _ in range(rng.randint(1, 5)):
        h, t = rng.sample(nodes, 2)
        r = rng.choice(relations)
        if (h, r, t) in seen:
            continue
        seen.add((h, r, t))
        edges.append(Edge(Concept(h), r, Concept(t)))
    if not edges:
        edges.append(Edge(Concept(nodes[0]), relations[0], Concept(nodes[1])))
    return ExplanationGraph(edges)


def random_valid_sample(rng: random.Random, vocab: RelationVocabulary,
                        sample_id: str) -> Sample:
    """A synthetic sample whose gold graph passes every structural check."""
    while True:
        k = rng.randint(4, 6)
        labels = rng.sample(WORD_POOL, k)
        belief = f"{labels[0]} should affect {labels[1]}"
        argument = f"{labels[2]} can improve {labels[3]}"
        order = list(labels)
        rng.shuffle(order)
        edges = []
        used = set()
        for i in range(k - 1):  # a spanning chain keeps the graph connected and acyclic
            rel = rng.choice(vocab.names)
            edges.append(Edge(Concept(order[i]), rel, Concept(order[i + 1])))
            used.add((i, i + 1))
        target = rng.randint(max(3, k - 1), min(8, k * (k - 1) // 2))
        tries = 0
        while len(edges) < target and tries < 20:
            tries += 1
            i, j = sorted(rng.sample(range(k), 2))
            if (i, j) in used:
                continue
            used.add((i, j))
            edges.append(Edge(Concept(order[i]), rng.choice(vocab.names), Concept(order[j])))
        g = ExplanationGraph(edges)
        if validate(g, belief, argument, vocab).overall:
            stance = rng.choice(("support", "counter"))
            return Sample(id=sample_id, belief=belief, argument=argument,
                          gold_stance=stance, gold_graphs=(g,))


def corpus(rng: random.Random, vocab: RelationVocabulary, size: int) -> list[Sample]:
    return [random_valid_sample(rng, vocab, str(i)) for i in range(size)]


def gold_predictions(samples):
    from beliefgraph import Prediction

    return [Prediction(id=s.id, stance=s.gold_stance,
                       graph_text=serialize_graph(s.gold_graphs[0])) for s in samples]
