"""Structure-preserving graph perturbation for synthetic incorrect graphs."""

from __future__ import annotations

import random

from .errors import PerturbationInfeasibleError
from .graph import Edge, ExplanationGraph
from .structure import MAX_EDGES, MIN_EDGES, is_acyclic, is_weakly_connected
from .vocab import RelationVocabulary

_OPS = ("add", "remove", "replace")
_RETRY_BUDGET = 200


def _structurally_ok(edges: list[Edge], node_keys: set[str]) -> ExplanationGraph | None:
    """Build a graph and check the perturbation-preserved constraints.

    The node set must not shrink: dropping a node could break the minimum
    belief/argument concept counts, which this module cannot see.
    """
    if not (MIN_EDGES <= len(edges) <= MAX_EDGES):
        return None
    try:
        g = ExplanationGraph(edges)
    except Exception:
        return None
    if {c.normalized for c in g.nodes} != node_keys:
        return None
    if not is_weakly_connected(g) or not is_acyclic(g):
        return None
    return g


def _one_op(g: ExplanationGraph, vocab: RelationVocabulary,
            rng: random.Random) -> ExplanationGraph | None:
    node_keys = {c.normalized for c in g.nodes}
    op = rng.choice(_OPS)
    if op == "add":
        head, tail = rng.sample(g.nodes, 2)
        relation = rng.choice(vocab.names)
        return _structurally_ok(g.edges + [Edge(head, relation, tail)], node_keys)
    if op == "remove":
        i = rng.randrange(len(g.edges))
        return _structurally_ok(g.edges[:i] + g.edges[i + 1:], node_keys)
    i = rng.randrange(len(g.edges))
    old = g.edges[i]
    relation = rng.choice([n for n in vocab.names
                           if n != " ".join(old.relation.lower().split())])
    edges = list(g.edges)
    edges[i] = Edge(old.head, relation, old.tail)
    return _structurally_ok(edges, node_keys)


def perturb(g: ExplanationGraph, vocab: RelationVocabulary, ops: int,
            seed: int) -> ExplanationGraph:
    """Apply 1..3 random add/remove/replace-edge operators.

    The result always satisfies the structural checks preserved by
    construction (connectivity, acyclicity, 3..8 edges, unchanged node set)
    and differs from the input in at least one edge.  Operators whose result
    would violate a constraint are re-sampled up to a bounded budget.
    """
    if not 1 <= ops <= 3:
        raise ValueError("ops must be between 1 and 3")
    rng = random.Random(seed)
    for _ in range(_RETRY_BUDGET):
        current = g
        ok = True
        for _ in range(ops):
            nxt = None
            for _ in range(_RETRY_BUDGET):
                nxt = _one_op(current, vocab, rng)
                if nxt is not None:
                    break
            if nxt is None:
                ok = False
                break
            current = nxt
        if ok and current.edge_keys() != g.edge_keys():
            return current
    raise PerturbationInfeasibleError(
        f"no structure-preserving perturbation found after {_RETRY_BUDGET} attempts")
