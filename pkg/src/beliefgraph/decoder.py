"""Exact constrained edge decoding from per-pair relation probabilities.

Given node labels and, for every ordered node pair, a probability vector over
relations plus a no-edge entry, select the edge set maximizing

    sum over pairs of  phi * max_r e(m,n,r) + (1 - phi) * e(m,n,-)

subject to: all nodes weakly connected, no directed cycle, and between 3 and
8 selected edges.  Connectivity is certified by a max-flow construction on an
augmented source/sink graph; the search itself is a branch-and-bound over
pair variables with an admissible top-k gain bound.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

import numpy as np

from .errors import InfeasibleDecodeError, TensorInvariantError
from .graph import Concept, Edge, ExplanationGraph, normalize_label
from .structure import MAX_EDGES, MIN_EDGES
from .vocab import RelationVocabulary

_ORIGINS = ("belief", "argument", "external")
_PROB_TOL = 1e-6


@dataclass(frozen=True, slots=True)
class TensorNode:
    label: str
    origin: str


class EdgeProbTensor:
    """Node list plus per-ordered-pair probability vectors (relations + no-edge)."""

    def __init__(self, nodes: list[TensorNode], relations: list[str], probs):
        n = len(nodes)
        r = len(relations)
        probs = np.asarray(probs, dtype=np.float64)
        if not 2 <= n <= 8:
            raise TensorInvariantError(f"node count must be in [2, 8], got {n}")
        for node in nodes:
            if node.origin not in _ORIGINS:
                raise TensorInvariantError(f"bad origin {node.origin!r}")
        if len({normalize_label(node.label) for node in nodes}) != n:
            raise TensorInvariantError("node labels must be distinct")
        if probs.shape != (n * (n - 1), r + 1):
            raise TensorInvariantError(
                f"probs must have shape ({n * (n - 1)}, {r + 1}), got {probs.shape}")
        if np.any(probs < -_PROB_TOL) or np.any(probs > 1 + _PROB_TOL):
            raise TensorInvariantError("probability entries must lie in [0, 1]")
        sums = probs.sum(axis=1)
        if np.any(np.abs(sums - 1.0) > _PROB_TOL):
            raise TensorInvariantError("each probability vector must sum to 1")
        self.nodes = list(nodes)
        self.relations = list(relations)
        self.probs = probs

    @property
    def n(self) -> int:
        return len(self.nodes)

    def pair_index(self, m: int, n: int) -> int:
        if m == n:
            raise ValueError("no probability vector for m == n")
        return m * (self.n - 1) + (n if n < m else n - 1)

    def vector(self, m: int, n: int) -> np.ndarray:
        return self.probs[self.pair_index(m, n)]

    @classmethod
    def from_dict(cls, obj: dict) -> EdgeProbTensor:
        try:
            nodes = [TensorNode(label=d["label"], origin=d["origin"]) for d in obj["nodes"]]
            relations = list(obj["relations"])
            probs = obj["probs"]
        except (KeyError, TypeError) as exc:
            raise TensorInvariantError(f"malformed tensor object: {exc}") from exc
        return cls(nodes, relations, probs)

    def to_dict(self) -> dict:
        return {
            "nodes": [{"label": nd.label, "origin": nd.origin} for nd in self.nodes],
            "relations": list(self.relations),
            "probs": self.probs.tolist(),
        }


@dataclass(frozen=True, slots=True)
class DecodedGraph:
    graph: ExplanationGraph
    objective_value: float


def check_connectivity_flow(selection, n_nodes: int) -> tuple[bool, int]:
    """Certify weak connectivity of a 0/1 pair selection by max-flow.

    Augmented graph: source feeds capacity ``n_nodes`` into the first node,
    every node drains capacity 1 into the sink, and flow may traverse an
    unordered pair in either direction iff at least one of its two arcs is
    selected.  Connected iff the max-flow equals ``n_nodes``.
    """
    n = n_nodes
    size = n + 2
    source, sink = n, n + 1
    cap = np.zeros((size, size), dtype=np.int64)
    cap[source, 0] = n
    for i in range(n):
        cap[i, sink] = 1
    for (a, b) in selection:
        cap[a, b] = n
        cap[b, a] = n
    flow = 0
    while True:
        # BFS augmenting path on residual capacities
        parent = [-1] * size
        parent[source] = source
        queue = deque([source])
        while queue and parent[sink] == -1:
            u = queue.popleft()
            for v in range(size):
                if parent[v] == -1 and cap[u, v] > 0:
                    parent[v] = u
                    queue.append(v)
        if parent[sink] == -1:
            break
        bottleneck = None
        v = sink
        while v != source:
            u = parent[v]
            bottleneck = cap[u, v] if bottleneck is None else min(bottleneck, cap[u, v])
            v = u
        v = sink
        while v != source:
            u = parent[v]
            cap[u, v] -= bottleneck
            cap[v, u] += bottleneck
            v = u
        flow += int(bottleneck)
    return flow == n, flow


class _Dsu:
    def __init__(self, n: int):
        self.parent = list(range(n))

    def find(self, x: int) -> int:
        while self.parent[x] != x:
            self.parent[x] = self.parent[self.parent[x]]
            x = self.parent[x]
        return x

    def union(self, a: int, b: int) -> bool:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        self.parent[ra] = rb
        return True

    def components(self) -> int:
        return len({self.find(i) for i in range(len(self.parent))})

    def copy(self) -> "_Dsu":
        d = _Dsu.__new__(_Dsu)
        d.parent = list(self.parent)
        return d


def _creates_cycle(succ: dict[int, list[int]], head: int, tail: int) -> bool:
    """True iff arc head->tail closes a directed cycle (path tail ->* head)."""
    stack = [tail]
    seen = {tail}
    while stack:
        u = stack.pop()
        if u == head:
            return True
        for v in succ.get(u, ()):
            if v not in seen:
                seen.add(v)
                stack.append(v)
    return False


def _search_optimum(pairs, gains, n, order, best_gain, stop_at_first_tie=False,
                    tie_floor=None):
    """DFS over pair subsets in the given order with a top-k positive-gain bound.

    Returns (best_gain, best_selection).  With ``stop_at_first_tie`` the first
    candidate reaching ``tie_floor`` is returned immediately (used for the
    lexicographic tie-break pass).
    """
    p = len(order)
    budget = MAX_EDGES
    # suffix_top_by_pos[pos][k] = sum of the k largest positive gains in order[pos:]
    tops: list[float] = []
    suffix_top_by_pos: list[list[float]] = [None] * (p + 1)
    suffix_top_by_pos[p] = [0.0] * (budget + 1)
    for pos in range(p - 1, -1, -1):
        g = gains[order[pos]]
        if g > 0:
            tops.append(g)
            tops.sort(reverse=True)
            del tops[budget:]
        sums = [0.0]
        acc = 0.0
        for t in tops:
            acc += t
            sums.append(acc)
        while len(sums) <= budget:
            sums.append(acc)
        suffix_top_by_pos[pos] = sums

    best = [best_gain, None]
    found_tie = [None]

    def recurse(pos, chosen, gain, dsu, succ):
        if len(chosen) >= MIN_EDGES and dsu.components() == 1:
            if stop_at_first_tie and gain >= tie_floor:
                found_tie[0] = list(chosen)
                return True
            if gain > best[0] + 1e-12:
                best[0] = gain
                best[1] = list(chosen)
        if len(chosen) == budget:
            return False
        for k in range(pos, p):
            idx = order[k]
            bound = gain + gains[idx] + suffix_top_by_pos[k + 1][budget - len(chosen) - 1]
            if stop_at_first_tie:
                if bound < tie_floor - 1e-12:
                    continue
            elif bound <= best[0] + 1e-12:
                continue
            m, t = pairs[idx]
            if _creates_cycle(succ, m, t):
                continue
            # connectivity still achievable within the edge budget?
            d2 = dsu.copy()
            d2.union(m, t)
            if d2.components() - 1 > budget - len(chosen) - 1:
                continue
            succ.setdefault(m, []).append(t)
            chosen.append(idx)
            done = recurse(k + 1, chosen, gain + gains[idx], d2, succ)
            chosen.pop()
            succ[m].pop()
            if done:
                return True
        return False

    recurse(0, [], 0.0, _Dsu(n), {})
    if stop_at_first_tie:
        return found_tie[0]
    return best[0], best[1]


def _greedy_seed(pairs, gains, n):
    """A feasible selection built greedily, used to seed the bound."""
    order = sorted(range(len(pairs)), key=lambda i: -gains[i])
    chosen: list[int] = []
    dsu = _Dsu(n)
    succ: dict[int, list[int]] = {}

    def add(idx):
        m, t = pairs[idx]
        succ.setdefault(m, []).append(t)
        dsu.union(m, t)
        chosen.append(idx)

    for idx in order:  # span the components first
        if len(chosen) >= MAX_EDGES:
            break
        m, t = pairs[idx]
        if dsu.find(m) != dsu.find(t) and not _creates_cycle(succ, m, t):
            add(idx)
    for idx in order:  # pad to the minimum, then take profitable extras
        if len(chosen) >= MAX_EDGES:
            break
        if idx in chosen:
            continue
        m, t = pairs[idx]
        if _creates_cycle(succ, m, t):
            continue
        if len(chosen) < MIN_EDGES or gains[idx] > 0:
            add(idx)
    if dsu.components() != 1 or not MIN_EDGES <= len(chosen) <= MAX_EDGES:
        return None
    return chosen, sum(gains[i] for i in chosen)


def decode(tensor: EdgeProbTensor, vocab: RelationVocabulary) -> DecodedGraph:
    """Globally optimal edge selection; deterministic under the tie-break rule.

    Ties in the objective resolve to the selection whose sorted (head, tail)
    pair list is lexicographically smallest; ties in a selected edge's
    relation argmax resolve to the lowest relation index.
    """
    for name in tensor.relations:
        if name not in vocab:
            raise TensorInvariantError(f"relation {name!r} not in vocabulary")
    n = tensor.n
    if n == 2:
        raise InfeasibleDecodeError(
            "2-node graphs cannot reach 3 edges without self-loops or cycles")

    labels = [nd.label for nd in tensor.nodes]
    keys = [normalize_label(lab) for lab in labels]
    pairs = [(m, t) for m in range(n) for t in range(n) if t != m]
    rel_probs = tensor.probs[:, :-1]
    no_edge = tensor.probs[:, -1]
    best_rel = rel_probs.max(axis=1)
    gains = [float(best_rel[tensor.pair_index(m, t)] - no_edge[tensor.pair_index(m, t)])
             for m, t in pairs]
    base = float(sum(no_edge[tensor.pair_index(m, t)] for m, t in pairs))

    lex_order = sorted(range(len(pairs)),
                       key=lambda i: (keys[pairs[i][0]], keys[pairs[i][1]]))
    gain_order = sorted(range(len(pairs)), key=lambda i: (-gains[i], lex_order.index(i)))

    seed = _greedy_seed(pairs, gains, n)
    seed_gain = seed[1] if seed else float("-inf")
    opt_gain, opt_sel = _search_optimum(pairs, gains, n, gain_order, seed_gain - 1e-9)
    if opt_sel is None and seed is None:
        raise InfeasibleDecodeError("no selection satisfies the structural constraints")
    if opt_sel is None:
        opt_gain, opt_sel = seed_gain, seed[0]
    # second pass in lexicographic pair order: first optimum found is the tie-break winner
    tie_sel = _search_optimum(pairs, gains, n, lex_order, float("-inf"),
                              stop_at_first_tie=True, tie_floor=opt_gain - 1e-12)
    selection = tie_sel if tie_sel is not None else opt_sel

    connected, _ = check_connectivity_flow([pairs[i] for i in selection], n)
    if not connected:
        raise InfeasibleDecodeError("internal error: selected graph is not connected")

    edges = []
    for i in sorted(selection, key=lambda i: (keys[pairs[i][0]], keys[pairs[i][1]])):
        m, t = pairs[i]
        vec = rel_probs[tensor.pair_index(m, t)]
        r_idx = int(np.argmax(vec))  # argmax takes the lowest index on ties
        edges.append(Edge(Concept(labels[m]), tensor.relations[r_idx], Concept(labels[t])))
    objective = base + sum(gains[i] for i in selection)
    return DecodedGraph(graph=ExplanationGraph(edges), objective_value=objective)


def implied_texts(tensor: EdgeProbTensor) -> tuple[str, str]:
    """Belief/argument texts implied by the tensor's node origins."""
    belief = " and ".join(nd.label for nd in tensor.nodes if nd.origin == "belief")
    argument = " and ".join(nd.label for nd in tensor.nodes if nd.origin == "argument")
    return belief, argument
