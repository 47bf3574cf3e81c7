"""Independent brute-force oracles used to check the fast implementations.

Everything here is deliberately naive: full enumeration, union-find, direct
formula evaluation.  Nothing imports from the modules it checks except for
shared data types.
"""

from __future__ import annotations

import itertools
from collections import Counter

from beliefgraph.graph import ExplanationGraph, normalize_label


def brute_force_assignment(matrix) -> float:
    """Maximum assignment weight by enumerating all permutations."""
    m, n = len(matrix), len(matrix[0])
    best = 0.0
    if m <= n:
        for perm in itertools.permutations(range(n), m):
            best = max(best, sum(matrix[i][perm[i]] for i in range(m)))
    else:
        for perm in itertools.permutations(range(m), n):
            best = max(best, sum(matrix[perm[j]][j] for j in range(n)))
    return best


def _edge_multisets(g: ExplanationGraph):
    labels = [c.normalized for c in g.nodes]
    index = {lab: i for i, lab in enumerate(labels)}
    rel: dict[tuple[int, int], Counter] = {}
    for e in g.edges:
        key = (index[e.head.normalized], index[e.tail.normalized])
        rel.setdefault(key, Counter())[normalize_label(e.relation)] += 1
    return labels, rel


def brute_force_ged(pred: ExplanationGraph, gold: ExplanationGraph) -> int:
    """Exact raw edit cost by enumerating every partial injective node mapping."""
    labels1, rel1 = _edge_multisets(pred)
    labels2, rel2 = _edge_multisets(gold)
    n1, n2 = len(labels1), len(labels2)
    best = None
    for assignment in itertools.product(list(range(n2)) + [-1], repeat=n1):
        used = [j for j in assignment if j != -1]
        if len(used) != len(set(used)):
            continue
        cost = 0
        for i, j in enumerate(assignment):
            if j == -1:
                cost += 1
            elif labels1[i] != labels2[j]:
                cost += 1
        cost += n2 - len(used)
        mapped = {i: j for i, j in enumerate(assignment) if j != -1}
        covered_gold_pairs = set()
        for (a, b), rels in rel1.items():
            if a in mapped and b in mapped:
                gold_rels = rel2.get((mapped[a], mapped[b]), Counter())
                covered_gold_pairs.add((mapped[a], mapped[b]))
                np_, ng = sum(rels.values()), sum(gold_rels.values())
                cost += max(np_, ng) - sum((rels & gold_rels).values())
            else:
                cost += sum(rels.values())
        for (a, b), rels in rel2.items():
            if (a, b) not in covered_gold_pairs:
                cost += sum(rels.values())
        if best is None or cost < best:
            best = cost
    return best


def union_find_connected(selection, n_nodes: int) -> bool:
    """Weak connectivity of a pair selection, treating arcs as undirected."""
    parent = list(range(n_nodes))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for a, b in selection:
        parent[find(a)] = find(b)
    return len({find(i) for i in range(n_nodes)}) <= 1


def edge_set_f1(pred: ExplanationGraph, gold: ExplanationGraph) -> float:
    """Plain set-intersection F1 over exact edge triples."""
    ps, gs = pred.edge_keys(), gold.edge_keys()
    overlap = len(ps & gs)
    if overlap == 0:
        return 0.0
    p = overlap / len(pred.edges)
    r = overlap / len(gold.edges)
    return 2 * p * r / (p + r)


def exhaustive_decode(tensor, min_edges=3, max_edges=8):
    """Optimal objective and tie-break selection by enumerating all subsets.

    Only usable for small node counts.  Applies the same feasibility rules as
    the decoder: weak connectivity over all nodes, no directed cycle, edge
    count in range.  Tie-break: lexicographically smallest sorted pair list
    by normalized node label.
    """
    n = tensor.n
    keys = [normalize_label(nd.label) for nd in tensor.nodes]
    pairs = [(m, t) for m in range(n) for t in range(n) if t != m]
    rel_best = tensor.probs[:, :-1].max(axis=1)
    no_edge = tensor.probs[:, -1]

    def acyclic(sel):
        succ: dict[int, list[int]] = {}
        for m, t in sel:
            succ.setdefault(m, []).append(t)
        state = {}

        def dfs(u):
            state[u] = 1
            for v in succ.get(u, ()):
                if state.get(v) == 1:
                    return False
                if state.get(v) is None and not dfs(v):
                    return False
            state[u] = 2
            return True

        return all(dfs(u) for u in range(n) if state.get(u) is None)

    best = None
    for r in range(min_edges, max_edges + 1):
        for combo in itertools.combinations(range(len(pairs)), r):
            sel = [pairs[i] for i in combo]
            if not union_find_connected(sel, n):
                continue
            if not acyclic(sel):
                continue
            value = 0.0
            chosen = set(combo)
            for i in range(len(pairs)):
                value += rel_best[i] if i in chosen else no_edge[i]
            key = sorted((keys[m], keys[t]) for m, t in sel)
            if best is None or value > best[0] + 1e-12 or (
                    abs(value - best[0]) <= 1e-12 and key < best[1]):
                best = (value, key, sel)
    return best
