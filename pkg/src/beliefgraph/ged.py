"""Exact unit-cost graph edit distance between two explanation graphs.

Best-first search over partial node mappings (pred -> gold), with an
admissible remaining-cost lower bound built from label multiset mismatches.
Costs: node insert/delete/relabel 1; edge insert/delete/relabel 1, where
relabel compares normalized concept labels and relation names.
"""

from __future__ import annotations

import heapq
from collections import Counter

from .errors import SizeLimitError
from .graph import ExplanationGraph, normalize_label
from .structure import MAX_EDGES


def _adjacency(g: ExplanationGraph) -> tuple[list[str], dict[tuple[int, int], Counter]]:
    labels = [c.normalized for c in g.nodes]
    index = {lab: i for i, lab in enumerate(labels)}
    rel: dict[tuple[int, int], Counter] = {}
    for e in g.edges:
        key = (index[e.head.normalized], index[e.tail.normalized])
        rel.setdefault(key, Counter())[normalize_label(e.relation)] += 1
    return labels, rel


def _pair_cost(p: Counter | None, q: Counter | None) -> int:
    """Minimum edit cost to turn edge multiset p into q (same endpoint pair)."""
    np_ = sum(p.values()) if p else 0
    nq = sum(q.values()) if q else 0
    common = sum(((p or Counter()) & (q or Counter())).values())
    return max(np_, nq) - common


def ged_raw(pred: ExplanationGraph, gold: ExplanationGraph) -> int:
    """Exact minimum number of unit edit operations from pred to gold."""
    if len(pred.edges) > MAX_EDGES or len(gold.edges) > MAX_EDGES:
        raise SizeLimitError(f"exact distance supports at most {MAX_EDGES} edges per graph")
    labels1, rel1 = _adjacency(pred)
    labels2, rel2 = _adjacency(gold)
    n1, n2 = len(labels1), len(labels2)

    # suffix multisets for the admissible bound on the pred side
    suffix_labels = [Counter() for _ in range(n1 + 1)]
    for i in range(n1 - 1, -1, -1):
        suffix_labels[i] = suffix_labels[i + 1].copy()
        suffix_labels[i][labels1[i]] += 1
    suffix_rels = [Counter() for _ in range(n1 + 1)]
    for i in range(n1 - 1, -1, -1):
        suffix_rels[i] = suffix_rels[i + 1].copy()
        for (a, b), rels in rel1.items():
            if max(a, b) == i:
                suffix_rels[i].update(rels)

    gold_labels = Counter(labels2)
    gold_rel_items = [(a, b, rels) for (a, b), rels in rel2.items()]

    def heuristic(i: int, used: frozenset[int]) -> int:
        rem_pred = n1 - i
        unused = [j for j in range(n2) if j not in used]
        unused_labels = Counter(labels2[j] for j in unused)
        node_lb = (max(rem_pred, len(unused))
                   - sum((suffix_labels[i] & unused_labels).values()))
        rem_gold_rels = Counter()
        for a, b, rels in gold_rel_items:
            if a not in used or b not in used:
                rem_gold_rels.update(rels)
        p, q = suffix_rels[i], rem_gold_rels
        edge_lb = max(sum(p.values()), sum(q.values())) - sum((p & q).values())
        return node_lb + edge_lb

    def completion(used: frozenset[int]) -> int:
        cost = n2 - len(used)
        for a, b, rels in gold_rel_items:
            if a not in used or b not in used:
                cost += sum(rels.values())
        return cost

    start = (heuristic(0, frozenset()), 0, 0, ())
    heap = [start]
    best_seen: dict[tuple[int, tuple], int] = {}
    while heap:
        f, g_cost, i, mapping = heapq.heappop(heap)
        if i == n1:
            return g_cost
        key = (i, mapping)
        if best_seen.get(key, 1 << 30) < g_cost:
            continue
        best_seen[key] = g_cost
        used = frozenset(j for j in mapping if j != -1)
        candidates: list[int] = [j for j in range(n2) if j not in used] + [-1]
        for j in candidates:
            delta = 0
            if j == -1:
                delta += 1
                for k in range(i):
                    delta += _pair_cost(rel1.get((i, k)), None)
                    delta += _pair_cost(rel1.get((k, i)), None)
            else:
                if labels1[i] != labels2[j]:
                    delta += 1
                for k in range(i):
                    jk = mapping[k]
                    if jk == -1:
                        delta += _pair_cost(rel1.get((i, k)), None)
                        delta += _pair_cost(rel1.get((k, i)), None)
                    else:
                        delta += _pair_cost(rel1.get((i, k)), rel2.get((j, jk)))
                        delta += _pair_cost(rel1.get((k, i)), rel2.get((jk, j)))
            new_mapping = mapping + (j,)
            new_used = used | {j} if j != -1 else used
            new_g = g_cost + delta
            if i + 1 == n1:
                new_g += completion(new_used)
                new_f = new_g
            else:
                new_f = new_g + heuristic(i + 1, new_used)
            mkey = (i + 1, new_mapping)
            if best_seen.get(mkey, 1 << 30) <= new_g:
                continue
            best_seen[mkey] = new_g
            heapq.heappush(heap, (new_f, new_g, i + 1, new_mapping))
    raise RuntimeError("search exhausted without reaching a goal state")


def ged(pred: ExplanationGraph, gold: ExplanationGraph) -> float:
    """Normalized distance in [0, 1]; 0 iff the graphs are isomorphic."""
    raw = ged_raw(pred, gold)
    bound = len(pred.nodes) + len(gold.nodes) + len(pred.edges) + len(gold.edges)
    return raw / bound
