"""Exact maximum-weight rectangular assignment (Jonker-Volgenant style).

The square kernel is written in numba-compatible form; when numba is
installed it is JIT-compiled unless ``BELIEFGRAPH_NUMBA=0`` is set, in which
case the pure-Python/numpy fallback runs.  Both paths execute the same code
and return identical assignments.
"""

from __future__ import annotations

import os

import numpy as np


def _lapjv_square(cost):
    """Minimum-cost perfect assignment on a square matrix.

    Returns p where p[j] is the row assigned to column j.  Shortest
    augmenting path algorithm with dual potentials, O(n^3).
    """
    n = cost.shape[0]
    u = np.zeros(n, np.float64)
    v = np.zeros(n + 1, np.float64)
    p = np.full(n + 1, -1, np.int64)  # row assigned to each column; column n is virtual
    way = np.zeros(n + 1, np.int64)
    for i in range(n):
        p[n] = i
        j0 = n
        minv = np.full(n + 1, np.inf)
        used = np.zeros(n + 1, np.bool_)
        while True:
            used[j0] = True
            i0 = p[j0]
            delta = np.inf
            j1 = -1
            for j in range(n):
                if not used[j]:
                    cur = cost[i0, j] - u[i0] - v[j]
                    if cur < minv[j]:
                        minv[j] = cur
                        way[j] = j0
                    if minv[j] < delta:
                        delta = minv[j]
                        j1 = j
            for j in range(n + 1):
                if used[j]:
                    if p[j] >= 0:
                        u[p[j]] += delta
                    v[j] -= delta
                else:
                    minv[j] -= delta
            j0 = j1
            if p[j0] == -1:
                break
        while j0 != n:
            j1 = way[j0]
            p[j0] = p[j1]
            j0 = j1
    return p[:n]


lapjv_python = _lapjv_square
lapjv_jit = None

if os.environ.get("BELIEFGRAPH_NUMBA", "1") != "0":
    try:
        from numba import njit

        lapjv_jit = njit(cache=True)(_lapjv_square)
    except ImportError:
        lapjv_jit = None

_solve = lapjv_jit if lapjv_jit is not None else lapjv_python


def hungarian(matrix) -> tuple[list[tuple[int, int]], float]:
    """Maximum-weight one-to-one assignment on an m x n score matrix.

    Returns the matched (row, col) pairs and the total matched weight.  The
    matrix is padded to square with zero-weight cells; entries must be finite
    and non-negative.
    """
    w = np.asarray(matrix, dtype=np.float64)
    if w.ndim != 2 or w.size == 0:
        raise ValueError("matrix must be 2-dimensional and non-empty")
    if not np.all(np.isfinite(w)) or np.any(w < 0):
        raise ValueError("matrix entries must be finite and non-negative")
    m, n = w.shape
    k = max(m, n)
    cost = np.zeros((k, k), dtype=np.float64)
    cost[:m, :n] = -w
    p = _solve(cost)
    pairs = [(int(p[j]), j) for j in range(n) if p[j] < m]
    weight = float(sum(w[i, j] for i, j in pairs))
    pairs.sort()
    return pairs, weight
