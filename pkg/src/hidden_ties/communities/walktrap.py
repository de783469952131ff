"""Walktrap: agglomerative clustering on random-walk distances.

Every vertex gets a self-loop before the transition matrix is built, as in
Pons and Latapy's reference implementation. Probabilities are exact matrix
powers; no walks are sampled.
"""
from __future__ import annotations

import numpy as np

from hidden_ties.communities.partition import Partition, modularity_numerator
from hidden_ties.errors import GraphError
from hidden_ties.graph import UnipartiteGraph
from hidden_ties.metrics import adjacency_matrix

# merge costs closer than this are treated as tied
TIE_RTOL = 1e-9
TIE_ATOL = 1e-15


def walktrap(g: UnipartiteGraph, t: int = 4) -> Partition:
    """Cluster ``g`` by merging the adjacent pair with the smallest variance increase.

    The cost of merging ``C1`` and ``C2`` is
    ``|C1||C2| / (|C1|+|C2|) / n * r(C1, C2)^2``. Here ``r`` is the
    degree-weighted Euclidean distance between the communities' length-``t``
    walk distributions. The merge tree is cut at the level with the highest
    modularity, and a finer level wins a tie.
    """
    if g.m == 0:
        raise GraphError("edgeless graph: community detection needs at least one edge")
    if t < 1:
        raise ValueError(f"walk length must be >= 1, got {t}")
    n = g.n
    a = adjacency_matrix(g) + np.eye(n)
    deg = a.sum(axis=1)
    walk = np.linalg.matrix_power(a / deg[:, None], t)
    # scaling columns by d^-1/2 turns r^2 into a plain squared distance
    rows = walk / np.sqrt(deg)[None, :]

    size = {v: 1 for v in range(n)}
    profile = {v: rows[v].copy() for v in range(n)}
    nbrs = {v: set(g.neighbors(v)) for v in range(n)}

    def cost(i: int, j: int) -> float:
        diff = profile[i] - profile[j]
        return size[i] * size[j] / (size[i] + size[j]) / n * float(diff @ diff)

    costs = {(u, v): cost(u, v) for u, v, _ in g.edges}
    owner = list(range(n))
    best_score = modularity_numerator(g, owner)
    best = list(owner)
    while costs:
        low = min(costs.values())
        i, j = min(p for p, c in costs.items() if c <= low * (1 + TIE_RTOL) + TIE_ATOL)
        merged = size[i] + size[j]
        profile[i] = (size[i] * profile[i] + size[j] * profile.pop(j)) / merged
        size[i] = merged
        del size[j]
        for v in range(n):
            if owner[v] == j:
                owner[v] = i
        joined = (nbrs[i] | nbrs.pop(j)) - {i, j}
        for k in nbrs[i] - {j}:
            costs.pop((min(i, k), max(i, k)), None)
        for k in joined:
            nbrs[k].discard(j)
            costs.pop((min(j, k), max(j, k)), None)
            nbrs[k].add(i)
        costs.pop((i, j), None)
        nbrs[i] = joined
        for k in joined:
            costs[(min(i, k), max(i, k))] = cost(i, k)
        score = modularity_numerator(g, owner)
        if score > best_score:
            best_score, best = score, list(owner)
    return Partition.of(g, best)
