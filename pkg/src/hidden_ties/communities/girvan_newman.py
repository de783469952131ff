from __future__ import annotations

from collections import deque

import numpy as np

from hidden_ties.communities.partition import Partition, modularity_numerator
from hidden_ties.errors import GraphError
from hidden_ties.graph import UnipartiteGraph, connected_components
from hidden_ties.metrics import adjacency_matrix

# relative slack when comparing floating-point edge betweenness for ties
TIE_RTOL = 1e-9


def edge_betweenness_matrix(a: np.ndarray) -> np.ndarray:
    """Edge betweenness for every edge of the 0/1 symmetric matrix ``a``.

    Entry ``[u, v]`` is the sum, over unordered vertex pairs, of the
    fraction of their shortest paths that use edge ``u-v``. All sources are
    processed together: row ``s`` of each level mask marks the vertices at
    that BFS depth from ``s``.
    """
    n = a.shape[0]
    sigma = np.eye(n)
    seen = np.eye(n, dtype=bool)
    frontier = np.eye(n)
    levels = [seen.copy()]
    while True:
        nxt = frontier @ a
        nxt[seen] = 0.0
        mask = nxt > 0
        if not mask.any():
            break
        sigma += nxt
        seen |= mask
        levels.append(mask)
        frontier = nxt
    safe = np.where(sigma > 0, sigma, 1.0)
    delta = np.zeros((n, n))
    flow = np.zeros((n, n))
    for k in range(len(levels) - 1, 0, -1):
        coef = np.where(levels[k], (1.0 + delta) / safe, 0.0)
        closer = np.where(levels[k - 1], sigma, 0.0)
        delta += closer * (coef @ a)
        flow += closer.T @ coef
    flow *= a
    return (flow + flow.T) / 2.0


def _reach(adj: list[set[int]], s: int) -> set[int]:
    seen = {s}
    queue = deque([s])
    while queue:
        for w in adj[queue.popleft()]:
            if w not in seen:
                seen.add(w)
                queue.append(w)
    return seen


def girvan_newman(g: UnipartiteGraph) -> Partition:
    """Divisive clustering by repeated removal of the highest-betweenness edge.

    Ties go to the lexicographically smallest ``(u, v)`` with ``u < v``.
    Each time a removal splits a component, the component partition is
    scored by modularity on the original graph. The best-scoring partition
    is returned, and an earlier one wins a tie. The starting partition
    (components of ``g``) is a candidate too.
    """
    if g.m == 0:
        raise GraphError("edgeless graph: community detection needs at least one edge")
    n = g.n
    a = adjacency_matrix(g)
    adj = [set(x) for x in g.adjacency()]
    comp = list(connected_components(g).assignments)
    next_id = max(comp) + 1
    eb = np.zeros((n, n))

    def refresh(vertices):
        idx = np.array(sorted(vertices))
        block = np.ix_(idx, idx)
        eb[block] = edge_betweenness_matrix(a[block])

    refresh(range(n))
    best_score = modularity_numerator(g, comp)
    best = list(comp)
    upper = np.triu(np.ones((n, n), dtype=bool), 1)
    for _ in range(g.m):
        live = upper & (a > 0)
        scores = np.where(live, eb, -np.inf)
        top = scores.max()
        u, v = (int(x) for x in np.argwhere(scores >= top - TIE_RTOL * max(1.0, top))[0])
        a[u, v] = a[v, u] = 0.0
        eb[u, v] = eb[v, u] = 0.0
        adj[u].discard(v)
        adj[v].discard(u)
        side = _reach(adj, u)
        if v in side:
            refresh(side)
            continue
        for x in side:
            comp[x] = next_id
        next_id += 1
        refresh(side)
        refresh(_reach(adj, v))
        score = modularity_numerator(g, comp)
        if score > best_score:
            best_score, best = score, list(comp)
    return Partition.of(g, best)
