"""Greedy agglomerative modularity maximisation.

Both algorithms start from singletons and repeatedly merge the pair of
adjacent communities with the best score, for as long as some merge still
raises modularity. Scores are computed exactly from integers, so ties are
real ties. A tie goes to the smallest ``(i, j)``, where a community's index
is its smallest vertex id.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Callable

from hidden_ties.communities.partition import Partition
from hidden_ties.errors import GraphError
from hidden_ties.graph import UnipartiteGraph

# score(gain, size_i, size_j) -> comparable; gain is dQ * 2m^2 (> 0)
Score = Callable[[int, int, int], object]


def _agglomerate(g: UnipartiteGraph, score: Score) -> Partition:
    if g.m == 0:
        raise GraphError("edgeless graph: community detection needs at least one edge")
    two_m = 2 * g.m
    owner = list(range(g.n))
    members = {v: [v] for v in range(g.n)}
    degree = {v: g.degree(v) for v in range(g.n)}
    # links[i][j]: number of edges between communities i and j
    links: dict[int, dict[int, int]] = {v: {} for v in range(g.n)}
    for u, v, _ in g.edges:
        links[u][v] = links[u].get(v, 0) + 1
        links[v][u] = links[v].get(u, 0) + 1

    while True:
        best_key = best_pair = None
        for i in sorted(links):
            for j in sorted(links[i]):
                if j <= i:
                    continue
                # dQ = l_ij/m - d_i d_j / (2 m^2), scaled by 2 m^2
                gain = two_m * links[i][j] - degree[i] * degree[j]
                if gain <= 0:
                    continue
                key = score(gain, len(members[i]), len(members[j]))
                if best_key is None or key > best_key:
                    best_key, best_pair = key, (i, j)
        if best_pair is None:
            break
        i, j = best_pair
        for v in members[j]:
            owner[v] = i
        members[i].extend(members.pop(j))
        degree[i] += degree.pop(j)
        for k, count in links.pop(j).items():
            del links[k][j]
            if k != i:
                links[i][k] = links[i].get(k, 0) + count
                links[k][i] = links[k].get(i, 0) + count
    return Partition.of(g, owner)


def clauset_newman_moore(g: UnipartiteGraph) -> Partition:
    """Merge the adjacent pair with the largest modularity gain."""
    return _agglomerate(g, lambda gain, si, sj: gain)


def _balanced_gain(gain: int, si: int, sj: int) -> Fraction:
    # consolidation ratio: favours joining communities of similar size
    return Fraction(gain * min(si, sj), max(si, sj))


def wakita_tsurumi(g: UnipartiteGraph) -> Partition:
    """Like :func:`clauset_newman_moore`, with each gain scaled by the size ratio.

    A candidate merge of communities with ``s1`` and ``s2`` vertices scores
    ``dQ * min(s1, s2) / max(s1, s2)``. Only merges with ``dQ > 0`` qualify.
    """
    return _agglomerate(g, _balanced_gain)
