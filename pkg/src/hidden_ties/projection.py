"""One-mode projections of a bipartite actor-resource graph.

Two actors are tied when they share at least one resource (and vice versa for
the resource side). The projected edge weight is the number of shared
neighbours; bipartite edge weights do not enter into it.
"""
from __future__ import annotations

import enum
from collections import Counter
from itertools import combinations

from hidden_ties.graph import BipartiteGraph, UnipartiteGraph


class Side(enum.Enum):
    ACTORS = "actors"
    RESOURCES = "resources"


def project(g: BipartiteGraph, side: Side) -> UnipartiteGraph:
    """Project ``g`` onto one of its parts.

    Every vertex of the chosen part is kept, including those left isolated.
    Each vertex of the opposite part with degree ``d`` contributes a complete
    subgraph on its ``d`` neighbours.
    """
    side = Side(side)
    if side is Side.ACTORS:
        labels, other, hubs = g.actors, len(g.resources), g.resource_neighbors
    else:
        labels, other, hubs = g.resources, len(g.actors), g.actor_neighbors
    shared: Counter[tuple[int, int]] = Counter()
    for h in range(other):
        # neighbour tuples are sorted, so pairs come out as (low, high)
        for pair in combinations(hubs(h), 2):
            shared[pair] += 1
    return UnipartiteGraph(labels, tuple((u, v, w) for (u, v), w in shared.items()))


def project_both(g: BipartiteGraph) -> tuple[UnipartiteGraph, UnipartiteGraph]:
    return project(g, Side.ACTORS), project(g, Side.RESOURCES)
