from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from hidden_ties.errors import GraphError
from hidden_ties.graph import UnipartiteGraph


def canonical_assignments(assignments: Sequence[int]) -> tuple[int, ...]:
    """Relabel communities 0..C-1 in order of their smallest vertex id."""
    relabel: dict[int, int] = {}
    return tuple(relabel.setdefault(c, len(relabel)) for c in assignments)


def modularity_numerator(g: UnipartiteGraph, assignments: Sequence[int]) -> int:
    """``Q * 4m^2`` as an exact integer, for tie-free comparisons."""
    intra: dict[int, int] = {}
    degree: dict[int, int] = {}
    for u, v, _ in g.edges:
        if assignments[u] == assignments[v]:
            intra[assignments[u]] = intra.get(assignments[u], 0) + 1
    for v in range(g.n):
        degree[assignments[v]] = degree.get(assignments[v], 0) + g.degree(v)
    four_m = 4 * g.m
    return sum(four_m * intra.get(c, 0) - d * d for c, d in degree.items())


def modularity(g: UnipartiteGraph, partition: Partition | Sequence[int]) -> float:
    """Newman modularity ``sum_c [e_c/m - (d_c/2m)^2]`` over communities ``c``.

    ``e_c`` counts intra-community edges and ``d_c`` sums member degrees.
    Edge weights are ignored.
    """
    if g.m == 0:
        raise GraphError("modularity of an edgeless graph is undefined")
    assignments = partition.assignments if isinstance(partition, Partition) else partition
    if len(assignments) != g.n:
        raise GraphError(f"partition covers {len(assignments)} vertices, graph has {g.n}")
    return modularity_numerator(g, assignments) / (4 * g.m * g.m)


@dataclass(frozen=True)
class Partition:
    """Disjoint community assignment; community ids are dense and ordered by smallest member."""

    assignments: tuple[int, ...]
    modularity: float

    @classmethod
    def of(cls, g: UnipartiteGraph, assignments: Sequence[int]) -> Partition:
        canon = canonical_assignments(assignments)
        return cls(canon, modularity(g, canon))

    @property
    def count(self) -> int:
        return max(self.assignments, default=-1) + 1

    def communities(self) -> list[list[int]]:
        groups: list[list[int]] = [[] for _ in range(self.count)]
        for v, c in enumerate(self.assignments):
            groups[c].append(v)
        return groups


@dataclass(frozen=True)
class PartitionReport:
    """A partition with the labels and settings needed to publish it."""

    labels: tuple[str, ...]
    partition: Partition
    algorithm: str
    min_size: int = 1

    def listed(self) -> list[list[str]]:
        return [
            [self.labels[v] for v in members]
            for members in self.partition.communities()
            if len(members) >= self.min_size
        ]
