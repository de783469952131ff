"""k-clique counting and maximal clique enumeration."""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass

from hidden_ties.errors import GraphError
from hidden_ties.graph import UnipartiteGraph


def _higher_neighbors(g: UnipartiteGraph) -> list[set[int]]:
    return [{w for w in g.neighbors(v) if w > v} for v in range(g.n)]


def _size_counts(g: UnipartiteGraph, limit: int | None = None) -> Counter[int]:
    """Number of complete subgraphs of each size, up to ``limit`` vertices.

    Each clique is reached exactly once, by extending with increasing ids.
    """
    up = _higher_neighbors(g)
    counts: Counter[int] = Counter()

    def extend(size: int, candidates: set[int]) -> None:
        counts[size] += 1
        if limit is not None and size >= limit:
            return
        for w in sorted(candidates):
            extend(size + 1, candidates & up[w])

    for v in range(g.n):
        extend(1, up[v])
    return counts


def count_k_cliques(g: UnipartiteGraph, k: int) -> int:
    """Number of ``k``-vertex subsets that induce a complete subgraph (``k >= 3``)."""
    if k < 3:
        raise GraphError(f"k-clique counting requires k >= 3, got {k}")
    return _size_counts(g, limit=k)[k]


def maximal_cliques(g: UnipartiteGraph) -> list[tuple[int, ...]]:
    """Bron-Kerbosch with Tomita pivoting.

    Returned largest first, then lexicographically; each clique is a sorted
    tuple of vertex ids.
    """
    adj = [set(a) for a in g.adjacency()]
    found: list[tuple[int, ...]] = []

    def expand(r: list[int], p: set[int], x: set[int]) -> None:
        if not p and not x:
            found.append(tuple(sorted(r)))
            return
        pivot = max(sorted(p | x), key=lambda u: len(p & adj[u]))
        for v in sorted(p - adj[pivot]):
            expand(r + [v], p & adj[v], x & adj[v])
            p = p - {v}
            x = x | {v}

    if g.n:
        expand([], set(range(g.n)), set())
    found.sort(key=lambda c: (-len(c), c))
    return found


@dataclass(frozen=True)
class CliqueReport:
    """Clique counts by size.

    ``counts`` lists sizes ``min_k`` through ``max_clique_size``.
    """

    labels: tuple[str, ...]
    min_k: int
    counts: dict[int, int]
    max_clique_size: int
    max_clique_count: int
    maximal_cliques: tuple[tuple[int, ...], ...]

    @property
    def total(self) -> int:
        return sum(self.counts.values())


def clique_report(g: UnipartiteGraph, min_k: int = 3) -> CliqueReport:
    if min_k < 3:
        raise GraphError(f"min_k must be >= 3, got {min_k}")
    cliques = maximal_cliques(g)
    top = len(cliques[0]) if cliques else 0
    sizes = _size_counts(g)
    counts = {k: sizes[k] for k in range(min_k, top + 1)}
    return CliqueReport(
        labels=g.labels,
        min_k=min_k,
        counts=counts,
        max_clique_size=top,
        max_clique_count=sizes[top] if top else 0,
        maximal_cliques=tuple(cliques),
    )
