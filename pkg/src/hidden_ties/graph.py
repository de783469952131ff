"""Core graph types: bipartite actor-resource graphs and simple undirected graphs.

Vertices are addressed by dense integer ids ``0..N-1``. Labels are kept in a
parallel tuple and only matter when reading or writing files.
"""
from __future__ import annotations

import enum
from collections import Counter, deque
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from hidden_ties.errors import GraphError

Edge = tuple[int, int, int]


def _check_labels(labels: Sequence[str], what: str) -> tuple[str, ...]:
    labels = tuple(labels)
    for label in labels:
        if not isinstance(label, str) or not label:
            raise GraphError(f"{what} labels must be non-empty strings, got {label!r}")
    if len(set(labels)) != len(labels):
        dupes = sorted(k for k, c in Counter(labels).items() if c > 1)
        raise GraphError(f"duplicate {what} label(s): {', '.join(dupes)}")
    return labels


def _check_weight(w) -> int:
    if isinstance(w, bool) or not isinstance(w, int) or w < 1:
        raise GraphError(f"edge weight must be a positive integer, got {w!r}")
    return w


@dataclass(frozen=True)
class UnipartiteGraph:
    """Undirected simple graph with positive integer edge weights.

    ``edges`` is normalised to sorted ``(u, v, weight)`` triples with ``u < v``.
    Self-loops and parallel edges are rejected.
    """

    labels: tuple[str, ...]
    edges: tuple[Edge, ...] = ()
    _adj: tuple[tuple[int, ...], ...] = field(init=False, repr=False, compare=False)
    _index: dict[str, int] = field(init=False, repr=False, compare=False)
    _weights: dict[tuple[int, int], int] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        labels = _check_labels(self.labels, "vertex")
        n = len(labels)
        weights: dict[tuple[int, int], int] = {}
        for edge in self.edges:
            if len(edge) == 2:
                u, v = edge
                w = 1
            else:
                u, v, w = edge
            for x in (u, v):
                if isinstance(x, bool) or not isinstance(x, int) or not 0 <= x < n:
                    raise GraphError(f"edge endpoint {x!r} is not a vertex id")
            if u == v:
                raise GraphError(f"self-loop rejected: {labels[u]}")
            key = (u, v) if u < v else (v, u)
            if key in weights:
                raise GraphError(
                    f"parallel edge rejected: {labels[key[0]]} -- {labels[key[1]]}"
                )
            weights[key] = _check_weight(w)
        adj: list[list[int]] = [[] for _ in range(n)]
        for u, v in weights:
            adj[u].append(v)
            adj[v].append(u)
        object.__setattr__(self, "labels", labels)
        object.__setattr__(
            self, "edges", tuple(sorted((u, v, w) for (u, v), w in weights.items()))
        )
        object.__setattr__(self, "_adj", tuple(tuple(sorted(a)) for a in adj))
        object.__setattr__(self, "_index", {lab: i for i, lab in enumerate(labels)})
        object.__setattr__(self, "_weights", weights)

    @property
    def n(self) -> int:
        return len(self.labels)

    @property
    def m(self) -> int:
        return len(self.edges)

    def neighbors(self, v: int) -> tuple[int, ...]:
        return self._adj[v]

    def degree(self, v: int) -> int:
        return len(self._adj[v])

    def has_edge(self, u: int, v: int) -> bool:
        return ((u, v) if u < v else (v, u)) in self._weights

    def weight(self, u: int, v: int) -> int:
        return self._weights[(u, v) if u < v else (v, u)]

    def index(self, label: str) -> int:
        """Vertex id for ``label``; raises ``KeyError`` if absent."""
        return self._index[label]

    def __contains__(self, label: object) -> bool:
        return label in self._index

    def adjacency(self) -> tuple[tuple[int, ...], ...]:
        return self._adj

    def labelled_edges(self) -> set[tuple[str, str, int]]:
        """Edges as ``(label, label, weight)`` with labels in sorted order.

        Useful for comparing graphs whose ids were assigned differently.
        """
        out = set()
        for u, v, w in self.edges:
            a, b = sorted((self.labels[u], self.labels[v]))
            out.add((a, b, w))
        return out


@dataclass(frozen=True)
class BipartiteGraph:
    """Two-part graph: actors on one side, resources on the other.

    Edges are ``(actor_id, resource_id, weight)``; actor and resource ids are
    separate id spaces, so a label may occur in both parts.
    """

    actors: tuple[str, ...]
    resources: tuple[str, ...]
    edges: tuple[Edge, ...] = ()
    _actor_adj: tuple[tuple[int, ...], ...] = field(init=False, repr=False, compare=False)
    _resource_adj: tuple[tuple[int, ...], ...] = field(
        init=False, repr=False, compare=False
    )

    def __post_init__(self):
        actors = _check_labels(self.actors, "actor")
        resources = _check_labels(self.resources, "resource")
        seen: dict[tuple[int, int], int] = {}
        for a, r, w in self.edges:
            if not (isinstance(a, int) and 0 <= a < len(actors)):
                raise GraphError(f"actor id {a!r} out of range")
            if not (isinstance(r, int) and 0 <= r < len(resources)):
                raise GraphError(f"resource id {r!r} out of range")
            if (a, r) in seen:
                raise GraphError(
                    f"duplicate edge {actors[a]} -- {resources[r]}; fold it into the weight"
                )
            seen[(a, r)] = _check_weight(w)
        actor_adj: list[list[int]] = [[] for _ in actors]
        resource_adj: list[list[int]] = [[] for _ in resources]
        for a, r in seen:
            actor_adj[a].append(r)
            resource_adj[r].append(a)
        object.__setattr__(self, "actors", actors)
        object.__setattr__(self, "resources", resources)
        object.__setattr__(
            self, "edges", tuple(sorted((a, r, w) for (a, r), w in seen.items()))
        )
        object.__setattr__(self, "_actor_adj", tuple(tuple(sorted(x)) for x in actor_adj))
        object.__setattr__(
            self, "_resource_adj", tuple(tuple(sorted(x)) for x in resource_adj)
        )

    @property
    def m(self) -> int:
        return len(self.edges)

    def actor_neighbors(self, a: int) -> tuple[int, ...]:
        return self._actor_adj[a]

    def resource_neighbors(self, r: int) -> tuple[int, ...]:
        return self._resource_adj[r]


def build_bipartite(records: Iterable[tuple[str, str]]) -> BipartiteGraph:
    """Fold (actor, resource) pairs into a weighted bipartite graph.

    Labels get ids in order of first appearance; the weight of an edge is the
    number of times its pair occurs in ``records``.
    """
    actors: dict[str, int] = {}
    resources: dict[str, int] = {}
    counts: Counter[tuple[int, int]] = Counter()
    for actor, resource in records:
        if not actor or not resource:
            raise GraphError("record labels must be non-empty")
        a = actors.setdefault(actor, len(actors))
        r = resources.setdefault(resource, len(resources))
        counts[(a, r)] += 1
    if not counts:
        raise GraphError("empty record set")
    return BipartiteGraph(
        tuple(actors), tuple(resources), tuple((a, r, w) for (a, r), w in counts.items())
    )


@dataclass(frozen=True)
class ComponentDecomposition:
    """Component index per vertex; component 0 is the largest."""

    assignments: tuple[int, ...]
    sizes: tuple[int, ...]

    @property
    def count(self) -> int:
        return len(self.sizes)

    def members(self, c: int) -> list[int]:
        return [v for v, k in enumerate(self.assignments) if k == c]


def connected_components(g: UnipartiteGraph) -> ComponentDecomposition:
    """Split ``g`` into connected components.

    Components are numbered by size, largest first; equal sizes are ordered
    by their smallest vertex id.
    """
    raw = [-1] * g.n
    groups: list[list[int]] = []
    for s in range(g.n):
        if raw[s] >= 0:
            continue
        raw[s] = len(groups)
        group = [s]
        queue = deque([s])
        while queue:
            u = queue.popleft()
            for w in g.neighbors(u):
                if raw[w] < 0:
                    raw[w] = raw[s]
                    group.append(w)
                    queue.append(w)
        groups.append(group)
    # groups are discovered in order of smallest member, so a stable sort on
    # size alone gives the smallest-id tie-break
    order = sorted(range(len(groups)), key=lambda i: -len(groups[i]))
    rank = {old: new for new, old in enumerate(order)}
    return ComponentDecomposition(
        tuple(rank[c] for c in raw), tuple(len(groups[i]) for i in order)
    )


def induced_subgraph(g: UnipartiteGraph, keep: Iterable[int]) -> UnipartiteGraph:
    """Subgraph on ``keep``; ids are re-densified preserving relative order."""
    keep = sorted(set(keep))
    for v in keep:
        if not (isinstance(v, int) and 0 <= v < g.n):
            raise GraphError(f"unknown vertex id {v!r}")
    remap = {v: i for i, v in enumerate(keep)}
    edges = [
        (remap[u], remap[v], w) for u, v, w in g.edges if u in remap and v in remap
    ]
    return UnipartiteGraph(tuple(g.labels[v] for v in keep), tuple(edges))


def largest_component(g: UnipartiteGraph) -> UnipartiteGraph:
    if g.n == 0:
        raise GraphError("largest component of an empty graph is undefined")
    comps = connected_components(g)
    if comps.count == 1:
        return g
    return induced_subgraph(g, comps.members(0))


class Radius(enum.Enum):
    """Ego-network radius: the star around the ego, or the star plus alter-alter ties."""

    ONE = "1"
    ONE_POINT_FIVE = "1.5"


@dataclass(frozen=True)
class EgoNetwork:
    ego: int  # id in the host graph
    label: str
    radius: Radius
    subgraph: UnipartiteGraph


def ego_network(g: UnipartiteGraph, v: int, radius: Radius = Radius.ONE_POINT_FIVE) -> EgoNetwork:
    if not (isinstance(v, int) and 0 <= v < g.n):
        raise GraphError(f"unknown vertex {v!r}")
    radius = Radius(radius)
    keep = {v, *g.neighbors(v)}
    sub = induced_subgraph(g, keep)
    if radius is Radius.ONE:
        centre = sub.index(g.labels[v])
        sub = UnipartiteGraph(
            sub.labels, tuple(e for e in sub.edges if centre in (e[0], e[1]))
        )
    return EgoNetwork(v, g.labels[v], radius, sub)
