"""Vertex centralities and whole-network aggregates.

All measures ignore edge weights. Per-vertex results are lists indexed by
vertex id.

Two scalings exist for closeness and betweenness. ``RAW`` gives the inverse
distance sum and the unordered pair count; these are the values usually
tabulated for small criminal networks. ``NORMALIZED`` multiplies closeness
by ``N-1`` and divides betweenness by ``(N-1)(N-2)``.
"""
from __future__ import annotations

import enum
import logging
from collections import Counter, deque
from dataclasses import dataclass
from itertools import combinations

import numpy as np

from hidden_ties._parallel import ordered_map
from hidden_ties.errors import DisconnectedGraphError, GraphError
from hidden_ties.graph import UnipartiteGraph, connected_components

log = logging.getLogger(__name__)

EIGEN_TOL = 1e-12
EIGEN_MAX_ITER = 10_000


class Variant(str, enum.Enum):
    RAW = "raw"
    NORMALIZED = "normalized"


def _require_connected(g: UnipartiteGraph, what: str) -> None:
    if g.n == 0:
        raise GraphError(f"{what} of an empty graph is undefined")
    if connected_components(g).count > 1:
        raise DisconnectedGraphError(
            f"{what} requires a connected graph; analyze per component"
        )


def _bfs(adj, s: int) -> list[int]:
    dist = [-1] * len(adj)
    dist[s] = 0
    queue = deque([s])
    while queue:
        u = queue.popleft()
        du = dist[u] + 1
        for w in adj[u]:
            if dist[w] < 0:
                dist[w] = du
                queue.append(w)
    return dist


def _distance_rows(g: UnipartiteGraph) -> list[list[int]]:
    adj = g.adjacency()
    return ordered_map(lambda s: _bfs(adj, s), range(g.n))


def degree_all(g: UnipartiteGraph) -> list[int]:
    return [g.degree(v) for v in range(g.n)]


def degree_centrality(g: UnipartiteGraph) -> list[float]:
    if g.n < 2:
        raise GraphError("degenerate graph: degree centrality needs at least 2 vertices")
    return [d / (g.n - 1) for d in degree_all(g)]


def closeness(g: UnipartiteGraph, variant: Variant = Variant.RAW) -> list[float]:
    """Inverse total geodesic distance to every other vertex.

    ``RAW`` is ``1/sum(d)``; ``NORMALIZED`` is ``(N-1)/sum(d)``. A lone vertex
    scores 0.
    """
    variant = Variant(variant)
    _require_connected(g, "closeness")
    scale = 1 if variant is Variant.RAW else g.n - 1
    out = []
    for row in _distance_rows(g):
        total = sum(row)
        out.append(scale / total if total else 0.0)
    return out


def _brandes_dependencies(adj, s: int) -> list[float]:
    n = len(adj)
    sigma = [0] * n
    dist = [-1] * n
    preds: list[list[int]] = [[] for _ in range(n)]
    sigma[s] = 1
    dist[s] = 0
    order = []
    queue = deque([s])
    while queue:
        v = queue.popleft()
        order.append(v)
        dv = dist[v] + 1
        for w in adj[v]:
            if dist[w] < 0:
                dist[w] = dv
                queue.append(w)
            if dist[w] == dv:
                sigma[w] += sigma[v]
                preds[w].append(v)
    delta = [0.0] * n
    for w in reversed(order):
        coeff = (1.0 + delta[w]) / sigma[w]
        for v in preds[w]:
            delta[v] += sigma[v] * coeff
    delta[s] = 0.0
    return delta


def betweenness(g: UnipartiteGraph, variant: Variant = Variant.RAW) -> list[float]:
    """Shortest-path betweenness (Brandes accumulation, one sweep per source).

    ``RAW`` sums, over unordered pairs ``{j, k}`` not containing the vertex,
    the fraction of shortest ``j``-``k`` paths through it. Disconnected
    graphs are fine: unreachable pairs contribute nothing.
    """
    variant = Variant(variant)
    adj = g.adjacency()
    totals = [0.0] * g.n
    # sweeps run in any order; the reduction below is in source order
    for delta in ordered_map(lambda s: _brandes_dependencies(adj, s), range(g.n)):
        for v, x in enumerate(delta):
            totals[v] += x
    raw = [x / 2.0 for x in totals]
    if variant is Variant.RAW:
        return raw
    denom = (g.n - 1) * (g.n - 2)
    return [x / denom if denom else 0.0 for x in raw]


def adjacency_matrix(g: UnipartiteGraph) -> np.ndarray:
    a = np.zeros((g.n, g.n))
    for u, v, _ in g.edges:
        a[u, v] = a[v, u] = 1.0
    return a


def eigenvector_centrality(g: UnipartiteGraph) -> list[float]:
    """Dominant adjacency eigenvector, scaled to sum to 1.

    Power iteration starts from the uniform vector and runs on ``A + I``.
    The shift leaves the eigenvectors alone but stops the sign flipping that
    plain iteration shows on bipartite graphs. Iteration stops once no entry
    moves by more than 1e-12, or after 10,000 steps.
    """
    if g.m == 0:
        raise GraphError("eigenvector centrality of an edgeless graph is undefined")
    _require_connected(g, "eigenvector centrality")
    a = adjacency_matrix(g)
    x = np.full(g.n, 1.0 / g.n)
    for _ in range(EIGEN_MAX_ITER):
        y = x + a @ x
        y /= y.sum()
        change = np.abs(y - x).max()
        x = y
        if change < EIGEN_TOL:
            break
    else:
        log.warning("eigenvector iteration hit %d steps (last change %.3g)", EIGEN_MAX_ITER, change)
    return x.tolist()


def local_clustering(g: UnipartiteGraph) -> list[float]:
    """Fraction of neighbour pairs that are themselves adjacent; 0 below degree 2."""
    adj = [set(a) for a in g.adjacency()]
    out = []
    for v in range(g.n):
        d = len(adj[v])
        if d < 2:
            out.append(0.0)
            continue
        links = sum(1 for a, b in combinations(sorted(adj[v]), 2) if b in adj[a])
        out.append(links / (d * (d - 1) / 2))
    return out


def density(g: UnipartiteGraph) -> float:
    if g.n < 2:
        raise GraphError("density needs at least 2 vertices")
    return 2 * g.m / (g.n * (g.n - 1))


def geodesics(g: UnipartiteGraph) -> tuple[int, float]:
    """``(diameter, average geodesic distance)`` of a connected graph.

    The average divides the sum of distances over all ordered pairs by
    ``N**2``, i.e. the zero self-distances count toward the denominator.
    """
    _require_connected(g, "geodesics")
    rows = _distance_rows(g)
    diameter = max(max(r) for r in rows)
    total = sum(sum(r) for r in rows)
    return diameter, total / (g.n * g.n)


def degree_distribution(g: UnipartiteGraph) -> dict[int, float]:
    if g.n == 0:
        raise GraphError("degree distribution of an empty graph is undefined")
    counts = Counter(degree_all(g))
    return {d: counts[d] / g.n for d in sorted(counts)}


def _local_vertex_connectivity(adj, s: int, t: int, cutoff: int) -> int:
    """Number of internally vertex-disjoint s-t paths, capped at ``cutoff``.

    Unit-capacity max flow on the split graph (each vertex ``v`` becomes
    ``v_in -> v_out``), augmenting along BFS paths.
    """
    n = len(adj)
    # node 2v is v_in, 2v+1 is v_out; residual capacities in a dict
    cap: dict[tuple[int, int], int] = {}
    out: list[list[int]] = [[] for _ in range(2 * n)]

    def arc(x, y, c):
        if (x, y) not in cap:
            out[x].append(y)
            out[y].append(x)
            cap[(x, y)] = 0
            cap.setdefault((y, x), 0)
        cap[(x, y)] += c

    big = n
    for v in range(n):
        arc(2 * v, 2 * v + 1, big if v in (s, t) else 1)
        for w in adj[v]:
            arc(2 * v + 1, 2 * w, big)
    source, sink = 2 * s + 1, 2 * t
    flow = 0
    while flow < cutoff:
        parent = {source: source}
        queue = deque([source])
        while queue and sink not in parent:
            x = queue.popleft()
            for y in out[x]:
                if y not in parent and cap[(x, y)] > 0:
                    parent[y] = x
                    queue.append(y)
        if sink not in parent:
            break
        y = sink
        while y != source:
            x = parent[y]
            cap[(x, y)] -= 1
            cap[(y, x)] += 1
            y = x
        flow += 1
    return flow


def connectivity(g: UnipartiteGraph) -> int:
    """Minimum number of vertices whose removal disconnects the graph.

    Conventions: ``K_n`` gives ``n-1``; disconnected graphs and graphs with
    fewer than two vertices give 0.

    Uses the Esfahanian-Hakimi reduction: with ``v`` a vertex of minimum
    degree, only pairs ``(v, w)`` with ``w`` non-adjacent, and non-adjacent
    pairs of neighbours of ``v``, need a local max-flow.
    """
    n = g.n
    if n < 2 or connected_components(g).count > 1:
        return 0
    if g.m == n * (n - 1) // 2:
        return n - 1
    adj = g.adjacency()
    adj_sets = [set(a) for a in adj]
    v = min(range(n), key=lambda x: (len(adj[x]), x))
    best = len(adj[v])
    for w in range(n):
        if w != v and w not in adj_sets[v]:
            best = min(best, _local_vertex_connectivity(adj, v, w, best))
    for x, y in combinations(adj[v], 2):
        if y not in adj_sets[x]:
            best = min(best, _local_vertex_connectivity(adj, x, y, best))
    return best


def degree_centralization(g: UnipartiteGraph) -> float:
    """Freeman degree centralization: 1 for a star, 0 for a regular graph."""
    if g.n < 3:
        raise GraphError("degree centralization needs at least 3 vertices")
    degrees = degree_all(g)
    top = max(degrees)
    return sum(top - d for d in degrees) / ((g.n - 1) * (g.n - 2))


@dataclass(frozen=True)
class VertexMetrics:
    label: str
    degree: int
    degree_centrality: float | None
    closeness_raw: float
    closeness_normalized: float
    betweenness_raw: float
    betweenness_normalized: float
    eigenvector: float | None
    local_clustering: float

    def closeness(self, variant: Variant = Variant.RAW) -> float:
        return self.closeness_raw if Variant(variant) is Variant.RAW else self.closeness_normalized

    def betweenness(self, variant: Variant = Variant.RAW) -> float:
        if Variant(variant) is Variant.RAW:
            return self.betweenness_raw
        return self.betweenness_normalized


@dataclass(frozen=True)
class NetworkAggregates:
    """Whole-network figures. Fields undefined for tiny graphs are ``None``."""

    vertex_count: int
    edge_count: int
    density: float | None
    diameter: int
    average_geodesic: float
    connectivity: int
    degree_centralization: float | None
    degree_distribution: dict[int, float]

    def summary(self) -> str:
        dens = "NA" if self.density is None else f"{self.density:.4f}"
        return (
            f"vertices={self.vertex_count} edges={self.edge_count} "
            f"diameter={self.diameter} avg_geodesic={self.average_geodesic:.4f} "
            f"density={dens}"
        )


@dataclass(frozen=True)
class MetricsReport:
    aggregates: NetworkAggregates
    vertices: tuple[VertexMetrics, ...]


def aggregate_report(g: UnipartiteGraph) -> MetricsReport:
    """Every vertex measure plus the network aggregates for a connected graph."""
    _require_connected(g, "aggregate report")
    n = g.n
    degrees = degree_all(g)
    close_raw = closeness(g, Variant.RAW)
    btw_raw = betweenness(g, Variant.RAW)
    pair_norm = (n - 1) * (n - 2)
    eig = eigenvector_centrality(g) if g.m else [None] * n
    clus = local_clustering(g)
    dc = degree_centrality(g) if n >= 2 else [None] * n
    diameter, avg = geodesics(g)
    aggregates = NetworkAggregates(
        vertex_count=n,
        edge_count=g.m,
        density=density(g) if n >= 2 else None,
        diameter=diameter,
        average_geodesic=avg,
        connectivity=connectivity(g),
        degree_centralization=degree_centralization(g) if n >= 3 else None,
        degree_distribution=degree_distribution(g),
    )
    vertices = tuple(
        VertexMetrics(
            label=g.labels[v],
            degree=degrees[v],
            degree_centrality=dc[v],
            closeness_raw=close_raw[v],
            closeness_normalized=(n - 1) * close_raw[v],
            betweenness_raw=btw_raw[v],
            betweenness_normalized=btw_raw[v] / pair_norm if pair_norm else 0.0,
            eigenvector=eig[v],
            local_clustering=clus[v],
        )
        for v in range(n)
    )
    return MetricsReport(aggregates, vertices)
