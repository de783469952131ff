"""Infer hidden ties between actors from shared resources.

Build a weighted bipartite actor-resource graph from tabular records,
project it onto actors or resources, then measure the projection with
centralities, community detection and clique counts.
"""
from hidden_ties.errors import (
    DisconnectedGraphError,
    GraphError,
    HiddenTiesError,
    InvariantError,
    ParseError,
)
from hidden_ties.graph import (
    BipartiteGraph,
    ComponentDecomposition,
    EgoNetwork,
    Radius,
    UnipartiteGraph,
    build_bipartite,
    connected_components,
    ego_network,
    induced_subgraph,
    largest_component,
)
from hidden_ties.projection import Side, project, project_both

__version__ = "0.1.0"

__all__ = [
    "BipartiteGraph",
    "ComponentDecomposition",
    "DisconnectedGraphError",
    "EgoNetwork",
    "GraphError",
    "HiddenTiesError",
    "InvariantError",
    "ParseError",
    "Radius",
    "Side",
    "UnipartiteGraph",
    "build_bipartite",
    "connected_components",
    "ego_network",
    "induced_subgraph",
    "largest_component",
    "project",
    "project_both",
]
