"""Community detection, modularity and clique analysis."""
from hidden_ties.communities.cliques import (
    CliqueReport,
    clique_report,
    count_k_cliques,
    maximal_cliques,
)
from hidden_ties.communities.girvan_newman import edge_betweenness_matrix, girvan_newman
from hidden_ties.communities.greedy import clauset_newman_moore, wakita_tsurumi
from hidden_ties.communities.partition import Partition, PartitionReport, modularity
from hidden_ties.communities.walktrap import walktrap

ALGORITHMS = {
    "gn": girvan_newman,
    "cnm": clauset_newman_moore,
    "wt": wakita_tsurumi,
    "walktrap": walktrap,
}

__all__ = [
    "ALGORITHMS",
    "CliqueReport",
    "Partition",
    "PartitionReport",
    "clauset_newman_moore",
    "clique_report",
    "count_k_cliques",
    "edge_betweenness_matrix",
    "girvan_newman",
    "maximal_cliques",
    "modularity",
    "wakita_tsurumi",
    "walktrap",
]
