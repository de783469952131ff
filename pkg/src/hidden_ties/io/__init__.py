"""Record ingestion and serialisation of graphs and reports."""
from hidden_ties.io.formats import GraphFormat, read_graph, write_graph
from hidden_ties.io.ingest import (
    DEFAULT_FILTERS,
    IngestConfig,
    Record,
    RecordBatch,
    batch_to_bipartite,
    parse_csv,
)
from hidden_ties.io.reports import ReportFormat, write_report

__all__ = [
    "DEFAULT_FILTERS",
    "GraphFormat",
    "IngestConfig",
    "Record",
    "RecordBatch",
    "ReportFormat",
    "batch_to_bipartite",
    "parse_csv",
    "read_graph",
    "write_graph",
    "write_report",
]
