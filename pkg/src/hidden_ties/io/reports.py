"""Serialisation of metric, partition and clique reports.

JSON keeps full float precision. The CSV views are meant to be read by
people and round to three decimals, except that whole numbers print as
integers (a betweenness of ``15.0`` prints as ``15``).
"""
from __future__ import annotations

import csv
import enum
import io
import json
from functools import singledispatch

from hidden_ties.communities import CliqueReport, PartitionReport
from hidden_ties.metrics import MetricsReport, NetworkAggregates, Variant

TABLE_COLUMNS = ("label", "degree", "betweenness", "closeness", "eigenvector")
EXTENDED_COLUMNS = (
    "degree_centrality",
    "closeness_normalized",
    "betweenness_normalized",
    "local_clustering",
)


class ReportFormat(str, enum.Enum):
    JSON = "json"
    CSV = "csv"


def format_number(x: float | int | None, decimals: int = 3) -> str:
    if x is None:
        return ""
    if float(x).is_integer():
        return str(int(x))
    return f"{x:.{decimals}f}"


def dumps_json(doc) -> bytes:
    return (json.dumps(doc, ensure_ascii=False, indent=2) + "\n").encode("utf-8")


def csv_bytes(rows) -> bytes:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerows(rows)
    return buf.getvalue().encode("utf-8")


def aggregates_to_dict(agg: NetworkAggregates) -> dict:
    return {
        "vertex_count": agg.vertex_count,
        "edge_count": agg.edge_count,
        "density": agg.density,
        "diameter": agg.diameter,
        "average_geodesic": agg.average_geodesic,
        "connectivity": agg.connectivity,
        "degree_centralization": agg.degree_centralization,
        "degree_distribution": {str(d): f for d, f in agg.degree_distribution.items()},
    }


def metrics_to_dict(report: MetricsReport) -> dict:
    return {
        "aggregates": aggregates_to_dict(report.aggregates),
        "vertices": [
            {
                "label": v.label,
                "degree": v.degree,
                "degree_centrality": v.degree_centrality,
                "closeness_raw": v.closeness_raw,
                "closeness_normalized": v.closeness_normalized,
                "betweenness_raw": v.betweenness_raw,
                "betweenness_normalized": v.betweenness_normalized,
                "eigenvector": v.eigenvector,
                "local_clustering": v.local_clustering,
            }
            for v in report.vertices
        ],
    }


def metrics_rows(
    report: MetricsReport,
    closeness: Variant = Variant.RAW,
    betweenness: Variant = Variant.RAW,
    extended: bool = False,
    decimals: int = 3,
) -> list[list[str]]:
    """Table rows (without header) in vertex-id order."""
    rows = []
    for v in report.vertices:
        row = [
            v.label,
            str(v.degree),
            format_number(v.betweenness(betweenness), decimals),
            format_number(v.closeness(closeness), decimals),
            format_number(v.eigenvector, decimals),
        ]
        if extended:
            row += [
                format_number(v.degree_centrality, decimals),
                format_number(v.closeness_normalized, decimals),
                format_number(v.betweenness_normalized, decimals),
                format_number(v.local_clustering, decimals),
            ]
        rows.append(row)
    return rows


def partition_to_dict(report: PartitionReport) -> dict:
    p = report.partition
    return {
        "algorithm": report.algorithm,
        "modularity": p.modularity,
        "community_count": p.count,
        "min_size": report.min_size,
        "communities": report.listed(),
        "assignments": {report.labels[v]: c for v, c in enumerate(p.assignments)},
    }


def cliques_to_dict(report: CliqueReport) -> dict:
    return {
        "min_k": report.min_k,
        "counts": {str(k): c for k, c in report.counts.items()},
        "total": report.total,
        "max_clique_size": report.max_clique_size,
        "max_clique_count": report.max_clique_count,
        "maximal_cliques": [[report.labels[v] for v in c] for c in report.maximal_cliques],
    }


@singledispatch
def write_report(report, fmt: ReportFormat | str = ReportFormat.JSON, **options) -> bytes:
    """Serialise a report object to JSON or CSV bytes.

    Metrics reports take the keyword options ``closeness``, ``betweenness``,
    ``extended`` and ``decimals``; those select the CSV columns.
    """
    raise TypeError(f"cannot serialise {type(report).__name__}")


@write_report.register
def _(report: MetricsReport, fmt: ReportFormat | str = ReportFormat.JSON, **options) -> bytes:
    if ReportFormat(fmt) is ReportFormat.JSON:
        return dumps_json(metrics_to_dict(report))
    header = list(TABLE_COLUMNS)
    if options.get("extended"):
        header += EXTENDED_COLUMNS
    return csv_bytes([header, *metrics_rows(report, **options)])


@write_report.register
def _(report: PartitionReport, fmt: ReportFormat | str = ReportFormat.JSON, **options) -> bytes:
    if ReportFormat(fmt) is ReportFormat.JSON:
        return dumps_json(partition_to_dict(report))
    rows = [["label", "community"]]
    rows += [[report.labels[v], c] for v, c in enumerate(report.partition.assignments)]
    return csv_bytes(rows)


@write_report.register
def _(report: CliqueReport, fmt: ReportFormat | str = ReportFormat.JSON, **options) -> bytes:
    if ReportFormat(fmt) is ReportFormat.JSON:
        return dumps_json(cliques_to_dict(report))
    return csv_bytes([["k", "count"], *([k, c] for k, c in report.counts.items())])
