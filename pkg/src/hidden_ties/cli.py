"""Command-line front end.

Each subcommand reads one file (``-`` for stdin), writes its payload to
``--out`` or stdout, and prints a one-line summary on stderr. Exit codes:
0 success, 1 usage error, 2 input or parse error, 3 internal error.
"""
from __future__ import annotations

import argparse
import logging
import math
import sys
from pathlib import Path
from typing import BinaryIO, Sequence

from hidden_ties import metrics
from hidden_ties.communities import ALGORITHMS, PartitionReport, clique_report, walktrap
from hidden_ties.communities.partition import modularity
from hidden_ties.errors import GraphError, InvariantError, ParseError
from hidden_ties.graph import (
    BipartiteGraph,
    Radius,
    UnipartiteGraph,
    connected_components,
    ego_network,
    induced_subgraph,
    largest_component,
)
from hidden_ties.io import (
    DEFAULT_FILTERS,
    GraphFormat,
    IngestConfig,
    batch_to_bipartite,
    parse_csv,
    read_graph,
    write_graph,
    write_report,
)
from hidden_ties.io.reports import (
    EXTENDED_COLUMNS,
    TABLE_COLUMNS,
    csv_bytes,
    dumps_json,
    metrics_rows,
    metrics_to_dict,
)
from hidden_ties.projection import Side, project

EXIT_OK, EXIT_USAGE, EXIT_INPUT, EXIT_INTERNAL = 0, 1, 2, 3

log = logging.getLogger("hidden_ties")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


class _Context:
    def __init__(self, stdin: BinaryIO, stdout: BinaryIO, stderr):
        self.stdin = stdin
        self.stdout = stdout
        self.stderr = stderr

    def read(self, path: str) -> bytes:
        if path == "-":
            return self.stdin.read()
        try:
            return Path(path).read_bytes()
        except OSError as exc:
            raise ParseError(f"cannot read {path}: {exc.strerror}") from None

    def emit(self, payload: bytes, out: str | None) -> None:
        if out:
            Path(out).write_bytes(payload)
        else:
            self.stdout.write(payload)
            self.stdout.flush()

    def say(self, line: str) -> None:
        print(line, file=self.stderr)


def _load_graph(ctx: _Context, args) -> UnipartiteGraph | BipartiteGraph:
    return read_graph(ctx.read(args.input), args.input_format)


def _load_unipartite(ctx: _Context, args) -> UnipartiteGraph:
    g = _load_graph(ctx, args)
    if isinstance(g, BipartiteGraph):
        raise ParseError("expected a unipartite graph; run 'project' first")
    return g


def cmd_ingest(ctx: _Context, args) -> int:
    try:
        config = IngestConfig(
            actor_column=args.actor_col,
            resource_column=args.resource_col,
            split_delimiter=args.split_delim,
            filter_values=frozenset(args.filter) if args.filter else DEFAULT_FILTERS,
        )
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    batch = parse_csv(ctx.read(args.input), config, source=args.input)
    g = batch_to_bipartite(batch)
    ctx.emit(write_graph(g, args.format), args.out)
    ctx.say(
        f"actors={len(g.actors)} resources={len(g.resources)} edges={g.m} "
        f"dropped_rows={batch.dropped_rows} deduped_rows={batch.deduped_rows}"
    )
    return EXIT_OK


def cmd_project(ctx: _Context, args) -> int:
    g = _load_graph(ctx, args)
    if not isinstance(g, BipartiteGraph):
        raise ParseError("expected a bipartite graph (JSON with \"kind\": \"bipartite\")")
    p = project(g, Side(args.side))
    ctx.emit(write_graph(p, args.format), args.out)
    ctx.say(f"vertices={p.n} edges={p.m} components={connected_components(p).count}")
    return EXIT_OK


def _select_components(g: UnipartiteGraph, which: str) -> list[tuple[int, UnipartiteGraph]]:
    if g.n == 0:
        raise GraphError("empty graph: nothing to measure")
    comps = connected_components(g)
    if which == "largest":
        return [(0, largest_component(g))]
    if which == "all":
        return [(c, induced_subgraph(g, comps.members(c))) for c in range(comps.count)]
    try:
        index = int(which)
    except ValueError:
        raise UsageError(f"--component must be largest, all or an index, got {which!r}") from None
    if not 0 <= index < comps.count:
        raise UsageError(f"component index {index} out of range (graph has {comps.count})")
    return [(index, induced_subgraph(g, comps.members(index)))]


def cmd_metrics(ctx: _Context, args) -> int:
    g = _load_unipartite(ctx, args)
    selected = _select_components(g, args.component)
    reports = [(c, metrics.aggregate_report(sub)) for c, sub in selected]
    options = dict(
        closeness=metrics.Variant(args.closeness),
        betweenness=metrics.Variant(args.betweenness),
        extended=args.extended,
    )
    multi = args.component == "all"
    if args.format == "json":
        doc = {
            "component": args.component,
            "closeness": args.closeness,
            "betweenness": args.betweenness,
            "reports": [{"component": c, **metrics_to_dict(r)} for c, r in reports],
        }
        payload = dumps_json(doc)
    else:
        header = list(TABLE_COLUMNS) + (list(EXTENDED_COLUMNS) if args.extended else [])
        rows = [["component", *header] if multi else header]
        for c, r in reports:
            for row in metrics_rows(r, **options):
                rows.append([str(c), *row] if multi else row)
        payload = csv_bytes(rows)
    ctx.emit(payload, args.out)
    for c, r in reports:
        prefix = f"component={c} " if multi else ""
        ctx.say(prefix + r.aggregates.summary())
    return EXIT_OK


def cmd_communities(ctx: _Context, args) -> int:
    g = _load_unipartite(ctx, args)
    if g.m == 0:
        raise GraphError("edgeless graph: community detection needs at least one edge")
    if args.algorithm == "walktrap":
        partition = walktrap(g, args.walk_length)
    else:
        partition = ALGORITHMS[args.algorithm](g)
    if not math.isclose(partition.modularity, modularity(g, partition.assignments), abs_tol=1e-12):
        raise InvariantError("partition modularity does not match recomputation")
    report = PartitionReport(g.labels, partition, args.algorithm, args.min_size)
    ctx.emit(write_report(report, args.format), args.out)
    ctx.say(
        f"communities={partition.count} listed={len(report.listed())} "
        f"modularity={partition.modularity:.4f}"
    )
    return EXIT_OK


def cmd_cliques(ctx: _Context, args) -> int:
    g = _load_unipartite(ctx, args)
    report = clique_report(g, args.min_k)
    ctx.emit(write_report(report, args.format), args.out)
    ctx.say(
        f"total={report.total} max_clique_size={report.max_clique_size} "
        f"max_clique_count={report.max_clique_count}"
    )
    return EXIT_OK


def cmd_ego(ctx: _Context, args) -> int:
    g = _load_unipartite(ctx, args)
    if args.vertex not in g:
        raise UsageError(f"unknown vertex: {args.vertex}")
    ego = ego_network(g, g.index(args.vertex), Radius(args.radius))
    sub = ego.subgraph
    if args.min_edges is not None and sub.m <= args.min_edges:
        ctx.emit(b"", args.out)
        ctx.say("skipped")
        return EXIT_OK
    ctx.emit(write_graph(sub, args.format), args.out)
    ctx.say(f"vertices={sub.n} edges={sub.m}")
    return EXIT_OK


def cmd_export(ctx: _Context, args) -> int:
    g = _load_graph(ctx, args)
    ctx.emit(write_graph(g, args.format), args.out)
    if isinstance(g, BipartiteGraph):
        ctx.say(f"actors={len(g.actors)} resources={len(g.resources)} edges={g.m}")
    else:
        ctx.say(f"vertices={g.n} edges={g.m}")
    return EXIT_OK


GRAPH_FORMATS = [f.value for f in GraphFormat]


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="hidden-ties", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def command(name, func, help_text, graph_input=True):
        p = sub.add_parser(name, help=help_text)
        p.set_defaults(func=func)
        p.add_argument("--input", required=True, help="input path, or - for stdin")
        p.add_argument("--out", help="output path (default: stdout)")
        if graph_input:
            p.add_argument("--input-format", choices=["json", "csv"],
                           help="input graph format (default: sniffed)")
        return p

    p = command("ingest", cmd_ingest, "CSV records -> bipartite graph", graph_input=False)
    p.add_argument("--actor-col", required=True)
    p.add_argument("--resource-col", required=True)
    p.add_argument("--split-delim", help="split resource cells on this character")
    p.add_argument("--filter", action="append", metavar="VALUE",
                   help="drop rows whose actor or resource equals VALUE (repeatable; "
                        "replaces the defaults Missing, Unknown, N/A)")
    p.add_argument("--format", choices=GRAPH_FORMATS, default="json")

    p = command("project", cmd_project, "bipartite graph -> one-mode projection")
    p.add_argument("--side", choices=[s.value for s in Side], required=True)
    p.add_argument("--format", choices=GRAPH_FORMATS, default="json")

    p = command("metrics", cmd_metrics, "centralities and aggregates per component")
    p.add_argument("--component", default="largest", help="largest, all, or a component index")
    p.add_argument("--closeness", choices=["raw", "normalized"], default="raw")
    p.add_argument("--betweenness", choices=["raw", "normalized"], default="raw")
    p.add_argument("--extended", action="store_true",
                   help="add degree centrality, normalized and clustering columns to CSV")
    p.add_argument("--format", choices=["json", "csv"], default="json")

    p = command("communities", cmd_communities, "community detection")
    p.add_argument("--algorithm", choices=sorted(ALGORITHMS), required=True)
    p.add_argument("--walk-length", type=int, default=4, help="walktrap walk length")
    p.add_argument("--min-size", type=int, default=3, help="smallest community to list")
    p.add_argument("--format", choices=["json", "csv"], default="json")

    p = command("cliques", cmd_cliques, "k-clique counts and maximal cliques")
    p.add_argument("--min-k", type=int, default=3)
    p.add_argument("--format", choices=["json", "csv"], default="json")

    p = command("ego", cmd_ego, "egocentric network of one vertex")
    p.add_argument("--vertex", required=True, help="vertex label")
    p.add_argument("--radius", choices=["1", "1.5"], default="1.5")
    p.add_argument("--min-edges", type=int,
                   help="skip (empty output) unless the ego network has more than this many edges")
    p.add_argument("--format", choices=GRAPH_FORMATS, default="json")

    p = command("export", cmd_export, "convert a graph file to another format")
    p.add_argument("--format", choices=GRAPH_FORMATS, default="graphml")
    return parser


def main(argv: Sequence[str] | None = None, stdin=None, stdout=None, stderr=None) -> int:
    stdin = stdin if stdin is not None else sys.stdin.buffer
    stdout = stdout if stdout is not None else sys.stdout.buffer
    stderr = stderr if stderr is not None else sys.stderr
    ctx = _Context(stdin, stdout, stderr)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if getattr(args, "walk_length", 1) < 1:
            raise UsageError("--walk-length must be >= 1")
        if getattr(args, "min_k", 3) < 3:
            raise UsageError("--min-k must be >= 3")
        return args.func(ctx, args)
    except SystemExit as exc:  # --help
        return exc.code if isinstance(exc.code, int) else EXIT_OK
    except UsageError as exc:
        ctx.say(f"error: {exc}")
        return EXIT_USAGE
    except (ParseError, GraphError, UnicodeDecodeError) as exc:
        ctx.say(f"error: {exc}")
        return EXIT_INPUT
    except ValueError as exc:
        # bad HIDDEN_TIES_THREADS and similar environment misuse
        ctx.say(f"error: {exc}")
        return EXIT_USAGE
    except Exception as exc:  # noqa: BLE001 - anything else is a bug
        log.exception("internal error")
        ctx.say(f"internal error: {exc}")
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
