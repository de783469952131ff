"""Graph serialisation: GraphML, DOT, JSON and CSV edge lists.

Writers are byte-deterministic. Vertices are emitted in label order, edges
in ``(min label, max label)`` order, lines end in ``\\n`` and text is UTF-8.
JSON vertices keep their original ids, so a JSON round trip reproduces the
graph exactly, ids included.

CSV edge lists have the header ``source,target,weight``. A row whose target
and weight are empty declares an isolated vertex, so isolated vertices
survive a round trip too.
"""
from __future__ import annotations

import csv
import enum
import io
import json
from xml.sax.saxutils import escape

from hidden_ties.errors import GraphError, ParseError
from hidden_ties.graph import BipartiteGraph, UnipartiteGraph

Graph = UnipartiteGraph | BipartiteGraph

ACTOR, RESOURCE = "actor", "resource"


class GraphFormat(str, enum.Enum):
    GRAPHML = "graphml"
    DOT = "dot"
    JSON = "json"
    CSV_EDGELIST = "csv"


def _vertex_rows(g: Graph) -> list[tuple[int, str, str | None]]:
    """``(global id, label, part)`` in output order."""
    if isinstance(g, BipartiteGraph):
        k = len(g.actors)
        rows = [(i, lab, ACTOR) for i, lab in enumerate(g.actors)]
        rows += [(k + i, lab, RESOURCE) for i, lab in enumerate(g.resources)]
        return sorted(rows, key=lambda r: (r[1], r[2] != ACTOR))
    return sorted(((i, lab, None) for i, lab in enumerate(g.labels)), key=lambda r: r[1])


def _edge_rows(g: Graph) -> list[tuple[int, int, str, str, int]]:
    """``(source id, target id, source label, target label, weight)`` in output order.

    Bipartite edges run actor -> resource; unipartite edges run from the
    smaller label to the larger.
    """
    rows = []
    if isinstance(g, BipartiteGraph):
        k = len(g.actors)
        for a, r, w in g.edges:
            rows.append((a, k + r, g.actors[a], g.resources[r], w))
    else:
        for u, v, w in g.edges:
            if g.labels[v] < g.labels[u]:
                u, v = v, u
            rows.append((u, v, g.labels[u], g.labels[v], w))
    return sorted(rows, key=lambda e: (min(e[2], e[3]), max(e[2], e[3]), e[2]))


def _write_json(g: Graph) -> str:
    kind = "bipartite" if isinstance(g, BipartiteGraph) else "unipartite"
    vertices = []
    for i, label, part in _vertex_rows(g):
        entry = {"id": i, "label": label}
        if part is not None:
            entry["part"] = part
        vertices.append(entry)
    edges = [{"source": s, "target": t, "weight": w} for s, t, _, _, w in _edge_rows(g)]
    doc = {"kind": kind, "vertices": vertices, "edges": edges}
    return json.dumps(doc, ensure_ascii=False, indent=2) + "\n"


def _write_csv(g: Graph) -> str:
    buf = io.StringIO()
    out = csv.writer(buf, lineterminator="\n")
    out.writerow(["source", "target", "weight"])
    touched: set[int] = set()
    for s, t, ls, lt, w in _edge_rows(g):
        out.writerow([ls, lt, w])
        touched.update((s, t))
    for i, label, _ in _vertex_rows(g):
        if i not in touched:
            out.writerow([label, "", ""])
    return buf.getvalue()


def _write_graphml(g: Graph) -> str:
    bipartite = isinstance(g, BipartiteGraph)
    lines = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        '<graphml xmlns="http://graphml.graphdrawing.org/xmlns">',
        '  <key id="label" for="node" attr.name="label" attr.type="string"/>',
    ]
    if bipartite:
        lines.append('  <key id="part" for="node" attr.name="part" attr.type="string"/>')
    lines += [
        '  <key id="weight" for="edge" attr.name="weight" attr.type="int"/>',
        '  <graph id="G" edgedefault="undirected">',
    ]
    for i, label, part in _vertex_rows(g):
        data = f'<data key="label">{escape(label)}</data>'
        if part is not None:
            data += f'<data key="part">{part}</data>'
        lines.append(f'    <node id="n{i}">{data}</node>')
    for s, t, _, _, w in _edge_rows(g):
        lines.append(
            f'    <edge source="n{s}" target="n{t}"><data key="weight">{w}</data></edge>'
        )
    lines += ["  </graph>", "</graphml>"]
    return "\n".join(lines) + "\n"


def _dot_quote(text: str) -> str:
    return '"' + text.replace("\\", "\\\\").replace('"', '\\"') + '"'


def _write_dot(g: Graph) -> str:
    lines = ["graph G {"]
    for i, label, part in _vertex_rows(g):
        attrs = f"label={_dot_quote(label)}"
        if part is not None:
            attrs += f", part={_dot_quote(part)}"
        lines.append(f"  n{i} [{attrs}];")
    for s, t, _, _, w in _edge_rows(g):
        lines.append(f"  n{s} -- n{t} [weight={w}];")
    lines.append("}")
    return "\n".join(lines) + "\n"


_WRITERS = {
    GraphFormat.JSON: _write_json,
    GraphFormat.CSV_EDGELIST: _write_csv,
    GraphFormat.GRAPHML: _write_graphml,
    GraphFormat.DOT: _write_dot,
}


def write_graph(g: Graph, fmt: GraphFormat | str = GraphFormat.JSON) -> bytes:
    return _WRITERS[GraphFormat(fmt)](g).encode("utf-8")


def _expect(cond: bool, message: str, path: str) -> None:
    if not cond:
        raise ParseError(message, path)


def _is_int(x) -> bool:
    return isinstance(x, int) and not isinstance(x, bool)


def _read_json(text: str) -> Graph:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc.msg}", exc.lineno) from None
    _expect(isinstance(doc, dict), "expected an object", "/")
    kind = doc.get("kind")
    _expect(kind in ("bipartite", "unipartite"), f"unknown kind {kind!r}", "/kind")
    vertices = doc.get("vertices")
    edges = doc.get("edges")
    _expect(isinstance(vertices, list), "expected an array", "/vertices")
    _expect(isinstance(edges, list), "expected an array", "/edges")

    parts: dict[int, tuple[str, str | None]] = {}
    for k, vx in enumerate(vertices):
        path = f"/vertices/{k}"
        _expect(isinstance(vx, dict), "expected an object", path)
        _expect(_is_int(vx.get("id")), "id must be an integer", f"{path}/id")
        label = vx.get("label")
        _expect(isinstance(label, str) and label != "", "label must be a non-empty string", f"{path}/label")
        part = vx.get("part")
        if kind == "bipartite":
            _expect(part in (ACTOR, RESOURCE), "part must be 'actor' or 'resource'", f"{path}/part")
        _expect(vx["id"] not in parts, f"duplicate vertex id {vx['id']}", f"{path}/id")
        parts[vx["id"]] = (label, part)

    triples = []
    for k, e in enumerate(edges):
        path = f"/edges/{k}"
        _expect(isinstance(e, dict), "expected an object", path)
        for key in ("source", "target"):
            _expect(_is_int(e.get(key)) and e[key] in parts, "unknown vertex id", f"{path}/{key}")
        w = e.get("weight", 1)
        _expect(_is_int(w) and w >= 1, "weight must be a positive integer", f"{path}/weight")
        triples.append((e["source"], e["target"], w, path))

    if kind == "unipartite":
        order = sorted(parts)
        local = {gid: i for i, gid in enumerate(order)}
        labels = [parts[gid][0] for gid in order]
        built = []
        for s, t, w, path in triples:
            if s == t:
                raise ParseError("self-loop rejected", path)
            built.append((local[s], local[t], w))
        return _checked(lambda: UnipartiteGraph(tuple(labels), tuple(built)), "/edges")
    actors = sorted(gid for gid, (_, p) in parts.items() if p == ACTOR)
    resources = sorted(gid for gid, (_, p) in parts.items() if p == RESOURCE)
    a_local = {gid: i for i, gid in enumerate(actors)}
    r_local = {gid: i for i, gid in enumerate(resources)}
    built = []
    for s, t, w, path in triples:
        if s in r_local and t in a_local:
            s, t = t, s
        _expect(s in a_local and t in r_local, "edge must join an actor to a resource", path)
        built.append((a_local[s], r_local[t], w))
    return _checked(
        lambda: BipartiteGraph(
            tuple(parts[gid][0] for gid in actors),
            tuple(parts[gid][0] for gid in resources),
            tuple(built),
        ),
        "/",
    )


def _checked(build, path: str):
    try:
        return build()
    except GraphError as exc:
        raise ParseError(str(exc), path) from None


def _read_csv(text: str) -> UnipartiteGraph:
    reader = csv.reader(io.StringIO(text, newline=""))
    try:
        header = next(reader)
    except StopIteration:
        raise ParseError("input is empty; expected header source,target,weight", 1) from None
    if [h.strip() for h in header] != ["source", "target", "weight"]:
        raise ParseError("header must be source,target,weight", 1)
    index: dict[str, int] = {}
    seen: dict[tuple[int, int], int] = {}
    edges = []
    for fields in reader:
        line = reader.line_num
        if not fields:
            continue
        if len(fields) != 3:
            raise ParseError(f"expected 3 fields, found {len(fields)}", line)
        src, dst, weight = fields
        if not src:
            raise ParseError("empty source label", line)
        u = index.setdefault(src, len(index))
        if not dst and not weight:
            continue
        if not dst:
            raise ParseError("empty target label", line)
        try:
            w = int(weight) if weight else 1
        except ValueError:
            raise ParseError(f"weight must be an integer, got {weight!r}", line) from None
        if w < 1:
            raise ParseError(f"weight must be positive, got {w}", line)
        v = index.setdefault(dst, len(index))
        if u == v:
            raise ParseError("self-loop rejected", line)
        key = (min(u, v), max(u, v))
        if key in seen:
            raise ParseError(f"parallel edge rejected (first seen on line {seen[key]})", line)
        seen[key] = line
        edges.append((u, v, w))
    return UnipartiteGraph(tuple(index), tuple(edges))


def read_graph(data: bytes | str, fmt: GraphFormat | str | None = None) -> Graph:
    """Parse a JSON document or CSV edge list.

    With ``fmt=None`` the format is sniffed: a leading ``{`` means JSON.
    """
    text = data.decode("utf-8-sig") if isinstance(data, bytes) else data
    if fmt is None:
        fmt = GraphFormat.JSON if text.lstrip().startswith("{") else GraphFormat.CSV_EDGELIST
    fmt = GraphFormat(fmt)
    if fmt is GraphFormat.JSON:
        return _read_json(text)
    if fmt is GraphFormat.CSV_EDGELIST:
        return _read_csv(text)
    raise ValueError(f"reading {fmt.value} is not supported; use json or csv")
