"""Tabular record ingestion.

Rows are read from header-first CSV. One column names the actor and another
names the resource, or a delimited list of resources (forum listings put
several products in one cell).
"""
from __future__ import annotations

import csv
import io
from dataclasses import dataclass

from hidden_ties.errors import GraphError, ParseError
from hidden_ties.graph import BipartiteGraph, build_bipartite

DEFAULT_FILTERS = frozenset({"Missing", "Unknown", "N/A"})


@dataclass(frozen=True)
class IngestConfig:
    actor_column: str
    resource_column: str
    split_delimiter: str | None = None
    filter_values: frozenset[str] = DEFAULT_FILTERS
    trim_whitespace: bool = True

    def __post_init__(self):
        if self.actor_column == self.resource_column:
            raise ValueError("actor and resource columns must differ")
        if self.split_delimiter is not None and len(self.split_delimiter) != 1:
            raise ValueError(
                f"split delimiter must be a single character, got {self.split_delimiter!r}"
            )
        object.__setattr__(self, "filter_values", frozenset(self.filter_values))


@dataclass(frozen=True)
class Record:
    actor: str
    resources: tuple[str, ...]
    attributes: tuple[tuple[str, str], ...] = ()

    @property
    def attribute_map(self) -> dict[str, str]:
        return dict(self.attributes)


@dataclass(frozen=True)
class RecordBatch:
    rows: tuple[Record, ...]
    source: str = "<bytes>"
    dropped_rows: int = 0
    deduped_rows: int = 0

    def __len__(self) -> int:
        return len(self.rows)

    def pairs(self):
        for row in self.rows:
            for resource in row.resources:
                yield row.actor, resource


def parse_csv(
    data: bytes | str, config: IngestConfig, source: str = "<bytes>"
) -> RecordBatch:
    """Parse CSV into a deduplicated, filtered :class:`RecordBatch`.

    A row is dropped when its actor is empty or its resource list is empty.
    It is also dropped when the actor, the raw resource cell or any split
    token equals a filter value (case-insensitive, whole field). Exact
    duplicate rows then collapse to their first occurrence.
    """
    text = data.decode("utf-8-sig") if isinstance(data, bytes) else data
    reader = csv.reader(io.StringIO(text, newline=""))
    try:
        header = next(reader)
    except StopIteration:
        raise ParseError("input is empty; expected a header line", 1) from None
    except csv.Error as exc:
        raise ParseError(str(exc), 1) from None
    if config.trim_whitespace:
        header = [h.strip() for h in header]
    for col in (config.actor_column, config.resource_column):
        if col not in header:
            raise ParseError(f"missing column {col!r}", 1)
    actor_at = header.index(config.actor_column)
    resource_at = header.index(config.resource_column)
    extra = [(i, h) for i, h in enumerate(header) if i not in (actor_at, resource_at)]
    blocked = {v.strip().casefold() for v in config.filter_values}

    def clean(value: str) -> str:
        return value.strip() if config.trim_whitespace else value

    rows: list[Record] = []
    seen: set[Record] = set()
    dropped = deduped = 0
    while True:
        try:
            fields = next(reader)
        except StopIteration:
            break
        except csv.Error as exc:
            raise ParseError(str(exc), reader.line_num) from None
        if not fields:
            continue
        if len(fields) != len(header):
            raise ParseError(
                f"expected {len(header)} fields, found {len(fields)}", reader.line_num
            )
        actor = clean(fields[actor_at])
        cell = clean(fields[resource_at])
        if config.split_delimiter is None:
            tokens = [cell] if cell else []
        else:
            tokens = [clean(t) for t in cell.split(config.split_delimiter)]
            tokens = [t for t in tokens if t]
        tokens = list(dict.fromkeys(tokens))
        if (
            not actor
            or not tokens
            or actor.casefold() in blocked
            or cell.casefold() in blocked
            or any(t.casefold() in blocked for t in tokens)
        ):
            dropped += 1
            continue
        record = Record(actor, tuple(tokens), tuple((h, clean(fields[i])) for i, h in extra))
        if record in seen:
            deduped += 1
            continue
        seen.add(record)
        rows.append(record)
    return RecordBatch(tuple(rows), source, dropped, deduped)


def batch_to_bipartite(batch: RecordBatch) -> BipartiteGraph:
    """One edge per distinct (actor, resource); weight counts supporting rows."""
    if not batch.rows:
        raise GraphError("empty record set")
    return build_bipartite(batch.pairs())

