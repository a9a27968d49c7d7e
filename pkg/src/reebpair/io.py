"""JSON graph files and CSV diagram files.

Graph files::

    {"format": "reeb-graph", "version": 1,
     "nodes": [{"id": "A", "f": 0.0}, ...],
     "edges": [["A", "C"], ...]}

Ids are strings or integers. Equal values are ordered by position in the
node list, and the writer lists nodes in total order, so a graph survives
a write/read round trip with its order intact. Nodes added by conditioning
carry ``"synthetic": true``.

Diagram files are CSV with the header in :data:`DIAGRAM_HEADER`; floats are
written with ``repr`` so they round-trip exactly.
"""

from __future__ import annotations

import csv
import io
import json
import math
from pathlib import Path
from typing import IO, Union

from .diagram import PairClass, PersistenceDiagram, PersistencePair
from .graph import GraphError, ReebGraph

__all__ = [
    "DIAGRAM_HEADER",
    "FORMAT_NAME",
    "FORMAT_VERSION",
    "GraphFileError",
    "diagram_to_csv",
    "graph_from_dict",
    "graph_to_dict",
    "graph_to_json",
    "read_diagram",
    "read_graph",
    "write_diagram",
    "write_graph",
]

FORMAT_NAME = "reeb-graph"
FORMAT_VERSION = 1
DIAGRAM_HEADER = ("class", "birth_id", "death_id", "birth_f", "death_f", "synthetic", "global")

PathLike = Union[str, Path]


class GraphFileError(GraphError):
    """A graph or diagram file could not be parsed."""


def graph_to_dict(graph: ReebGraph) -> dict:
    nodes = []
    for node in graph.ordered_ids():
        entry = {"id": node, "f": graph.value(node)}
        if node in graph.synthetic:
            entry["synthetic"] = True
        nodes.append(entry)
    return {
        "format": FORMAT_NAME,
        "version": FORMAT_VERSION,
        "nodes": nodes,
        "edges": [[a, b] for a, b in graph.edge_ids()],
    }


def graph_to_json(graph: ReebGraph) -> str:
    return json.dumps(graph_to_dict(graph), indent=1) + "\n"


def _check_id(value, where: str):
    if isinstance(value, bool) or not isinstance(value, (str, int)):
        raise GraphFileError(f"{where}: node id must be a string or integer, got {value!r}")
    return value


def graph_from_dict(doc) -> ReebGraph:
    """Validate a parsed graph document and build the graph."""
    if not isinstance(doc, dict):
        raise GraphFileError("graph document must be a JSON object")
    if doc.get("format") != FORMAT_NAME:
        raise GraphFileError(f"expected format {FORMAT_NAME!r}, got {doc.get('format')!r}")
    if doc.get("version") != FORMAT_VERSION:
        raise GraphFileError(f"unsupported version {doc.get('version')!r}")
    raw_nodes, raw_edges = doc.get("nodes"), doc.get("edges", [])
    if not isinstance(raw_nodes, list) or not isinstance(raw_edges, list):
        raise GraphFileError("'nodes' and 'edges' must be lists")
    nodes, synthetic = [], []
    for i, entry in enumerate(raw_nodes):
        if not isinstance(entry, dict) or "id" not in entry or "f" not in entry:
            raise GraphFileError(f"nodes[{i}]: expected an object with 'id' and 'f'")
        node = _check_id(entry["id"], f"nodes[{i}]")
        f = entry["f"]
        if isinstance(f, bool) or not isinstance(f, (int, float)) or not math.isfinite(f):
            raise GraphFileError(f"nodes[{i}]: 'f' must be a finite number, got {f!r}")
        nodes.append((node, f))
        if entry.get("synthetic", False) is True:
            synthetic.append(node)
    edges = []
    for i, entry in enumerate(raw_edges):
        if not isinstance(entry, list) or len(entry) != 2:
            raise GraphFileError(f"edges[{i}]: expected a pair of ids")
        edges.append((_check_id(entry[0], f"edges[{i}]"), _check_id(entry[1], f"edges[{i}]")))
    try:
        return ReebGraph(nodes, edges, synthetic=synthetic)
    except GraphFileError:
        raise
    except GraphError as exc:
        raise GraphFileError(str(exc)) from None


def read_graph(source: Union[PathLike, IO[str]]) -> ReebGraph:
    try:
        if hasattr(source, "read"):
            doc = json.load(source)
        else:
            with open(source, encoding="utf-8") as fh:
                doc = json.load(fh)
    except json.JSONDecodeError as exc:
        raise GraphFileError(f"invalid JSON: {exc}") from None
    return graph_from_dict(doc)


def write_graph(graph: ReebGraph, target: Union[PathLike, IO[str]]) -> None:
    text = graph_to_json(graph)
    if hasattr(target, "write"):
        target.write(text)
    else:
        Path(target).write_text(text, encoding="utf-8")


def _flag(value: bool) -> str:
    return "true" if value else "false"


def diagram_to_csv(diagram: PersistenceDiagram) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(DIAGRAM_HEADER)
    for p in diagram:
        writer.writerow([
            p.kind.value, p.birth, p.death, repr(p.birth_value), repr(p.death_value),
            _flag(p.synthetic), _flag(p.is_global),
        ])
    return buf.getvalue()


def write_diagram(diagram: PersistenceDiagram, target: Union[PathLike, IO[str]]) -> None:
    text = diagram_to_csv(diagram)
    if hasattr(target, "write"):
        target.write(text)
    else:
        Path(target).write_text(text, encoding="utf-8")


def _parse_flag(value: str, where: str) -> bool:
    if value not in ("true", "false"):
        raise GraphFileError(f"{where}: expected true/false, got {value!r}")
    return value == "true"


def read_diagram(source: Union[PathLike, IO[str]]) -> PersistenceDiagram:
    """Parse a diagram CSV; node ids come back as strings."""
    if hasattr(source, "read"):
        text = source.read()
    else:
        text = Path(source).read_text(encoding="utf-8")
    rows = list(csv.reader(io.StringIO(text)))
    if not rows or tuple(rows[0]) != DIAGRAM_HEADER:
        raise GraphFileError(f"diagram CSV must start with header {','.join(DIAGRAM_HEADER)}")
    pairs = []
    for lineno, row in enumerate(rows[1:], start=2):
        if not row:
            continue
        if len(row) != len(DIAGRAM_HEADER):
            raise GraphFileError(f"line {lineno}: expected {len(DIAGRAM_HEADER)} fields, got {len(row)}")
        kind, birth, death, bf, df, syn, glob = row
        try:
            pair_class = PairClass(kind)
            birth_value, death_value = float(bf), float(df)
        except ValueError as exc:
            raise GraphFileError(f"line {lineno}: {exc}") from None
        pairs.append(PersistencePair(
            pair_class, birth, death, birth_value, death_value,
            synthetic=_parse_flag(syn, f"line {lineno}"),
            is_global=_parse_flag(glob, f"line {lineno}"),
        ))
    return PersistenceDiagram(tuple(pairs), algorithm="file")
