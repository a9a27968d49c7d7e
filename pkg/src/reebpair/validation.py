"""Input checking shared by the estimators and the CLI."""

from __future__ import annotations

from collections.abc import Iterable, Mapping

from .graph import ReebGraph, connected_components
from .io import graph_from_dict

__all__ = ["check_connected", "check_graph", "check_graphs", "check_option"]


def check_graph(obj) -> ReebGraph:
    """Return ``obj`` as a :class:`ReebGraph`; graph-file dicts are parsed."""
    if isinstance(obj, ReebGraph):
        return obj
    if isinstance(obj, Mapping):
        return graph_from_dict(dict(obj))
    raise TypeError(f"expected a ReebGraph or a graph-file dict, got {type(obj).__name__}")


def check_graphs(X) -> list[ReebGraph]:
    """Accept one graph or an iterable of graphs; always return a list."""
    if isinstance(X, (ReebGraph, Mapping)):
        return [check_graph(X)]
    if not isinstance(X, Iterable) or isinstance(X, (str, bytes)):
        raise TypeError(f"expected graphs, got {type(X).__name__}")
    return [check_graph(g) for g in X]


def check_connected(graph: ReebGraph) -> ReebGraph:
    n = len(connected_components(graph))
    if n != 1:
        raise ValueError(f"graph has {n} connected components; split it first")
    return graph


def check_option(name: str, value, allowed) -> None:
    if value not in allowed:
        raise ValueError(f"{name} must be one of {sorted(map(str, allowed))}, got {value!r}")
