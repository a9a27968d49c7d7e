"""Small hand-built graphs used by the tests, the docs and the CLI."""

from __future__ import annotations

from .graph import ReebGraph

__all__ = ["EXAMPLE_EDGES", "double_edge", "example_graph", "monotone_path", "single_edge"]

EXAMPLE_EDGES = (
    ("A", "C"), ("B", "C"), ("C", "D"), ("D", "F"), ("D", "G"), ("E", "G"),
    ("F", "I"), ("F", "J"), ("G", "L"), ("H", "K"), ("I", "J"), ("I", "M"),
    ("J", "K"), ("K", "L"), ("L", "M"), ("M", "N"), ("N", "O"), ("N", "P"),
)


def example_graph() -> ReebGraph:
    """Sixteen-node conditioned graph A..P (f = 0..15) with three independent cycles."""
    return ReebGraph({chr(ord("A") + i): float(i) for i in range(16)}, EXAMPLE_EDGES)


def single_edge() -> ReebGraph:
    return ReebGraph({"A": 0.0, "B": 1.0}, [("A", "B")])


def monotone_path(n: int = 3) -> ReebGraph:
    ids = [f"p{i}" for i in range(n)]
    return ReebGraph({v: float(i) for i, v in enumerate(ids)}, list(zip(ids, ids[1:])))


def double_edge() -> ReebGraph:
    """Two nodes joined by two parallel edges (unconditioned)."""
    return ReebGraph({"A": 0.0, "B": 1.0}, [("A", "B"), ("A", "B")])
