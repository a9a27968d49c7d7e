"""Reeb graph data model, node ordering and classification."""

from __future__ import annotations

import enum
import hashlib
import math
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Hashable, Iterable, Mapping, NamedTuple, Union

__all__ = [
    "CriticalKind",
    "DegreeSignature",
    "GraphError",
    "ReebGraph",
    "SweepView",
    "Violation",
    "classify_node",
    "connected_components",
    "cycle_rank",
    "split_components",
    "validate_conditioned",
]

NodeId = Hashable
Tie = Union[int, Fraction]


class GraphError(ValueError):
    """Raised for malformed graphs or unknown node ids."""


class CriticalKind(enum.Enum):
    MINIMUM = "minimum"
    MAXIMUM = "maximum"
    UP_FORK = "up-fork"
    DOWN_FORK = "down-fork"
    REGULAR = "regular"
    DEGENERATE = "degenerate"

    @property
    def is_critical(self) -> bool:
        return self not in (CriticalKind.REGULAR, CriticalKind.DEGENERATE)

    def mirrored(self) -> "CriticalKind":
        return _MIRROR.get(self, self)


_MIRROR = {
    CriticalKind.MINIMUM: CriticalKind.MAXIMUM,
    CriticalKind.MAXIMUM: CriticalKind.MINIMUM,
    CriticalKind.UP_FORK: CriticalKind.DOWN_FORK,
    CriticalKind.DOWN_FORK: CriticalKind.UP_FORK,
}


class DegreeSignature(NamedTuple):
    down: int
    up: int

    @property
    def kind(self) -> CriticalKind:
        return _KIND_BY_SIGNATURE.get((self.down, self.up), CriticalKind.DEGENERATE)


_KIND_BY_SIGNATURE = {
    (0, 1): CriticalKind.MINIMUM,
    (1, 0): CriticalKind.MAXIMUM,
    (1, 2): CriticalKind.UP_FORK,
    (2, 1): CriticalKind.DOWN_FORK,
    (1, 1): CriticalKind.REGULAR,
}


class ReebGraph:
    """Undirected multigraph whose nodes carry a finite scalar value.

    Nodes are compared by the total order ``(value, tie)``. Unless given
    explicitly, the tie of a node is its position in ``nodes``, so equal
    values are resolved by insertion order (symbolic perturbation).

    Parameters
    ----------
    nodes : mapping or iterable of (id, value) pairs
    edges : iterable of (id, id) pairs; parallel edges are kept, self-loops
        are rejected.
    ties : optional mapping id -> int or Fraction overriding the default
        tie-break ordinal.
    synthetic : ids of nodes inserted by conditioning.

    Instances are immutable.
    """

    __slots__ = ("ids", "values", "ties", "edges", "index", "synthetic", "__dict__")

    def __init__(
        self,
        nodes: Union[Mapping[NodeId, float], Iterable[tuple[NodeId, float]]],
        edges: Iterable[tuple[NodeId, NodeId]] = (),
        *,
        ties: Mapping[NodeId, Tie] | None = None,
        synthetic: Iterable[NodeId] = (),
    ):
        items = list(nodes.items()) if isinstance(nodes, Mapping) else list(nodes)
        ids = []
        values = []
        index: dict = {}
        for pos, (node, value) in enumerate(items):
            if node in index:
                raise GraphError(f"duplicate node id {node!r}")
            value = float(value)
            if not math.isfinite(value):
                raise GraphError(f"node {node!r} has non-finite value {value!r}")
            index[node] = pos
            ids.append(node)
            values.append(value)
        if ties is None:
            tie_list: list[Tie] = list(range(len(ids)))
        else:
            tie_list = [ties[node] for node in ids]
        edge_list = []
        for a, b in edges:
            if a not in index or b not in index:
                missing = a if a not in index else b
                raise GraphError(f"edge ({a!r}, {b!r}) references unknown node {missing!r}")
            if a == b:
                raise GraphError(f"self-loop at node {a!r}")
            edge_list.append((index[a], index[b]))
        synthetic = frozenset(synthetic)
        unknown = synthetic - index.keys()
        if unknown:
            raise GraphError(f"synthetic ids not in graph: {sorted(map(repr, unknown))}")
        self.ids: tuple = tuple(ids)
        self.values: tuple[float, ...] = tuple(values)
        self.ties: tuple[Tie, ...] = tuple(tie_list)
        self.edges: tuple[tuple[int, int], ...] = tuple(edge_list)
        self.index: dict = index
        self.synthetic: frozenset = synthetic

    # ------------------------------------------------------------------
    # basic queries

    def __len__(self) -> int:
        return len(self.ids)

    @property
    def n_nodes(self) -> int:
        return len(self.ids)

    @property
    def n_edges(self) -> int:
        return len(self.edges)

    def __contains__(self, node) -> bool:
        return node in self.index

    def __repr__(self) -> str:
        return f"ReebGraph(n_nodes={self.n_nodes}, n_edges={self.n_edges})"

    def value(self, node: NodeId) -> float:
        return self.values[self._pos(node)]

    def key(self, node: NodeId) -> tuple[float, Tie]:
        """Total-order key of ``node``."""
        pos = self._pos(node)
        return (self.values[pos], self.ties[pos])

    def edge_ids(self) -> list[tuple[NodeId, NodeId]]:
        return [(self.ids[a], self.ids[b]) for a, b in self.edges]

    def neighbors(self, node: NodeId) -> list[NodeId]:
        pos = self._pos(node)
        return [self.ids[other] for other, _ in self._incidence[pos]]

    def _pos(self, node: NodeId) -> int:
        try:
            return self.index[node]
        except KeyError:
            raise GraphError(f"unknown node id {node!r}") from None

    @cached_property
    def _incidence(self) -> list[list[tuple[int, int]]]:
        inc: list[list[tuple[int, int]]] = [[] for _ in self.ids]
        for e, (a, b) in enumerate(self.edges):
            inc[a].append((b, e))
            inc[b].append((a, e))
        return inc

    @cached_property
    def order(self) -> tuple[int, ...]:
        """Node positions sorted by the total order."""
        return tuple(sorted(range(len(self.ids)), key=lambda p: (self.values[p], self.ties[p])))

    @cached_property
    def rank(self) -> tuple[int, ...]:
        """``rank[pos]`` is the position of node ``pos`` in :attr:`order`."""
        rank = [0] * len(self.ids)
        for r, p in enumerate(self.order):
            rank[p] = r
        return tuple(rank)

    def degree_signature(self, node: NodeId) -> DegreeSignature:
        pos = self._pos(node)
        rank = self.rank
        down = sum(1 for other, _ in self._incidence[pos] if rank[other] < rank[pos])
        return DegreeSignature(down, len(self._incidence[pos]) - down)

    def kind(self, node: NodeId) -> CriticalKind:
        return self.degree_signature(node).kind

    @cached_property
    def kinds(self) -> dict:
        """Mapping id -> CriticalKind for every node."""
        view = self.view()
        return {self.ids[view.pos[r]]: view.kind[r] for r in range(view.n)}

    def count_kinds(self) -> Counter:
        return Counter(self.kinds.values())

    # ------------------------------------------------------------------
    # derived graphs

    def negated(self) -> "ReebGraph":
        """Graph with ``-f`` and the reversed total order."""
        return ReebGraph(
            list(zip(self.ids, (-v for v in self.values))),
            self.edge_ids(),
            ties={node: -t for node, t in zip(self.ids, self.ties)},
            synthetic=self.synthetic,
        )

    def subgraph(self, nodes: Iterable[NodeId]) -> "ReebGraph":
        keep = set(nodes)
        return ReebGraph(
            [(n, v) for n, v in zip(self.ids, self.values) if n in keep],
            [(a, b) for a, b in self.edge_ids() if a in keep and b in keep],
            ties={n: t for n, t in zip(self.ids, self.ties) if n in keep},
            synthetic=self.synthetic & keep,
        )

    def ordered_ids(self) -> list[NodeId]:
        return [self.ids[p] for p in self.order]

    # ------------------------------------------------------------------
    # comparison and hashing

    def canonical(self) -> tuple:
        """Order-, value- and edge-multiset description used for equality."""
        order = self.ordered_ids()
        values = tuple(self.values[p] for p in self.order)
        edges = sorted(
            tuple(sorted((self.ids[a], self.ids[b]), key=repr)) for a, b in self.edges
        )
        return (tuple(order), values, tuple(map(tuple, edges)), tuple(sorted(self.synthetic, key=repr)))

    def __eq__(self, other) -> bool:
        if not isinstance(other, ReebGraph):
            return NotImplemented
        return self.canonical() == other.canonical()

    def __hash__(self) -> int:
        return hash(self.canonical())

    def fingerprint(self) -> str:
        """Short sha256 digest of the canonical form."""
        return hashlib.sha256(repr(self.canonical()).encode()).hexdigest()[:16]

    def view(self) -> "SweepView":
        return self._view

    @cached_property
    def _view(self) -> "SweepView":
        return SweepView(self)


class SweepView:
    """Rank-indexed adjacency of a graph, shared by the pairing engines.

    Node ``r`` of the view is the node of rank ``r``; ``down[r]`` and
    ``up[r]`` list ``(neighbor_rank, edge_index)`` sorted by neighbor rank.
    """

    __slots__ = ("graph", "n", "pos", "down", "up", "kind", "edge_ends")

    def __init__(self, graph: ReebGraph):
        self.graph = graph
        rank = graph.rank
        self.n = n = len(graph.ids)
        self.pos = graph.order
        down: list[list[tuple[int, int]]] = [[] for _ in range(n)]
        up: list[list[tuple[int, int]]] = [[] for _ in range(n)]
        ends = []
        for e, (a, b) in enumerate(graph.edges):
            ra, rb = rank[a], rank[b]
            if ra > rb:
                ra, rb = rb, ra
            ends.append((ra, rb))
            up[ra].append((rb, e))
            down[rb].append((ra, e))
        for lst in down:
            lst.sort()
        for lst in up:
            lst.sort()
        self.down = down
        self.up = up
        self.edge_ends = ends
        self.kind = [DegreeSignature(len(down[r]), len(up[r])).kind for r in range(n)]

    def node_id(self, r: int):
        return self.graph.ids[self.pos[r]]

    def rank_of(self, node) -> int:
        return self.graph.rank[self.graph._pos(node)]


def classify_node(graph: ReebGraph, node: NodeId) -> CriticalKind:
    """Classify ``node`` from its up/down degrees under the total order."""
    return graph.kind(node)


def connected_components(graph: ReebGraph) -> list[list[NodeId]]:
    """Node ids of each connected component, in order of first appearance."""
    seen = [False] * graph.n_nodes
    inc = graph._incidence
    comps = []
    for start in range(graph.n_nodes):
        if seen[start]:
            continue
        seen[start] = True
        stack = [start]
        comp = []
        while stack:
            p = stack.pop()
            comp.append(p)
            for q, _ in inc[p]:
                if not seen[q]:
                    seen[q] = True
                    stack.append(q)
        comps.append([graph.ids[p] for p in sorted(comp)])
    return comps


def split_components(graph: ReebGraph) -> list[ReebGraph]:
    return [graph.subgraph(comp) for comp in connected_components(graph)]


def cycle_rank(graph: ReebGraph) -> int:
    """First Betti number ``E - V + C`` (``E - V + 1`` when connected)."""
    return graph.n_edges - graph.n_nodes + len(connected_components(graph))


@dataclass(frozen=True)
class Violation:
    node: NodeId | None
    rule: str

    def __str__(self) -> str:
        where = "graph" if self.node is None else f"node {self.node!r}"
        return f"{where}: {self.rule}"


def validate_conditioned(graph: ReebGraph) -> list[Violation]:
    """Return the ways ``graph`` fails to be in canonical form.

    An empty list means every node is a minimum, maximum, binary up-fork or
    binary down-fork, the graph is connected and all order keys differ.
    """
    if graph.n_nodes == 0:
        return [Violation(None, "empty graph")]
    out = []
    view = graph.view()
    for r in range(view.n):
        kind = view.kind[r]
        if kind is CriticalKind.REGULAR:
            out.append(Violation(view.node_id(r), "regular node (1:1)"))
        elif kind is CriticalKind.DEGENERATE:
            sig = (len(view.down[r]), len(view.up[r]))
            out.append(Violation(view.node_id(r), f"degenerate node (down:up = {sig[0]}:{sig[1]})"))
    keys = Counter(zip(graph.values, graph.ties))
    for p, k in enumerate(zip(graph.values, graph.ties)):
        if keys[k] > 1:
            out.append(Violation(graph.ids[p], "order key not unique"))
    if len(connected_components(graph)) > 1:
        out.append(Violation(None, "disconnected"))
    return out
