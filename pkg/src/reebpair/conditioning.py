"""Bring an arbitrary Reeb graph into canonical form.

Canonical form means every node is a minimum, a maximum, a binary up-fork
(down:up = 1:2) or a binary down-fork (2:1). Four corrections get there:

* regular 1:1 nodes are removed and their neighbours joined;
* degenerate extrema (0 up / 2 down, or 2 up / 0 down) get a synthetic
  extremum just beyond them;
* double forks (2:2) are split into a down-fork and an up-fork;
* complex forks (more than two edges on one side) are split into a chain
  of binary forks.

Inserted nodes keep the nominal value of the node they were split from and
are placed immediately above or below it in the total order, by choosing a
tie-break ordinal between the source and its nearest equal-valued neighbour.
"""

from __future__ import annotations

import bisect
from dataclasses import dataclass, field
from fractions import Fraction

from .graph import GraphError, ReebGraph

__all__ = [
    "ConditioningError",
    "ConditioningReport",
    "condition",
    "remove_regular",
    "split_complex_fork",
    "split_degenerate_extremum",
    "split_double_fork",
]


class ConditioningError(GraphError):
    """Raised when a graph has no canonical form (empty, isolated nodes)."""


@dataclass
class ConditioningReport:
    inserted: list = field(default_factory=list)
    removed: list = field(default_factory=list)
    sources: dict = field(default_factory=dict)
    mapping: dict = field(default_factory=dict)

    @property
    def empty(self) -> bool:
        return not self.inserted and not self.removed

    @property
    def inserted_nodes(self) -> frozenset:
        return frozenset(self.inserted)

    @property
    def removed_nodes(self) -> frozenset:
        return frozenset(self.removed)

    def summary(self, limit: int | None = 20) -> str:
        """Counts, then up to ``limit`` inserted and removed ids each (all if None)."""
        lines = [f"inserted {len(self.inserted)} node(s), removed {len(self.removed)} node(s)"]
        for sign, nodes in (("+", self.inserted), ("-", self.removed)):
            shown = nodes if limit is None else nodes[:limit]
            for node in shown:
                extra = f" (from {self.sources[node]})" if sign == "+" else ""
                lines.append(f"  {sign} {node}{extra}")
            if len(shown) < len(nodes):
                lines.append(f"  {sign} ... {len(nodes) - len(shown)} more")
        return "\n".join(lines)


class _Work:
    """Mutable copy of a graph that the correction passes edit in place."""

    def __init__(self, graph: ReebGraph, retain: str = "highest"):
        if retain not in ("highest", "lowest"):
            raise ValueError(f"retain must be 'highest' or 'lowest', got {retain!r}")
        self.retain = retain
        self.vals = dict(zip(graph.ids, graph.values))
        self.ties = dict(zip(graph.ids, graph.ties))
        self.synthetic = set(graph.synthetic)
        self.edges: dict[int, tuple] = {}
        self.next_edge = 0
        self.inc: dict[object, dict[int, object]] = {node: {} for node in graph.ids}
        for a, b in graph.edge_ids():
            self._add_edge(a, b)
        self.by_value: dict[float, list] = {}
        for node, v in self.vals.items():
            self.by_value.setdefault(v, []).append(self.ties[node])
        for lst in self.by_value.values():
            lst.sort()
        self.report = ConditioningReport(mapping={node: node for node in graph.ids})

    # -- bookkeeping ---------------------------------------------------

    def _add_edge(self, a, b) -> int:
        eid = self.next_edge
        self.next_edge += 1
        self.edges[eid] = (a, b)
        self.inc[a][eid] = b
        self.inc[b][eid] = a
        return eid

    def _drop_edge(self, eid):
        a, b = self.edges.pop(eid)
        del self.inc[a][eid]
        del self.inc[b][eid]

    def _move_edge(self, eid, old, new):
        a, b = self.edges[eid]
        other = b if a == old else a
        self._drop_edge(eid)
        self._add_edge(new, other)

    def key(self, node):
        return (self.vals[node], self.ties[node])

    def downs(self, node):
        k = self.key(node)
        return [(eid, o) for eid, o in self.inc[node].items() if self.key(o) < k]

    def ups(self, node):
        k = self.key(node)
        return [(eid, o) for eid, o in self.inc[node].items() if self.key(o) > k]

    def snapshot(self):
        return sorted(self.vals, key=self.key)

    def _fresh_id(self, source, tag):
        base = f"{source}~{tag}"
        node, i = base, 1
        while node in self.vals:
            i += 1
            node = f"{base}{i}"
        return node

    def insert_next_to(self, source, above: bool, tag: str):
        """Add a synthetic node adjacent to ``source`` in the total order."""
        value = self.vals[source]
        group = self.by_value[value]
        t = self.ties[source]
        i = bisect.bisect_left(group, t)
        if above:
            tie = (Fraction(t) + group[i + 1]) / 2 if i + 1 < len(group) else Fraction(t) + 1
        else:
            tie = (Fraction(t) + group[i - 1]) / 2 if i > 0 else Fraction(t) - 1
        if tie.denominator == 1:
            tie = int(tie)
        node = self._fresh_id(source, tag)
        self.vals[node] = value
        self.ties[node] = tie
        bisect.insort(group, tie)
        self.inc[node] = {}
        self.synthetic.add(node)
        self.report.inserted.append(node)
        self.report.sources[node] = self.report.sources.get(source, source)
        return node

    def remove_node(self, node):
        for eid in list(self.inc[node]):
            self._drop_edge(eid)
        del self.inc[node]
        group = self.by_value[self.vals[node]]
        group.remove(self.ties[node])
        del self.vals[node]
        del self.ties[node]
        if node in self.report.mapping:
            self.report.mapping[node] = None
        self.synthetic.discard(node)
        self.report.removed.append(node)

    def freeze(self) -> ReebGraph:
        return ReebGraph(
            list(self.vals.items()),
            list(self.edges.values()),
            ties=self.ties,
            synthetic=self.synthetic,
        )

    # -- passes --------------------------------------------------------

    def check_isolated(self):
        for node, edges in self.inc.items():
            if not edges:
                raise ConditioningError(f"isolated node {node!r} has no canonical form")

    def complex_pass(self) -> bool:
        changed = False
        for node in self.snapshot():
            cur, step = node, 0
            while len(downs := self.downs(cur)) > 2:
                # the upper fork keeps the down edge reaching highest (or lowest)
                downs.sort(key=lambda eo: (self.key(eo[1]), -eo[0]), reverse=self.retain == "highest")
                step += 1
                new = self.insert_next_to(cur, above=False, tag=f"d{step}")
                for eid, _ in downs[1:]:
                    self._move_edge(eid, cur, new)
                self._add_edge(new, cur)
                cur = new
                changed = True
            cur, step = node, 0
            while len(ups := self.ups(cur)) > 2:
                ups.sort(key=lambda eo: (self.key(eo[1]), eo[0]), reverse=self.retain == "lowest")
                step += 1
                new = self.insert_next_to(cur, above=True, tag=f"u{step}")
                for eid, _ in ups[1:]:
                    self._move_edge(eid, cur, new)
                self._add_edge(cur, new)
                cur = new
                changed = True
        return changed

    def double_pass(self) -> bool:
        changed = False
        for node in self.snapshot():
            ups = self.ups(node)
            if len(ups) == 2 and len(self.downs(node)) == 2:
                new = self.insert_next_to(node, above=True, tag="up")
                for eid, _ in ups:
                    self._move_edge(eid, node, new)
                self._add_edge(node, new)
                changed = True
        return changed

    def degenerate_pass(self) -> bool:
        changed = False
        for node in self.snapshot():
            n_down, n_up = len(self.downs(node)), len(self.ups(node))
            if (n_down, n_up) == (2, 0):
                self._add_edge(node, self.insert_next_to(node, above=True, tag="max"))
                changed = True
            elif (n_down, n_up) == (0, 2):
                self._add_edge(self.insert_next_to(node, above=False, tag="min"), node)
                changed = True
        return changed

    def regular_pass(self) -> bool:
        changed = False
        for node in self.snapshot():
            downs, ups = self.downs(node), self.ups(node)
            if len(downs) == 1 and len(ups) == 1:
                lower, upper = downs[0][1], ups[0][1]
                self.remove_node(node)
                self._add_edge(lower, upper)
                changed = True
        return changed


def _run(graph: ReebGraph, passes: tuple[str, ...], retain: str = "highest") -> tuple[ReebGraph, ConditioningReport]:
    work = _Work(graph, retain)
    while True:
        changed = False
        for name in passes:
            changed |= getattr(work, name)()
        if not changed:
            break
    return work.freeze(), work.report


def remove_regular(graph: ReebGraph) -> tuple[ReebGraph, ConditioningReport]:
    """Remove every 1:1 node, joining its lower and upper neighbour."""
    return _run(graph, ("regular_pass",))


def split_degenerate_extremum(graph: ReebGraph) -> tuple[ReebGraph, ConditioningReport]:
    """Give each 0-up/2-down node a synthetic maximum just above it (and the mirror)."""
    return _run(graph, ("degenerate_pass",))


def split_double_fork(graph: ReebGraph) -> tuple[ReebGraph, ConditioningReport]:
    """Split each 2:2 node into a down-fork and an up-fork just above it."""
    return _run(graph, ("double_pass",))


def split_complex_fork(graph: ReebGraph, retain: str = "highest") -> tuple[ReebGraph, ConditioningReport]:
    """Split nodes with more than two down (or up) edges into chains of binary forks.

    At each step the upper fork of a down chain keeps the down edge whose
    lower endpoint is highest; the lower fork of an up chain keeps the up
    edge whose upper endpoint is lowest. ``retain="lowest"`` flips both
    choices; the resulting diagram has the same values either way.
    """
    return _run(graph, ("complex_pass",), retain)


def condition(graph: ReebGraph, retain: str = "highest") -> tuple[ReebGraph, ConditioningReport]:
    """Apply all four corrections until nothing changes.

    The result validates except, possibly, for connectivity: each connected
    component is conditioned independently.

    Raises
    ------
    ConditioningError
        If the graph is empty or has an isolated node.
    """
    if graph.n_nodes == 0:
        raise ConditioningError("cannot condition an empty graph")
    work = _Work(graph, retain)
    work.check_isolated()
    while True:
        changed = work.complex_pass()
        changed |= work.double_pass()
        changed |= work.degenerate_pass()
        changed |= work.regular_pass()
        if not changed:
            break
    return work.freeze(), work.report
