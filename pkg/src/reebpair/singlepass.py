"""Single-pass pairing by label propagation with virtual edges.

One sweep visits every node once in ascending order. Each pending edge
(lower end visited, upper end not) carries a set of labels: unpaired minima
and the legs of unpaired up-forks reachable from it. Virtual edges link
pending edges that are connected through already swept parts of the graph;
a label may cross a virtual edge only if it was born below the up-fork that
created the link.

Encoding: the label of the minimum of rank ``r`` is ``3r``, the two legs of
the up-fork of rank ``r`` are ``3r + 1`` (leg towards the lower of its two
upper neighbours) and ``3r + 2``. A virtual edge created at rank ``r`` has
threshold ``3r``, so "born below the creator" is simply ``label < threshold``.
The virtual-edge table is kept closed under composition (a path of virtual
edges is represented by one direct edge whose threshold is the path's
bottleneck), so a single hop suffices when gathering labels.

A label is dead once its source is paired; dead labels are purged lazily
whenever a set is read.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass

from .diagram import PairClass, PersistenceDiagram
from .graph import CriticalKind, GraphError, ReebGraph
from .multipass import require_conditioned

__all__ = [
    "CrossingEvent",
    "Label",
    "SweepError",
    "SweepState",
    "choose_sweep_direction",
    "pair_singlepass",
]

MIN, LEFT, RIGHT = 0, 1, 2


class SweepError(GraphError):
    """The sweep reached a state that a conditioned graph cannot produce."""


@dataclass(frozen=True)
class Label:
    """Decoded form of a label code, for inspection and debugging."""

    source: object
    leg: str | None

    @classmethod
    def decode(cls, view, code: int) -> "Label":
        rank, tag = divmod(code, 3)
        return cls(view.node_id(rank), (None, "L", "R")[tag])

    def __str__(self) -> str:
        return f"{self.source}" if self.leg is None else f"{self.source}_{self.leg}"


@dataclass(frozen=True)
class CrossingEvent:
    """A label moved across a virtual edge while processing node ``at``."""

    label: int
    threshold: int
    src_edge: int
    dst_edge: int
    at: int


class SweepState:
    """Mutable state of one ascending sweep over ``view``."""

    def __init__(self, view, *, virtual_edges: bool = True, record: bool = False):
        self.view = view
        self.virtual_edges = virtual_edges
        self.labels: dict[int, set] = {}
        self.vadj: dict[int, dict[int, int]] = {}
        self.dead = bytearray(3 * view.n)
        self.pairs: list[tuple] = []
        self.stats: Counter = Counter()
        self.events: list[CrossingEvent] | None = [] if record else None

    # -- helpers -------------------------------------------------------

    def _kill(self, rank: int) -> None:
        base = 3 * rank
        self.dead[base] = self.dead[base + 1] = self.dead[base + 2] = 1

    def _alive(self, labels) -> set:
        dead = self.dead
        return {x for x in labels if not dead[x]}

    def _open(self, e: int, labels: set, links: dict | None = None) -> None:
        self.labels[e] = labels
        self.vadj[e] = links if links is not None else {}
        self.stats["label_insertions"] += len(labels)
        front = len(self.labels)
        if front > self.stats["max_front"]:
            self.stats["max_front"] = front

    def _close(self, e: int) -> tuple[set, dict]:
        labels = self.labels.pop(e)
        links = self.vadj.pop(e)
        for q in links:
            del self.vadj[q][e]
        return labels, links

    def _link(self, a: int, b: int, thr: int) -> None:
        row = self.vadj[a]
        if row.get(b, -1) < thr:
            if b not in row:
                self.stats["virtual_edges"] += 1
            row[b] = thr
            self.vadj[b][a] = thr
        else:
            self.stats["virtual_edges_culled"] += 1

    def _pull(self, e: int, links: dict, into: set, at: int) -> None:
        """Add labels admissible across each virtual edge of ``e`` to ``into``."""
        dead = self.dead
        for q, thr in links.items():
            for x in self.labels[q]:
                if x < thr and not dead[x] and x not in into:
                    into.add(x)
                    self.stats["crossings"] += 1
                    if self.events is not None:
                        self.events.append(CrossingEvent(x, thr, q, e, at))

    # -- node handlers -------------------------------------------------

    def process_minimum(self, r: int) -> None:
        (_, e_out), = self.view.up[r]
        self._open(e_out, {3 * r})

    def process_upfork(self, r: int) -> None:
        (_, e_in), = self.view.down[r]
        (_, e_left), (_, e_right) = self.view.up[r]
        labels, links = self._close(e_in)
        base = self._alive(labels)
        self._open(e_left, base | {3 * r + LEFT})
        self._open(e_right, base | {3 * r + RIGHT})
        if not self.virtual_edges:
            return
        for q, thr in links.items():
            self._link(e_left, q, thr)
            self._link(e_right, q, thr)
        self._link(e_left, e_right, 3 * r)

    def process_downfork(self, r: int) -> None:
        (_, e1), (_, e2) = self.view.down[r]
        (_, e_out), = self.view.up[r]
        l1, n1 = self._close(e1)
        l2, n2 = self._close(e2)
        n1.pop(e2, None)
        n2.pop(e1, None)
        gathered = self._alive(l1) | self._alive(l2)
        self._pull(e1, n1, gathered, r)
        self._pull(e2, n2, gathered, r)

        cycle = -1
        for x in gathered:
            if x % 3 == LEFT and x + 1 in gathered and x > cycle:
                cycle = x
        if cycle >= 0:
            u = cycle // 3
            self.pairs.append((PairClass.CYCLE, r, u, False))
            self._kill(u)
        else:
            mins = [x for x in gathered if x % 3 == MIN]
            if not mins:
                raise SweepError(f"no unpaired label reaches down-fork {self.view.node_id(r)!r}")
            m = max(mins) // 3
            self.pairs.append((PairClass.MIN_SADDLE, m, r, False))
            self._kill(m)
        self._kill(r)
        self._open(e_out, self._alive(gathered))
        if not self.virtual_edges:
            return
        merged: dict[int, int] = {}
        for row in (n1, n2):
            for q, thr in row.items():
                if merged.get(q, -1) < thr:
                    merged[q] = thr
        for q, thr in merged.items():
            self._link(e_out, q, thr)
        # paths p - e1 = e2 - q now exist through the merged edge
        vadj = self.vadj
        added = updated = 0
        for p, tp in n1.items():
            row_p = vadj[p]
            for q, tq in n2.items():
                if p == q:
                    continue
                t = tp if tp < tq else tq
                old = row_p.get(q, -1)
                if old < t:
                    if old < 0:
                        added += 1
                    updated += 1
                    row_p[q] = t
                    vadj[q][p] = t
        attempts = len(n1) * len(n2) - len(n1.keys() & n2.keys())
        self.stats["virtual_edges"] += added
        self.stats["virtual_edges_culled"] += attempts - updated

    def process_maximum(self, r: int) -> None:
        (_, e_in), = self.view.down[r]
        own = self._alive(self.labels[e_in])
        links = self.vadj[e_in]
        gathered = set(own)
        self._pull(e_in, links, gathered, r)
        forks = [x for x in gathered if x % 3 != MIN]
        if forks:
            u = max(forks) // 3
            self.pairs.append((PairClass.SADDLE_MAX, r, u, False))
            self._kill(u)
        else:
            mins = [x for x in gathered if x % 3 == MIN]
            if not mins:
                raise SweepError(f"no unpaired label reaches maximum {self.view.node_id(r)!r}")
            m = max(mins) // 3
            self.pairs.append((PairClass.MIN_SADDLE, m, r, True))
            self._kill(m)
        self._kill(r)
        # hand surviving labels to the pending edges they may cross to
        dead = self.dead
        for q, thr in links.items():
            dst = self.labels[q]
            for x in own:
                if x < thr and not dead[x] and x not in dst:
                    dst.add(x)
                    self.stats["crossings"] += 1
                    if self.events is not None:
                        self.events.append(CrossingEvent(x, thr, e_in, q, r))
        self._close(e_in)

    def run(self) -> list[tuple]:
        handlers = {
            CriticalKind.MINIMUM: self.process_minimum,
            CriticalKind.UP_FORK: self.process_upfork,
            CriticalKind.DOWN_FORK: self.process_downfork,
            CriticalKind.MAXIMUM: self.process_maximum,
        }
        for r, kind in enumerate(self.view.kind):
            try:
                handler = handlers[kind]
            except KeyError:
                raise SweepError(f"node {self.view.node_id(r)!r} is {kind.value}") from None
            handler(r)
        if self.labels:
            raise SweepError(f"{len(self.labels)} edge(s) still pending after the sweep")
        return self.pairs


def choose_sweep_direction(graph: ReebGraph, mode: str = "auto") -> str:
    """``"asc"`` or ``"desc"``; auto sweeps downward only when up-forks outnumber down-forks."""
    if mode in ("asc", "desc"):
        return mode
    if mode != "auto":
        raise ValueError(f"sweep mode must be auto, asc or desc, got {mode!r}")
    counts = graph.count_kinds()
    return "desc" if counts[CriticalKind.UP_FORK] > counts[CriticalKind.DOWN_FORK] else "asc"


_MIRROR = {PairClass.MIN_SADDLE: PairClass.SADDLE_MAX, PairClass.SADDLE_MAX: PairClass.MIN_SADDLE}


def _mirror(kind, a, b, is_global):
    if kind is PairClass.CYCLE or is_global:
        return kind, b, a, is_global
    return _MIRROR[kind], a, b, is_global


def run_sweep(graph: ReebGraph, *, virtual_edges: bool = True, record: bool = False) -> SweepState:
    """Run the ascending sweep on ``graph`` and return its final state."""
    state = SweepState(graph.view(), virtual_edges=virtual_edges, record=record)
    state.run()
    return state


def pair_singlepass(graph: ReebGraph, mode: str = "auto", *, virtual_edges: bool = True,
                    check: bool = True) -> PersistenceDiagram:
    """Diagram from a single sweep.

    ``mode="desc"`` sweeps ``-f`` and maps the pairs back. Disabling
    ``virtual_edges`` is for experiments only: the result can be wrong.
    """
    if check:
        require_conditioned(graph)
    direction = choose_sweep_direction(graph, mode)
    target = graph if direction == "asc" else graph.negated()
    state = run_sweep(target, virtual_edges=virtual_edges)
    name = target.view().node_id
    pairs = [(k, name(a), name(b), g) for k, a, b, g in state.pairs]
    if direction == "desc":
        pairs = [_mirror(*p) for p in pairs]
    stats = dict(state.stats, direction=direction)
    algorithm = f"singlepass-{direction}" + ("" if virtual_edges else "-novirtual")
    return PersistenceDiagram.from_pairs(graph, pairs, algorithm=algorithm, stats=stats)
