"""Persistence pairs, diagrams and diagram comparison."""

from __future__ import annotations

import enum
from collections import Counter
from dataclasses import dataclass, field, replace
from typing import Iterable, Iterator

from .graph import CriticalKind, ReebGraph

__all__ = [
    "DiagramDiff",
    "PairClass",
    "PersistenceDiagram",
    "PersistencePair",
    "check_perfect_matching",
    "diagram_diff",
    "make_pair",
]


class PairClass(enum.Enum):
    MIN_SADDLE = "min-saddle"
    SADDLE_MAX = "saddle-max"
    CYCLE = "cycle"

    @property
    def order(self) -> int:
        return _CLASS_ORDER[self]


_CLASS_ORDER = {PairClass.MIN_SADDLE: 0, PairClass.SADDLE_MAX: 1, PairClass.CYCLE: 2}


@dataclass(frozen=True)
class PersistencePair:
    """One pairing of two critical nodes.

    ``min-saddle``: birth is a minimum, death the down-fork that kills it.
    ``saddle-max``: birth is a maximum, death its up-fork.
    ``cycle``: birth is the essential down-fork, death the essential up-fork.
    The global minimum/maximum pair is a ``min-saddle`` with ``is_global``.
    """

    kind: PairClass
    birth: object
    death: object
    birth_value: float
    death_value: float
    synthetic: bool = False
    is_global: bool = False

    @property
    def persistence(self) -> float:
        return abs(self.death_value - self.birth_value)

    def sort_key(self) -> tuple:
        return (self.kind.order, self.birth_value, self.death_value, repr(self.birth), repr(self.death))

    def identity(self) -> tuple:
        return (self.kind, self.birth, self.death, self.is_global)

    def mirrored(self) -> "PersistencePair":
        """Pair seen under ``-f``: min-saddle <-> saddle-max, cycle ends swap."""
        if self.kind is PairClass.CYCLE:
            return replace(self, birth=self.death, death=self.birth,
                           birth_value=-self.death_value, death_value=-self.birth_value)
        if self.is_global:
            return replace(self, birth=self.death, death=self.birth,
                           birth_value=-self.death_value, death_value=-self.birth_value)
        kind = PairClass.SADDLE_MAX if self.kind is PairClass.MIN_SADDLE else PairClass.MIN_SADDLE
        return replace(self, kind=kind, birth_value=-self.birth_value, death_value=-self.death_value)


def make_pair(graph: ReebGraph, kind: PairClass, birth, death, *, is_global: bool = False) -> PersistencePair:
    return PersistencePair(
        kind=kind,
        birth=birth,
        death=death,
        birth_value=graph.value(birth),
        death_value=graph.value(death),
        synthetic=birth in graph.synthetic or death in graph.synthetic,
        is_global=is_global,
    )


@dataclass(frozen=True)
class PersistenceDiagram:
    """Multiset of pairs, kept in canonical order."""

    pairs: tuple[PersistencePair, ...]
    algorithm: str = ""
    input_hash: str = ""
    stats: dict = field(default_factory=dict, compare=False, repr=False)

    def __post_init__(self):
        object.__setattr__(self, "pairs", tuple(sorted(self.pairs, key=PersistencePair.sort_key)))

    @classmethod
    def from_pairs(cls, graph: ReebGraph, pairs: Iterable[tuple], algorithm: str = "", **kw) -> "PersistenceDiagram":
        """Build from ``(kind, birth_id, death_id, is_global)`` tuples."""
        return cls(
            tuple(make_pair(graph, k, b, d, is_global=g) for k, b, d, g in pairs),
            algorithm=algorithm,
            input_hash=graph.fingerprint(),
            **kw,
        )

    def __iter__(self) -> Iterator[PersistencePair]:
        return iter(self.pairs)

    def __len__(self) -> int:
        return len(self.pairs)

    def of_kind(self, kind: PairClass) -> list[PersistencePair]:
        return [p for p in self.pairs if p.kind is kind]

    @property
    def ordinary(self) -> list[PersistencePair]:
        """Dg0: min-saddle and saddle-max pairs, global pair included."""
        return [p for p in self.pairs if p.kind is not PairClass.CYCLE]

    @property
    def extended(self) -> list[PersistencePair]:
        """eDg1: cycle pairs."""
        return self.of_kind(PairClass.CYCLE)

    def as_set(self) -> set[tuple]:
        return {(p.kind.value, p.birth, p.death) for p in self.pairs}

    def multiset(self) -> Counter:
        return Counter(p.identity() for p in self.pairs)

    def mirrored(self, algorithm: str | None = None) -> "PersistenceDiagram":
        return PersistenceDiagram(
            tuple(p.mirrored() for p in self.pairs),
            algorithm=self.algorithm if algorithm is None else algorithm,
            input_hash=self.input_hash,
            stats=self.stats,
        )

    def with_values_from(self, graph: ReebGraph) -> "PersistenceDiagram":
        """Re-read pair values (and synthetic flags) from ``graph``."""
        return PersistenceDiagram(
            tuple(make_pair(graph, p.kind, p.birth, p.death, is_global=p.is_global) for p in self.pairs),
            algorithm=self.algorithm,
            input_hash=graph.fingerprint(),
            stats=self.stats,
        )


@dataclass(frozen=True)
class DiagramDiff:
    only_in_a: tuple[PersistencePair, ...]
    only_in_b: tuple[PersistencePair, ...]

    @property
    def empty(self) -> bool:
        return not self.only_in_a and not self.only_in_b

    def __bool__(self) -> bool:
        return not self.empty

    def __str__(self) -> str:
        if self.empty:
            return "diagrams are equal"
        lines = [f"- {_fmt(p)}" for p in self.only_in_a]
        lines += [f"+ {_fmt(p)}" for p in self.only_in_b]
        return "\n".join(lines)


def _fmt(p: PersistencePair) -> str:
    tag = " (global)" if p.is_global else ""
    return f"{p.kind.value} {p.birth}->{p.death} [{p.birth_value!r}, {p.death_value!r}]{tag}"


def diagram_diff(a: PersistenceDiagram, b: PersistenceDiagram) -> DiagramDiff:
    """Multiset symmetric difference of two diagrams over the same node ids."""
    ca, cb = a.multiset(), b.multiset()
    only_a = ca - cb
    only_b = cb - ca

    def expand(diag, remaining):
        out = []
        remaining = Counter(remaining)
        for p in diag.pairs:
            if remaining[p.identity()] > 0:
                remaining[p.identity()] -= 1
                out.append(p)
        return tuple(out)

    return DiagramDiff(expand(a, only_a), expand(b, only_b))


_EXPECTED_KINDS = {
    PairClass.MIN_SADDLE: (CriticalKind.MINIMUM, CriticalKind.DOWN_FORK),
    PairClass.SADDLE_MAX: (CriticalKind.MAXIMUM, CriticalKind.UP_FORK),
    PairClass.CYCLE: (CriticalKind.DOWN_FORK, CriticalKind.UP_FORK),
}


def check_perfect_matching(graph: ReebGraph, diagram: PersistenceDiagram) -> list[str]:
    """Problems with ``diagram`` as a pairing of ``graph``'s critical nodes.

    Every node must appear in exactly one pair, each pair must join nodes of
    the right kinds in the right order, and exactly one global pair must
    join the global minimum to the global maximum.
    """
    problems = []
    kinds = graph.kinds
    seen = Counter()
    n_global = 0
    for p in diagram:
        seen[p.birth] += 1
        seen[p.death] += 1
        kb, kd = kinds.get(p.birth), kinds.get(p.death)
        if p.is_global:
            n_global += 1
            order = graph.ordered_ids()
            if (p.birth, p.death) != (order[0], order[-1]):
                problems.append(f"global pair {p.birth}->{p.death} is not (global min, global max)")
            continue
        want_b, want_d = _EXPECTED_KINDS[p.kind]
        if (kb, kd) != (want_b, want_d):
            problems.append(f"{p.kind.value} pair {p.birth}->{p.death} joins {kb} and {kd}")
        below = graph.key(p.birth) < graph.key(p.death)
        if below != (p.kind is PairClass.MIN_SADDLE):
            problems.append(f"{p.kind.value} pair {p.birth}->{p.death} has wrong value order")
    if n_global != 1:
        problems.append(f"expected one global pair, found {n_global}")
    for node in graph.ids:
        if seen[node] != 1:
            problems.append(f"node {node!r} appears in {seen[node]} pairs")
    return problems
