"""Random Reeb-graph generators and the cycle-cutting transform.

Every random draw goes through ``random.Random(seed).random()`` (Mersenne
Twister, 53-bit floats), recorded in files as ``PRNG_NAME``. Outputs are
therefore identical across platforms for a given spec.

Growth process: start from one seed node ``v0``. Iteration ``i`` adds a hub
``h{i}`` with three tips ``t{i}a``, ``t{i}b``, ``t{i}c`` and glues one or two
of the tips to existing 1-valent nodes by inserting an edge. Trees always
glue one tip; graphs glue two with probability ``p2`` (when two free tips
exist), and each two-point gluing closes exactly one cycle.

With the default ``values="growth"`` the function grows with the
construction: hub ``i`` sits in ``[i, i + 0.5)``, its free tips above it,
glued tips between the hub and the node they attach to. A one-point gluing
then makes an up-fork and a two-point gluing a down-fork, and split trees
come out as pure up-fork trees. ``values="iid"`` draws every value
independently from ``U(0, 1)`` instead. Join-mode trees negate the values.
"""

from __future__ import annotations

import random
from collections import deque
from dataclasses import dataclass

from .conditioning import condition
from .graph import GraphError, ReebGraph, cycle_rank

__all__ = ["PRNG_NAME", "GenSpec", "cut_cycles", "cut_series", "generate", "generate_conditioned"]

PRNG_NAME = "mt19937-float-v1"


@dataclass(frozen=True)
class GenSpec:
    kind: str = "graph"
    n: int = 100
    seed: int = 0
    p2: float = 0.5
    tree_mode: str = "split"
    values: str = "growth"

    def __post_init__(self):
        if self.kind not in ("tree", "graph"):
            raise ValueError(f"kind must be 'tree' or 'graph', got {self.kind!r}")
        if self.n < 1:
            raise ValueError(f"n must be >= 1, got {self.n}")
        if not 0.0 <= self.p2 <= 1.0:
            raise ValueError(f"p2 must lie in [0, 1], got {self.p2}")
        if self.tree_mode not in ("split", "join"):
            raise ValueError(f"tree_mode must be 'split' or 'join', got {self.tree_mode!r}")
        if self.values not in ("growth", "iid"):
            raise ValueError(f"values must be 'growth' or 'iid', got {self.values!r}")
        if not 0 <= self.seed < 2**64:
            raise ValueError("seed must be a 64-bit unsigned integer")

    @property
    def name(self) -> str:
        prefix = "random_tree" if self.kind == "tree" else "random_graph"
        return f"{prefix}_{self.n}"


def _take(rng: random.Random, pool: list):
    i = int(rng.random() * len(pool))
    pool[i], pool[-1] = pool[-1], pool[i]
    return pool.pop()


def generate(spec: GenSpec) -> ReebGraph:
    """Unconditioned graph with ``4 * spec.n + 1`` nodes."""
    rng = random.Random(spec.seed)
    iid = spec.values == "iid"
    values = {"v0": rng.random() if iid else -rng.random()}
    edges = []
    free = ["v0"]
    for i in range(1, spec.n + 1):
        hub = f"h{i}"
        tips = [f"t{i}a", f"t{i}b", f"t{i}c"]
        two = spec.kind == "graph" and len(free) >= 2 and rng.random() < spec.p2
        targets = [_take(rng, free) for _ in range(2 if two else 1)]
        h = rng.random() if iid else i + 0.5 * rng.random()
        values[hub] = h
        for tip in tips:
            edges.append((hub, tip))
        for tip, w in zip(tips, targets):
            u = rng.random()
            values[tip] = u if iid else values[w] + (0.1 + 0.8 * u) * (h - values[w])
            edges.append((tip, w))
        for tip in tips[len(targets):]:
            u = rng.random()
            values[tip] = u if iid else h + (i + 1 - h) * (0.05 + 0.9 * u)
            free.append(tip)
    if spec.kind == "tree" and spec.tree_mode == "join":
        values = {k: -v for k, v in values.items()}
    return ReebGraph(values, edges)


def generate_conditioned(spec: GenSpec) -> ReebGraph:
    return condition(generate(spec))[0]


def _is_bridge(adj: dict, removed: set, eid: int, u, v) -> bool:
    """Bidirectional BFS from both ends of ``eid`` with the edge ignored."""
    seen = ({u}, {v})
    frontier = (deque([u]), deque([v]))
    while frontier[0] and frontier[1]:
        side = 0 if len(frontier[0]) <= len(frontier[1]) else 1
        node = frontier[side].popleft()
        for e, other in adj[node]:
            if e == eid or e in removed:
                continue
            if other in seen[1 - side]:
                return False
            if other not in seen[side]:
                seen[side].add(other)
                frontier[side].append(other)
    return True


def _cut(graph: ReebGraph, k: int, rng: random.Random) -> ReebGraph:
    rank = cycle_rank(graph)
    if not 0 <= k <= rank:
        raise GraphError(f"cannot cut {k} cycles from a graph of cycle rank {rank}")
    ends = graph.edge_ids()
    adj: dict = {node: [] for node in graph.ids}
    for e, (a, b) in enumerate(ends):
        adj[a].append((e, b))
        adj[b].append((e, a))
    candidates = list(range(len(ends)))
    removed: set = set()
    while len(removed) < k:
        # bridges stay bridges as edges are removed, so they are dropped for good
        e = _take(rng, candidates)
        if _is_bridge(adj, removed, e, *ends[e]):
            continue
        removed.add(e)
    kept = [pair for e, pair in enumerate(ends) if e not in removed]
    return ReebGraph(
        list(zip(graph.ids, graph.values)), kept,
        ties=dict(zip(graph.ids, graph.ties)), synthetic=graph.synthetic,
    )


def cut_cycles(graph: ReebGraph, k: int, seed: int = 0) -> ReebGraph:
    """Remove ``k`` uniformly chosen non-bridge edges, then re-condition.

    The cycle rank drops by exactly ``k`` and the graph stays connected.
    """
    return condition(_cut(graph, k, random.Random(seed)))[0]


def cut_series(graph: ReebGraph, ks, seed: int = 0) -> dict:
    """Nested cuts: the graph for each larger ``k`` extends the cuts of the smaller ones."""
    rng = random.Random(seed)
    out = {}
    done = 0
    current = graph
    for k in sorted(set(ks)):
        if k > done:
            current = condition(_cut(current, k - done, rng))[0]
            done = k
        out[k] = current
    return out
