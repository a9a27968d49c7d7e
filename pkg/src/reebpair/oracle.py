"""Brute-force reference pairing for small graphs.

Ordinary pairs come from plain elder-rule union-find sweeps in both
directions. Cycle pairs come from a search over simple cycles: each essential
down-fork takes the cycle it tops whose lowest node is highest. The search
is exhaustive up to pruning of paths that can no longer beat the best
bottom found so far, so it stays exact.
"""

from __future__ import annotations

from dataclasses import dataclass

from ._unionfind import UnionFind
from .diagram import PairClass, PersistenceDiagram, check_perfect_matching
from .graph import CriticalKind, GraphError, ReebGraph, cycle_rank, validate_conditioned

__all__ = [
    "DEFAULT_BUDGET",
    "DEFAULT_MAX_NODES",
    "OracleError",
    "SimpleCycle",
    "enumerate_simple_cycles",
    "oracle_diagram",
    "oracle_essential",
    "oracle_ordinary",
]

DEFAULT_BUDGET = 10**6
DEFAULT_MAX_NODES = 200


class OracleError(GraphError):
    """Input too large for exhaustive search, or the search budget ran out."""


@dataclass(frozen=True)
class SimpleCycle:
    nodes: tuple  # node ids, starting at the top node
    edges: frozenset  # edge indices
    top: object
    bottom: object


def _guard(graph: ReebGraph, max_nodes: int) -> None:
    if graph.n_nodes > max_nodes:
        raise OracleError(f"oracle refuses graphs with more than {max_nodes} nodes (got {graph.n_nodes})")
    problems = validate_conditioned(graph)
    if problems:
        raise GraphError("graph is not conditioned: " + "; ".join(map(str, problems[:5])))


def enumerate_simple_cycles(graph: ReebGraph, *, budget: int = DEFAULT_BUDGET) -> list[SimpleCycle]:
    """Every simple cycle of the multigraph, including 2-cycles of parallel edges.

    Each cycle is found by a depth-first search started at its highest node
    and confined to lower nodes; the two traversal directions are merged.
    ``budget`` bounds the total number of path extensions.
    """
    view = graph.view()
    adj = [[] for _ in range(view.n)]
    for e, (a, b) in enumerate(view.edge_ends):
        adj[a].append((b, e))
        adj[b].append((a, e))
    seen_edge_sets = set()
    cycles = []
    steps = 0
    for top in range(view.n):
        if len(view.down[top]) < 2:
            continue
        on_path = [False] * view.n
        on_path[top] = True
        path_nodes = [top]
        path_edges = []
        # iterative DFS: stack of neighbour iterators
        iters = [iter(adj[top])]
        while iters:
            advanced = False
            for nb, e in iters[-1]:
                if path_edges and e == path_edges[-1]:
                    continue
                if nb == top and len(path_edges) >= 1:
                    es = frozenset(path_edges + [e])
                    if len(es) == len(path_edges) + 1 and es not in seen_edge_sets:
                        seen_edge_sets.add(es)
                        ids = tuple(view.node_id(r) for r in path_nodes)
                        bottom = view.node_id(min(path_nodes))
                        cycles.append(SimpleCycle(ids, es, view.node_id(top), bottom))
                    continue
                if nb > top or on_path[nb]:
                    continue
                steps += 1
                if steps > budget:
                    raise OracleError(f"simple-cycle enumeration exceeded budget of {budget} extensions")
                on_path[nb] = True
                path_nodes.append(nb)
                path_edges.append(e)
                iters.append(iter(adj[nb]))
                advanced = True
                break
            if not advanced:
                iters.pop()
                if path_edges:
                    on_path[path_nodes.pop()] = False
                    path_edges.pop()
    return cycles


def _elder_sweep(graph: ReebGraph) -> list[tuple]:
    """(younger creator, down-fork) pairs of an ascending sweep."""
    view = graph.view()
    uf = UnionFind(view.n)
    out = []
    for r in range(view.n):
        roots = {uf.find(nb) for nb, _ in view.down[r]}
        if view.kind[r] is CriticalKind.DOWN_FORK and len(roots) == 2:
            # tags hold each component's creator (its lowest node)
            younger = max(uf.tag[x] for x in roots)
            out.append((view.node_id(younger), view.node_id(r)))
        for x in roots:
            elder = min(uf.tag[x], uf.get_tag(r))
            uf.union(r, x, tag=elder)
    return out


def oracle_ordinary(graph: ReebGraph, *, max_nodes: int = DEFAULT_MAX_NODES) -> list[tuple]:
    """Min-saddle, saddle-max and global pairs as ``(kind, birth, death, is_global)``."""
    _guard(graph, max_nodes)
    out = [(PairClass.MIN_SADDLE, b, d, False) for b, d in _elder_sweep(graph)]
    out += [(PairClass.SADDLE_MAX, b, d, False) for b, d in _elder_sweep(graph.negated())]
    order = graph.ordered_ids()
    out.append((PairClass.MIN_SADDLE, order[0], order[-1], True))
    return out


def _best_bottom(adj, top: int, budget: list) -> int | None:
    """Highest possible lowest node over simple cycles topped by ``top``.

    Exhaustive depth-first search over simple paths below ``top``; a branch
    is abandoned once it reaches a node no higher than the best bottom found
    so far, since such a cycle cannot win.
    """
    best = -1
    on_path = {top}
    # stack entries: (node, edge used to arrive, lowest rank on the path, neighbour iterator)
    stack = [(top, -1, top, iter(adj[top]))]
    while stack:
        node, via, low, it = stack[-1]
        for nb, e in it:
            if e == via:
                continue
            if nb == top:
                if len(stack) > 1 and low > best:
                    best = low
                continue
            if nb > top or nb <= best or nb in on_path:
                continue
            budget[0] -= 1
            if budget[0] < 0:
                raise OracleError("cycle search exceeded its extension budget")
            on_path.add(nb)
            stack.append((nb, e, min(low, nb), iter(adj[nb])))
            break
        else:
            stack.pop()
            on_path.discard(node)
    return best if best >= 0 else None


def oracle_essential(graph: ReebGraph, *, budget: int = DEFAULT_BUDGET,
                     max_nodes: int = DEFAULT_MAX_NODES) -> list[tuple]:
    """Cycle pairs ``(CYCLE, down-fork, up-fork, False)``.

    For every down-fork that tops at least one simple cycle, the cycle
    whose lowest node is highest decides the partner.
    """
    _guard(graph, max_nodes)
    view = graph.view()
    adj = [[] for _ in range(view.n)]
    for e, (a, b) in enumerate(view.edge_ends):
        adj[a].append((b, e))
        adj[b].append((a, e))
    for lst in adj:
        lst.sort(reverse=True)  # try high neighbours first to raise the floor early
    remaining = [budget]
    out = []
    for top in range(view.n):
        if view.kind[top] is not CriticalKind.DOWN_FORK:
            continue
        low = _best_bottom(adj, top, remaining)
        if low is not None:
            out.append((PairClass.CYCLE, view.node_id(top), view.node_id(low), False))
    lows = [low for _, _, low, _ in out]
    if len(set(lows)) != len(lows):
        raise OracleError("an up-fork was chosen by more than one down-fork")
    return out


def oracle_diagram(graph: ReebGraph, *, budget: int = DEFAULT_BUDGET,
                   max_nodes: int = DEFAULT_MAX_NODES) -> PersistenceDiagram:
    """Union of ordinary and essential oracle pairs, checked for perfect matching."""
    pairs = oracle_ordinary(graph, max_nodes=max_nodes)
    pairs += oracle_essential(graph, budget=budget, max_nodes=max_nodes)
    diagram = PersistenceDiagram.from_pairs(graph, pairs, algorithm="oracle")
    problems = check_perfect_matching(graph, diagram)
    n_cycles = len(diagram.extended)
    if n_cycles != cycle_rank(graph):
        problems.append(f"{n_cycles} cycle pairs but cycle rank {cycle_rank(graph)}")
    if problems:
        raise OracleError("oracle produced an invalid diagram: " + "; ".join(problems[:5]))
    return diagram
