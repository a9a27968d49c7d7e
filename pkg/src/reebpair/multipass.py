"""Multipass pairing: join/split merge trees plus one superlevel sweep per essential up-fork."""

from __future__ import annotations

import enum
from dataclasses import dataclass, field

from ._unionfind import UnionFind
from .diagram import PairClass, PersistenceDiagram, PersistencePair, make_pair
from .graph import CriticalKind, GraphError, ReebGraph, validate_conditioned

__all__ = [
    "MergeTree",
    "MergeTreeError",
    "StackOp",
    "TreeDirection",
    "build_merge_tree",
    "essential_upforks",
    "pair_essential_upfork",
    "pair_global",
    "pair_merge_tree",
    "pair_multipass",
    "require_conditioned",
]


class MergeTreeError(GraphError):
    pass


class TreeDirection(enum.Enum):
    JOIN = "join"
    SPLIT = "split"


class StackOp(enum.Enum):
    EXPAND = "T1"
    SWAP = "T2"
    COLLAPSE = "T3"

    def __str__(self) -> str:
        return self.value


@dataclass
class MergeTree:
    """Join (or split) tree over node ids.

    ``sweep_rank`` gives each tree node its position in the sweep that built
    the tree: ascending order for a join tree, descending for a split tree.
    ``children[fork]`` is ordered by the sweep rank of the down-neighbour
    through which each child's component reached the fork.
    """

    direction: TreeDirection
    root: object
    children: dict
    sweep_rank: dict
    parent: dict = field(default_factory=dict)

    def __post_init__(self):
        if not self.parent:
            self.parent = {c: p for p, cs in self.children.items() for c in cs}

    def is_leaf(self, node) -> bool:
        return not self.children.get(node)

    @property
    def leaves(self) -> list:
        return [v for v in self.sweep_rank if self.is_leaf(v)]

    @property
    def forks(self) -> list:
        return [v for v in self.sweep_rank if not self.is_leaf(v)]

    def __len__(self) -> int:
        return len(self.sweep_rank)

    def subtree_extremum(self) -> dict:
        """Map each tree node to the earliest-swept leaf below it."""
        out = {}
        for node in sorted(self.sweep_rank, key=self.sweep_rank.__getitem__):
            cs = self.children.get(node)
            out[node] = node if not cs else min((out[c] for c in cs), key=self.sweep_rank.__getitem__)
        return out


def require_conditioned(graph: ReebGraph) -> None:
    problems = validate_conditioned(graph)
    if problems:
        shown = "; ".join(map(str, problems[:5]))
        more = f" (+{len(problems) - 5} more)" if len(problems) > 5 else ""
        raise GraphError(f"graph is not conditioned: {shown}{more}")


def _join_tree(graph: ReebGraph, direction: TreeDirection) -> MergeTree:
    view = graph.view()
    uf = UnionFind(view.n)
    children: dict = {}
    for r in range(view.n):
        downs = view.down[r]
        if view.kind[r] is CriticalKind.DOWN_FORK:
            (a, _), (b, _) = downs
            ra, rb = uf.find(a), uf.find(b)
            if ra != rb:
                children[r] = (uf.tag[ra], uf.tag[rb])
                uf.union(r, a)
                uf.union(r, b, tag=r)
                continue
        for nb, _ in downs:
            uf.union(nb, r)
    root = uf.get_tag(0)
    used = {root} | {c for cs in children.values() for c in cs}
    name = view.node_id
    return MergeTree(
        direction=direction,
        root=name(root),
        children={name(p): tuple(name(c) for c in cs) for p, cs in children.items()},
        sweep_rank={name(r): r for r in sorted(used)},
    )


def build_merge_tree(graph: ReebGraph, direction="join", *, check: bool = True) -> MergeTree:
    """Build the join tree (ascending sweep) or split tree (descending sweep).

    Minima (maxima) are the leaves, ordinary down-forks (up-forks) the
    interior nodes. Essential forks merge nothing and are left out.
    """
    direction = TreeDirection(direction)
    if check:
        require_conditioned(graph)
    if direction is TreeDirection.JOIN:
        return _join_tree(graph, direction)
    return _join_tree(graph.negated(), direction)


def pair_merge_tree(tree: MergeTree, *, push_order: str = "attach", trace: list | None = None):
    """Stack-based branch decomposition of a merge tree.

    Returns ``(pairs, survivor)`` where each pair is ``(leaf, fork)``. If
    ``trace`` is a list, the :class:`StackOp` sequence is appended to it.

    ``push_order`` controls how a fork's two children are pushed:
    ``"attach"`` leaves the child that reached the fork through the earlier
    swept neighbour on top, ``"lower_first"`` pushes the child whose subtree
    holds the elder leaf first. Only intermediate stack states differ.
    """
    if push_order not in ("attach", "lower_first"):
        raise ValueError(f"unknown push_order {push_order!r}")
    rank = tree.sweep_rank
    extremum = tree.subtree_extremum() if push_order == "lower_first" else None
    for fork, cs in tree.children.items():
        if len(cs) != 2:
            raise MergeTreeError(f"fork {fork!r} has {len(cs)} children, expected 2")

    # frame = (tree node, representative leaf); forks carry rep None
    stack = [(tree.root, None if not tree.is_leaf(tree.root) else tree.root)]
    expanded = set()
    pairs = []
    log = trace if trace is not None else []

    while len(stack) > 1 or stack[0][1] is None:
        top = stack[-1]
        if len(stack) >= 3:
            (n1, r1), (n2, r2), (f, rf) = stack[-3:][::-1]
            if (r1 is not None and r2 is not None and rf is None and f in expanded
                    and tree.parent.get(n1) == f and tree.parent.get(n2) == f):
                younger, elder = (r1, r2) if rank[r1] > rank[r2] else (r2, r1)
                assert rank[elder] < rank[younger] < rank[f], "elder rule violated"
                pairs.append((younger, f))
                del stack[-3:]
                stack.append((f, elder))
                log.append(StackOp.COLLAPSE)
                continue
        if top[1] is None and top[0] not in expanded:
            cs = tree.children[top[0]]
            if push_order == "attach":
                order = reversed(cs)
            else:
                order = sorted(cs, key=lambda c: rank[extremum[c]])
            expanded.add(top[0])
            stack.extend((c, None if not tree.is_leaf(c) else c) for c in order)
            log.append(StackOp.EXPAND)
            continue
        if len(stack) >= 2 and top[1] is not None and stack[-2][1] is None and stack[-2][0] not in expanded:
            stack[-1], stack[-2] = stack[-2], stack[-1]
            log.append(StackOp.SWAP)
            continue
        raise MergeTreeError(f"no stack rule applies to {stack[-3:]!r}")
    return pairs, stack[0][1]


def pair_global(graph: ReebGraph, min_survivor, max_survivor) -> PersistencePair:
    """The global minimum/maximum pair, flagged ``is_global``."""
    order = graph.ordered_ids()
    if (min_survivor, max_survivor) != (order[0], order[-1]):
        raise GraphError(
            f"survivors {min_survivor!r}/{max_survivor!r} are not the global extrema {order[0]!r}/{order[-1]!r}"
        )
    return make_pair(graph, PairClass.MIN_SADDLE, min_survivor, max_survivor, is_global=True)


def essential_upforks(graph: ReebGraph, split_tree: MergeTree | None = None) -> list:
    """Up-forks absent from the split tree, in ascending order."""
    if split_tree is None:
        split_tree = build_merge_tree(graph, "split", check=False)
    ordinary = set(split_tree.forks)
    return [v for v in graph.ordered_ids() if graph.kinds[v] is CriticalKind.UP_FORK and v not in ordinary]


def _essential_partner(view, rs: int) -> int:
    n = view.n
    up = view.up[rs]
    if len(up) != 2:
        raise GraphError(f"node {view.node_id(rs)!r} is not an up-fork")
    e_left = up[0][1]
    s_right = -1
    # sparse union-find: the sweep usually stops long before the top
    parent: dict[int, int] = {rs: rs, s_right: s_right}

    def find(x):
        root = x
        while parent[root] != root:
            root = parent[root]
        while parent[x] != root:
            parent[x], x = root, parent[x]
        return root

    down, kind = view.down, view.kind
    for r in range(rs + 1, n):
        parent[r] = r
        for nb, e in down[r]:
            if nb > rs:
                other = nb
            elif nb == rs:
                other = rs if e == e_left else s_right
            else:
                continue  # truncated edge crossing the level of s: a fresh singleton
            a, b = find(r), find(other)
            if a != b:
                parent[b] = a
        if kind[r] is CriticalKind.DOWN_FORK and find(rs) == find(s_right):
            return r
    raise GraphError(f"legs of up-fork {view.node_id(rs)!r} never merge above it")


def pair_essential_upfork(graph: ReebGraph, s) -> object:
    """Down-fork at which the two upward branches of up-fork ``s`` first reconnect.

    ``s`` is split into two legs, each owning one up edge, and the
    superlevel set above ``s`` is swept upward with union-find. Edges that
    cross the level of ``s`` elsewhere seed their own components.
    """
    view = graph.view()
    return view.node_id(_essential_partner(view, view.rank_of(s)))


def pair_multipass(graph: ReebGraph, *, push_order: str = "attach", check: bool = True) -> PersistenceDiagram:
    """Full diagram from the join tree, split tree and essential sweeps."""
    if check:
        require_conditioned(graph)
    join = build_merge_tree(graph, "join", check=False)
    split = build_merge_tree(graph, "split", check=False)
    join_pairs, gmin = pair_merge_tree(join, push_order=push_order)
    split_pairs, gmax = pair_merge_tree(split, push_order=push_order)
    pairs = [make_pair(graph, PairClass.MIN_SADDLE, b, d) for b, d in join_pairs]
    pairs += [make_pair(graph, PairClass.SADDLE_MAX, b, d) for b, d in split_pairs]
    pairs.append(pair_global(graph, gmin, gmax))

    view = graph.view()
    partners = {}
    for s in essential_upforks(graph, split):
        partner = view.node_id(_essential_partner(view, view.rank_of(s)))
        if partner in partners:
            raise GraphError(f"down-fork {partner!r} chosen by both {partners[partner]!r} and {s!r}")
        partners[partner] = s
        pairs.append(make_pair(graph, PairClass.CYCLE, partner, s))
    stats = {
        "join_tree_nodes": len(join),
        "split_tree_nodes": len(split),
        "essential_sweeps": len(partners),
    }
    return PersistenceDiagram(tuple(pairs), algorithm="multipass", input_hash=graph.fingerprint(), stats=stats)
