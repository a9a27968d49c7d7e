import pytest
from hypothesis import given

from reebpair.conditioning import condition
from reebpair.diagram import PairClass, check_perfect_matching, diagram_diff
from reebpair.fixtures import double_edge, example_graph, monotone_path, single_edge
from reebpair.graph import CriticalKind, GraphError, cycle_rank
from reebpair.multipass import (
    MergeTree,
    MergeTreeError,
    StackOp,
    TreeDirection,
    build_merge_tree,
    essential_upforks,
    pair_essential_upfork,
    pair_global,
    pair_merge_tree,
    pair_multipass,
)
from reebpair.oracle import oracle_diagram

from strategies import conditioned_graphs


def pairs_of(diagram, kind=None):
    return {(p.birth, p.death) for p in diagram if kind is None or p.kind is kind}


# -- build_merge_tree -------------------------------------------------------

def test_join_tree_of_example():
    t = build_merge_tree(example_graph(), "join")
    assert t.direction is TreeDirection.JOIN and t.root == "K"
    assert set(t.children["K"]) == {"G", "H"}
    assert set(t.children["G"]) == {"E", "C"}
    assert set(t.children["C"]) == {"A", "B"}
    assert sorted(t.leaves) == ["A", "B", "E", "H"]


def test_split_tree_of_example():
    t = build_merge_tree(example_graph(), "split")
    assert t.root == "N" and set(t.children["N"]) == {"O", "P"}
    assert t.forks == ["N"]


def test_monotone_path_join_tree_is_one_leaf():
    t = build_merge_tree(condition(monotone_path(5))[0], "join")
    assert len(t) == 1 and t.is_leaf(t.root)


def test_unconditioned_input_rejected():
    with pytest.raises(GraphError, match="not conditioned"):
        build_merge_tree(monotone_path(3))


@given(conditioned_graphs())
def test_join_tree_shape(g):
    t = build_merge_tree(g, "join")
    kinds = g.kinds
    assert all(kinds[v] is CriticalKind.MINIMUM for v in t.leaves)
    assert all(kinds[v] is CriticalKind.DOWN_FORK for v in t.forks)
    assert all(len(t.children[f]) == 2 for f in t.forks)
    n_min = sum(k is CriticalKind.MINIMUM for k in kinds.values())
    assert len(t.forks) == n_min - 1


# -- pair_merge_tree -------------------------------------------------------

def test_join_tree_pairs_and_survivor():
    pairs, survivor = pair_merge_tree(build_merge_tree(example_graph(), "join"))
    assert set(pairs) == {("B", "C"), ("E", "G"), ("H", "K")} and survivor == "A"


def test_split_tree_pairs_and_survivor():
    pairs, survivor = pair_merge_tree(build_merge_tree(example_graph(), "split"))
    assert pairs == [("O", "N")] and survivor == "P"


def test_single_leaf_tree():
    tree = MergeTree(TreeDirection.JOIN, "A", {}, {"A": 0})
    trace = []
    assert pair_merge_tree(tree, trace=trace) == ([], "A") and trace == []


def test_stack_trace_of_join_tree():
    trace = []
    pair_merge_tree(build_merge_tree(example_graph(), "join"), trace=trace)
    assert [str(op) for op in trace] == ["T1", "T2", "T1", "T1", "T3", "T3", "T3"]


def test_lower_first_push_order_changes_trace_not_pairs():
    tree = build_merge_tree(example_graph(), "join")
    t_attach, t_lower = [], []
    p1 = pair_merge_tree(tree, trace=t_attach)
    p2 = pair_merge_tree(tree, push_order="lower_first", trace=t_lower)
    assert sorted(p1[0]) == sorted(p2[0]) and p1[1] == p2[1]
    assert t_attach != t_lower and t_lower.count(StackOp.SWAP) == 2


def test_non_binary_tree_rejected():
    tree = MergeTree(TreeDirection.JOIN, "F", {"F": ("a", "b", "c")}, {"a": 0, "b": 1, "c": 2, "F": 3})
    with pytest.raises(MergeTreeError, match="3 children"):
        pair_merge_tree(tree)


def test_unknown_push_order():
    with pytest.raises(ValueError):
        pair_merge_tree(build_merge_tree(example_graph()), push_order="random")


@given(conditioned_graphs())
def test_push_orders_agree(g):
    for direction in ("join", "split"):
        tree = build_merge_tree(g, direction)
        a, sa = pair_merge_tree(tree)
        b, sb = pair_merge_tree(tree, push_order="lower_first")
        assert sorted(a) == sorted(b) and sa == sb
        assert len(a) == len(tree.leaves) - 1


@given(conditioned_graphs())
def test_type3_keeps_elder(g):
    # the survivor is the earliest swept leaf, i.e. the global extremum
    for direction, pick in (("join", 0), ("split", -1)):
        _, survivor = pair_merge_tree(build_merge_tree(g, direction))
        assert survivor == g.ordered_ids()[pick]


# -- pair_global -----------------------------------------------------------

def test_global_pair_of_example():
    p = pair_global(example_graph(), "A", "P")
    assert (p.birth, p.death, p.is_global, p.kind) == ("A", "P", True, PairClass.MIN_SADDLE)


def test_global_pair_single_edge():
    p = pair_global(single_edge(), "A", "B")
    assert (p.birth, p.death) == ("A", "B")


def test_global_pair_negated_example_swaps_roles():
    neg = example_graph().negated()
    d = pair_multipass(neg)
    glob = [p for p in d if p.is_global]
    assert [(p.birth, p.death) for p in glob] == [("P", "A")]


def test_global_pair_rejects_non_extrema():
    with pytest.raises(GraphError):
        pair_global(example_graph(), "B", "P")


# -- essential up-forks ----------------------------------------------------

@pytest.mark.parametrize("s, partner", [("D", "L"), ("F", "J"), ("I", "M")])
def test_essential_partners_of_example(s, partner):
    assert pair_essential_upfork(example_graph(), s) == partner


def test_essential_upforks_of_example():
    assert essential_upforks(example_graph()) == ["D", "F", "I"]


def test_double_edge_essential_partner():
    g, _ = condition(double_edge())
    assert pair_essential_upfork(g, "A") == "B"


def test_non_fork_rejected():
    with pytest.raises(GraphError, match="not an up-fork"):
        pair_essential_upfork(example_graph(), "C")


@given(conditioned_graphs())
def test_essential_pairing_is_a_bijection_upward(g):
    d = pair_multipass(g)
    cycles = d.extended
    assert len(cycles) == cycle_rank(g)
    assert len({p.birth for p in cycles}) == len(cycles) == len({p.death for p in cycles})
    for p in cycles:
        assert g.key(p.birth) > g.key(p.death)


# -- pair_multipass --------------------------------------------------------

def test_example_full_diagram():
    d = pair_multipass(example_graph())
    assert pairs_of(d, PairClass.MIN_SADDLE) == {("B", "C"), ("E", "G"), ("H", "K"), ("A", "P")}
    assert pairs_of(d, PairClass.SADDLE_MAX) == {("O", "N")}
    assert pairs_of(d, PairClass.CYCLE) == {("L", "D"), ("J", "F"), ("M", "I")}
    assert d.algorithm == "multipass" and d.stats["essential_sweeps"] == 3


def test_single_edge_diagram():
    d = pair_multipass(single_edge())
    assert [(p.birth, p.death, p.is_global) for p in d] == [("A", "B", True)]


@given(conditioned_graphs())
def test_multipass_matches_oracle(g):
    d = pair_multipass(g)
    assert check_perfect_matching(g, d) == []
    assert diagram_diff(d, oracle_diagram(g)).empty


@given(conditioned_graphs())
def test_mirror_property(g):
    assert diagram_diff(pair_multipass(g.negated()).mirrored(), pair_multipass(g)).empty
