import networkx as nx
import pytest
from hypothesis import given, settings, strategies as st

from reebpair.diagram import diagram_diff
from reebpair.fixtures import example_graph
from reebpair.generators import GenSpec, cut_cycles, cut_series, generate, generate_conditioned
from reebpair.graph import CriticalKind, GraphError, connected_components, cycle_rank, validate_conditioned
from reebpair.io import graph_to_json
from reebpair.multipass import pair_multipass
from reebpair.oracle import oracle_diagram


def hub_index(node):
    return int(node[1:-1]) if node.startswith("t") else 0


def two_point_gluings(g):
    # a gluing edge joins a new tip to an older free node; credit the newer hub
    glued = {}
    for a, b in g.edge_ids():
        if a.startswith("h") or b.startswith("h"):
            continue
        hub = max(hub_index(a), hub_index(b))
        glued[hub] = glued.get(hub, 0) + 1
    return sum(c == 2 for c in glued.values())


@pytest.mark.parametrize("kind", ["tree", "graph"])
@pytest.mark.parametrize("n", [1, 7, 100])
def test_node_count(kind, n):
    g = generate(GenSpec(kind, n, seed=5))
    assert g.n_nodes == 4 * n + 1
    assert len(connected_components(g)) == 1


def test_same_seed_same_bytes():
    spec = GenSpec("graph", 300, seed=42)
    assert graph_to_json(generate(spec)) == graph_to_json(generate(spec))
    assert graph_to_json(generate(spec)) != graph_to_json(generate(GenSpec("graph", 300, seed=43)))


@settings(max_examples=30)
@given(st.integers(1, 60), st.integers(0, 2**32), st.sampled_from(["growth", "iid"]))
def test_trees_are_acyclic(n, seed, values):
    assert cycle_rank(generate(GenSpec("tree", n, seed=seed, values=values))) == 0


@settings(max_examples=30)
@given(st.integers(1, 80), st.integers(0, 2**32))
def test_cycle_rank_counts_two_point_gluings(n, seed):
    g = generate(GenSpec("graph", n, seed=seed))
    assert cycle_rank(g) == two_point_gluings(g)


def test_split_tree_hubs_are_upforks():
    g = generate(GenSpec("tree", 200, seed=1, tree_mode="split"))
    assert all(g.kind(f"h{i}") is CriticalKind.UP_FORK for i in range(1, 201))


def test_join_tree_hubs_are_downforks():
    g = generate(GenSpec("tree", 200, seed=1, tree_mode="join"))
    assert all(g.kind(f"h{i}") is CriticalKind.DOWN_FORK for i in range(1, 201))


def test_graph_gluings_set_fork_direction():
    g = generate(GenSpec("graph", 300, seed=2))
    kinds = g.kinds
    assert {kinds[f"h{i}"] for i in range(1, 301)} <= {CriticalKind.UP_FORK, CriticalKind.DOWN_FORK}


def test_conditioned_tree_size():
    g = generate_conditioned(GenSpec("tree", 1000, seed=0))
    assert validate_conditioned(g) == []
    assert abs(g.n_nodes - 2004) <= 0.1 * 2004


def test_cycle_rank_near_half_n_across_seeds():
    for seed in range(20):
        r = cycle_rank(generate(GenSpec("graph", 1000, seed=seed)))
        assert abs(r - 500) <= 50


@pytest.mark.parametrize(
    "kwargs",
    [dict(kind="forest"), dict(n=0), dict(p2=1.5), dict(tree_mode="up"), dict(values="normal"), dict(seed=-1)],
)
def test_spec_validation(kwargs):
    with pytest.raises(ValueError):
        GenSpec(**kwargs)


def test_spec_name():
    assert GenSpec("tree", 1000).name == "random_tree_1000"
    assert GenSpec("graph", 5).name == "random_graph_5"


# -- cut_cycles --------------------------------------------------------------

def test_cut_zero_keeps_graph():
    g = example_graph()
    assert cut_cycles(g, 0) == g


def test_cut_all_cycles_of_example():
    t = cut_cycles(example_graph(), 3, seed=1)
    assert cycle_rank(t) == 0 and validate_conditioned(t) == []
    d = pair_multipass(t)
    assert not d.extended
    assert diagram_diff(d, oracle_diagram(t)).empty


def test_cut_too_many():
    with pytest.raises(GraphError, match="cycle rank 3"):
        cut_cycles(example_graph(), 4)


@settings(max_examples=25)
@given(st.integers(1, 40), st.integers(0, 2**32), st.data())
def test_cut_lowers_rank_and_stays_connected(n, seed, data):
    g = generate_conditioned(GenSpec("graph", n, seed=seed))
    k = data.draw(st.integers(0, cycle_rank(g)))
    cut = cut_cycles(g, k, seed=seed)
    assert cycle_rank(cut) == cycle_rank(g) - k
    assert validate_conditioned(cut) == []
    m = nx.MultiGraph()
    m.add_edges_from(cut.edge_ids())
    assert nx.is_connected(m)
    assert diagram_diff(pair_multipass(cut), oracle_diagram(cut)).empty


def test_cut_is_deterministic():
    g = generate_conditioned(GenSpec("graph", 200, seed=3))
    assert cut_cycles(g, 40, seed=8) == cut_cycles(g, 40, seed=8)


def test_cut_series_is_nested():
    g = generate_conditioned(GenSpec("graph", 200, seed=3))
    r = cycle_rank(g)
    series = cut_series(g, [0, 10, 30, r])
    assert [cycle_rank(series[k]) for k in (0, 10, 30, r)] == [r, r - 10, r - 30, 0]
    assert series[0] == g

    def original_nodes(h):
        return set(h.ids) - h.synthetic

    assert original_nodes(series[r]) <= original_nodes(series[30]) <= original_nodes(series[10])
