"""Acceptance criteria 1-8, one test each.

Every test reports a PASS/FAIL line through ``acceptance_report``; the lines
are repeated in the terminal summary.
"""

import statistics
import time

from reebpair.bench import crossover, cut_level, suite_cut, time_interleaved
from reebpair.conditioning import condition
from reebpair.diagram import PairClass, check_perfect_matching, diagram_diff
from reebpair.fixtures import example_graph
from reebpair.generators import GenSpec, generate, generate_conditioned
from reebpair.graph import connected_components, cycle_rank
from reebpair.multipass import build_merge_tree, pair_merge_tree, pair_multipass
from reebpair.oracle import oracle_diagram
from reebpair.singlepass import pair_singlepass, run_sweep

from strategies import find_necessity_witness, random_multigraph


def same(a, b):
    return diagram_diff(a, b).empty


def test_criterion_1_example_graph(acceptance_report):
    g = example_graph()
    expected = {
        (PairClass.MIN_SADDLE, "B", "C"), (PairClass.MIN_SADDLE, "E", "G"),
        (PairClass.MIN_SADDLE, "H", "K"), (PairClass.SADDLE_MAX, "O", "N"),
        (PairClass.MIN_SADDLE, "A", "P"),
        (PairClass.CYCLE, "L", "D"), (PairClass.CYCLE, "J", "F"), (PairClass.CYCLE, "M", "I"),
    }
    t0 = time.perf_counter()
    results = {
        "multipass": pair_multipass(g),
        "singlepass": pair_singlepass(g),
        "oracle": oracle_diagram(g),
    }
    elapsed = time.perf_counter() - t0
    got = {name: sorted((p.kind.value, p.birth, p.death) for p in d) for name, d in results.items()}
    want = sorted((k.value, a, b) for k, a, b in expected)
    ok = all(v == want for v in got.values()) and elapsed < 1.0
    acceptance_report(1, ok, f"three engines exact on the 16-node example, {elapsed * 1000:.1f} ms")
    assert ok, got


def test_criterion_2_stack_trace(acceptance_report):
    trace = []
    _, survivor = pair_merge_tree(build_merge_tree(example_graph(), "join"), trace=trace)
    seq = [str(op) for op in trace]
    ok = seq == ["T1", "T2", "T1", "T1", "T3", "T3", "T3"] and survivor == "A"
    acceptance_report(2, ok, f"trace {' '.join(seq)}, survivor {survivor}")
    assert ok


def test_criterion_3_oracle_equivalence(acceptance_report):
    t0 = time.perf_counter()
    failures = []
    for seed in range(1000):
        spec = GenSpec("graph", 1 + seed % 30, seed=seed, values="growth" if seed % 2 == 0 else "iid")
        g = generate_conditioned(spec)
        ref = oracle_diagram(g)
        engines = (pair_multipass(g), pair_singlepass(g, "asc"), pair_singlepass(g, "desc"))
        if not all(same(d, ref) for d in engines):
            failures.append(spec)
    elapsed = time.perf_counter() - t0
    ok = not failures and elapsed < 60
    acceptance_report(3, ok, f"1000 graphs (n <= 30), {len(failures)} disagreements, {elapsed:.1f} s")
    assert ok, failures[:3]


def test_criterion_4_large_agreement(acceptance_report):
    t0 = time.perf_counter()
    bad = []
    for n in (1000, 5000):
        for kind in ("tree", "graph"):
            g = generate_conditioned(GenSpec(kind, n, seed=n))
            if not same(pair_multipass(g), pair_singlepass(g)):
                bad.append(f"{kind} {n}")
    elapsed = time.perf_counter() - t0
    ok = not bad and elapsed < 30
    acceptance_report(4, ok, f"trees and graphs at n = 1000, 5000 agree ({bad or 'no mismatches'}), {elapsed:.1f} s")
    assert ok


def test_criterion_5_structural_counts(acceptance_report):
    wrong = []
    for n in (100, 500, 1000, 3000, 5000):
        for kind in ("tree", "graph"):
            if generate(GenSpec(kind, n, seed=0)).n_nodes != 4 * n + 1:
                wrong.append((kind, n))
    ranks = [cycle_rank(generate(GenSpec("graph", 1000, seed=s))) for s in range(20)]
    in_band = all(450 <= r <= 550 for r in ranks)
    ok = not wrong and in_band
    acceptance_report(5, ok, f"4n+1 nodes everywhere ({len(wrong)} wrong); cycle counts at n=1000 "
                             f"in [{min(ranks)}, {max(ranks)}]")
    assert ok


def test_criterion_6_direction_asymmetry(acceptance_report):
    split = generate_conditioned(GenSpec("tree", 1000, seed=0, tree_mode="split"))
    # a split tree swept upward meets its up-forks first (split direction); downward it is a join sweep
    asc, desc = time_interleaved([
        lambda: pair_singlepass(split, "asc", check=False),
        lambda: pair_singlepass(split, "desc", check=False),
    ], 7)
    split_dir, join_dir = statistics.median(asc), statistics.median(desc)
    ok = join_dir < split_dir
    acceptance_report(6, ok, f"random_tree_1000 median join-direction {join_dir:.1f} ms "
                             f"vs split-direction {split_dir:.1f} ms")
    assert ok


def test_criterion_7_cut_crossover(acceptance_report):
    records = suite_cut(5000, reps=5, seed=0)
    k = crossover(records)
    top = max(cut_level(r) for r in records)
    table = {}
    for r in records:
        table.setdefault(cut_level(r), {})[r.algo] = r.median_ms
    summary = ", ".join(f"k={lvl}: {row['singlepass']:.0f}/{row['multipass']:.0f}"
                        for lvl, row in sorted(table.items()))
    ok = k is not None
    acceptance_report(7, ok, f"crossover k* = {k} of {top} cycles (single/multi ms: {summary})")
    assert ok


def test_criterion_8_property_suite(acceptance_report):
    checks = {"idempotent": 0, "rank": 0, "matching": 0, "cycles": 0, "negation": 0, "soundness": 0}
    failed = []
    for seed in range(150):
        raw = random_multigraph(seed, 3 + seed % 10, seed % 7, 2 + seed % 6)
        once, _ = condition(raw)
        twice, report = condition(once)
        checks["idempotent"] += 1
        if twice != once or not report.empty:
            failed.append(("idempotent", seed))
        checks["rank"] += 1
        if cycle_rank(once) != cycle_rank(raw):
            failed.append(("rank", seed))
        if len(connected_components(once)) != 1:
            continue  # the engines take connected graphs only
        ref = oracle_diagram(once)
        for d in (ref, pair_multipass(once), pair_singlepass(once, "asc"), pair_singlepass(once, "desc")):
            checks["matching"] += 1
            if check_perfect_matching(once, d):
                failed.append(("matching", seed))
            checks["cycles"] += 1
            if len(d.extended) != cycle_rank(once):
                failed.append(("cycles", seed))
        neg = once.negated()
        for engine in (oracle_diagram, pair_multipass, pair_singlepass):
            checks["negation"] += 1
            if not same(engine(neg).mirrored(), engine(once)):
                failed.append(("negation", seed))
        checks["soundness"] += 1
        state = run_sweep(once, record=True)
        if any(ev.label >= ev.threshold for ev in state.events):
            failed.append(("soundness", seed))

    witness = find_necessity_witness(silent=True)
    witness_ok = (
        witness is not None
        and not same(pair_singlepass(witness, "asc", virtual_edges=False), oracle_diagram(witness))
        and same(pair_singlepass(witness, "asc"), oracle_diagram(witness))
    )
    ok = not failed and witness_ok
    counts = ", ".join(f"{k} {v}" for k, v in checks.items())
    acceptance_report(8, ok, f"{counts} checks, {len(failed)} failures; "
                             f"virtual-edge witness {'found' if witness_ok else 'missing'}"
                             f" ({witness.n_nodes if witness else 0} nodes)")
    assert ok, failed[:5]
