"""Benchmark harness comparing the two pairing engines.

Timings cover pairing only. Graphs are generated and conditioned before the
clock starts, and each engine gets one untimed warm-up call. Engines timed
on the same graph run interleaved, one call each per round, so a burst of
machine noise hits all of them rather than skewing one.
"""

from __future__ import annotations

import csv
import gc
import io
import statistics
import time
from dataclasses import astuple, dataclass, fields
from typing import Callable, Iterable

from .generators import GenSpec, cut_series, generate_conditioned
from .graph import ReebGraph, cycle_rank
from .multipass import pair_multipass
from .singlepass import pair_singlepass

__all__ = [
    "BenchRecord",
    "DEFAULT_CUT_KS",
    "crossover",
    "records_to_csv",
    "run_suite",
    "suite_cut",
    "suite_graphs",
    "suite_trees",
    "time_call",
    "time_interleaved",
]

DEFAULT_CUT_KS = (0, 300, 600, 900, 1200, 1500, 1800, 2100, 2400)


@dataclass(frozen=True)
class BenchRecord:
    algo: str
    input: str
    n: int
    cycles: int
    reps: int
    mean_ms: float
    stddev_ms: float
    median_ms: float


def time_call(fn: Callable[[], object], reps: int) -> list[float]:
    """Wall-clock milliseconds of ``reps`` calls, with garbage collection paused."""
    return time_interleaved([fn], reps)[0]


def time_interleaved(fns: list[Callable[[], object]], reps: int) -> list[list[float]]:
    """Per-function timings in milliseconds; round ``i`` calls every function once."""
    for fn in fns:
        fn()
    out: list[list[float]] = [[] for _ in fns]
    enabled = gc.isenabled()
    gc.collect()
    gc.disable()
    try:
        for _ in range(reps):
            for fn, ms in zip(fns, out):
                t0 = time.perf_counter()
                fn()
                ms.append((time.perf_counter() - t0) * 1000.0)
    finally:
        if enabled:
            gc.enable()
    return out


def _record(algo: str, name: str, n: int, graph: ReebGraph, ms: list[float]) -> BenchRecord:
    return BenchRecord(
        algo=algo, input=name, n=n, cycles=cycle_rank(graph), reps=len(ms),
        mean_ms=statistics.fmean(ms),
        stddev_ms=statistics.stdev(ms) if len(ms) > 1 else 0.0,
        median_ms=statistics.median(ms),
    )


def _engines(graph: ReebGraph, sweeps: Iterable[str]) -> list[tuple[str, Callable]]:
    out = [("multipass", lambda: pair_multipass(graph, check=False))]
    for sweep in sweeps:
        algo = "singlepass" if sweep == "auto" else f"singlepass-{sweep}"
        out.append((algo, lambda s=sweep: pair_singlepass(graph, s, check=False)))
    return out


def _bench(name: str, n: int, graph: ReebGraph, sweeps: Iterable[str], reps: int) -> list[BenchRecord]:
    engines = _engines(graph, sweeps)
    timings = time_interleaved([fn for _, fn in engines], reps)
    return [_record(algo, name, n, graph, ms) for (algo, _), ms in zip(engines, timings)]


def suite_trees(sizes: Iterable[int], reps: int = 5, seed: int = 0) -> list[BenchRecord]:
    """Each random tree as a split tree and, negated, as a join tree."""
    records = []
    for n in sizes:
        split = generate_conditioned(GenSpec("tree", n, seed))
        for mode, graph in (("split", split), ("join", split.negated())):
            records += _bench(f"random_tree_{n}({mode})", n, graph, ("asc", "desc"), reps)
    return records


def suite_graphs(sizes: Iterable[int], reps: int = 5, seed: int = 0) -> list[BenchRecord]:
    records = []
    for n in sizes:
        graph = generate_conditioned(GenSpec("graph", n, seed))
        records += _bench(f"random_graph_{n}", n, graph, ("auto",), reps)
    return records


def suite_cut(n: int = 5000, ks: Iterable[int] = DEFAULT_CUT_KS, reps: int = 5,
              seed: int = 0) -> list[BenchRecord]:
    """Cut a growing number of cycles from one random graph.

    Cut counts beyond the graph's cycle rank are clamped to it, and the
    fully cut tree (``k`` = cycle rank) is always the last level.
    """
    base = generate_conditioned(GenSpec("graph", n, seed))
    rank = cycle_rank(base)
    ks = sorted({min(k, rank) for k in ks} | {rank})
    records = []
    for k, graph in cut_series(base, ks, seed=seed).items():
        records += _bench(f"random_graph_{n}-cut{k}", n, graph, ("auto",), reps)
    return records


def run_suite(name: str, sizes: Iterable[int] | None = None, reps: int = 5, seed: int = 0,
              ks: Iterable[int] | None = None) -> list[BenchRecord]:
    if name == "trees":
        return suite_trees(sizes or (100, 500, 1000), reps, seed)
    if name == "graphs":
        return suite_graphs(sizes or (100, 500, 1000), reps, seed)
    if name == "cut":
        n = next(iter(sizes)) if sizes else 5000
        return suite_cut(n, ks or DEFAULT_CUT_KS, reps, seed)
    raise ValueError(f"unknown suite {name!r}")


def cut_level(record: BenchRecord) -> int:
    return int(record.input.rsplit("-cut", 1)[1])


def crossover(records: Iterable[BenchRecord], fast: str = "singlepass", slow: str = "multipass"):
    """Smallest cut count from which ``fast`` is never slower than ``slow`` (median), else None."""
    table: dict[int, dict[str, float]] = {}
    for rec in records:
        table.setdefault(cut_level(rec), {})[rec.algo] = rec.median_ms
    best = None
    for k in sorted(table, reverse=True):
        row = table[k]
        if row[fast] <= row[slow]:
            best = k
        else:
            break
    return best


def records_to_csv(records: Iterable[BenchRecord]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow([f.name for f in fields(BenchRecord)])
    for rec in records:
        row = list(astuple(rec))
        writer.writerow([f"{v:.4f}" if isinstance(v, float) else v for v in row])
    return buf.getvalue()
