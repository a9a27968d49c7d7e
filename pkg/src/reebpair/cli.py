"""Command-line interface: ``reebpair <command> ...``.

Exit codes: 0 success, 1 diagrams differ (``diff``), 2 usage error,
3 input error.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import __version__
from .bench import DEFAULT_CUT_KS, crossover, records_to_csv, run_suite
from .conditioning import condition
from .diagram import diagram_diff
from .generators import PRNG_NAME, GenSpec, cut_cycles, generate
from .graph import GraphError, split_components, validate_conditioned
from .io import diagram_to_csv, graph_to_json, read_diagram, read_graph
from .multipass import pair_multipass
from .oracle import DEFAULT_MAX_NODES, oracle_diagram
from .singlepass import pair_singlepass
from .svg import render_svg

EXIT_OK, EXIT_DIFF, EXIT_USAGE, EXIT_INPUT = 0, 1, 2, 3


class InputError(Exception):
    pass


def _emit(text: str, target: str | None) -> None:
    if target in (None, "-"):
        sys.stdout.write(text)
    else:
        Path(target).write_text(text, encoding="utf-8")


def _load(path: str):
    try:
        if path == "-":
            return read_graph(sys.stdin)
        return read_graph(path)
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None
    except GraphError as exc:
        raise InputError(f"{path}: {exc}") from None


def _warn(msg: str) -> None:
    print(f"reebpair: {msg}", file=sys.stderr)


def cmd_condition(args) -> int:
    graph = _load(args.input)
    try:
        result, report = condition(graph)
    except GraphError as exc:
        raise InputError(str(exc)) from None
    if args.report:
        Path(args.report).write_text(report.summary(limit=None) + "\n", encoding="utf-8")
    else:
        sys.stderr.write(report.summary() + "\n")
    if args.split_components:
        if args.output in (None, "-"):
            raise InputError("--split-components needs -o PATH (used as a file-name stem)")
        out = Path(args.output)
        for i, part in enumerate(split_components(result)):
            path = out.with_name(f"{out.stem}_{i}{out.suffix or '.json'}")
            path.write_text(graph_to_json(part), encoding="utf-8")
        return EXIT_OK
    _emit(graph_to_json(result), args.output)
    return EXIT_OK


def _pair(graph, args):
    if validate_conditioned(graph):
        conditioned, _ = condition(graph)
        problems = validate_conditioned(conditioned)
        if problems:
            raise InputError(f"cannot pair: {problems[0]} (try `condition --split-components`)")
        _warn("input was not conditioned; conditioning it first")
        graph = conditioned
    if args.algo == "multipass":
        return pair_multipass(graph)
    if args.algo == "oracle":
        if graph.n_nodes > args.max_oracle_nodes:
            raise InputError(
                f"oracle refuses graphs with more than {args.max_oracle_nodes} nodes (got {graph.n_nodes})"
            )
        return oracle_diagram(graph, max_nodes=args.max_oracle_nodes)
    return pair_singlepass(graph, args.sweep, virtual_edges=not args.no_virtual_edges)


def cmd_pair(args) -> int:
    graph = _load(args.input)
    try:
        diagram = _pair(graph, args)
    except GraphError as exc:
        raise InputError(str(exc)) from None
    _emit(diagram_to_csv(diagram), args.output)
    if args.svg:
        Path(args.svg).write_text(render_svg(diagram, title=Path(args.input).name), encoding="utf-8")
    return EXIT_OK


def _load_diagram(path: str):
    try:
        return read_diagram(path)
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None
    except GraphError as exc:
        raise InputError(f"{path}: {exc}") from None


def cmd_diff(args) -> int:
    diff = diagram_diff(_load_diagram(args.a), _load_diagram(args.b))
    print(diff)
    return EXIT_DIFF if diff else EXIT_OK


def cmd_generate(args) -> int:
    try:
        spec = GenSpec(kind=args.kind, n=args.n, seed=args.seed, p2=args.p2,
                       tree_mode=args.mode, values=args.values)
    except ValueError as exc:
        raise InputError(str(exc)) from None
    graph = generate(spec)
    if args.conditioned:
        graph = condition(graph)[0]
    _emit(graph_to_json(graph), args.output)
    return EXIT_OK


def cmd_cut_cycles(args) -> int:
    graph = _load(args.input)
    if validate_conditioned(graph):
        graph = condition(graph)[0]
    try:
        result = cut_cycles(graph, args.k, seed=args.seed)
    except GraphError as exc:
        raise InputError(str(exc)) from None
    _emit(graph_to_json(result), args.output)
    return EXIT_OK


def cmd_bench(args) -> int:
    records = run_suite(args.suite, args.sizes, reps=args.reps, seed=args.seed, ks=args.ks)
    _emit(records_to_csv(records), args.output)
    if args.suite == "cut":
        k = crossover(records)
        _warn("no crossover: single-pass never overtakes multipass" if k is None
              else f"single-pass is at least as fast as multipass from k = {k} cut cycles on")
    return EXIT_OK


def cmd_plot(args) -> int:
    diagram = _load_diagram(args.input)
    _emit(render_svg(diagram, title=Path(args.input).name), args.output)
    return EXIT_OK


def _int_list(text: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="reebpair", description="Persistence pairing on Reeb graphs.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("condition", help="bring a graph into canonical form")
    p.add_argument("input", help="graph JSON ('-' for stdin)")
    p.add_argument("-o", "--output", help="output graph JSON (default stdout)")
    p.add_argument("--report", help="write the conditioning report here instead of stderr")
    p.add_argument("--split-components", action="store_true",
                   help="write one file per connected component (OUT_0.json, OUT_1.json, ...)")
    p.set_defaults(func=cmd_condition)

    p = sub.add_parser("pair", help="compute the persistence diagram")
    p.add_argument("input")
    p.add_argument("--algo", choices=("multipass", "singlepass", "oracle"), default="singlepass")
    p.add_argument("--sweep", choices=("auto", "asc", "desc"), default="auto")
    p.add_argument("--no-virtual-edges", action="store_true", help="testing only: results may be wrong")
    p.add_argument("--max-oracle-nodes", type=int, default=DEFAULT_MAX_NODES)
    p.add_argument("-o", "--output", help="diagram CSV (default stdout)")
    p.add_argument("--svg", help="also render the diagram to this SVG file")
    p.set_defaults(func=cmd_pair)

    p = sub.add_parser("diff", help="compare two diagram CSV files")
    p.add_argument("a")
    p.add_argument("b")
    p.set_defaults(func=cmd_diff)

    p = sub.add_parser("generate", help=f"random graph or tree (PRNG {PRNG_NAME})")
    p.add_argument("kind", choices=("tree", "graph"))
    p.add_argument("--n", type=int, default=100)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--p2", type=float, default=0.5)
    p.add_argument("--mode", choices=("split", "join"), default="split")
    p.add_argument("--values", choices=("growth", "iid"), default="growth")
    p.add_argument("--conditioned", action="store_true", help="condition before writing")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("cut-cycles", help="remove k random non-bridge edges and re-condition")
    p.add_argument("input")
    p.add_argument("-k", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_cut_cycles)

    p = sub.add_parser("bench", help="time both engines")
    p.add_argument("--suite", choices=("trees", "graphs", "cut"), default="trees")
    p.add_argument("--sizes", type=_int_list, help="comma-separated n values (cut: the base graph size)")
    p.add_argument("--ks", type=_int_list, help=f"cut counts (default {','.join(map(str, DEFAULT_CUT_KS))})")
    p.add_argument("--reps", type=int, default=5)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_bench)

    p = sub.add_parser("plot", help="render a diagram CSV as SVG")
    p.add_argument("input")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_plot)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except InputError as exc:
        _warn(str(exc))
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
