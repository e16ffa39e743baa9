"""Command-line interface.

Every command prints one JSON object. Exit status: 0 when the command
succeeded and any checked property holds, 1 when a verification or census
found a violation, 2 on malformed input or an argument outside the domain.
"""

import argparse
import asyncio
import json
import sys
from pathlib import Path
from typing import Any, Callable, Dict, List, Optional, Sequence

from loguru import logger

from zq_switching import __version__, algebra_handler, census_handler, config, graph_handler
from zq_switching.regression import manifest

EXIT_OK = 0
EXIT_VIOLATION = 1
EXIT_ERROR = 2


def _int_list(text: str) -> List[int]:
    """Parse "0,2,3" into [0, 2, 3]."""
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


def _common() -> argparse.ArgumentParser:
    # Global flags may also follow the subcommand.
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--jobs", type=int, default=argparse.SUPPRESS, help="Worker processes for censuses")
    p.add_argument("--budget", type=int, default=argparse.SUPPRESS, help="Enumeration budget")
    p.add_argument("--seed", type=int, default=argparse.SUPPRESS, help="PRNG seed")
    p.add_argument("--out", default=argparse.SUPPRESS, help="Write the JSON report to this file")
    return p


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="zq-switching",
        description="Switching separability of Z_q graphs, partial functions and quasigroups",
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    parser.add_argument(
        "--version",
        action="version",
        version=f"zq-switching {__version__}\n{json.dumps(manifest(), indent=2)}",
    )
    parser.add_argument("--jobs", type=int, default=None, help="Worker processes for censuses")
    parser.add_argument("--budget", type=int, default=None, help="Enumeration budget")
    parser.add_argument("--seed", type=int, default=None, help="PRNG seed")
    parser.add_argument("--out", default=None, help="Write the JSON report to this file")
    common = [_common()]
    groups = parser.add_subparsers(dest="group", required=True)

    def command(group, name: str, handler: Callable, build: Callable[[argparse.Namespace], Dict[str, Any]], summary: str):
        p = group.add_parser(name, parents=common, help=summary)
        p.set_defaults(handler=handler, build=build)
        return p

    # graph
    graph = groups.add_parser("graph", help="Single-graph operations").add_subparsers(dest="command", required=True)
    p = command(graph, "check-additive", graph_handler.check_additive,
                lambda a: {"graph": a.graph}, "Is the graph additive?")
    p.add_argument("--graph", required=True)
    p = command(graph, "switch", graph_handler.switch_graph,
                lambda a: {"graph": a.graph, "labels": a.labels}, "Switch by a vertex labeling")
    p.add_argument("--graph", required=True)
    p.add_argument("--labels", type=_int_list, required=True)
    p = command(graph, "isolate", graph_handler.isolate_vertex,
                lambda a: {"graph": a.graph, "vertex": a.vertex}, "Switch one vertex to isolation")
    p.add_argument("--graph", required=True)
    p.add_argument("--vertex", type=int, default=0)
    p = command(graph, "separable", graph_handler.analyze_separability,
                lambda a: {"graph": a.graph, "W": a.W}, "Decide separability")
    p.add_argument("--graph", required=True)
    p.add_argument("--W", type=_int_list, default=None)
    p = command(graph, "sets", graph_handler.list_separable_sets,
                lambda a: {"graph": a.graph}, "List nontrivial separable sets")
    p.add_argument("--graph", required=True)
    p = command(graph, "critical", graph_handler.analyze_criticality,
                lambda a: {"graph": a.graph}, "Decide criticality")
    p.add_argument("--graph", required=True)
    p = command(graph, "swiso", graph_handler.find_switching_isomorphism,
                lambda a: {"graph": a.graph, "other": a.other}, "Search a switching isomorphism")
    p.add_argument("--graph", required=True)
    p.add_argument("--other", required=True)

    # family
    family = groups.add_parser("family", help="The critical family G_{n,gamma}").add_subparsers(dest="command", required=True)
    for name, handler, help_text in (
        ("gen", graph_handler.generate_family, "Emit G_{n,gamma}"),
        ("verify", graph_handler.verify_family, "Verify criticality of G_{n,gamma}"),
    ):
        p = command(family, name, handler,
                    lambda a: {"n": a.n, "q": a.q, "gamma": a.gamma, "classes": getattr(a, "classes", False)},
                    help_text)
        p.add_argument("--n", type=int, required=True)
        p.add_argument("--q", type=int, required=True)
        p.add_argument("--gamma", type=int, required=True)
        if name == "verify":
            p.add_argument("--classes", action="store_true", help="Group gamma values by switching isomorphism")

    # census
    census = groups.add_parser("census", help="Exhaustive and sampled censuses").add_subparsers(dest="command", required=True)
    p = command(census, "critical", census_handler.census_critical,
                lambda a: {"q": a.q, "n": a.n, "jobs": a.jobs, "budget": a.budget, "timing": a.timing},
                "Find all critical switching classes")
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--timing", action="store_true", help="Include wall time in the report")
    p = command(census, "check", census_handler.census_check,
                lambda a: {"name": a.name, "q": a.q, "n": a.n, "seed": a.seed, "samples": a.samples,
                           "budget": a.budget, "jobs": a.jobs},
                "Run a structural property check")
    p.add_argument("--name", required=True)
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--samples", type=int, default=None)

    # fn
    fn = groups.add_parser("fn", help="Partial functions over prime Z_q").add_subparsers(dest="command", required=True)
    p = command(fn, "reduce", algebra_handler.reduce_polynomial,
                lambda a: {"poly": a.poly, "a": a.a}, "Reduce a polynomial on sum = a")
    p.add_argument("--poly", required=True)
    p.add_argument("--a", type=int, default=0)
    p = command(fn, "graph", algebra_handler.quadratic_graph,
                lambda a: {"poly": a.poly}, "Graph of a quadratic")
    p.add_argument("--poly", required=True)
    p = command(fn, "separable", algebra_handler.function_separability,
                lambda a: {"function": a.fn, "a": a.a, "W": a.W, "use_graph": a.use_graph,
                           "verify": a.verify, "subfunctions": a.subfunctions},
                "Decide separability of an extension")
    p.add_argument("--fn", required=True)
    p.add_argument("--a", type=int, default=None)
    p.add_argument("--W", type=_int_list, default=None)
    p.add_argument("--use-graph", action="store_true")
    p.add_argument("--verify", action="store_true")
    p.add_argument("--subfunctions", action="store_true")
    p = command(fn, "oracle", algebra_handler.oracle_split,
                lambda a: {"function": a.fn, "a": a.a, "W": a.W}, "Split an extension along W")
    p.add_argument("--fn", required=True)
    p.add_argument("--a", type=int, default=None)
    p.add_argument("--W", type=_int_list, required=True)
    p = command(fn, "compare", algebra_handler.compare_quadratic_deciders,
                lambda a: {"q": a.q, "n": a.n, "a": a.a, "count": a.count, "seed": a.seed, "exhaustive": a.exhaustive},
                "Graph test against the oracle")
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--a", type=int, default=0)
    p.add_argument("--count", type=int, default=200)
    p.add_argument("--exhaustive", action="store_true")

    # qg
    qg = groups.add_parser("qg", help="n-ary quasigroups of order q^2").add_subparsers(dest="command", required=True)
    p = command(qg, "build", algebra_handler.build_quasigroup,
                lambda a: {"function": a.fn, "a": a.a}, "Build Q_{f,a}")
    p.add_argument("--fn", required=True)
    p.add_argument("--a", type=int, default=None)
    p = command(qg, "check", algebra_handler.check_quasigroup,
                lambda a: {"table": a.table}, "Check the Latin property")
    p.add_argument("--table", required=True)
    p = command(qg, "retract", algebra_handler.retract_quasigroup,
                lambda a: {"table": a.table, "i": a.i, "c": a.c}, "Fix one argument")
    p.add_argument("--table", required=True)
    p.add_argument("--i", type=int, required=True)
    p.add_argument("--c", type=int, required=True)
    p = command(qg, "invert", algebra_handler.invert_quasigroup,
                lambda a: {"table": a.table, "i": a.i}, "Inverse at one position")
    p.add_argument("--table", required=True)
    p.add_argument("--i", type=int, required=True)
    p = command(qg, "separable", algebra_handler.quasigroup_separability,
                lambda a: {"table": a.table, "W": a.W, "allow_full": a.allow_full}, "Decompose along W")
    p.add_argument("--table", required=True)
    p.add_argument("--W", type=_int_list, default=None)
    p.add_argument("--allow-full", action="store_true", help="Admit |W| = n")
    p = command(qg, "verify-prop5", algebra_handler.verify_quasigroup_correspondence,
                lambda a: {"q": a.q, "n": a.n, "count": a.count, "seed": a.seed},
                "Quasigroup and extension separability agree")
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--count", type=int, default=100)
    p = command(qg, "verify-cor7", algebra_handler.verify_retract_implication,
                lambda a: {"function": a.fn, "q": a.q, "n": a.n, "a": a.a, "seed": a.seed, "count": a.count},
                "Separable retracts force a separable Q_{f,a}")
    p.add_argument("--fn", default=None)
    p.add_argument("--q", type=int, default=None)
    p.add_argument("--n", type=int, default=None)
    p.add_argument("--a", type=int, default=0)
    p.add_argument("--count", type=int, default=None, help="Check this many seeded quadratics")

    return parser


def exit_code(result: Dict[str, Any]) -> int:
    if "error" in result:
        return EXIT_ERROR
    if result.get("ok") is False:
        return EXIT_VIOLATION
    return EXIT_OK


def emit(result: Dict[str, Any], out: Optional[str]) -> None:
    text = json.dumps(result, indent=2) + "\n"
    if out:
        Path(out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def run(argv: Optional[Sequence[str]] = None) -> int:
    """Parse argv, run the command and emit its JSON; returns the exit code."""
    args = build_parser().parse_args(argv)
    arguments = args.build(args)
    result = asyncio.run(args.handler(arguments))
    if "error" in result:
        logger.error(result["error"])
    emit(result, args.out)
    return exit_code(result)


def main(argv: Optional[Sequence[str]] = None) -> int:
    config.setup_logging()
    return run(argv)


if __name__ == "__main__":
    sys.exit(main())
