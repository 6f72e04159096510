"""Command-line driver for gemcraft."""

import argparse
import json
import logging
import re
import sys
from collections.abc import Callable, Sequence
from typing import Any, NoReturn

from rich.console import Console

from . import __version__
from .analyzer import (
    ComplexityReporter,
    bound_report,
    bound_table,
    canonical_json,
    gm_report,
    invariants_report,
    replay_report,
    run_gm,
    table_tsv,
    validate_report,
    witness_from_dict,
    write_output,
)
from .gemcraft.complex import build_complex, cap_off, complex_to_json, desingularize
from .gemcraft.doubling import double_diagram
from .gemcraft.exceptions import (
    ConfigurationError,
    ConsistencyError,
    GraphFormatError,
    PreconditionError,
)
from .gemcraft.export import to_dot, to_svg
from .gemcraft.formats import dumps, load_diagram, load_graph, read_text
from .gemcraft.graph import ColouredGraph, colour_isomorphic
from .gemcraft.heegaard import replay
from .gemcraft.seifert import (
    LambdaParams,
    SeifertParams,
    lambda_graph,
    lambda_vertex_names,
    standard_diagram,
    torus_knot_graph,
)
from .utils import RunConfig, load_config, setup_logging, verbosity_level

console = Console()
error_console = Console(stderr=True)
logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_FORMAT = 2
EXIT_PRECONDITION = 3
EXIT_INTERNAL = 4

_LAMBDA_NAME = re.compile(r"^Lambda\(\((\d+),(\d+)\),\((\d+),(\d+)\)\)$")


class _ArgumentParser(argparse.ArgumentParser):
    """Report usage errors with the tool's usage exit code."""

    def error(self, message: str) -> NoReturn:
        self.print_usage(sys.stderr)
        error_console.print(f"[red]{self.prog}: error: {message}[/red]")
        raise SystemExit(EXIT_USAGE)


def _vertex_labels(g: ColouredGraph) -> list[str] | None:
    match = _LAMBDA_NAME.match(g.name or "")
    if match is None:
        return None
    params = LambdaParams(*(int(group) for group in match.groups()))
    names = lambda_vertex_names(params)
    return names if len(names) == g.vertex_count else None


def _emit_graph(g: ColouredGraph, config: RunConfig) -> None:
    fmt = "compact" if config.output_format == "compact" else "json"
    write_output(dumps(g, fmt), config.output_path)


def _emit_report(
    report: Any, config: RunConfig, render: Callable[[ComplexityReporter, Any], None]
) -> None:
    if config.output_format == "text":
        render(ComplexityReporter(console), report)
        return
    write_output(canonical_json(report), config.output_path)


def cmd_validate(args: argparse.Namespace, config: RunConfig) -> None:
    report = validate_report(load_graph(args.input))
    _emit_report(report, config, ComplexityReporter.print_validation)


def cmd_invariants(args: argparse.Namespace, config: RunConfig) -> None:
    report = invariants_report(load_graph(args.input))
    _emit_report(report, config, ComplexityReporter.print_validation)


def cmd_gm(args: argparse.Namespace, config: RunConfig) -> None:
    g = load_graph(args.input)
    if args.replay:
        _replay(g, args.replay, config)
        return
    result = run_gm(g, config)
    if result.truncated:
        logger.warning("search truncated at limit %d", config.limit)
    logger.info("%s: GM-complexity at most %d", g.name or "graph", result.value)
    _emit_report(gm_report(g, result, config), config, ComplexityReporter.print_complexity)


def _replay(g: ColouredGraph, witness_path: str, config: RunConfig) -> None:
    text = read_text(witness_path)
    try:
        data = json.loads(text)
    except json.JSONDecodeError as error:
        raise GraphFormatError(
            f"{witness_path}: line {error.lineno} column {error.colno}: {error.msg}"
        ) from error
    witness = witness_from_dict(data)
    result = replay(g, witness)
    expected = data.get("value") if isinstance(data, dict) else None
    if expected is not None and expected != result.value:
        raise ConsistencyError(f"witness reproduces {result.value}, report says {expected}")
    _emit_report(
        replay_report(g, witness, result), config, ComplexityReporter.print_complexity
    )


def cmd_replay(args: argparse.Namespace, config: RunConfig) -> None:
    _replay(load_graph(args.input), args.witness, config)


def cmd_gen(args: argparse.Namespace, config: RunConfig) -> None:
    if args.family == "torus-knot":
        _emit_graph(torus_knot_graph(args.p, args.q), config)
        return
    params = LambdaParams(args.p, args.h, args.q, args.k)
    if args.family == "lambda":
        _emit_graph(lambda_graph(params), config)
    else:
        write_output(dumps(standard_diagram(params)), config.output_path)


def cmd_double(args: argparse.Namespace, config: RunConfig) -> None:
    doubled = double_diagram(load_diagram(args.input))
    if args.check:
        expected = load_graph(args.check)
        mapping = colour_isomorphic(
            doubled,
            expected,
            permute_colours_allowed=config.identify_colour_permutations,
        )
        if mapping is None:
            raise ConsistencyError(f"doubled graph is not colour-isomorphic to {args.check}")
        logger.info("doubled graph matches %s", args.check)
    _emit_graph(doubled, config)


def cmd_desingularize(args: argparse.Namespace, config: RunConfig) -> None:
    result = desingularize(load_graph(args.input))
    if config.output_format == "text":
        ComplexityReporter(console).print_validation(validate_report(result.graph))
        return
    _emit_graph(result.graph, config)


def cmd_cap(args: argparse.Namespace, config: RunConfig) -> None:
    _emit_graph(cap_off(load_graph(args.input), args.colour), config)


def cmd_bound(args: argparse.Namespace, config: RunConfig) -> None:
    report = bound_report(SeifertParams(args.p, args.alpha_twist, args.q, args.beta_twist))
    if config.output_format == "text":
        console.print(f"{report['seifert']}: complexity at most {report['value']}")
        return
    _emit_report(report, config, ComplexityReporter.print_complexity)


def cmd_table(args: argparse.Namespace, config: RunConfig) -> None:
    if args.max < 4:
        raise ConfigurationError(f"--max must be at least 4, got {args.max}")
    rows = bound_table(args.max, config)
    if config.output_format == "text":
        ComplexityReporter(console).print_bound_table(rows)
    elif config.output_format == "json":
        write_output(canonical_json(rows), config.output_path)
    else:
        write_output(table_tsv(rows), config.output_path)


def cmd_export(args: argparse.Namespace, config: RunConfig) -> None:
    g = load_graph(args.input)
    labels = _vertex_labels(g)
    if config.output_format == "dot":
        text = to_dot(g, config.permutation, labels)
    elif config.output_format == "svg":
        text = to_svg(g, labels, max_vertices=config.svg_max_vertices)
    elif config.output_format == "complex":
        text = canonical_json(complex_to_json(build_complex(g)))
    else:
        text = dumps(g)
    write_output(text, config.output_path)


COMMANDS: dict[str, Callable[[argparse.Namespace, RunConfig], None]] = {
    "validate": cmd_validate,
    "invariants": cmd_invariants,
    "gm": cmd_gm,
    "replay": cmd_replay,
    "gen": cmd_gen,
    "double": cmd_double,
    "desingularize": cmd_desingularize,
    "cap": cmd_cap,
    "bound": cmd_bound,
    "table": cmd_table,
    "export": cmd_export,
}


def _add_output(
    parser: argparse.ArgumentParser, formats: Sequence[str], default: str | None = None
) -> None:
    parser.add_argument("-o", "--output", help="output file (standard output by default)")
    parser.add_argument(
        "-f", "--format", choices=formats, default=default or formats[0], help="output format"
    )


def _add_search(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--limit", type=int, help="maximum reducing choices per colour")
    parser.add_argument(
        "--heuristic-budget", type=int, help="random reductions sampled after truncation"
    )
    parser.add_argument("--seed", type=int, help="seed of the heuristic search")
    parser.add_argument("--mode", choices=["exhaustive", "heuristic"], help="search mode")
    parser.add_argument("--threads", type=int, help="worker processes (overrides config)")


def _parser() -> argparse.ArgumentParser:
    parser = _ArgumentParser(
        prog="gemcraft",
        description="Upper bounds on Matveev complexity from edge-coloured graphs",
        formatter_class=argparse.ArgumentDefaultsHelpFormatter,
    )
    parser.add_argument("--config", default="gemcraft.json", help="JSON configuration file")
    parser.add_argument("-v", "--verbose", action="store_true", help="enable informational logs")
    parser.add_argument("--debug", action="store_true", help="enable debug logs")
    parser.add_argument("--log-file", help="also write logs to this file")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    commands = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")

    def command(name: str, text: str) -> argparse.ArgumentParser:
        return commands.add_parser(
            name,
            help=text,
            description=text,
            formatter_class=argparse.ArgumentDefaultsHelpFormatter,
        )

    validate = command("validate", "classify a graph and report its residues")
    validate.add_argument("input", help="graph file, or - for standard input")
    _add_output(validate, ["json", "text"])

    invariants = command("invariants", "genus table, singular vertices and Euler characteristic")
    invariants.add_argument("input", help="graph file, or - for standard input")
    _add_output(invariants, ["json", "text"])

    gm = command("gm", "search the GM-complexity of a gem or singular graph")
    gm.add_argument("input", help="graph file, or - for standard input")
    gm.add_argument("--alpha", type=int, help="restrict the search to one colour")
    gm.add_argument("--replay", metavar="WITNESS", help="re-evaluate a stored gm report")
    _add_search(gm)
    _add_output(gm, ["json", "text"])

    replayer = command("replay", "recompute the value of a stored witness")
    replayer.add_argument("input", help="graph file, or - for standard input")
    replayer.add_argument("witness", help="gm report or witness JSON file")
    _add_output(replayer, ["json", "text"])

    gen = command("gen", "generate Λ graphs, torus knot graphs and their diagrams")
    families = gen.add_subparsers(dest="family", required=True, metavar="FAMILY")
    for family, text in (
        ("lambda", "the graph Λ((p,h),(q,k))"),
        ("diagram", "the genus-2 diagram H((p,h),(q,k))"),
    ):
        sub = families.add_parser(family, help=text, description=text)
        for name in ("p", "h", "q", "k"):
            sub.add_argument(name, type=int)
        _add_output(sub, ["json", "compact"] if family == "lambda" else ["json"])
    torus = families.add_parser("torus-knot", help="Λ for the complement of t(p,q)")
    torus.add_argument("p", type=int)
    torus.add_argument("q", type=int)
    _add_output(torus, ["json", "compact"])

    double = command("double", "double a planar Heegaard diagram into a graph")
    double.add_argument("input", help="hdiag-v1 file, or - for standard input")
    double.add_argument("--check", metavar="GRAPH", help="require a colour-isomorphic result")
    _add_output(double, ["json", "compact"])

    desing = command("desingularize", "remove the singular 0-vertices of a graph")
    desing.add_argument("input", help="graph file, or - for standard input")
    _add_output(desing, ["json", "compact", "text"])

    cap = command("cap", "cone off the boundary of a gem along {i,3}-paths")
    cap.add_argument("input", help="graph file, or - for standard input")
    cap.add_argument("--colour", type=int, choices=[0, 1, 2], default=0, help="colour i")
    _add_output(cap, ["json", "compact"])

    bound = command("bound", "closed-form bound for (D2; (p,alpha),(q,beta))")
    bound.add_argument("p", type=int)
    bound.add_argument("alpha_twist", metavar="alpha", type=int)
    bound.add_argument("q", type=int)
    bound.add_argument("beta_twist", metavar="beta", type=int)
    _add_output(bound, ["json", "text"])

    table = command("table", "compare the bound with the searched values over Λ")
    table.add_argument("--max", type=int, default=12, help="largest p + q")
    _add_search(table)
    _add_output(table, ["tsv", "json", "text"])

    export = command("export", "draw a graph as DOT or SVG, or dump its pseudocomplex")
    export.add_argument("input", help="graph file, or - for standard input")
    export.add_argument(
        "--permutation", type=int, nargs=4, metavar="C", help="list the faces of this embedding"
    )
    _add_output(export, ["dot", "json", "svg", "complex"])
    return parser


def main(argv: Sequence[str] | None = None) -> None:
    """Run the command-line application."""
    args = _parser().parse_args(argv)
    setup_logging(verbosity_level(args.verbose, args.debug), args.log_file)
    try:
        config = RunConfig.from_namespace(args, load_config(args.config))
        COMMANDS[args.command](args, config)
    except KeyboardInterrupt:
        error_console.print("\n[yellow]Interrupted by user[/yellow]")
        raise SystemExit(130) from None
    except ConfigurationError as error:
        logger.error("Invalid settings: %s", error)
        error_console.print(f"[red]Error: {error}[/red]")
        raise SystemExit(EXIT_USAGE) from error
    except GraphFormatError as error:
        logger.error("Unreadable input: %s", error)
        error_console.print(f"[red]Error: {error}[/red]")
        raise SystemExit(EXIT_FORMAT) from error
    except PreconditionError as error:
        logger.error("Precondition failed: %s", error)
        error_console.print(f"[red]Error: {error}[/red]")
        raise SystemExit(EXIT_PRECONDITION) from error
    except ConsistencyError as error:
        logger.error("Consistency check failed: %s", error)
        error_console.print(f"[red]Error: {error}[/red]")
        raise SystemExit(EXIT_INTERNAL) from error
    except Exception as error:
        logger.exception("Unexpected failure")
        error_console.print(f"[red]Unexpected error: {error}[/red]")
        raise SystemExit(EXIT_INTERNAL) from error


if __name__ == "__main__":
    main()
