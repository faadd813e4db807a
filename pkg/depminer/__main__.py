import argparse
import contextlib
import sys
from typing import Any, Dict, Iterator, List, Optional, Sequence, TextIO

from . import __version__
from .axioms.analyzer import AxiomAnalyzer
from .axioms.reporter import AxiomReporter
from .context import Context
from .dataset import ROW_SET_KINDS
from .diagnostics.analyzer import BoundsAnalyzer
from .diagnostics.reporter import BoundsReporter
from .errors import DatasetParseError, DepMinerError
from .measures import MEASURES
from .mining.analyzer import MineAnalyzer, OracleAnalyzer
from .mining.reporter import DELIMITERS, LOG_BASES, ComparisonReporter, RuleReporter
from .search import PolarityMode, ThresholdGoal, TopKGoal

PROG = "depminer"
EXIT_OK = 0
EXIT_USAGE = 1
EXIT_IO = 2


class UsageError(DepMinerError):
    pass


class ArgumentParser(argparse.ArgumentParser):
    """argparse with usage errors raised instead of printed and exited on."""

    def error(self, message: str) -> None:  # type: ignore[override]
        raise UsageError(message)


def int_list(text: str) -> List[int]:
    try:
        values = [int(part) for part in text.split(",") if part.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma separated integers, got {text!r}") from None
    if not values:
        raise argparse.ArgumentTypeError("expected at least one integer")
    return values


def positive_int(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}") from None
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {value}")
    return value


def add_mining_arguments(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--data", required=True, help="Transaction file (.dat FIMI or .csv 0/1 matrix)")
    parser.add_argument("--input-format", choices=["fimi", "csv"], help="Override format detection")
    parser.add_argument("--measure", choices=sorted(MEASURES), default="chi2", help="Goodness measure")
    parser.add_argument(
        "--mode",
        choices=[m.value for m in PolarityMode],
        default=PolarityMode.POSITIVE.value,
        help="Dependency polarity to mine (default: pos)",
    )
    goal = parser.add_mutually_exclusive_group(required=True)
    goal.add_argument("--min-value", type=float, help="Report every rule at least this good")
    goal.add_argument("--top-k", type=positive_int, help="Report the K best rules")
    parser.add_argument("--max-size", type=positive_int, default=3, help="Largest antecedent (default: 3)")
    parser.add_argument(
        "--consequent",
        action="append",
        metavar="ATTR",
        help='Restrict consequents; "attr" means attr=1, "!attr" means attr=0 (repeatable)',
    )
    parser.add_argument(
        "--no-negated-consequents",
        action="store_true",
        help="Only consider consequents of the form A=1",
    )
    parser.add_argument("--threads", type=positive_int, default=1, help="Worker threads")
    parser.add_argument(
        "--row-sets",
        choices=sorted(ROW_SET_KINDS),
        default="bitmap",
        help="Row set representation used for support counting (default: bitmap)",
    )

    output_group = parser.add_argument_group("Output Options")
    output_group.add_argument("-o", "--output", help="Write rules to this file instead of stdout")
    output_group.add_argument("--format", choices=sorted(DELIMITERS), default="csv", help="Rule table format")
    output_group.add_argument(
        "--log-base",
        choices=LOG_BASES,
        default="e",
        help="Print mi and j scores in this log base (default: e)",
    )
    output_group.add_argument("--stats-json", help="Write search counters as JSON instead of stderr")


def build_parser() -> argparse.ArgumentParser:
    common = ArgumentParser(add_help=False)
    common.add_argument("--debug", action="store_true", help="Enable debug logging")

    parser = ArgumentParser(
        prog=PROG,
        description="Mine positive and negative dependency rules with well-behaving goodness measures",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    subparsers = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")

    mine = subparsers.add_parser("mine", parents=[common], help="Mine dependency rules")
    add_mining_arguments(mine)

    oracle = subparsers.add_parser("oracle", parents=[common], help="Mine by exhaustive enumeration")
    add_mining_arguments(oracle)
    oracle.add_argument("--compare", action="store_true", help="Compare with the pruned miner")

    axioms = subparsers.add_parser(
        "check-axioms", parents=[common], help="Verify the well-behaving conditions of a measure"
    )
    axioms.add_argument("--measure", choices=sorted(MEASURES), required=True)
    axioms.add_argument("--n", type=int_list, required=True, help="Data sizes, e.g. 20,50")
    axioms.add_argument("--ma", type=int_list, help="Consequent counts (default: every 0 < m_a < n)")
    axioms.add_argument("--csv", help="Write every violation to this CSV file")
    axioms.add_argument("--probe", action="store_true", help="Also probe condition (iv) on the opposite side")
    axioms.add_argument("--threads", type=positive_int, default=1, help="Worker threads")
    axioms.add_argument(
        "-o", "--output", choices=["table", "markdown"], default="table", help="Report format"
    )

    bounds = subparsers.add_parser("bounds", parents=[common], help="Print every bound for given counts")
    bounds.add_argument("--measure", choices=sorted(MEASURES), required=True)
    bounds.add_argument("--mx", type=int, required=True, help="m(X)")
    joint = bounds.add_mutually_exclusive_group(required=True)
    joint.add_argument("--mxa", type=int, help="m(XA=a)")
    joint.add_argument("--delta", type=float, help="Leverage P(XA=a) - P(X)P(A=a), instead of --mxa")
    bounds.add_argument("--ma", type=int, required=True, help="m(A=a)")
    bounds.add_argument("--n", type=int, required=True, help="Data size")
    bounds.add_argument(
        "--mode",
        choices=[m.value for m in PolarityMode],
        help="Polarities to bound (default: all the measure supports)",
    )
    bounds.add_argument("--lattice-csv", help="Dump the legal (n_x, n_xa) lattice of (m_a, n) to this file")
    return parser


@contextlib.contextmanager
def open_output(path: Optional[str]) -> Iterator[TextIO]:
    if path is None:
        yield sys.stdout
        return
    with open(path, "w", newline="") as f:
        yield f


def mining_kwargs(args: argparse.Namespace) -> Dict[str, Any]:
    goal = TopKGoal(args.top_k) if args.top_k is not None else ThresholdGoal(args.min_value)
    return {
        "data_path": args.data,
        "input_format": args.input_format,
        "measure": args.measure,
        "goal": goal,
        "mode": PolarityMode(args.mode),
        "max_size": args.max_size,
        "consequents": args.consequent,
        "allow_negated": not args.no_negated_consequents,
        "workers": args.threads,
        "row_sets": args.row_sets,
    }


def cmd_mine(context: Context, args: argparse.Namespace) -> int:
    digits = context.setting("output", "significant_digits")
    reporter = RuleReporter(digits=digits)
    context.register_analyzer(MineAnalyzer())
    context.register_reporter(reporter)

    result = context.run_analyzers("mine", **mining_kwargs(args))[0]
    with open_output(args.output) as stream:
        reporter.output = stream
        context.run_reports("mine", result.data, format=args.format, log_base=args.log_base)
    reporter.write_stats(result.data.stats, args.stats_json)
    return result.exit_code


def cmd_oracle(context: Context, args: argparse.Namespace) -> int:
    digits = context.setting("output", "significant_digits")
    context.register_analyzer(OracleAnalyzer())
    context.register_reporter(ComparisonReporter(digits=digits))

    result = context.run_analyzers("oracle", compare=args.compare, **mining_kwargs(args))[0]
    run = result.data
    rules = RuleReporter(digits=digits)
    if args.compare:
        context.run_reports("oracle", run)
    else:
        with open_output(args.output) as stream:
            rules.output = stream
            rules.print_report(run, format=args.format, log_base=args.log_base)
    rules.write_stats(run.stats, args.stats_json)
    return result.exit_code


def cmd_check_axioms(context: Context, args: argparse.Namespace) -> int:
    reporter = AxiomReporter(digits=context.setting("output", "significant_digits"))
    context.register_analyzer(AxiomAnalyzer())
    context.register_reporter(reporter)

    result = context.run_analyzers(
        "check-axioms",
        measure=args.measure,
        n_values=args.n,
        m_a_values=args.ma,
        probe=args.probe,
        workers=args.threads,
    )[0]
    if args.output == "markdown":
        reporter.print_report_markdown(result.data)
    else:
        context.run_reports("check-axioms", result.data)
    if args.csv:
        reporter.write_violations_csv(result.data, args.csv)
    return result.exit_code


def cmd_bounds(context: Context, args: argparse.Namespace) -> int:
    reporter = BoundsReporter(digits=context.setting("output", "significant_digits"))
    context.register_analyzer(BoundsAnalyzer())
    context.register_reporter(reporter)

    result = context.run_analyzers(
        "bounds",
        measure=args.measure,
        m_x=args.mx,
        m_xa=args.mxa,
        delta=args.delta,
        m_a=args.ma,
        n=args.n,
        mode=args.mode,
        lattice=args.lattice_csv is not None,
    )[0]
    context.run_reports("bounds", result.data)
    if args.lattice_csv:
        reporter.write_lattice_csv(result.data, args.lattice_csv)
    return result.exit_code


COMMANDS = {
    "mine": cmd_mine,
    "oracle": cmd_oracle,
    "check-axioms": cmd_check_axioms,
    "bounds": cmd_bounds,
}


def fail(message: str, code: int) -> int:
    sys.stderr.write(f"{PROG}: error: {message}\n")
    return code


def run(argv: Optional[Sequence[str]] = None) -> int:
    """Parse arguments, dispatch the subcommand and map failures to exit codes.

    Exit codes: 0 success, 1 usage or configuration error, 2 I/O or parse
    error, 3 miner/oracle mismatch, 4 axiom violations.
    """
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as e:
        return fail(str(e), EXIT_USAGE)
    except SystemExit as e:
        # --help and --version
        return e.code if isinstance(e.code, int) else EXIT_OK

    try:
        context = Context(debug=args.debug)
        context.load_config()
        return COMMANDS[args.command](context, args)
    except DatasetParseError as e:
        return fail(str(e), EXIT_IO)
    except OSError as e:
        detail = f"{e.strerror}: {e.filename}" if e.filename else str(e)
        return fail(detail, EXIT_IO)
    except (DepMinerError, ValueError) as e:
        return fail(str(e), EXIT_USAGE)


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
