"""
rpq.py

Command-line entry point.

    python rpq.py query --graph data/bank.graph --regex "h* s (h|s)*" --source Alix --target Bob
    python rpq.py bench --seed 0 --plot bench.png
"""

import argparse
import os
import sys

sys.path.append(os.path.dirname(__file__))

from cli.bench_command import BenchCommand
from cli.query_command import QueryCommand
from config.bench_config import BenchConfig
from config.logging_config import LoggingConfig
from config.query_params import QueryParams


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        description="Distinct shortest walks matching a regular path query")
    parser.add_argument("-v", "--verbose", action="count", default=0,
                        help="-v info, -vv debug (stderr)")
    subparsers = parser.add_subparsers(dest="command", help="Command")

    query_parser = subparsers.add_parser("query", help="Enumerate the answers of a query")
    QueryCommand.add_arguments(query_parser)

    bench_parser = subparsers.add_parser("bench", help="Step-count scaling experiments")
    bench_parser.add_argument("--seed", type=int, default=BenchConfig.SEED_DEFAULT)
    bench_parser.add_argument("--plot", metavar="PATH", help="Save the plots here")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    LoggingConfig.configure(args.verbose)

    if args.command == "query":
        return QueryCommand.cmd_query(QueryCommand.from_args(args))
    if args.command == "bench":
        BenchCommand.cmd_bench(seed=args.seed, plot=args.plot)
        return QueryParams.EXIT_OK

    parser.print_help()
    return QueryParams.EXIT_INPUT_ERROR


if __name__ == "__main__":
    sys.exit(main())
