"""
cli/query_command.py

The `query` command: load a graph, compile the query, stream the answers.

Output, one answer per line in canonical order:
    e2,e4,e8                        (--format edges, default)
    Alix -e2-> Dan -e4-> Eve ...    (--format full)
    e2,e4,e8 x3                     (--multiplicity)

Exit status: 0 ok, 2 input error, 3 no matching walk.
"""

import argparse
import itertools
import logging
import os
import sys
import time
from dataclasses import dataclass
from typing import Iterator, List, Optional, TextIO, Tuple, Union

sys.path.append(os.path.dirname(os.path.dirname(__file__)))

from config.query_params import QueryParams
from models.automaton.nfa import Automaton
from models.automaton.nfa_loader import NfaLoader
from models.automaton.run_counter import WalkMatcher
from models.automaton.thompson import ThompsonBuilder
from models.enumeration.enumerate import Enumerator, OutputWalk
from models.enumeration.memoryless import MemorylessEnumerator
from models.enumeration.trim import Trimmer
from models.errors import NoMatchingWalk, RPQError
from models.graph.database import Database
from models.graph.graph_loader import GraphLoader
from models.graph.walk import WalkFormatter
from utils.step_counter import StepCounter

logger = logging.getLogger(__name__)


@dataclass
class QueryRequest:
    graph: str
    source: str
    regex: Optional[str] = None
    nfa: Optional[str] = None
    target: Optional[str] = None
    all_targets: bool = False
    mode: str = QueryParams.MODE_DEFAULT
    cost_field: bool = False
    limit: Optional[int] = None
    resume_from: Optional[str] = None
    multiplicity: bool = False
    format: str = QueryParams.FORMAT_DEFAULT
    stats: bool = False

    def validate(self):
        valid, message = QueryParams.validate_request(
            self.regex, self.nfa, self.target, self.all_targets,
            self.mode, self.resume_from, self.limit)
        if not valid:
            raise ValueError(message)
        if self.format not in QueryParams.FORMATS:
            raise ValueError(f"format must be one of {QueryParams.FORMATS}")


class QueryCommand:

    @staticmethod
    def add_arguments(parser: argparse.ArgumentParser):
        parser.add_argument("--graph", required=True, help="Graph file")
        query = parser.add_mutually_exclusive_group()
        query.add_argument("--regex", help="Regular expression over edge labels")
        query.add_argument("--nfa", help="NFA file")
        parser.add_argument("--source", required=True, help="Source vertex name")
        target = parser.add_mutually_exclusive_group()
        target.add_argument("--target", help="Target vertex name")
        target.add_argument("--all-targets", action="store_true",
                            help="Answer for every vertex reachable by a matching walk")
        parser.add_argument("--mode", choices=QueryParams.MODES, default=QueryParams.MODE_DEFAULT)
        parser.add_argument("--cost-field", action="store_true",
                            help="Read the 5th edge column as a positive cost")
        parser.add_argument("--limit", type=int, help="Stop after N answers")
        parser.add_argument("--resume-from", metavar="WALK",
                            help="Print the answers after this one (edge names, comma separated)")
        parser.add_argument("--multiplicity", action="store_true",
                            help="Append the number of accepting runs")
        parser.add_argument("--format", choices=QueryParams.FORMATS,
                            default=QueryParams.FORMAT_DEFAULT)
        parser.add_argument("--stats", action="store_true", help="Step counts on stderr")

    @staticmethod
    def from_args(args: argparse.Namespace) -> QueryRequest:
        return QueryRequest(
            graph=args.graph, source=args.source, regex=args.regex, nfa=args.nfa,
            target=args.target, all_targets=args.all_targets, mode=args.mode,
            cost_field=args.cost_field, limit=args.limit, resume_from=args.resume_from,
            multiplicity=args.multiplicity, format=args.format, stats=args.stats,
        )

    @staticmethod
    def load_query(request: QueryRequest) -> Automaton:
        if request.regex is not None:
            return ThompsonBuilder.compile_regex(request.regex)
        return NfaLoader.load_file(request.nfa)

    @staticmethod
    def _line(db: Database, output: OutputWalk, request: QueryRequest) -> str:
        line = WalkFormatter.render(db, output.walk, request.format)
        if output.multiplicity is not None:
            line += f"{QueryParams.MULTIPLICITY_PREFIX}{output.multiplicity}"
        return line

    @staticmethod
    def _take(stream: Iterator[OutputWalk], limit: Optional[int]) -> Iterator[OutputWalk]:
        """At most limit answers; never pulls one past the limit, closes the stream when done"""
        try:
            yield from itertools.islice(stream, limit)
        finally:
            close = getattr(stream, "close", None)
            if close is not None:
                close()

    @staticmethod
    def _resumed(db: Database, A: Automaton, s: int, t: int, request: QueryRequest,
                 counter: StepCounter, delay: StepCounter) -> Tuple[float, Iterator[OutputWalk]]:
        """(lambda, answers after request.resume_from) from the memoryless successor"""
        annotation = Enumerator.annotate_for(db, A, s, t, request.mode, None, counter)
        R = Trimmer.resumable_trim_annotation(annotation, counter)
        previous = WalkFormatter.parse_edges(db, request.resume_from, s)
        lam = MemorylessEnumerator.derive_lambda(R, t)

        def outputs() -> Iterator[OutputWalk]:
            for walk in MemorylessEnumerator.iterate_memoryless(R, t, start=previous, counter=delay):
                count = WalkMatcher.count_runs(A, db, walk) if request.multiplicity else None
                yield OutputWalk(walk, count)

        return lam, outputs()

    @staticmethod
    def _print_stats(lam: Union[None, float, str], n: int, counter: StepCounter,
                     delay: StepCounter, start: float, err: TextIO):
        summary = delay.get_summary()
        print(f"lambda: {lam if lam is not None else '-'}", file=err)
        print(f"answers: {n}", file=err)
        print(f"preprocessing steps: {counter.total}", file=err)
        print(f"max steps per output: {summary['max steps per output']}", file=err)
        print(f"total time: {time.perf_counter() - start:.6f} s", file=err)

    @staticmethod
    def cmd_query(request: QueryRequest, out: TextIO = None, err: TextIO = None) -> int:
        """
        Run a query and print its answers

        Args:
            request: parsed options
            out: answer stream (default stdout)
            err: diagnostics stream (default stderr)

        Returns:
            Exit status
        """
        out = out or sys.stdout
        err = err or sys.stderr
        try:
            request.validate()
            db = GraphLoader.load_file(request.graph, with_costs=request.cost_field)
            A = QueryCommand.load_query(request)
            s = db.vertex_id(request.source)
            multiplicity = 'recompute' if request.multiplicity else None
            counter = StepCounter()
            delay = StepCounter()
            start = time.perf_counter()

            if request.all_targets:
                printed = QueryCommand._all_targets(db, A, s, request, multiplicity, out,
                                                    counter, delay)
                if printed is None:
                    raise NoMatchingWalk(request.source, "any vertex")
                if request.stats:
                    lams = " ".join(f"{name}={lam}" for name, lam, _ in printed)
                    total = sum(n for _, _, n in printed)
                    QueryCommand._print_stats(lams, total, counter, delay, start, err)
                return QueryParams.EXIT_OK

            t = db.vertex_id(request.target)
            if request.resume_from is not None:
                lam, stream = QueryCommand._resumed(db, A, s, t, request, counter, delay)
            else:
                result = Enumerator.run_query(db, A, s, t, mode=request.mode,
                                              multiplicity=multiplicity,
                                              counter=counter, delay_counter=delay)
                if not result.ok:
                    raise result.error
                stream = iter(result)
                lam = result.lam

            n = 0
            for output in QueryCommand._take(stream, request.limit):
                print(QueryCommand._line(db, output, request), file=out)
                n += 1

            if request.stats:
                QueryCommand._print_stats(lam, n, counter, delay, start, err)
            return QueryParams.EXIT_OK

        except NoMatchingWalk as exc:
            print(f"error: {exc}", file=err)
            return QueryParams.EXIT_NO_MATCH
        except (RPQError, ValueError, OSError) as exc:
            print(f"error: {exc}", file=err)
            return QueryParams.EXIT_INPUT_ERROR

    @staticmethod
    def _all_targets(db: Database, A: Automaton, s: int, request: QueryRequest,
                     multiplicity: Optional[str], out: TextIO) -> Optional[int]:
        """One '# target <name> lambda=<l>' block per reachable vertex; None if there is none"""
        if request.mode != 'shortest':
            raise ValueError("--all-targets is only available in shortest mode")
        results = Enumerator.run_query_multi(db, A, s, range(db.n_vertices), multiplicity)
        printed = None
        for t, result in results.items():
            if not result.ok:
                continue
            print(f"# target {db.vertex_names[t]} lambda={result.lam}", file=out)
            printed = printed or 0
            for output in QueryCommand._take(iter(result), request.limit):
                print(QueryCommand._line(db, output, request), file=out)
                printed += 1
        return printed
