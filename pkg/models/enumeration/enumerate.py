"""
models/enumeration/enumerate.py

Depth-first reconstruction of the answers from the trimmed index.

Simple explanation:
- The search starts at the target t with the certificate
  S = {q in F | L_t[q] = lambda} and walks edges BACKWARDS
- At a node (walk suffix w starting at u, certificate S) the next edge is
  the one with the smallest tgtidx among the heads of the queues C[u][p],
  p in S; the new certificate is the union of the state lists of every
  queue whose head is that edge
- When all queues of S are exhausted they are restarted and the search
  backtracks; a node with remaining length 0 is an answer
- Each answer comes out once, in canonical order (tgtidx sequence read
  from the last edge to the first, lexicographically)

The search keeps an explicit stack, so lambda is not limited by the
Python recursion depth.
"""

import logging
import os
import sys
from dataclasses import dataclass, field
from typing import Callable, Dict, Iterable, Iterator, List, Optional, Tuple

sys.path.append(os.path.dirname(os.path.dirname(os.path.dirname(__file__))))

from models.annotation.annotate import AnnotationResult, Annotator
from models.annotation.cheapest import CheapestAnnotator, CostSource
from models.annotation.multi_target import MultiTargetAnnotator
from models.automaton.nfa import Automaton, NfaSimulator
from models.automaton.run_counter import WalkMatcher
from models.enumeration.trim import TrimmedIndex, Trimmer
from models.errors import InvalidPrevious, NoMatchingWalk
from models.graph.database import Database
from models.graph.walk import Walk
from utils.step_counter import NullCounter, StepCounter

logger = logging.getLogger(__name__)

Cons = Optional[Tuple[int, 'Cons']]     # head-shared edge list, first edge at the head

MULTIPLICITY_METHODS = ('recompute', 'track')


class CertificateSet:
    """Set of states as a dense flag array plus insertion-ordered members"""

    __slots__ = ('flags', 'members')

    def __init__(self, n_states: int, states: Iterable[int] = ()):
        self.flags = bytearray(n_states)
        self.members: List[int] = []
        self.update(states)

    def add(self, q: int):
        if not self.flags[q]:
            self.flags[q] = 1
            self.members.append(q)

    def update(self, states: Iterable[int]):
        for q in states:
            self.add(q)

    def __contains__(self, q: int) -> bool:
        return bool(self.flags[q])

    def __iter__(self):
        return iter(self.members)

    def __len__(self) -> int:
        return len(self.members)

    def as_frozenset(self) -> frozenset:
        return frozenset(self.members)

    def __repr__(self) -> str:
        return f"CertificateSet({sorted(self.members)})"


@dataclass(frozen=True)
class OutputWalk:
    walk: Walk
    multiplicity: Optional[int] = None


@dataclass
class CallTrace:
    """(suffix edges, remaining length, certificate) at every node entered"""
    calls: List[Tuple[Tuple[int, ...], float, frozenset]] = field(default_factory=list)

    def record(self, cons: Cons, ell, certificate: CertificateSet):
        self.calls.append((cons_edges(cons), ell, certificate.as_frozenset()))


@dataclass
class QueryResult:
    """
    Lazy answer stream plus what produced it.

    status is STATUS_OK or STATUS_NO_MATCH; for the latter walks is empty.
    """
    status: str
    lam: Optional[float]
    walks: Iterator[OutputWalk]
    annotation: Optional[AnnotationResult] = None
    index: Optional[TrimmedIndex] = None
    error: Optional[NoMatchingWalk] = None

    STATUS_OK = "ok"
    STATUS_NO_MATCH = "no_matching_walk"

    def __iter__(self):
        return self.walks

    @property
    def ok(self) -> bool:
        return self.status == self.STATUS_OK


class _Frame:
    __slots__ = ('u', 'certificate', 'ell', 'cons', 'counts')

    def __init__(self, u, certificate, ell, cons, counts):
        self.u = u
        self.certificate = certificate
        self.ell = ell
        self.cons = cons
        self.counts = counts


def cons_edges(cons: Cons) -> Tuple[int, ...]:
    edges = []
    while cons is not None:
        edges.append(cons[0])
        cons = cons[1]
    return tuple(edges)


def walk_from_cons(db: Database, u: int, cons: Cons) -> Walk:
    """Materialise a suffix starting at u"""
    edges = cons_edges(cons)
    vertices = [u]
    for e in edges:
        vertices.append(db.tgt_list[e])
    return Walk(tuple(vertices), edges)


def run_counts_step(A: Automaton, labels: Tuple[int, ...], counts: List[int]) -> List[int]:
    """Runs from each state to F over e.w, given the runs over w"""
    result = [0] * A.n_states
    for q in range(A.n_states):
        row = A.delta[q]
        total = 0
        for a in labels:
            if a < len(row):
                for p in row[a]:
                    total += counts[p]
        result[q] = total
    return result


class Enumerator:

    @staticmethod
    def _next_child(C: TrimmedIndex, frame: _Frame, counter: StepCounter
                    ) -> Optional[Tuple[int, CertificateSet]]:
        """Smallest untaken edge and its certificate; restarts and returns None when done"""
        queues = C.queues[frame.u]
        tgtidx = C.db.tgtidx_list
        e_min = None
        best = None
        for p in frame.certificate:
            counter.tick()
            head = queues[p].peek()
            if head is not None:
                i = tgtidx[head[0]]
                if best is None or i < best:
                    best = i
                    e_min = head[0]

        if e_min is None:
            for p in frame.certificate:
                counter.tick()
                queues[p].restart()
            return None

        child = CertificateSet(C.automaton.n_states)
        for p in frame.certificate:
            head = queues[p].peek()
            if head is not None and head[0] == e_min:
                states = head[1]
                counter.tick(1 + len(states))
                child.update(states)
                queues[p].advance()
        return e_min, child

    @staticmethod
    def _child_frame(C: TrimmedIndex, frame: _Frame, e: int, child: CertificateSet,
                     track: Optional[Automaton]) -> _Frame:
        v = C.db.src_list[e]
        if C.L is not None:
            ell = C.L[v][child.members[0]]
        else:
            ell = frame.ell - 1
        counts = None
        if track is not None:
            counts = run_counts_step(track, C.db.edge_labels[e], frame.counts)
        return _Frame(v, child, ell, (e, frame.cons), counts)

    @staticmethod
    def _guided_descent(C: TrimmedIndex, stack: List[_Frame], previous: Walk,
                        counter: StepCounter, track: Optional[Automaton]):
        """Replay the path to previous, leaving every cursor where the plain search would"""
        tgtidx = C.db.tgtidx_list
        depth = previous.length
        while True:
            frame = stack[-1]
            if frame.ell == 0:
                if depth != 0 or frame.u != previous.source:
                    raise InvalidPrevious("walk is not an answer of this query")
                stack.pop()
                return
            if depth == 0:
                raise InvalidPrevious("walk is shorter than the answers")
            depth -= 1
            g = previous.edges[depth]
            if C.db.tgt_list[g] != frame.u:
                raise InvalidPrevious("walk does not chain")
            limit = tgtidx[g]
            queues = C.queues[frame.u]
            for p in frame.certificate:
                queue = queues[p]
                head = queue.peek()
                while head is not None and tgtidx[head[0]] < limit:
                    counter.tick()
                    queue.advance()
                    head = queue.peek()
            step = Enumerator._next_child(C, frame, counter)
            if step is None or step[0] != g:
                raise InvalidPrevious(f"no answer continues with edge {C.db.edge_names[g]}")
            e, child = step
            stack.append(Enumerator._child_frame(C, frame, e, child, track))

    @staticmethod
    def iter_answers(C: TrimmedIndex, lam, root: Iterable[int],
                     counter: Optional[StepCounter] = None,
                     trace: Optional[CallTrace] = None,
                     multiplicity: Optional[str] = None,
                     after: Optional[Walk] = None) -> Iterator[OutputWalk]:
        """
        Generator over the answers in canonical order

        Args:
            C: trimmed index with every cursor at its start
            lam: length (or cost) of the answers
            root: root certificate {q in F | L_t[q] = lam}
            counter: steps; one lap is closed per answer
            trace: records every node entered
            multiplicity: None, 'recompute' or 'track'
            after: resume after this answer (queue-guided)

        Leaves every cursor at its start, also when the consumer stops early.
        """
        counter = counter or NullCounter()
        if multiplicity is not None and multiplicity not in MULTIPLICITY_METHODS:
            raise ValueError(f"Unknown multiplicity method: {multiplicity}")
        db = C.db
        track = NfaSimulator.eliminate_eps(C.automaton) if multiplicity == 'track' else None
        root_set = CertificateSet(C.automaton.n_states, root)
        if not len(root_set):
            return
        target = after.target if after is not None else None
        if target is None:
            target = C.target
        if target is None:
            raise ValueError("the target vertex is unknown: set C.target or pass after")
        if C.target is not None and target != C.target:
            raise InvalidPrevious("walk does not end at the target")

        root_counts = None
        if track is not None:
            root_counts = [1 if f else 0 for f in track.is_final]
        stack = [_Frame(target, root_set, lam, None, root_counts)]
        if trace is not None:
            trace.record(None, lam, root_set)

        finished = False
        try:
            if after is not None:
                Enumerator._guided_descent(C, stack, after, counter, track)
            while stack:
                frame = stack[-1]
                if frame.ell == 0:
                    stack.pop()
                    counter.lap()
                    walk = walk_from_cons(db, frame.u, frame.cons)
                    count = None
                    if multiplicity == 'recompute':
                        count = WalkMatcher.count_runs(C.automaton, db, walk)
                    elif track is not None:
                        count = sum(frame.counts[q] for q in track.initial)
                    yield OutputWalk(walk, count)
                    continue
                step = Enumerator._next_child(C, frame, counter)
                if step is None:
                    stack.pop()
                    continue
                e, child = step
                child_frame = Enumerator._child_frame(C, frame, e, child, track)
                stack.append(child_frame)
                if trace is not None:
                    trace.record(child_frame.cons, child_frame.ell, child)
            finished = True
        finally:
            if not finished:
                C.restart_all()

    @staticmethod
    def enumerate(C: TrimmedIndex, lam, root: Iterable[int],
                  sink: Callable[[OutputWalk], None],
                  counter: Optional[StepCounter] = None,
                  trace: Optional[CallTrace] = None) -> int:
        """Feed every answer to sink; returns the number of answers"""
        n = 0
        for output in Enumerator.iter_answers(C, lam, root, counter, trace):
            sink(output)
            n += 1
        logger.debug("enumerate: %d answers", n)
        return n

    @staticmethod
    def enumerate_after(C: TrimmedIndex, lam, root: Iterable[int], previous: Walk,
                        sink: Callable[[OutputWalk], None],
                        counter: Optional[StepCounter] = None) -> int:
        """
        Feed every answer that comes after previous in canonical order

        Raises:
            InvalidPrevious: previous is not an answer
        """
        n = 0
        for output in Enumerator.iter_answers(C, lam, root, counter, after=previous):
            sink(output)
            n += 1
        return n

    @staticmethod
    def enumerate_with_multiplicity(C: TrimmedIndex, lam, root: Iterable[int],
                                    sink: Callable[[OutputWalk], None],
                                    method: str = 'recompute') -> int:
        """Answers carrying their number of accepting runs"""
        n = 0
        for output in Enumerator.iter_answers(C, lam, root, multiplicity=method):
            sink(output)
            n += 1
        return n

    # ==================== QUERY PIPELINE ====================

    @staticmethod
    def prepare(annotation: AnnotationResult,
                counter: Optional[StepCounter] = None) -> TrimmedIndex:
        return Trimmer.trim_annotation(annotation, counter)

    @staticmethod
    def annotate_for(db: Database, A: Automaton, s: int, t: int, mode: str = 'shortest',
                     cost: CostSource = None,
                     counter: Optional[StepCounter] = None) -> AnnotationResult:
        """Pick the traversal matching the mode and the automaton"""
        if mode == 'cheapest':
            return CheapestAnnotator.annotate_cheapest(db, NfaSimulator.eliminate_eps(A),
                                                       s, t, cost, counter)
        if mode != 'shortest':
            raise ValueError(f"Unknown mode: {mode}")
        if A.has_eps:
            return Annotator.annotate_eps(db, A, s, t, counter)
        return Annotator.annotate(db, A, s, t, counter=counter)

    @staticmethod
    def run_query(db: Database, A: Automaton, s: int, t: int,
                  mode: str = 'shortest',
                  cost: CostSource = None,
                  multiplicity: Optional[str] = None,
                  counter: Optional[StepCounter] = None,
                  delay_counter: Optional[StepCounter] = None,
                  after: Optional[Walk] = None) -> QueryResult:
        """
        Annotate, trim and enumerate lazily

        Args:
            db: database
            A: automaton (epsilon moves allowed)
            s: source vertex
            t: target vertex
            mode: 'shortest' or 'cheapest'
            cost: edge costs for the cheapest mode
            multiplicity: None, 'recompute' or 'track'
            counter: preprocessing steps
            delay_counter: enumeration steps, one lap per answer
            after: resume after this answer

        Returns:
            QueryResult; a query without matching walk gives an empty stream
            with status STATUS_NO_MATCH
        """
        try:
            annotation = Enumerator.annotate_for(db, A, s, t, mode, cost, counter)
        except NoMatchingWalk as exc:
            logger.info("%s", exc)
            return QueryResult(QueryResult.STATUS_NO_MATCH, None, iter(()), error=exc)

        C = Enumerator.prepare(annotation, counter)
        walks = Enumerator.iter_answers(C, annotation.lam, annotation.root_certificate(),
                                        delay_counter, multiplicity=multiplicity, after=after)
        return QueryResult(QueryResult.STATUS_OK, annotation.lam, walks, annotation, C)

    @staticmethod
    def run_query_multi(db: Database, A: Automaton, s: int, targets: Iterable[int],
                        multiplicity: Optional[str] = None,
                        counter: Optional[StepCounter] = None,
                        delay_counter: Optional[StepCounter] = None) -> Dict[int, QueryResult]:
        """
        One annotation for several targets.

        The streams share one trimmed index: consume them one at a time.
        Starting a stream rewinds every cursor, so a stream abandoned early
        (or closed) does not shift the answers of the next one; a stream
        left half-read is invalid once another one starts.
        """
        multi = MultiTargetAnnotator.annotate_multi(db, A, s, targets, counter)
        C = Trimmer.trim_annotation(multi.shared, counter)
        results: Dict[int, QueryResult] = {}
        for t, lam in multi.lambdas.items():
            if lam is None:
                error = NoMatchingWalk(db.vertex_names[s], db.vertex_names[t])
                results[t] = QueryResult(QueryResult.STATUS_NO_MATCH, None, iter(()), error=error)
                continue
            view = multi.for_target(t)
            walks = Enumerator._target_stream(C, t, lam, view.root_certificate(), multiplicity,
                                              delay_counter)
            results[t] = QueryResult(QueryResult.STATUS_OK, lam, walks, view, C)
        return results

    @staticmethod
    def _target_stream(C: TrimmedIndex, t: int, lam, root: List[int],
                       multiplicity: Optional[str],
                       counter: Optional[StepCounter] = None) -> Iterator[OutputWalk]:
        C.restart_all()
        C.target = t
        yield from Enumerator.iter_answers(C, lam, root, counter, multiplicity=multiplicity)
