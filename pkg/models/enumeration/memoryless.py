"""
models/enumeration/memoryless.py

Memoryless enumeration: the next answer is computed from the previous one
and the read-only ResumableIndex, nothing else.

Simple explanation:
- The same backward search as Enumerator, but cursors live in the call
  (one small dict per stack frame) instead of inside the index
- next_output first replays the path of the previous answer: at each level
  every cursor jumps straight to the first non-empty slot at or after the
  tgtidx of the edge of the previous answer (one link lookup), so the
  replay costs no more than a normal descent
- It then carries on like the plain search and stops at the next answer
- lambda and the root certificate are taken from L, not from the caller
"""

import logging
import os
import sys
from typing import Dict, Iterator, List, Optional, Tuple, Union

sys.path.append(os.path.dirname(os.path.dirname(os.path.dirname(__file__))))

from config.engine_config import EngineConfig
from models.enumeration.enumerate import CertificateSet, Cons, walk_from_cons
from models.enumeration.trim import ResumableIndex
from models.errors import InvalidPrevious
from models.graph.walk import Walk
from utils.step_counter import NullCounter, StepCounter

logger = logging.getLogger(__name__)


class _Exhausted:
    """Marker returned after the last answer"""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "Exhausted"

    def __bool__(self) -> bool:
        return False


Exhausted = _Exhausted()


class _Frame:
    __slots__ = ('u', 'certificate', 'ell', 'cons', 'cursors')

    def __init__(self, u: int, certificate: CertificateSet, ell, cons: Cons):
        self.u = u
        self.certificate = certificate
        self.ell = ell
        self.cons = cons
        # next slot index to inspect per state, None when exhausted
        self.cursors: Dict[int, Optional[int]] = {p: 0 for p in certificate}


class MemorylessEnumerator:

    @staticmethod
    def derive_lambda(R: ResumableIndex, t: int, L: Optional[List[List]] = None):
        """Smallest L_t[q] over final states (None if t is not reached)"""
        L = R.L if L is None else L
        values = [L[t][q] for q in R.automaton.final if L[t][q] is not None]
        return min(values) if values else None

    @staticmethod
    def root_certificate(R: ResumableIndex, t: int, lam,
                         L: Optional[List[List]] = None) -> List[int]:
        L = R.L if L is None else L
        return [q for q in R.automaton.final
                if L[t][q] is not None and EngineConfig.same_cost(L[t][q], lam)]

    @staticmethod
    def _root(R: ResumableIndex, L, t: int, lam) -> _Frame:
        derived = MemorylessEnumerator.derive_lambda(R, t, L)
        if derived is None:
            raise InvalidPrevious(f"no answer ends at {R.db.vertex_names[t]}")
        if lam is not None and not EngineConfig.same_cost(lam, derived):
            raise ValueError(f"lambda {lam} disagrees with the annotation ({derived})")
        root = CertificateSet(R.automaton.n_states,
                              MemorylessEnumerator.root_certificate(R, t, derived, L))
        return _Frame(t, root, derived, None)

    @staticmethod
    def _next_child(R: ResumableIndex, L, frame: _Frame, counter: StepCounter
                    ) -> Optional[_Frame]:
        u = frame.u
        best = None
        for p in frame.certificate:
            counter.tick()
            cursor = frame.cursors[p]
            if cursor is None:
                continue
            j = R.first_from(u, p, cursor)
            frame.cursors[p] = j
            if j is not None and (best is None or j < best):
                best = j
        if best is None:
            return None

        child = CertificateSet(R.automaton.n_states)
        for p in frame.certificate:
            if frame.cursors[p] == best:
                states, nxt = R.slots[u][p][best]
                counter.tick(1 + len(states))
                child.update(states)
                frame.cursors[p] = nxt
        e = R.db.incoming(u)[best]
        v = R.db.src_list[e]
        return _Frame(v, child, L[v][child.members[0]], (e, frame.cons))

    @staticmethod
    def _run(R: ResumableIndex, L, stack: List[_Frame],
             counter: StepCounter) -> Union[Walk, _Exhausted]:
        while stack:
            frame = stack[-1]
            if frame.ell == 0:
                stack.pop()
                counter.lap()
                return walk_from_cons(R.db, frame.u, frame.cons)
            child = MemorylessEnumerator._next_child(R, L, frame, counter)
            if child is None:
                stack.pop()
            else:
                stack.append(child)
        return Exhausted

    @staticmethod
    def first_output(R: ResumableIndex, t: int, L: Optional[List[List]] = None,
                     counter: Optional[StepCounter] = None) -> Union[Walk, _Exhausted]:
        """First answer in canonical order"""
        L = R.L if L is None else L
        counter = counter or NullCounter()
        stack = [MemorylessEnumerator._root(R, L, t, None)]
        return MemorylessEnumerator._run(R, L, stack, counter)

    @staticmethod
    def next_output(R: ResumableIndex, L: Optional[List[List]], lam,
                    previous: Walk,
                    counter: Optional[StepCounter] = None) -> Union[Walk, _Exhausted]:
        """
        Successor of previous in canonical order

        Args:
            R: resumable index (read only)
            L: lengths of the annotation (None: the ones stored in R)
            lam: expected answer length, or None to take it from L
            previous: an answer of the query

        Returns:
            The next answer, or Exhausted after the last one

        Raises:
            InvalidPrevious: previous is not an answer
        """
        L = R.L if L is None else L
        counter = counter or NullCounter()
        db = R.db
        if not previous.is_walk_of(db):
            raise InvalidPrevious("not a walk of the database")

        stack = [MemorylessEnumerator._root(R, L, previous.target, lam)]
        depth = previous.length
        while True:
            frame = stack[-1]
            if frame.ell == 0:
                if depth != 0 or frame.u != previous.source:
                    raise InvalidPrevious("walk is not an answer of this query")
                stack.pop()
                break
            if depth == 0:
                raise InvalidPrevious("walk is shorter than the answers")
            depth -= 1
            g = previous.edges[depth]
            i = db.tgtidx_list[g]
            for p in frame.certificate:
                counter.tick()
                frame.cursors[p] = R.first_from(frame.u, p, i)
            child = MemorylessEnumerator._next_child(R, L, frame, counter)
            if child is None or child.cons[0] != g:
                raise InvalidPrevious(f"no answer continues with edge {db.edge_names[g]}")
            stack.append(child)

        return MemorylessEnumerator._run(R, L, stack, counter)

    @staticmethod
    def iterate_memoryless(R: ResumableIndex, t: int, start: Optional[Walk] = None,
                           L: Optional[List[List]] = None,
                           counter: Optional[StepCounter] = None) -> Iterator[Walk]:
        """
        Chain next_output: all answers, or those after start

        Nothing but the last answer is carried from one step to the next.
        """
        if start is None:
            current = MemorylessEnumerator.first_output(R, t, L, counter)
        else:
            if start.target != t:
                raise InvalidPrevious("walk does not end at the target")
            current = MemorylessEnumerator.next_output(R, L, None, start, counter)
        n = 0
        while current is not Exhausted:
            yield current
            n += 1
            current = MemorylessEnumerator.next_output(R, L, None, current, counter)
        logger.debug("memoryless enumeration: %d answers", n)
