"""
models/enumeration/trim.py

Turning the back-maps into the structures the enumeration walks over.

Simple explanation:
- trim: for every (vertex u, state p) a restartable queue holding the
  non-empty slots of B[u][p] as (edge, states) pairs, in tgtidx order
- resumable_trim: the same content without cursors; every slot stores
  its state list and the index of the next non-empty slot, so any reader
  can jump to "first non-empty slot >= i" in one step while the index
  itself stays read-only
- State lists are shared with B, never copied
"""

import hashlib
import logging
import os
import sys
from typing import Dict, List, Optional, Sequence, Tuple

sys.path.append(os.path.dirname(os.path.dirname(os.path.dirname(__file__))))

from models.annotation.annotate import AnnotationResult
from models.automaton.nfa import Automaton
from models.enumeration.restartable_queue import RestartableQueue
from models.graph.database import Database
from utils.step_counter import NullCounter, StepCounter

logger = logging.getLogger(__name__)

Slot = Tuple[List[int], Optional[int]]      # (states, index of next non-empty slot)


class TrimmedIndex:
    """C[u][p]: restartable queue of (edge, states) entries"""

    def __init__(self, db: Database, automaton: Automaton,
                 queues: List[List[RestartableQueue]],
                 L: Optional[List[List]] = None,
                 target: Optional[int] = None):
        self.db = db
        self.automaton = automaton
        self.queues = queues
        self.L = L
        self.target = target

    def queue(self, u: int, p: int) -> RestartableQueue:
        return self.queues[u][p]

    def restart_all(self):
        for row in self.queues:
            for queue in row:
                queue.restart()

    def all_at_start(self) -> bool:
        return all(queue.at_start for row in self.queues for queue in row)

    def n_entries(self) -> int:
        return sum(len(queue) for row in self.queues for queue in row)

    def dump(self, vertices: Optional[Sequence[int]] = None) -> Dict[Tuple[str, int], List[Tuple[str, Tuple[int, ...]]]]:
        """{(vertex name, state): [(edge name, states), ...]} for non-empty queues"""
        names = self.db.vertex_names
        result = {}
        for u in (range(self.db.n_vertices) if vertices is None else vertices):
            for p, queue in enumerate(self.queues[u]):
                if len(queue):
                    result[(names[u], p)] = [(self.db.edge_names[e], tuple(states))
                                             for e, states in queue.entries]
        return result


class ResumableIndex:
    """
    Read-only slot arrays: slots[u][p][i] = (B[u][p][i], next non-empty index > i).

    Carries everything a memoryless successor needs: the database, the
    lengths L and the final states of the automaton.
    """

    def __init__(self, db: Database, automaton: Automaton,
                 slots: List[List[List[Slot]]], L: List[List]):
        self.db = db
        self.automaton = automaton
        self.slots = slots
        self.L = L

    def first_from(self, u: int, p: int, i: int) -> Optional[int]:
        """Index of the first non-empty slot of (u, p) at or after i"""
        row = self.slots[u][p]
        if i >= len(row):
            return None
        states, nxt = row[i]
        return i if states else nxt

    def chain(self, u: int, p: int) -> List[Tuple[int, List[int]]]:
        """(edge, states) pairs reached by following the links from slot 0"""
        result = []
        i = self.first_from(u, p, 0)
        incoming = self.db.incoming(u)
        while i is not None:
            states, nxt = self.slots[u][p][i]
            result.append((incoming[i], states))
            i = nxt
        return result

    def checksum(self) -> str:
        digest = hashlib.sha256()
        for u, rows in enumerate(self.slots):
            for p, row in enumerate(rows):
                for i, (states, nxt) in enumerate(row):
                    if states or nxt is not None:
                        digest.update(f"{u}.{p}.{i}:{states}>{nxt};".encode())
        for row in self.L:
            digest.update(repr(row).encode())
        return digest.hexdigest()


class Trimmer:

    @staticmethod
    def trim(db: Database, A: Automaton, B: List[List[List[List[int]]]],
             L: Optional[List[List]] = None,
             counter: Optional[StepCounter] = None) -> TrimmedIndex:
        """
        Build the restartable queues

        Args:
            db: database
            A: automaton the back-maps refer to
            B: back-maps from an annotation
            L: lengths from the same annotation (needed for cheapest walks)

        Returns:
            TrimmedIndex with (e, B[u][p][tgtidx(e)]) for every non-empty slot
        """
        counter = counter or NullCounter()
        queues: List[List[RestartableQueue]] = []
        for u in range(db.n_vertices):
            incoming = db.incoming(u)
            row = []
            for p in range(A.n_states):
                queue = RestartableQueue()
                slots = B[u][p]
                for i, e in enumerate(incoming):
                    counter.tick()
                    if slots[i]:
                        queue.enqueue(e, slots[i])
                row.append(queue)
            queues.append(row)

        index = TrimmedIndex(db, A, queues, L)
        logger.debug("trim: %d queue entries", index.n_entries())
        return index

    @staticmethod
    def resumable_trim(db: Database, A: Automaton, B: List[List[List[List[int]]]],
                       L: List[List],
                       counter: Optional[StepCounter] = None) -> ResumableIndex:
        """Slot arrays with next-non-empty links, computed by a reverse scan"""
        counter = counter or NullCounter()
        slots: List[List[List[Slot]]] = []
        for u in range(db.n_vertices):
            indeg = db.indeg(u)
            per_state = []
            for p in range(A.n_states):
                row: List[Slot] = [None] * indeg
                nxt: Optional[int] = None
                for i in range(indeg - 1, -1, -1):
                    counter.tick()
                    row[i] = (B[u][p][i], nxt)
                    if B[u][p][i]:
                        nxt = i
                per_state.append(row)
            slots.append(per_state)
        return ResumableIndex(db, A, slots, L)

    @staticmethod
    def trim_annotation(result: AnnotationResult,
                        counter: Optional[StepCounter] = None) -> TrimmedIndex:
        index = Trimmer.trim(result.db, result.automaton, result.B, result.L, counter)
        index.target = result.target
        return index

    @staticmethod
    def resumable_trim_annotation(result: AnnotationResult,
                                  counter: Optional[StepCounter] = None) -> ResumableIndex:
        return Trimmer.resumable_trim(result.db, result.automaton, result.B, result.L, counter)
