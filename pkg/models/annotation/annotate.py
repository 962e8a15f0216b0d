"""
models/annotation/annotate.py

Preprocessing: breadth-first traversal of the product of the database
with the automaton.

Simple explanation:
- A product node is a pair (vertex u, state p)
- L[u][p]: length of the shortest walk from s to u whose label can drive
  the automaton from an initial state to p (None if there is none)
- B[u][p][i]: the states q that p can come from, when the last edge of
  such a shortest walk is the i-th incoming edge of u
- The traversal stops at the end of the level where a final state first
  reaches the target t; that level is lambda
"""

import logging
import os
import sys
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Set, Tuple

sys.path.append(os.path.dirname(os.path.dirname(os.path.dirname(__file__))))

from config.engine_config import EngineConfig
from models.automaton.nfa import Automaton
from models.errors import NoMatchingWalk
from models.graph.database import Database
from utils.step_counter import NullCounter, StepCounter

logger = logging.getLogger(__name__)

LengthMap = List[Optional[int]]            # L_u: state -> length (None = undefined)
BackMap = List[List[List[int]]]            # B_u: state -> slot -> predecessor states


@dataclass
class AnnotationResult:
    """
    Output of the preprocessing traversal.

    L[u] and B[u] are the per-vertex maps; lam is the length (or cost, for
    the cheapest-walk traversal) of the answers. automaton is the aligned
    automaton the maps refer to.
    """
    L: List[LengthMap]
    B: List[BackMap]
    lam: Optional[float]
    source: int
    target: Optional[int]
    automaton: Automaton
    db: Database
    by_cost: bool = False
    frontiers: List[List[Tuple[int, int]]] = field(default_factory=list)

    def root_certificate(self, target: Optional[int] = None,
                         lam: Optional[float] = None) -> List[int]:
        """Final states reached at the target by an answer: {q in F | L_t[q] = lam}"""
        t = self.target if target is None else target
        lam = self.lam if lam is None else lam
        Lt = self.L[t]
        return [q for q in self.automaton.final
                if Lt[q] is not None and EngineConfig.same_cost(Lt[q], lam)]

    def lengths_at(self, u: int) -> Dict[int, int]:
        """Defined part of L_u as a dict"""
        return {p: d for p, d in enumerate(self.L[u]) if d is not None}


class Annotator:

    @staticmethod
    def allocate_back_maps(db: Database, n_states: int, counter: StepCounter) -> List[BackMap]:
        """B_u fully initialised with empty lists: |Q| x indeg(u) per vertex"""
        B = []
        for u in range(db.n_vertices):
            indeg = db.indeg(u)
            B.append([[[] for _ in range(indeg)] for _ in range(n_states)])
            counter.tick(indeg * n_states)
        return B

    @staticmethod
    def _traverse(db: Database, A: Automaton, s: int, targets: Set[int],
                  stop_at_first: bool, with_eps: bool, dedupe: bool,
                  counter: StepCounter, record_frontiers: bool
                  ) -> Tuple[List[LengthMap], List[BackMap], Dict[int, int], int,
                             List[List[Tuple[int, int]]]]:
        """
        Level-synchronous traversal shared by the single-target,
        epsilon and multi-target variants.

        Returns:
            (L, B, reached, last level, frontiers) where reached maps every
            target to the level at which a final state first reached it
        """
        n_states = A.n_states
        is_final = A.is_final
        delta = A.delta
        L: List[LengthMap] = [[None] * n_states for _ in range(db.n_vertices)]
        B = Annotator.allocate_back_maps(db, n_states, counter)
        reached: Dict[int, int] = {}
        frontiers: List[List[Tuple[int, int]]] = []

        starts = sorted(A.eps_closure(A.initial)) if with_eps else A.initial
        level = 0
        next_level: List[Tuple[int, int]] = []
        for p in starts:
            L[s][p] = level
            next_level.append((s, p))
            if s in targets and is_final[p] and s not in reached:
                reached[s] = level

        stop = stop_at_first and bool(reached)
        if stop:
            # lambda = 0: the single walk <s> is the only answer
            return L, B, reached, level, frontiers

        outgoing = db.outgoing
        tgt_list = db.tgt_list
        tgtidx_list = db.tgtidx_list
        edge_labels = db.edge_labels

        while next_level and not stop:
            level += 1
            current = next_level
            next_level = []
            if record_frontiers:
                frontiers.append(list(current))

            for v, q in current:
                row = delta[q]
                for e in outgoing(v):
                    u = tgt_list[e]
                    i = tgtidx_list[e]
                    Lu = L[u]
                    Bu = B[u]
                    counter.tick()

                    if dedupe:
                        successors = A.delta_over_label_set(q, edge_labels[e])
                    else:
                        successors = [p for a in edge_labels[e] for p in row[a]]
                    if with_eps and A.has_eps:
                        successors = A.eps_closure(successors)

                    for p in successors:
                        counter.tick()
                        if Lu[p] is None:
                            # first time p is reached at u
                            Lu[p] = level
                            next_level.append((u, p))
                            if is_final[p] and u in targets and u not in reached:
                                reached[u] = level
                                if stop_at_first:
                                    stop = True
                            Bu[p][i].append(q)
                        elif Lu[p] == level:
                            # another shortest walk reaching p at u
                            Bu[p][i].append(q)

            logger.debug("level %d: %d product nodes discovered", level, len(next_level))

        return L, B, reached, level, frontiers

    @staticmethod
    def annotate(db: Database, A: Automaton, s: int, t: int,
                 dedupe: Optional[bool] = None,
                 counter: Optional[StepCounter] = None,
                 record_frontiers: bool = False) -> AnnotationResult:
        """
        Annotate the product for an epsilon-free automaton

        Args:
            db: database
            A: epsilon-free automaton
            s: source vertex
            t: target vertex
            dedupe: one B entry per (q, e) (default EngineConfig.DEDUPE_PREDECESSORS);
                False appends q once per label of e that leads to p
            counter: step counter for preprocessing cost
            record_frontiers: keep the list of product nodes expanded per level

        Returns:
            AnnotationResult with lam = length of the shortest matching walks

        Raises:
            NoMatchingWalk: no walk from s to t matches A
        """
        if A.has_eps:
            raise ValueError("annotate needs an epsilon-free automaton; use annotate_eps")
        return Annotator._single_target(db, A, s, t, False, dedupe, counter, record_frontiers)

    @staticmethod
    def annotate_eps(db: Database, A: Automaton, s: int, t: int,
                     counter: Optional[StepCounter] = None,
                     record_frontiers: bool = False) -> AnnotationResult:
        """
        Annotate with epsilon transitions eliminated on the fly.

        Every state reached at u through (q, e) also reaches its epsilon
        closure at u through the same (q, e), at the same level.
        """
        return Annotator._single_target(db, A, s, t, True, True, counter, record_frontiers)

    @staticmethod
    def _single_target(db, A, s, t, with_eps, dedupe, counter, record_frontiers):
        if dedupe is None:
            dedupe = EngineConfig.DEDUPE_PREDECESSORS
        if not dedupe and with_eps:
            raise ValueError("raw back-maps are only defined for epsilon-free automata")
        for v in (s, t):
            if not 0 <= v < db.n_vertices:
                raise ValueError(f"vertex {v} outside 0..{db.n_vertices - 1}")
        counter = counter or NullCounter()
        A = A.align_to(db)

        L, B, reached, level, frontiers = Annotator._traverse(
            db, A, s, {t}, True, with_eps, dedupe, counter, record_frontiers)
        if t not in reached:
            raise NoMatchingWalk(db.vertex_names[s], db.vertex_names[t])

        lam = reached[t]
        logger.info("annotate %s -> %s: lambda = %d", db.vertex_names[s], db.vertex_names[t], lam)
        return AnnotationResult(L, B, lam, s, t, A, db, frontiers=frontiers)
