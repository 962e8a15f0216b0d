"""
models/annotation/cheapest.py

Cheapest-first variant of the preprocessing traversal.

Simple explanation:
- Edges carry strictly positive costs; L[u][p] is the minimal total cost
  of a walk reaching (u, p)
- A binary heap replaces the level queue (extract-min, insert; stale
  entries are skipped when popped)
- B[u][p][i] keeps the predecessor states of every cheapest last edge;
  a strictly cheaper discovery resets B[u][p]
- Costs within EngineConfig.same_cost of each other count as equal, so
  float sums such as 0.1 + 0.2 tie with 0.3; heap ties are broken by
  (vertex id, state id)
- All entries with cost <= lambda are settled before stopping, so every
  cheapest answer is represented in B
"""

import heapq
import logging
import os
import sys
from typing import Callable, List, Optional, Sequence, Union

import numpy as np

sys.path.append(os.path.dirname(os.path.dirname(os.path.dirname(__file__))))

from config.engine_config import EngineConfig
from models.annotation.annotate import AnnotationResult, Annotator
from models.automaton.nfa import Automaton
from models.errors import InvalidCost, NoMatchingWalk
from models.graph.database import Database
from utils.step_counter import NullCounter, StepCounter

logger = logging.getLogger(__name__)

CostSource = Union[None, Sequence[float], Callable[[int], float]]


class CheapestAnnotator:

    @staticmethod
    def resolve_costs(db: Database, cost: CostSource = None) -> List[float]:
        """
        Per-edge cost list from the database, a sequence or a callable

        Raises:
            InvalidCost: a cost is not a finite positive number
        """
        if cost is None:
            values = db.costs if db.has_costs else np.ones(db.n_edges)
        elif callable(cost):
            values = [cost(e) for e in range(db.n_edges)]
        else:
            values = cost
        values = np.asarray(values, dtype=np.float64).reshape(-1)
        if values.shape[0] != db.n_edges:
            raise ValueError(f"expected {db.n_edges} costs, got {values.shape[0]}")
        bad = np.flatnonzero(~np.isfinite(values) | (values <= 0))
        if bad.size:
            e = int(bad[0])
            raise InvalidCost(db.edge_names[e], str(values[e]))
        return values.tolist()

    @staticmethod
    def annotate_cheapest(db: Database, A: Automaton, s: int, t: int,
                          cost: CostSource = None,
                          counter: Optional[StepCounter] = None) -> AnnotationResult:
        """
        Annotate for the cheapest matching walks

        Args:
            db: database
            A: epsilon-free automaton
            s: source vertex
            t: target vertex
            cost: edge costs (default: the database cost column, else 1)
            counter: step counter for preprocessing cost

        Returns:
            AnnotationResult with by_cost=True; L holds costs and lam the
            minimal cost

        Raises:
            NoMatchingWalk: no walk from s to t matches A
            InvalidCost: non-positive cost
        """
        if A.has_eps:
            raise ValueError("annotate_cheapest needs an epsilon-free automaton")
        costs = CheapestAnnotator.resolve_costs(db, cost)
        counter = counter or NullCounter()
        A = A.align_to(db)
        n_states = A.n_states

        dist: List[List[Optional[float]]] = [[None] * n_states for _ in range(db.n_vertices)]
        settled = [[False] * n_states for _ in range(db.n_vertices)]
        touched: List[List[List[int]]] = [[[] for _ in range(n_states)]
                                          for _ in range(db.n_vertices)]
        B = Annotator.allocate_back_maps(db, n_states, counter)

        if s == t and any(A.is_final[p] for p in A.initial):
            L = [[None] * n_states for _ in range(db.n_vertices)]
            for p in A.initial:
                L[s][p] = 0.0
            return AnnotationResult(L, B, 0.0, s, t, A, db, by_cost=True)

        heap = []
        for p in A.initial:
            dist[s][p] = 0.0
            heap.append((0.0, s, p))
        heapq.heapify(heap)

        lam: Optional[float] = None
        while heap:
            d, v, q = heapq.heappop(heap)
            counter.tick()
            if settled[v][q] or d != dist[v][q]:
                continue
            if lam is not None and d > lam and not EngineConfig.same_cost(d, lam):
                break
            settled[v][q] = True
            if v == t and A.is_final[q] and lam is None:
                lam = d

            for e in db.outgoing(v):
                u = db.tgt_list[e]
                i = db.tgtidx_list[e]
                nd = d + costs[e]
                counter.tick()
                for p in A.delta_over_label_set(q, db.edge_labels[e]):
                    counter.tick()
                    current = dist[u][p]
                    tie = current is not None and EngineConfig.same_cost(nd, current)
                    if settled[u][p] and not tie:
                        continue
                    if not tie and (current is None or nd < current):
                        # strictly cheaper: forget the old predecessors
                        for j in touched[u][p]:
                            B[u][p][j] = []
                        dist[u][p] = nd
                        B[u][p][i] = [q]
                        touched[u][p] = [i]
                        heapq.heappush(heap, (nd, u, p))
                    elif tie:
                        if not B[u][p][i]:
                            touched[u][p].append(i)
                        B[u][p][i].append(q)

        if lam is None:
            raise NoMatchingWalk(db.vertex_names[s], db.vertex_names[t])

        # tentative entries are not minimal; drop them and their back-maps
        L = [[d if settled[u][p] else None for p, d in enumerate(row)]
             for u, row in enumerate(dist)]
        for u in range(db.n_vertices):
            for p in range(n_states):
                if not settled[u][p]:
                    for j in touched[u][p]:
                        B[u][p][j] = []

        logger.info("annotate_cheapest %s -> %s: minimal cost %g",
                    db.vertex_names[s], db.vertex_names[t], lam)
        return AnnotationResult(L, B, lam, s, t, A, db, by_cost=True)
