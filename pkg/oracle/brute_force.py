"""
oracle/brute_force.py

Reference computations by exhaustive search, written independently of the
engine (only the Database / Automaton types and WalkMatcher.matches_walk
are shared).

Simple explanation:
- answers: generate walks from s level by level, keep the first level that
  holds matching walks ending at t, sort them canonically
- lengths / back-maps: sets of (vertex, state) reachable by walks of an
  EXACT length k, for k = 0, 1, 2, ...
- certificates: the definition of S(w) applied to every suffix of every answer
- run counts: every label choice times every path of the automaton
- Walk generation drops prefixes that no state of the automaton survives
  or that can no longer reach (t, F); both are exact
"""

import heapq
import itertools
import logging
import os
import sys
from collections import deque
from typing import Dict, FrozenSet, List, Optional, Sequence, Set, Tuple

sys.path.append(os.path.dirname(os.path.dirname(__file__)))

from config.engine_config import EngineConfig
from models.automaton.nfa import Automaton
from models.automaton.regex_parser import Alt, Atom, Concat, Epsilon, Opt, Plus, RegexAst, Star
from models.automaton.run_counter import WalkMatcher
from models.errors import InstanceTooLarge
from models.graph.database import Database
from models.graph.walk import Walk

logger = logging.getLogger(__name__)

EdgeTuple = Tuple[int, ...]


class BruteForceOracle:

    # ==================== AUTOMATON STEPS ====================

    @staticmethod
    def _closure(A: Automaton, states) -> Set[int]:
        seen = set(states)
        stack = list(seen)
        while stack:
            q = stack.pop()
            for r in A.eps[q]:
                if r not in seen:
                    seen.add(r)
                    stack.append(r)
        return seen

    @staticmethod
    def _moves(A: Automaton, db: Database, q: int, e: int) -> Set[int]:
        """delta(q, a) for every label a of e, looked up by label name"""
        result = set()
        for a in db.edge_labels[e]:
            symbol = A.symbol_ids.get(db.label_names[a])
            if symbol is not None:
                result.update(A.delta[q][symbol])
        return result

    @staticmethod
    def _step(A: Automaton, db: Database, states: Set[int], e: int) -> Set[int]:
        reached = set()
        for q in states:
            reached |= BruteForceOracle._moves(A, db, q, e)
        return BruteForceOracle._closure(A, reached)

    @staticmethod
    def forward_states(A: Automaton, db: Database, edges: Sequence[int]) -> Set[int]:
        """Delta(I, lbl(w))"""
        states = BruteForceOracle._closure(A, A.initial)
        for e in edges:
            states = BruteForceOracle._step(A, db, states, e)
        return states

    @staticmethod
    def backward_states(A: Automaton, db: Database, edges: Sequence[int]) -> Set[int]:
        """Delta^-1(lbl(w), F): states from which some word of w leads to F"""
        final = set(A.final)
        back = {q for q in range(A.n_states) if BruteForceOracle._closure(A, [q]) & final}
        for e in reversed(edges):
            back = {q for q in range(A.n_states)
                    if any(BruteForceOracle._moves(A, db, r, e) & back
                           for r in BruteForceOracle._closure(A, [q]))}
        return back

    # ==================== PRODUCT REACHABILITY ====================

    @staticmethod
    def reachable_by_length(db: Database, A: Automaton, s: int, max_length: int
                            ) -> List[Set[Tuple[int, int]]]:
        """R[k] = {(u, p) | some walk of length exactly k from s reaches p at u}"""
        current = {(s, q) for q in BruteForceOracle._closure(A, A.initial)}
        levels = [current]
        for _ in range(max_length):
            step = set()
            for v, q in current:
                for e in db.outgoing(v):
                    for p in BruteForceOracle._closure(A, BruteForceOracle._moves(A, db, q, e)):
                        step.add((db.tgt_list[e], p))
            levels.append(step)
            current = step
        return levels

    @staticmethod
    def _co_reachable(db: Database, A: Automaton, t: int) -> Set[Tuple[int, int]]:
        """(v, q) pairs from which (t, some final state) can be reached"""
        pairs = {(t, q) for q in range(A.n_states)
                 if BruteForceOracle._closure(A, [q]) & set(A.final)}
        changed = True
        while changed:
            changed = False
            for e in range(db.n_edges):
                v, u = db.src_list[e], db.tgt_list[e]
                for q in range(A.n_states):
                    if (v, q) in pairs:
                        continue
                    for r in BruteForceOracle._closure(A, [q]):
                        if any((u, p) in pairs for p in BruteForceOracle._moves(A, db, r, e)):
                            pairs.add((v, q))
                            changed = True
                            break
        return pairs

    # ==================== ORDER ====================

    @staticmethod
    def canonical_key(db: Database, edges: Sequence[int]) -> Tuple[int, ...]:
        """Positions in the incoming arrays, last edge first"""
        return tuple(db.incoming(db.tgt_list[e]).index(e) for e in reversed(edges))

    # ==================== ANSWERS ====================

    @staticmethod
    def brute_force_answers(db: Database, A: Automaton, s: int, t: int,
                            limit: int = EngineConfig.ORACLE_WALK_LIMIT) -> List[Walk]:
        """
        All shortest matching walks from s to t in canonical order

        Raises:
            InstanceTooLarge: more than limit walks generated
        """
        useful = BruteForceOracle._co_reachable(db, A, t)
        start = BruteForceOracle._closure(A, A.initial)
        if not any((s, q) in useful for q in start):
            return []

        level: List[Tuple[EdgeTuple, int, Set[int]]] = [((), s, start)]
        generated = 1
        for _ in range(db.n_vertices * A.n_states + 1):
            found = [Walk.from_edges(db, edges, s) for edges, v, _ in level if v == t]
            found = [w for w in found if WalkMatcher.matches_walk(A, db, w)]
            if found:
                found.sort(key=lambda w: BruteForceOracle.canonical_key(db, w.edges))
                return found

            extended = []
            for edges, v, states in level:
                for e in db.outgoing(v):
                    after = BruteForceOracle._step(A, db, states, e)
                    u = db.tgt_list[e]
                    if not any((u, q) in useful for q in after):
                        continue
                    extended.append((edges + (e,), u, after))
                    generated += 1
                    if generated > limit:
                        raise InstanceTooLarge(limit)
            level = extended
            if not level:
                break
        return []

    @staticmethod
    def brute_force_lambda(db: Database, A: Automaton, s: int, t: int) -> Optional[int]:
        """Length of the shortest matching walk by level-by-level search (epsilon-free A)"""
        levels = BruteForceOracle.reachable_by_length(db, A, s, db.n_vertices * A.n_states)
        for k, pairs in enumerate(levels):
            if any((t, f) in pairs for f in A.final):
                return k
        return None

    @staticmethod
    def brute_force_lengths(db: Database, A: Automaton, s: int, lam: int
                            ) -> Dict[Tuple[int, int], int]:
        """Minimal length <= lam of a walk reaching (u, p)"""
        lengths: Dict[Tuple[int, int], int] = {}
        for k, pairs in enumerate(BruteForceOracle.reachable_by_length(db, A, s, lam)):
            for pair in pairs:
                lengths.setdefault(pair, k)
        return lengths

    @staticmethod
    def brute_force_back_maps(db: Database, A: Automaton, s: int, lam: int
                              ) -> Dict[Tuple[int, int, int], Set[int]]:
        """
        {(u, p, slot): states q} for epsilon-free A: q is reached at src(e)
        by a walk one shorter than the minimal length of (u, p), and p is in
        delta(q, lbl(e)) for the edge e owning the slot
        """
        levels = BruteForceOracle.reachable_by_length(db, A, s, lam)
        lengths = BruteForceOracle.brute_force_lengths(db, A, s, lam)
        back: Dict[Tuple[int, int, int], Set[int]] = {}
        for (u, p), k in lengths.items():
            if k == 0:
                continue
            for i, e in enumerate(db.incoming(u)):
                v = db.src_list[e]
                states = {q for q in range(A.n_states)
                          if (v, q) in levels[k - 1] and p in BruteForceOracle._moves(A, db, q, e)}
                if states:
                    back[(u, p, i)] = states
        return back

    @staticmethod
    def brute_force_certificates(db: Database, A: Automaton, s: int, t: int,
                                 answers: Optional[List[Walk]] = None
                                 ) -> Dict[EdgeTuple, FrozenSet[int]]:
        """
        S(w) for every node w of the backward-search tree (suffix edge tuples)

        q is in S(w) iff some answer w_q.w has q in Delta(I, lbl(w_q)) and
        q in Delta^-1(lbl(w), F).
        """
        if answers is None:
            answers = BruteForceOracle.brute_force_answers(db, A, s, t)
        certificates: Dict[EdgeTuple, Set[int]] = {}
        for answer in answers:
            edges = answer.edges
            for cut in range(len(edges), -1, -1):
                prefix, suffix = edges[:cut], edges[cut:]
                states = (BruteForceOracle.forward_states(A, db, prefix)
                          & BruteForceOracle.backward_states(A, db, suffix))
                certificates.setdefault(suffix, set()).update(states)
        return {w: frozenset(states) for w, states in certificates.items()}

    @staticmethod
    def brute_force_run_count(db: Database, A: Automaton, walk: Walk) -> int:
        """Accepting (label choice, state path) pairs; A must be epsilon-free"""
        if any(A.eps):
            raise ValueError("run counting by enumeration needs an epsilon-free automaton")
        choices = [[db.label_names[a] for a in db.edge_labels[e]] for e in walk.edges]
        total = 0
        for word in itertools.product(*choices):
            paths = {q: 1 for q in A.initial}
            for label in word:
                symbol = A.symbol_ids.get(label)
                step: Dict[int, int] = {}
                if symbol is not None:
                    for q, n in paths.items():
                        for p in A.delta[q][symbol]:
                            step[p] = step.get(p, 0) + n
                paths = step
            total += sum(n for q, n in paths.items() if q in A.final)
        return total

    @staticmethod
    def _min_cost(db: Database, A: Automaton, s: int, t: int,
                  costs: Sequence[float]) -> Optional[float]:
        """Cheapest cost of reaching (t, F) in the product, by Dijkstra"""
        final = set(A.final)
        heap = [(0.0, s, q) for q in sorted(BruteForceOracle._closure(A, A.initial))]
        done: Set[Tuple[int, int]] = set()
        while heap:
            cost, v, q = heapq.heappop(heap)
            if (v, q) in done:
                continue
            done.add((v, q))
            if v == t and q in final:
                return cost
            for e in db.outgoing(v):
                u = db.tgt_list[e]
                for p in BruteForceOracle._closure(A, BruteForceOracle._moves(A, db, q, e)):
                    if (u, p) not in done:
                        heapq.heappush(heap, (cost + costs[e], u, p))
        return None

    @staticmethod
    def brute_force_cheapest(db: Database, A: Automaton, s: int, t: int,
                             costs: Sequence[float],
                             limit: int = EngineConfig.ORACLE_WALK_LIMIT) -> List[Walk]:
        """All matching walks of minimal total cost, canonical order"""
        useful = BruteForceOracle._co_reachable(db, A, t)
        start = BruteForceOracle._closure(A, A.initial)
        if not any((s, q) in useful for q in start):
            return []

        best = BruteForceOracle._min_cost(db, A, s, t, costs)
        if best is None:
            return []
        found: List[Tuple[EdgeTuple, float]] = []
        queue = deque([((), s, start, 0.0)])
        generated = 1
        while queue:
            edges, v, states, cost = queue.popleft()
            if v == t and EngineConfig.same_cost(cost, best) and WalkMatcher.matches_walk(
                    A, db, Walk.from_edges(db, edges, s)):
                found.append((edges, cost))
            for e in db.outgoing(v):
                total = cost + costs[e]
                if total > best and not EngineConfig.same_cost(total, best):
                    continue
                after = BruteForceOracle._step(A, db, states, e)
                u = db.tgt_list[e]
                if any((u, q) in useful for q in after):
                    queue.append((edges + (e,), u, after, total))
                    generated += 1
                    if generated > limit:
                        raise InstanceTooLarge(limit)

        walks = [Walk.from_edges(db, edges, s) for edges, _ in found]
        walks.sort(key=lambda w: BruteForceOracle.canonical_key(db, w.edges))
        return walks


class RegexOracle:
    """Python re as the reference for regex languages (single-character labels)"""

    @staticmethod
    def to_python_pattern(ast: RegexAst) -> str:
        if isinstance(ast, Atom):
            if len(ast.label) != 1:
                raise ValueError("python patterns need single-character labels")
            return ast.label
        if isinstance(ast, Epsilon):
            return "(?:)"
        if isinstance(ast, Concat):
            return "".join(f"(?:{RegexOracle.to_python_pattern(p)})" for p in ast.parts)
        if isinstance(ast, Alt):
            return "|".join(f"(?:{RegexOracle.to_python_pattern(o)})" for o in ast.options)
        operator = {Star: "*", Plus: "+", Opt: "?"}[type(ast)]
        return f"(?:{RegexOracle.to_python_pattern(ast.inner)}){operator}"
