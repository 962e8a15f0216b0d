"""
models/automaton/run_counter.py

Running an automaton along a walk of the database.

Simple explanation:
- matches_walk: does SOME choice of one label per edge spell a word of L(A)?
- count_runs: HOW MANY (label choice, transition) sequences end in a final
  state? This is the multiplicity reported next to an answer.
"""

import os
import sys
from typing import List

sys.path.append(os.path.dirname(os.path.dirname(os.path.dirname(__file__))))

from models.automaton.nfa import Automaton, NfaSimulator
from models.graph.walk import Walk


class WalkMatcher:

    @staticmethod
    def matches_walk(A: Automaton, db, w: Walk) -> bool:
        """True iff L(A) intersects lbl(w)"""
        A = A.align_to(db)
        current = A.eps_closure(A.initial)
        for e in w.edges:
            labels = db.edge_labels[e]
            step: List[int] = []
            for q in current:
                for p in A.delta_over_label_set(q, labels):
                    if p not in step:
                        step.append(p)
            current = A.eps_closure(step)
            if not current:
                return False
        return any(A.is_final[q] for q in current)

    @staticmethod
    def count_runs(A: Automaton, db, w: Walk) -> int:
        """
        Number of accepting runs over the label sets of w.

        A run picks one label per edge and one transition per step, so the
        same state sequence counts once per label that realises it.
        Automata with epsilon moves are made epsilon-free first.
        """
        A = NfaSimulator.eliminate_eps(A).align_to(db)
        counts = [0] * A.n_states
        for q in A.initial:
            counts[q] = 1
        for e in w.edges:
            labels = db.edge_labels[e]
            step = [0] * A.n_states
            for q, n in enumerate(counts):
                if n == 0:
                    continue
                row = A.delta[q]
                for a in labels:
                    if a < len(row):
                        for p in row[a]:
                            step[p] += n
            counts = step
        return sum(counts[f] for f in A.final)
