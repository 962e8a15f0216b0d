"""
models/annotation/multi_target.py

One traversal serving several targets at once.

Simple explanation:
- The traversal does not stop at the first target: it runs until no new
  (vertex, state) pair can be discovered
- For each wanted target it records lambda_t, the level at which a final
  state first reached it (None if never)
- L and B are shared: every target enumerates from its own root
  certificate {q in F | L_t[q] = lambda_t}
"""

import logging
import os
import sys
from dataclasses import dataclass
from typing import Dict, Iterable, List, Optional

sys.path.append(os.path.dirname(os.path.dirname(os.path.dirname(__file__))))

from models.annotation.annotate import AnnotationResult, Annotator
from models.automaton.nfa import Automaton
from models.errors import NoMatchingWalk
from models.graph.database import Database
from utils.step_counter import NullCounter, StepCounter

logger = logging.getLogger(__name__)


@dataclass
class MultiTargetAnnotation:
    """Shared annotation plus lambda per target"""
    shared: AnnotationResult
    lambdas: Dict[int, Optional[int]]

    @property
    def targets(self) -> List[int]:
        return list(self.lambdas)

    def reachable(self) -> List[int]:
        return [t for t, lam in self.lambdas.items() if lam is not None]

    def for_target(self, t: int) -> AnnotationResult:
        """
        Per-target view over the shared maps

        Raises:
            NoMatchingWalk: t was wanted but no matching walk reaches it
            KeyError: t was not among the wanted targets
        """
        lam = self.lambdas[t]
        db = self.shared.db
        if lam is None:
            raise NoMatchingWalk(db.vertex_names[self.shared.source], db.vertex_names[t])
        return AnnotationResult(self.shared.L, self.shared.B, lam, self.shared.source, t,
                                self.shared.automaton, db)


class MultiTargetAnnotator:

    @staticmethod
    def annotate_multi(db: Database, A: Automaton, s: int, targets: Iterable[int],
                       counter: Optional[StepCounter] = None) -> MultiTargetAnnotation:
        """
        Annotate once for a set of targets

        Args:
            db: database
            A: automaton (epsilon moves are folded in on the fly)
            s: source vertex
            targets: non-empty set of target vertices

        Returns:
            MultiTargetAnnotation with lambdas[t] = None for unreachable targets
        """
        wanted = sorted(set(targets))
        if not wanted:
            raise ValueError("annotate_multi needs at least one target")
        for v in [s] + wanted:
            if not 0 <= v < db.n_vertices:
                raise ValueError(f"vertex {v} outside 0..{db.n_vertices - 1}")
        counter = counter or NullCounter()
        A = A.align_to(db)

        L, B, reached, level, _ = Annotator._traverse(
            db, A, s, set(wanted), False, A.has_eps, True, counter, False)

        lambdas = {t: reached.get(t) for t in wanted}
        logger.info("annotate_multi from %s: %d/%d targets reachable after %d levels",
                    db.vertex_names[s], sum(lam is not None for lam in lambdas.values()),
                    len(wanted), level)
        shared = AnnotationResult(L, B, None, s, None, A, db)
        return MultiTargetAnnotation(shared, lambdas)
