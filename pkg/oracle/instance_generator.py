"""
oracle/instance_generator.py

Seeded random instances for the validation corpus and the benchmarks.

Simple explanation:
- A random multigraph: parallel edges and multi-labeled edges appear with
  the configured probabilities
- A random automaton: either a random transition table (usually
  nondeterministic, or deterministic on request) or the Thompson automaton
  of a random regex, which brings epsilon moves
- degenerate_spec: one label and a deterministic automaton, the smallest
  family where every walk has a single run
- Same seed, same instance
"""

import os
import sys
from dataclasses import asdict, dataclass
from typing import List, Optional, Tuple

import numpy as np

sys.path.append(os.path.dirname(os.path.dirname(__file__)))

from config.engine_config import EngineConfig
from models.automaton.nfa import Automaton
from models.automaton.regex_parser import Alt, Atom, Concat, Epsilon, Opt, Plus, RegexAst, Star
from models.automaton.thompson import ThompsonBuilder
from models.graph.database import Database

LABEL_NAMES = "abcdefghijklmnopqrstuvwxyz"


@dataclass
class InstanceSpec:
    n_vertices: int = EngineConfig.DEFAULT_INSTANCE['n_vertices']
    n_edges: int = EngineConfig.DEFAULT_INSTANCE['n_edges']
    n_labels: int = EngineConfig.DEFAULT_INSTANCE['n_labels']
    n_states: int = EngineConfig.DEFAULT_INSTANCE['n_states']
    multi_label_prob: float = EngineConfig.DEFAULT_INSTANCE['multi_label_prob']
    parallel_edge_prob: float = EngineConfig.DEFAULT_INSTANCE['parallel_edge_prob']
    transition_density: float = EngineConfig.DEFAULT_INSTANCE['transition_density']
    final_prob: float = EngineConfig.DEFAULT_INSTANCE['final_prob']
    regex_size: int = EngineConfig.DEFAULT_INSTANCE['regex_size']
    deterministic: bool = EngineConfig.DEFAULT_INSTANCE['deterministic']
    seed: int = EngineConfig.DEFAULT_INSTANCE['seed']

    def with_seed(self, seed: int) -> 'InstanceSpec':
        values = asdict(self)
        values['seed'] = seed
        return InstanceSpec(**values)


class InstanceGenerator:

    @staticmethod
    def random_database(rng: np.random.Generator, spec: InstanceSpec) -> Database:
        vertex_names = [f"v{i}" for i in range(spec.n_vertices)]
        labels = LABEL_NAMES[:spec.n_labels]
        edges: List[Tuple[str, str, str, List[str]]] = []
        for k in range(spec.n_edges):
            if edges and rng.random() < spec.parallel_edge_prob:
                _, src, tgt, _ = edges[int(rng.integers(len(edges)))]
            else:
                src = vertex_names[int(rng.integers(spec.n_vertices))]
                tgt = vertex_names[int(rng.integers(spec.n_vertices))]
            chosen = [labels[int(rng.integers(spec.n_labels))]]
            if spec.n_labels > 1 and rng.random() < spec.multi_label_prob:
                others = [a for a in labels if a not in chosen]
                chosen.append(others[int(rng.integers(len(others)))])
            edges.append((f"e{k}", src, tgt, chosen))
        return Database.build(vertex_names, edges)

    @staticmethod
    def random_automaton(rng: np.random.Generator, spec: InstanceSpec) -> Automaton:
        labels = list(LABEL_NAMES[:spec.n_labels])
        transitions = []
        for p in range(spec.n_states):
            for a in labels:
                if spec.deterministic:
                    if rng.random() < spec.transition_density * spec.n_states:
                        transitions.append((p, a, int(rng.integers(spec.n_states))))
                    continue
                for q in range(spec.n_states):
                    if rng.random() < spec.transition_density:
                        transitions.append((p, a, q))
        initial = [0]
        if not spec.deterministic and spec.n_states > 1 and rng.random() < 0.2:
            initial.append(int(rng.integers(1, spec.n_states)))
        final = [q for q in range(spec.n_states) if rng.random() < spec.final_prob]
        if not final:
            final = [int(rng.integers(spec.n_states))]
        return Automaton(labels, spec.n_states, transitions, initial, final)

    @staticmethod
    def random_regex(rng: np.random.Generator, size: int, labels: str) -> RegexAst:
        """Random syntax tree with roughly size nodes"""
        if size <= 1:
            if rng.random() < 0.1:
                return Epsilon()
            return Atom(labels[int(rng.integers(len(labels)))])
        kind = int(rng.integers(5))
        if kind == 0 or size == 2 and kind < 2:
            return (Star, Plus, Opt)[int(rng.integers(3))](
                InstanceGenerator.random_regex(rng, size - 1, labels))
        left = int(rng.integers(1, size - 1)) if size > 2 else 1
        right = max(size - 1 - left, 1)
        parts = (InstanceGenerator.random_regex(rng, left, labels),
                 InstanceGenerator.random_regex(rng, right, labels))
        return Concat(*parts) if kind in (1, 2, 3) else Alt(*parts)

    @staticmethod
    def generate_instance(spec: Optional[InstanceSpec] = None
                          ) -> Tuple[Database, Automaton, int, int]:
        """
        Build a random instance

        Args:
            spec: generation knobs (defaults: EngineConfig.DEFAULT_INSTANCE)

        Returns:
            (database, automaton, source, target)
        """
        spec = spec or InstanceSpec()
        valid, message = EngineConfig.validate_instance_spec(spec)
        if not valid:
            raise ValueError(message)
        rng = np.random.default_rng(spec.seed)
        db = InstanceGenerator.random_database(rng, spec)
        if spec.regex_size > 0:
            ast = InstanceGenerator.random_regex(rng, spec.regex_size, LABEL_NAMES[:spec.n_labels])
            A = ThompsonBuilder.thompson(ast)
        else:
            A = InstanceGenerator.random_automaton(rng, spec)
        s = int(rng.integers(spec.n_vertices))
        t = int(rng.integers(spec.n_vertices))
        return db, A, s, t

    @staticmethod
    def corpus_spec(seed: int) -> InstanceSpec:
        """
        Spec of the seed-th corpus instance: sizes drawn within the engine
        bounds, one instance in three built from a random regex
        """
        rng = np.random.default_rng(10_000 + seed)
        n_states = int(rng.integers(1, EngineConfig.MAX_STATES + 1))
        return InstanceSpec(
            n_vertices=int(rng.integers(1, EngineConfig.MAX_VERTICES + 1)),
            n_edges=int(rng.integers(0, EngineConfig.MAX_EDGES + 1)),
            n_labels=int(rng.integers(1, EngineConfig.MAX_LABELS + 1)),
            n_states=n_states,
            regex_size=int(rng.integers(1, 7)) if seed % 3 == 2 else 0,
            seed=seed,
        )

    @staticmethod
    def degenerate_spec(seed: int) -> InstanceSpec:
        """Corpus-sized instance over a single label with a deterministic automaton"""
        spec = InstanceGenerator.corpus_spec(seed)
        spec.n_labels = 1
        spec.regex_size = 0
        spec.deterministic = True
        return spec


if __name__ == "__main__":
    db, A, s, t = InstanceGenerator.generate_instance()
    print("Database:", db.get_summary())
    print("Automaton:", A)
    print(f"Query: {db.vertex_names[s]} -> {db.vertex_names[t]}")
    print("Regex sample:", InstanceGenerator.random_regex(np.random.default_rng(1), 6, "ab"))
