"""
config/engine_config.py

Engine-wide knobs: back-map handling, delay bound constant, oracle guards
and the default random-instance parameters used by the validation corpus.
"""

import math
from typing import Dict, Optional, Tuple


class EngineConfig:
    """Engine configuration"""

    # Annotation
    DEDUPE_PREDECESSORS = True      # one entry per (q, e) in every B slot

    # Delay bound: max steps between outputs <= c * lambda * (|Delta| + |Q|)
    DELAY_CONSTANT = 8

    # Cost comparison (cheapest mode and its oracle)
    COST_REL_TOL = 1e-9
    COST_ABS_TOL = 1e-12

    # Oracle guards
    ORACLE_WALK_LIMIT = 10 ** 6     # generated walks before InstanceTooLarge

    # Random instances (validation corpus)
    MAX_VERTICES = 8
    MAX_EDGES = 20
    MAX_LABELS = 3
    MAX_STATES = 4
    CORPUS_SIZE = 500
    DEFINITION_SUITE_SIZE = 100

    # Knobs for generate_instance
    DEFAULT_INSTANCE = {
        'n_vertices': 6,
        'n_edges': 14,
        'n_labels': 2,
        'n_states': 3,
        'multi_label_prob': 0.3,
        'parallel_edge_prob': 0.2,
        'transition_density': 0.35,
        'final_prob': 0.4,
        'regex_size': 0,            # > 0: automaton comes from a random regex
        'deterministic': False,      # one initial state, one successor per (state, label)
        'seed': 0,
    }

    @classmethod
    def delay_bound(cls, lam: int, n_transitions: int, n_states: int) -> int:
        """Step budget allowed between two consecutive outputs"""
        return cls.DELAY_CONSTANT * max(lam, 1) * (n_transitions + n_states)

    @classmethod
    def same_cost(cls, a: Optional[float], b: Optional[float]) -> bool:
        """Equal up to COST_REL_TOL / COST_ABS_TOL (exact for integer lengths)"""
        if a is None or b is None:
            return a is b
        return math.isclose(a, b, rel_tol=cls.COST_REL_TOL, abs_tol=cls.COST_ABS_TOL)

    @classmethod
    def validate_instance_spec(cls, spec) -> Tuple[bool, str]:
        """
        Validate random instance parameters

        Args:
            spec: InstanceSpec (or any object with the same fields)

        Returns:
            (valid, message): Validation result and message
        """
        if spec.n_vertices < 1:
            return False, "Instance needs at least one vertex"

        if spec.n_edges < 0:
            return False, "Edge count must be >= 0"

        if spec.n_labels < 1:
            return False, "Instance needs at least one label"

        if spec.n_states < 1:
            return False, "Automaton needs at least one state"

        for knob in ('multi_label_prob', 'parallel_edge_prob',
                     'transition_density', 'final_prob'):
            value = getattr(spec, knob)
            if not 0.0 <= value <= 1.0:
                return False, f"{knob} must be in [0, 1]"

        if getattr(spec, 'deterministic', False) and spec.regex_size > 0:
            return False, "A deterministic automaton cannot come from a random regex"

        return True, "Instance spec valid"

    @classmethod
    def get_summary(cls) -> Dict:
        """Return summary of engine configuration"""
        return {
            'Dedupe predecessors': cls.DEDUPE_PREDECESSORS,
            'Delay constant (c)': cls.DELAY_CONSTANT,
            'Cost tolerance': f"rel {cls.COST_REL_TOL:g}, abs {cls.COST_ABS_TOL:g}",
            'Oracle walk limit': f"{cls.ORACLE_WALK_LIMIT:.0e}",
            'Corpus instances': cls.CORPUS_SIZE,
            'Definition-check instances': cls.DEFINITION_SUITE_SIZE,
            'Instance bounds': (f"|V|<={cls.MAX_VERTICES}, |E|<={cls.MAX_EDGES}, "
                                f"|Sigma|<={cls.MAX_LABELS}, |Q|<={cls.MAX_STATES}"),
        }


if __name__ == "__main__":
    print("Engine Configuration")
    print("=" * 50)
    for key, value in EngineConfig.get_summary().items():
        print(f"{key:30s}: {value}")
