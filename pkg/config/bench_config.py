"""
config/bench_config.py

Parameters of the scaling experiments run by ``rpq.py bench``.

Simple explanation:
- Delay family: same automaton, same lambda, more and more padding edges
- Lambda family: same automaton, same padded size, longer answers
- Preprocessing family: random graphs of growing size, fixed automaton
"""

import numpy as np
from typing import Dict, List


class BenchConfig:
    """Benchmark configuration"""

    # Delay independence (fixed lambda = 3)
    DELAY_SIZES = [20, 200, 2000]        # |E| after padding
    DELAY_LAMBDA = 3

    # Delay vs lambda (fixed padded size)
    LAMBDA_VALUES = [2, 4, 8]
    LAMBDA_PADDED_EDGES = 400

    # Preprocessing linearity
    PREPROCESSING_SIZES = [100, 1000, 10000]
    PREPROCESSING_FIT_TOLERANCE = 2.0    # observed / fitted within 2x

    # Branching of the answer-carrying spine (parallel edges per step)
    SPINE_WIDTH = 2

    # Fixed automaton of every family
    AUTOMATON_REGEX = "(a|b)* a"

    SEED_DEFAULT = 0

    @classmethod
    def get_delay_sizes(cls) -> np.ndarray:
        return np.array(cls.DELAY_SIZES)

    @classmethod
    def get_lambda_values(cls) -> List[int]:
        return list(cls.LAMBDA_VALUES)

    @classmethod
    def get_summary(cls) -> Dict:
        """Return summary of benchmark configuration"""
        return {
            'Delay family |E|': cls.DELAY_SIZES,
            'Delay family lambda': cls.DELAY_LAMBDA,
            'Lambda family': cls.LAMBDA_VALUES,
            'Lambda family |E|': cls.LAMBDA_PADDED_EDGES,
            'Preprocessing |E|': cls.PREPROCESSING_SIZES,
            'Spine width': cls.SPINE_WIDTH,
            'Automaton regex': cls.AUTOMATON_REGEX,
            'Default seed': cls.SEED_DEFAULT,
        }


if __name__ == "__main__":
    print("Benchmark Configuration")
    print("=" * 50)
    for key, value in BenchConfig.get_summary().items():
        print(f"{key:30s}: {value}")
