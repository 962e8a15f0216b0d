"""
cli/bench_command.py

Scaling experiments measured with step counters.

Simple explanation:
- Spine family: lambda layers of parallel 'a' edges from s to t carry all
  the answers; padding edges only ever point INTO padding vertices, so no
  queue read by the enumeration changes when the graph grows
- Delay family: fixed lambda, growing |E|: max steps per output must not move
- Lambda family: fixed |E|, lambda in {2, 4, 8}: max steps per output must
  stay under c * lambda * (|Delta| + |Q|)
- Preprocessing family: random graphs of growing size, full traversal plus
  trim: steps should grow like |E|
"""

import logging
import os
import sys
import time
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

import numpy as np

sys.path.append(os.path.dirname(os.path.dirname(__file__)))

from config.bench_config import BenchConfig
from config.engine_config import EngineConfig
from models.annotation.multi_target import MultiTargetAnnotator
from models.automaton.nfa import Automaton
from models.automaton.thompson import ThompsonBuilder
from models.enumeration.enumerate import Enumerator
from models.enumeration.trim import Trimmer
from models.graph.database import Database
from utils.statistics import StatisticsUtils
from utils.step_counter import StepCounter

logger = logging.getLogger(__name__)


@dataclass
class StepCounterReport:
    family: str
    n_edges: int
    lam: int
    preprocessing_steps: int
    per_output_steps: List[int] = field(default_factory=list)
    wall_times: List[float] = field(default_factory=list)
    bound: Optional[int] = None

    @property
    def n_outputs(self) -> int:
        return len(self.per_output_steps)

    @property
    def max_steps(self) -> int:
        return max(self.per_output_steps) if self.per_output_steps else 0

    def row(self) -> str:
        bound = "-" if self.bound is None else str(self.bound)
        wall = max(self.wall_times) * 1e6 if self.wall_times else 0.0
        return (f"{self.family:14s} {self.n_edges:7d} {self.lam:4d} {self.n_outputs:8d} "
                f"{self.preprocessing_steps:10d} {self.max_steps:10d} {bound:>8s} {wall:10.1f}")

    HEADER = (f"{'family':14s} {'|E|':>7s} {'lam':>4s} {'outputs':>8s} "
              f"{'preproc':>10s} {'max/out':>10s} {'bound':>8s} {'max us':>10s}")


class BenchFamilies:

    @staticmethod
    def automaton() -> Automaton:
        return ThompsonBuilder.compile_regex(BenchConfig.AUTOMATON_REGEX)

    @staticmethod
    def padded_spine(lam: int, n_edges: int, seed: int = BenchConfig.SEED_DEFAULT
                     ) -> Tuple[Database, int, int, List[int]]:
        """
        Spine x0 -> ... -> x_lam of SPINE_WIDTH parallel 'a' edges per layer,
        padded with random edges into extra vertices

        Returns:
            (database, s, t, spine vertex ids)
        """
        rng = np.random.default_rng(seed)
        width = BenchConfig.SPINE_WIDTH
        spine = [f"x{i}" for i in range(lam + 1)]
        edges = []
        for i in range(lam):
            for j in range(width):
                edges.append((f"s{i}_{j}", spine[i], spine[i + 1], ['a']))

        n_padding = max(n_edges - len(edges), 0)
        padding = [f"p{i}" for i in range(max(2, n_padding // 4))]
        sources = spine + padding
        for k in range(n_padding):
            src = sources[int(rng.integers(len(sources)))]
            tgt = padding[int(rng.integers(len(padding)))]
            labels = ['a'] if rng.random() < 0.5 else ['b']
            if rng.random() < 0.2:
                labels = ['a', 'b']
            edges.append((f"q{k}", src, tgt, labels))

        db = Database.build(spine + padding, edges)
        return db, 0, lam, list(range(lam + 1))

    @staticmethod
    def random_graph(n_edges: int, seed: int = BenchConfig.SEED_DEFAULT) -> Database:
        rng = np.random.default_rng(seed)
        n_vertices = max(2, n_edges // 4)
        names = [f"v{i}" for i in range(n_vertices)]
        src = rng.integers(n_vertices, size=n_edges)
        tgt = rng.integers(n_vertices, size=n_edges)
        kinds = rng.random(n_edges)
        edges = []
        for k in range(n_edges):
            labels = ['a'] if kinds[k] < 0.4 else ['b'] if kinds[k] < 0.8 else ['a', 'b']
            edges.append((f"e{k}", names[src[k]], names[tgt[k]], labels))
        return Database.build(names, edges)


class BenchCommand:

    @staticmethod
    def measure_spine(family: str, lam: int, n_edges: int, seed: int) -> StepCounterReport:
        db, s, t, _ = BenchFamilies.padded_spine(lam, n_edges, seed)
        A = BenchFamilies.automaton()
        preprocessing = StepCounter()
        delay = StepCounter()
        result = Enumerator.run_query(db, A, s, t, counter=preprocessing, delay_counter=delay)
        for _ in result:
            pass
        aligned = result.annotation.automaton
        bound = EngineConfig.delay_bound(lam, aligned.n_transitions, aligned.n_states)
        return StepCounterReport(family, db.n_edges, lam, preprocessing.total,
                                 list(delay.laps), list(delay.lap_times), bound)

    @staticmethod
    def measure_preprocessing(n_edges: int, seed: int) -> StepCounterReport:
        db = BenchFamilies.random_graph(n_edges, seed)
        A = BenchFamilies.automaton()
        counter = StepCounter()
        multi = MultiTargetAnnotator.annotate_multi(db, A, 0, range(db.n_vertices), counter)
        Trimmer.trim_annotation(multi.shared, counter)
        return StepCounterReport('preprocessing', db.n_edges, 0, counter.total)

    @staticmethod
    def cmd_bench(seed: int = BenchConfig.SEED_DEFAULT,
                  plot: Optional[str] = None) -> Dict[str, List[StepCounterReport]]:
        """
        Run the three families and print their tables

        Args:
            seed: padding / random graph seed
            plot: save the plots to this path when given

        Returns:
            {'delay': [...], 'lambda': [...], 'preprocessing': [...]}
        """
        start = time.perf_counter()
        reports = {
            'delay': [BenchCommand.measure_spine('delay', BenchConfig.DELAY_LAMBDA, n, seed)
                      for n in BenchConfig.get_delay_sizes()],
            'lambda': [BenchCommand.measure_spine('lambda', lam, BenchConfig.LAMBDA_PADDED_EDGES, seed)
                       for lam in BenchConfig.get_lambda_values()],
            'preprocessing': [BenchCommand.measure_preprocessing(n, seed)
                              for n in BenchConfig.PREPROCESSING_SIZES],
        }

        print(StepCounterReport.HEADER)
        for rows in reports.values():
            for report in rows:
                print(report.row())

        delay_max = {r.max_steps for r in reports['delay']}
        print(f"\nDelay family: max steps per output {'constant' if len(delay_max) == 1 else 'VARIES'} "
              f"({sorted(delay_max)})")

        within = all(r.max_steps <= r.bound for r in reports['lambda'])
        fit = StatisticsUtils.linear_fit([r.lam for r in reports['lambda']],
                                         [r.max_steps for r in reports['lambda']])
        print(f"Lambda family: max <= c*lambda*(|Delta|+|Q|): {within}; "
              f"slope {fit['slope']:.1f} steps per unit of lambda (r^2 {fit['r_squared']:.3f})")

        A = BenchFamilies.automaton()
        pre = reports['preprocessing']
        scale = [r.n_edges * A.n_transitions for r in pre]
        lo, hi, spread = StatisticsUtils.ratio_spread([r.preprocessing_steps for r in pre], scale)
        print(f"Preprocessing: steps / (|E|*|Delta|) in [{lo:.3f}, {hi:.3f}], spread {spread:.2f} "
              f"(tolerance {BenchConfig.PREPROCESSING_FIT_TOLERANCE})")
        print(f"Total time: {time.perf_counter() - start:.2f} s")

        if plot:
            from visualization.delay_plotter import DelayPlotter
            DelayPlotter().plot_reports(reports, save_path=plot)
            print(f"Plot saved to {plot}")

        return reports


if __name__ == "__main__":
    BenchCommand.cmd_bench()
