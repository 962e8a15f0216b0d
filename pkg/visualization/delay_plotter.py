"""
visualization/delay_plotter.py

Plots of the benchmark step counts.

Simple explanation:
- Left: max steps per output against |E| (should be flat)
- Middle: max steps per output against lambda, with the c*lambda*(|Delta|+|Q|) bound
- Right: preprocessing steps against |E| on log-log axes (slope 1 = linear)
"""

import os
import sys
from typing import Dict, List, Optional, Tuple

import matplotlib
matplotlib.use('Agg')
import matplotlib.pyplot as plt
import numpy as np

sys.path.append(os.path.dirname(os.path.dirname(__file__)))


class DelayPlotter:

    def __init__(self, figsize: Tuple[int, int] = (15, 4.5)):
        self.figsize = figsize
        self.colors = ['#1f77b4', '#ff7f0e', '#2ca02c', '#d62728']

    def plot_reports(self, reports: Dict[str, List], save_path: Optional[str] = None) -> plt.Figure:
        """
        Args:
            reports: output of BenchCommand.cmd_bench
            save_path: Path to save figure

        Returns:
            Figure object
        """
        fig, axes = plt.subplots(1, 3, figsize=self.figsize)

        delay = reports.get('delay', [])
        ax = axes[0]
        ax.plot([r.n_edges for r in delay], [r.max_steps for r in delay],
                'o-', color=self.colors[0], linewidth=2, label='max steps / output')
        ax.set_xscale('log')
        ax.set_xlabel('|E|')
        ax.set_ylabel('Steps')
        ax.set_title('Delay vs graph size (fixed lambda)')
        ax.set_ylim(bottom=0)
        ax.grid(True, alpha=0.3)
        ax.legend()

        lam = reports.get('lambda', [])
        ax = axes[1]
        ax.plot([r.lam for r in lam], [r.max_steps for r in lam],
                'o-', color=self.colors[1], linewidth=2, label='max steps / output')
        ax.plot([r.lam for r in lam], [r.bound for r in lam],
                '--', color=self.colors[3], linewidth=1.5, label='bound')
        ax.set_xlabel('lambda')
        ax.set_ylabel('Steps')
        ax.set_title('Delay vs lambda (fixed |E|)')
        ax.grid(True, alpha=0.3)
        ax.legend()

        pre = reports.get('preprocessing', [])
        ax = axes[2]
        sizes = np.array([r.n_edges for r in pre], dtype=float)
        steps = np.array([r.preprocessing_steps for r in pre], dtype=float)
        ax.loglog(sizes, steps, 'o-', color=self.colors[2], linewidth=2, label='preprocessing')
        if sizes.size:
            ax.loglog(sizes, steps[0] * sizes / sizes[0], ':', color='gray', label='linear')
        ax.set_xlabel('|E|')
        ax.set_ylabel('Steps')
        ax.set_title('Preprocessing vs graph size')
        ax.grid(True, alpha=0.3, which='both')
        ax.legend()

        plt.tight_layout()
        if save_path:
            plt.savefig(save_path, dpi=150, bbox_inches='tight')
        return fig
