#Statistical utilities for the benchmark tables: linear fits of step counts against size and lambda.
import numpy as np
from scipy import stats
from typing import Dict, Sequence, Tuple


class StatisticsUtils:
    """Fits and summaries over step-count measurements"""

    @staticmethod
    def linear_fit(x: Sequence[float], y: Sequence[float]) -> Dict[str, float]:
        """
        Least-squares line y = slope * x + intercept

        Returns:
            dict with slope, intercept, r_squared (r_squared is 1 for constant y)
        """
        x = np.asarray(x, dtype=np.float64)
        y = np.asarray(y, dtype=np.float64)
        if x.shape != y.shape or x.size < 2:
            raise ValueError("linear_fit needs two equally long series of >= 2 points")
        if np.all(y == y[0]):
            return {'slope': 0.0, 'intercept': float(y[0]), 'r_squared': 1.0}
        result = stats.linregress(x, y)
        return {
            'slope': float(result.slope),
            'intercept': float(result.intercept),
            'r_squared': float(result.rvalue ** 2),
        }

    @staticmethod
    def ratio_spread(values: Sequence[float], scale: Sequence[float]) -> Tuple[float, float, float]:
        """
        values / scale per point and the max/min spread of those ratios

        A series proportional to scale has spread 1.

        Returns:
            (min ratio, max ratio, max / min)
        """
        ratios = np.asarray(values, dtype=np.float64) / np.asarray(scale, dtype=np.float64)
        lo, hi = float(np.min(ratios)), float(np.max(ratios))
        return lo, hi, (hi / lo if lo > 0 else np.inf)

    @staticmethod
    def within_factor(values: Sequence[float], scale: Sequence[float], factor: float) -> bool:
        """True when some c makes c*scale <= values <= factor*c*scale at every point"""
        _, _, spread = StatisticsUtils.ratio_spread(values, scale)
        return spread <= factor


if __name__ == "__main__":
    sizes = [100, 1000, 10000]
    steps = [1450, 14200, 141900]
    print("Fit:", StatisticsUtils.linear_fit(sizes, steps))
    print("Spread:", StatisticsUtils.ratio_spread(steps, sizes))
    print("Within 2x:", StatisticsUtils.within_factor(steps, sizes, 2.0))
