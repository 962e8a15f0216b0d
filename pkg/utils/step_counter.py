#Abstract operation counter used to measure preprocessing cost and enumeration delay.

import time
from typing import Dict, List


class StepCounter:
    """
    Counts elementary steps (queue operations, state-list touches,
    inner-loop executions).

    lap() closes the current output interval: the steps done since the
    previous lap are appended to laps, together with the wall time.
    """

    def __init__(self):
        self.total = 0
        self.laps: List[int] = []
        self.lap_times: List[float] = []
        self._lap_start = 0
        self._time_start = time.perf_counter()

    def tick(self, n: int = 1):
        self.total += n

    def lap(self) -> int:
        steps = self.total - self._lap_start
        now = time.perf_counter()
        self.laps.append(steps)
        self.lap_times.append(now - self._time_start)
        self._lap_start = self.total
        self._time_start = now
        return steps

    @property
    def max_lap(self) -> int:
        return max(self.laps) if self.laps else 0

    def get_summary(self) -> Dict:
        return {
            'total steps': self.total,
            'outputs': len(self.laps),
            'max steps per output': self.max_lap,
            'max seconds per output': max(self.lap_times) if self.lap_times else 0.0,
        }


class NullCounter(StepCounter):
    """Counter that ignores ticks (default when nobody measures)"""

    def tick(self, n: int = 1):
        pass

    def lap(self) -> int:
        return 0
