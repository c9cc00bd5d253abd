#!/usr/bin/env python3
"""
Per-phase performance accounting for verification runs
"""

import logging
import time
from contextlib import contextmanager
from datetime import datetime
from typing import Dict, Iterator, List

import psutil

logger = logging.getLogger("arrangements.performance")


class PerformanceMonitor:
    """Records wall-clock duration and memory per named phase"""

    def __init__(self):
        self.process = psutil.Process()
        self.start_time = time.perf_counter()
        self.started_at = datetime.now().isoformat()
        self.phases: Dict[str, float] = {}
        self.memory_mb: Dict[str, float] = {}
        self.order: List[str] = []

    def _rss_mb(self) -> float:
        return self.process.memory_info().rss / 1024 / 1024

    @contextmanager
    def phase(self, name: str) -> Iterator[None]:
        """Time the enclosed block; repeated names accumulate"""
        start = time.perf_counter()
        try:
            yield
        finally:
            duration = time.perf_counter() - start
            if name not in self.phases:
                self.order.append(name)
                self.phases[name] = 0.0
            self.phases[name] += duration
            self.memory_mb[name] = max(self.memory_mb.get(name, 0.0), self._rss_mb())

    def total_duration(self) -> float:
        return time.perf_counter() - self.start_time

    def summary(self) -> Dict[str, float]:
        """Durations in seconds, in first-seen phase order"""
        timings = {name: round(self.phases[name], 6) for name in self.order}
        timings['total'] = round(self.total_duration(), 6)
        logger.debug(f"peak RSS per phase (MB): {self.memory_summary()}")
        return timings

    def memory_summary(self) -> Dict[str, float]:
        """Peak resident set size in MB seen at the end of each phase"""
        return {name: round(self.memory_mb[name], 2) for name in self.order}

    @staticmethod
    def format_duration(seconds: float) -> str:
        """Format duration in human-readable format"""
        if seconds < 60:
            return f"{seconds:.2f} seconds"
        elif seconds < 3600:
            minutes = int(seconds // 60)
            secs = seconds % 60
            return f"{minutes}m {secs:.1f}s"
        hours = int(seconds // 3600)
        minutes = int((seconds % 3600) // 60)
        return f"{hours}h {minutes}m"
