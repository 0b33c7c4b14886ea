"""
Run Metrics for weylfree
Collects counters, gauges and timers for a verification run
"""

import datetime
import json
import logging
import os
import threading
from enum import Enum
from typing import Any, Dict, Optional, Union

import numpy as np
import psutil

logger = logging.getLogger('monitoring')


class MetricType(Enum):
    """Types of metrics that can be collected"""
    COUNTER = "counter"      # Monotonically increasing value
    GAUGE = "gauge"          # Value that can go up or down
    TIMER = "timer"          # Duration of operations


class MonitoringSystem:
    """
    Metric store for one process
    Metrics stay in memory until save_metrics() writes them out
    """

    def __init__(self, metrics_dir: str = "metrics", max_samples: int = 1000):
        self.metrics_dir = metrics_dir
        self.max_samples = max_samples
        self.metrics: Dict[MetricType, Dict[str, Any]] = {
            MetricType.COUNTER: {},
            MetricType.GAUGE: {},
            MetricType.TIMER: {},
        }
        self._lock = threading.Lock()

    @staticmethod
    def _key(name: str, tags: Optional[Dict[str, str]]) -> str:
        tag_str = ",".join(f"{k}={v}" for k, v in sorted(tags.items())) if tags else ""
        return f"{name}{{{tag_str}}}" if tag_str else name

    def increment_counter(self, name: str, value: int = 1,
                          tags: Dict[str, str] = None) -> None:
        """
        Increment a counter metric

        Args:
            name: Name of the metric
            value: Value to increment by
            tags: Optional tags for the metric
        """
        key = self._key(name, tags)
        with self._lock:
            counters = self.metrics[MetricType.COUNTER]
            counters[key] = counters.get(key, 0) + value

    def set_gauge(self, name: str, value: Union[int, float],
                  tags: Dict[str, str] = None) -> None:
        with self._lock:
            self.metrics[MetricType.GAUGE][self._key(name, tags)] = value

    def record_timer(self, name: str, value: float,
                     tags: Dict[str, str] = None) -> None:
        """
        Record a timer value

        Args:
            name: Name of the metric
            value: Duration in seconds
            tags: Optional tags for the metric
        """
        key = self._key(name, tags)
        with self._lock:
            samples = self.metrics[MetricType.TIMER].setdefault(key, [])
            samples.append(value)
            if len(samples) > self.max_samples:
                del samples[:-self.max_samples]

    def record_memory(self) -> int:
        """Sample the resident set size of this process into the rss_bytes gauge"""
        rss = psutil.Process(os.getpid()).memory_info().rss
        self.set_gauge("rss_bytes", rss)
        return rss

    def get_metrics_summary(self) -> Dict[str, Any]:
        """
        Get a summary of current metrics

        Returns:
            Dictionary with counters, gauges and timer statistics
        """
        with self._lock:
            timers = {k: list(v) for k, v in self.metrics[MetricType.TIMER].items()}
            summary = {
                "counters": dict(self.metrics[MetricType.COUNTER]),
                "gauges": dict(self.metrics[MetricType.GAUGE]),
            }
        timer_summaries = {}
        for name, values in timers.items():
            if values:
                timer_summaries[name] = {
                    "count": len(values),
                    "min": min(values),
                    "max": max(values),
                    "mean": float(np.mean(values)),
                    "p50": float(np.percentile(values, 50)),
                    "p95": float(np.percentile(values, 95)),
                }
        summary["timers"] = timer_summaries
        summary["timestamp"] = datetime.datetime.now().isoformat()
        return summary

    def save_metrics(self) -> Optional[str]:
        """Save the metrics summary to metrics_<timestamp>.json

        Returns:
            The written path, or None when saving failed
        """
        try:
            os.makedirs(self.metrics_dir, exist_ok=True)
            timestamp = datetime.datetime.now().strftime("%Y%m%d_%H%M%S")
            metrics_file = os.path.join(self.metrics_dir, f"metrics_{timestamp}.json")
            with open(metrics_file, 'w') as f:
                json.dump(self.get_metrics_summary(), f, indent=2)
            logger.debug(f"Metrics saved to {metrics_file}")
            return metrics_file
        except OSError as e:
            logger.error(f"Error saving metrics: {e}")
            return None

    def reset(self) -> None:
        with self._lock:
            for store in self.metrics.values():
                store.clear()


_default: Optional[MonitoringSystem] = None


def get_monitoring() -> MonitoringSystem:
    """The process-wide monitoring system"""
    global _default
    if _default is None:
        _default = MonitoringSystem()
    return _default


def configure_monitoring(metrics_dir: str) -> MonitoringSystem:
    """Replace the process-wide monitoring system with one writing to metrics_dir"""
    global _default
    _default = MonitoringSystem(metrics_dir=metrics_dir)
    return _default
