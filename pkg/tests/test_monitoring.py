"""
Unit tests for run metrics and the check guarding decorators
"""

import unittest
import json
import os
import sys
import logging
import tempfile
import threading

# Add parent directory to path to import modules
sys.path.append(os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from src.monitoring.monitoring import (MonitoringSystem, MetricType,
                                       configure_monitoring, get_monitoring)
from src.utils.errors import UnsupportedLabelError, VerificationFailedError
from src.utils.resilience import checked, timed
from src.workflows.report import CheckResult, CheckStatus


class TestMonitoringSystem(unittest.TestCase):
    """Test cases for the MonitoringSystem class"""

    def setUp(self):
        """Set up test fixtures"""
        # Disable logging during tests
        logging.disable(logging.CRITICAL)
        self.temp_dir = tempfile.TemporaryDirectory()
        self.monitoring = MonitoringSystem(metrics_dir=self.temp_dir.name, max_samples=3)

    def tearDown(self):
        """Tear down test fixtures"""
        self.temp_dir.cleanup()
        logging.disable(logging.NOTSET)

    def test_increment_counter(self):
        """Test incrementing counters with and without tags"""
        self.monitoring.increment_counter("checks", 5)
        self.monitoring.increment_counter("checks")
        self.monitoring.increment_counter("checks", 2, {"family": "A"})

        counters = self.monitoring.get_metrics_summary()["counters"]
        self.assertEqual(counters["checks"], 6)
        self.assertEqual(counters["checks{family=A}"], 2)

    def test_tags_are_sorted_in_key(self):
        """Test that tag order does not change the metric key"""
        self.monitoring.increment_counter("c", tags={"b": "2", "a": "1"})
        self.monitoring.increment_counter("c", tags={"a": "1", "b": "2"})
        counters = self.monitoring.metrics[MetricType.COUNTER]
        self.assertEqual(counters, {"c{a=1,b=2}": 2})

    def test_set_gauge(self):
        """Test that gauges keep the last value"""
        self.monitoring.set_gauge("basis_size", 42)
        self.monitoring.set_gauge("basis_size", 7)
        self.assertEqual(self.monitoring.get_metrics_summary()["gauges"]["basis_size"], 7)

    def test_record_timer(self):
        """Test timer statistics"""
        for value in (1.0, 2.0, 3.0):
            self.monitoring.record_timer("scan", value)

        timer = self.monitoring.get_metrics_summary()["timers"]["scan"]
        self.assertEqual(timer["count"], 3)
        self.assertEqual(timer["min"], 1.0)
        self.assertEqual(timer["max"], 3.0)
        self.assertAlmostEqual(timer["mean"], 2.0)
        self.assertAlmostEqual(timer["p50"], 2.0)

    def test_timer_samples_are_capped(self):
        """Test that only the newest max_samples values are kept"""
        for value in range(10):
            self.monitoring.record_timer("scan", float(value))
        self.assertEqual(self.monitoring.metrics[MetricType.TIMER]["scan"], [7.0, 8.0, 9.0])

    def test_record_memory(self):
        """Test the resident set size gauge"""
        rss = self.monitoring.record_memory()
        self.assertGreater(rss, 0)
        self.assertEqual(self.monitoring.get_metrics_summary()["gauges"]["rss_bytes"], rss)

    def test_save_metrics(self):
        """Test writing the metrics file"""
        self.monitoring.increment_counter("checks", 3)
        path = self.monitoring.save_metrics()

        self.assertIsNotNone(path)
        self.assertTrue(os.path.basename(path).startswith("metrics_"))
        self.assertTrue(path.endswith(".json"))
        with open(path) as f:
            data = json.load(f)
        self.assertEqual(data["counters"]["checks"], 3)
        self.assertIn("timestamp", data)

    def test_reset(self):
        """Test clearing all metrics"""
        self.monitoring.increment_counter("checks")
        self.monitoring.record_timer("scan", 0.1)
        self.monitoring.reset()
        summary = self.monitoring.get_metrics_summary()
        self.assertEqual(summary["counters"], {})
        self.assertEqual(summary["timers"], {})

    def test_concurrent_increments(self):
        """Test that counter updates from several threads are not lost"""
        def work():
            for _ in range(200):
                self.monitoring.increment_counter("hits")

        threads = [threading.Thread(target=work) for _ in range(4)]
        for thread in threads:
            thread.start()
        for thread in threads:
            thread.join()
        self.assertEqual(self.monitoring.get_metrics_summary()["counters"]["hits"], 800)

    def test_configure_monitoring(self):
        """Test replacing the process-wide monitoring system"""
        monitoring = configure_monitoring(self.temp_dir.name)
        self.assertIs(get_monitoring(), monitoring)
        self.assertEqual(monitoring.metrics_dir, self.temp_dir.name)


class TestResilience(unittest.TestCase):
    """Test cases for the checked and timed decorators"""

    def setUp(self):
        """Set up test fixtures"""
        logging.disable(logging.CRITICAL)
        self.temp_dir = tempfile.TemporaryDirectory()
        self.monitoring = configure_monitoring(self.temp_dir.name)

    def tearDown(self):
        """Tear down test fixtures"""
        self.temp_dir.cleanup()
        logging.disable(logging.NOTSET)

    def test_checked_passes_result_through(self):
        """Test that a returned CheckResult is left untouched"""
        @checked("ok_check")
        def check():
            return CheckResult.of("ok_check", True, detail="fine")

        result = check()
        self.assertEqual(result.status, CheckStatus.PASSED)
        self.assertEqual(result.detail, "fine")

    def test_checked_converts_verification_failure(self):
        """Test that a verification failure keeps its witness"""
        @checked("singular")
        def check():
            raise VerificationFailedError("not annihilated", witness={"operator": "e_1(0)"})

        result = check()
        self.assertEqual(result.status, CheckStatus.FAILED)
        self.assertEqual(result.name, "singular")
        self.assertEqual(result.witness, {"operator": "e_1(0)"})
        self.assertIn("VerificationFailedError", result.detail)
        counters = self.monitoring.get_metrics_summary()["counters"]
        self.assertEqual(counters["checks_failed{check=singular}"], 1)

    def test_checked_converts_other_library_errors(self):
        """Test that other library errors carry the message as witness"""
        @checked("labels")
        def check():
            raise UnsupportedLabelError("G2 is not supported")

        result = check()
        self.assertFalse(result.passed)
        self.assertEqual(result.witness, {"error": "G2 is not supported"})

    def test_checked_lets_other_exceptions_through(self):
        """Test that programming errors are not swallowed"""
        @checked("broken")
        def check():
            raise KeyError("missing")

        with self.assertRaises(KeyError):
            check()

    def test_timed_records_duration(self):
        """Test that each call records one timer sample"""
        @timed("work")
        def work(x):
            return x * 2

        self.assertEqual(work(3), 6)
        self.assertEqual(work(4), 8)
        timer = self.monitoring.get_metrics_summary()["timers"]["work"]
        self.assertEqual(timer["count"], 2)
        self.assertGreaterEqual(timer["min"], 0.0)

    def test_timed_records_on_error(self):
        """Test that a raising call is still timed"""
        @timed("failing")
        def work():
            raise ValueError("boom")

        with self.assertRaises(ValueError):
            work()
        self.assertEqual(self.monitoring.get_metrics_summary()["timers"]["failing"]["count"], 1)


if __name__ == '__main__':
    unittest.main()
