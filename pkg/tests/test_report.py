"""
Unit tests for check results and decomposition reports
"""

import unittest
import csv
import io
import json
import os
import sys
import logging
import tempfile
from enum import Enum
from fractions import Fraction

import yaml

# Add parent directory to path to import modules
sys.path.append(os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from src.workflows.report import (CheckResult, CheckStatus, DecompositionReport,
                                  ReportFamily, ReportRow, REPORT_VERSION,
                                  dump_csv, dump_json, plain)


class Color(Enum):
    RED = "red"


class TestPlain(unittest.TestCase):
    """Test cases for JSON-native rendering"""

    def test_fractions_and_enums(self):
        """Test conversion of fractions, enums and containers"""
        data = {"a": Fraction(-3, 2), "b": (1, Fraction(4)), "c": Color.RED,
                Fraction(1, 2): {2, 1}}
        self.assertEqual(plain(data), {"a": "-3/2", "b": [1, "4"], "c": "red",
                                       "1/2": [1, 2]})

    def test_to_dict_objects(self):
        """Test objects exposing to_dict"""
        check = CheckResult.of("x", True)
        self.assertEqual(plain([check]), [{"name": "x", "status": "passed"}])

    def test_dump_json_is_deterministic(self):
        """Test sorted keys and trailing newline"""
        text = dump_json({"b": 1, "a": Fraction(1, 3)})
        self.assertTrue(text.endswith("\n"))
        self.assertLess(text.index('"a"'), text.index('"b"'))
        self.assertEqual(json.loads(text), {"a": "1/3", "b": 1})
        self.assertEqual(text, dump_json({"a": Fraction(1, 3), "b": 1}))

    def test_dump_csv_header_union(self):
        """Test header from all rows and JSON cells for nested values"""
        text = dump_csv([{"b": 1, "a": {"x": 2}}, {"c": None}])
        rows = list(csv.DictReader(io.StringIO(text)))
        self.assertEqual(text.splitlines()[0], "a,b,c")
        self.assertEqual(json.loads(rows[0]["a"]), {"x": 2})
        self.assertEqual(rows[1]["c"], "")


class TestCheckResult(unittest.TestCase):
    """Test cases for the CheckResult class"""

    def test_witness_dropped_when_passing(self):
        """Test that a passing check has no witness"""
        result = CheckResult.of("scan", True, witness={"v": 1})
        self.assertIsNone(result.witness)
        self.assertTrue(result.passed)

    def test_failed_check(self):
        """Test a failed check with witness"""
        result = CheckResult.of("scan", False, detail="extra vector", witness={"v": 1})
        self.assertFalse(result.passed)
        self.assertEqual(result.to_dict(), {"name": "scan", "status": "failed",
                                            "detail": "extra vector", "witness": {"v": 1}})

    def test_skipped_counts_as_passed(self):
        """Test that skipped checks do not fail a report"""
        result = CheckResult.skipped("d5_vector", "beyond limit")
        self.assertEqual(result.status, CheckStatus.SKIPPED)
        self.assertTrue(result.passed)


class TestDecompositionReport(unittest.TestCase):
    """Test cases for the DecompositionReport class"""

    def setUp(self):
        """Set up test fixtures"""
        logging.disable(logging.CRITICAL)
        row = ReportRow(s=-1, weight="-1*L0+L2", level=Fraction(-1), heisenberg="M(1,-1)",
                        lowest_weight=Fraction(1, 2), dimensions={"quotient": [3, 9]})
        row.add(CheckResult.of("lowest_weight", True))
        self.report = DecompositionReport(family=ReportFamily.A_IN_WEYL, rank=3,
                                          degree=Fraction(2), rows=[row])
        self.temp_dir = tempfile.TemporaryDirectory()

    def tearDown(self):
        """Tear down test fixtures"""
        self.temp_dir.cleanup()
        logging.disable(logging.NOTSET)

    def test_to_dict(self):
        """Test the report dictionary"""
        data = self.report.to_dict()
        self.assertEqual(data["family"], "A_in_Weyl")
        self.assertEqual(data["status"], "passed")
        self.assertEqual(data["version"], REPORT_VERSION)
        self.assertEqual(data["rows"][0]["lowest_weight"], "1/2")
        self.assertEqual(data["rows"][0]["level"], "-1")

    def test_failed_row_fails_report(self):
        """Test that one failed row check fails the report"""
        self.report.rows[0].add(CheckResult.of("scan", False, detail="extra"))
        self.assertFalse(self.report.passed)
        self.assertEqual(self.report.to_dict()["status"], "failed")
        self.assertEqual(self.report.rows[0].to_csv_row()["failed"], "scan")

    def test_failed_family_check_fails_report(self):
        """Test that family-level checks count"""
        self.report.checks.append(CheckResult.of("central_charge", False))
        self.assertFalse(self.report.passed)

    def test_to_csv(self):
        """Test one CSV line per row"""
        rows = list(csv.DictReader(io.StringIO(self.report.to_csv())))
        self.assertEqual(len(rows), 1)
        self.assertEqual(rows[0]["s"], "-1")
        self.assertEqual(rows[0]["status"], "passed")
        self.assertEqual(json.loads(rows[0]["dimensions"]), {"quotient": [3, 9]})

    def test_save_to_file(self):
        """Test saving in each supported format"""
        for name in ("report.json", "report.yaml", "report.csv"):
            path = os.path.join(self.temp_dir.name, name)
            self.report.save_to_file(path)
            self.assertTrue(os.path.exists(path))

        with open(os.path.join(self.temp_dir.name, "report.yaml")) as f:
            data = yaml.safe_load(f)
        self.assertEqual(data["rank"], 3)
        with open(os.path.join(self.temp_dir.name, "report.json")) as f:
            self.assertEqual(json.load(f), self.report.to_dict())

    def test_save_unsupported_format(self):
        """Test that unknown extensions are rejected"""
        with self.assertRaises(ValueError):
            self.report.save_to_file(os.path.join(self.temp_dir.name, "report.txt"))


if __name__ == '__main__':
    unittest.main()
