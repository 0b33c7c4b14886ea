"""
Unit tests for weylfree, one module per source module

Exhaustive oracle grids run only when WEYLFREE_SLOW_TESTS=1
(``run_tests.py --slow``).
"""

import os
import unittest


def slow(test):
    """Skip a long oracle grid unless slow tests are enabled"""
    enabled = os.getenv('WEYLFREE_SLOW_TESTS') == '1'
    return unittest.skipUnless(enabled, "set WEYLFREE_SLOW_TESTS=1 to run")(test)
