"""
Unit tests for characters and tensor product rules
"""

import unittest
import os
import sys
import logging
from fractions import Fraction

# Add parent directory to path to import modules
sys.path.append(os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from src.lie.charact import (DecompositionList, MembershipAnswer, RuleCase,
                             dominant_character, format_fundamental,
                             is_reflection_invariant, okada_index, okada_module,
                             okada_rule, tensor_decompose, type_a_factors, type_a_rule,
                             weight_multiplicities)
from src.lie.rootlie import SeriesLabel, build_root_system, weyl_dimension
from src.utils.errors import (BoundExceededError, NonDominantWeightError,
                              UnsupportedLabelError)
from tests import slow


def rs_of(series, rank):
    return build_root_system(SeriesLabel(series, rank))


def dims(decomposition):
    rs = build_root_system(decomposition.label)
    return sorted(weyl_dimension(rs, w) * m for w, m in decomposition.entries)


class TestCharacters(unittest.TestCase):
    """Test cases for weight_multiplicities"""

    def setUp(self):
        """Set up test fixtures"""
        logging.disable(logging.CRITICAL)

    def tearDown(self):
        """Tear down test fixtures"""
        logging.disable(logging.NOTSET)

    def test_adjoint_zero_weight(self):
        """Test that the zero weight of the adjoint has multiplicity rank"""
        for series, rank in [("A", 3), ("D", 5), ("E", 6), ("F", 4)]:
            rs = rs_of(series, rank)
            table = weight_multiplicities(rs, rs.highest_root)
            with self.subTest(label=f"{series}{rank}"):
                self.assertEqual(table.dimension, rs.dim_algebra)
                self.assertEqual(table.multiplicity(rs.rho * 0), rank)
                self.assertEqual(table.multiplicity(rs.highest_root), 1)

    def test_minuscule_module(self):
        """Test that the 27 of E6 is multiplicity free"""
        rs = rs_of("E", 6)
        table = weight_multiplicities(rs, rs.fundamental_weights[0])
        self.assertEqual(len(table.entries), 27)
        self.assertEqual(set(table.entries.values()), {1})
        self.assertEqual(list(dominant_character(table)), [rs.fundamental_weights[0]])

    def test_reflection_invariance(self):
        """Test Weyl group invariance of a character"""
        rs = rs_of("B", 3)
        table = weight_multiplicities(rs, rs.from_fundamental([1, 0, 1]))
        self.assertTrue(is_reflection_invariant(rs, table))

    def test_bound(self):
        """Test the dimension bound"""
        rs = rs_of("D", 5)
        with self.assertRaises(BoundExceededError) as ctx:
            weight_multiplicities(rs, rs.from_fundamental([0, 0, 0, 3, 0]), bound=100)
        self.assertEqual(ctx.exception.bound, 100)
        self.assertEqual(ctx.exception.requested, 672)

    def test_to_dict(self):
        """Test serialization of a character"""
        rs = rs_of("A", 1)
        data = weight_multiplicities(rs, rs.from_fundamental([2])).to_dict()
        self.assertEqual(data["label"], "A1")
        self.assertEqual(data["dimension"], 3)
        self.assertEqual(data["weights"][0]["weight"], ["1", "-1"])


class TestTensorDecompose(unittest.TestCase):
    """Test cases for tensor_decompose"""

    def setUp(self):
        """Set up test fixtures"""
        logging.disable(logging.CRITICAL)

    def tearDown(self):
        """Tear down test fixtures"""
        logging.disable(logging.NOTSET)

    def test_spinor_squares(self):
        """Test the D5 spinor products"""
        rs = rs_of("D", 5)
        w4, w5 = rs.fundamental_weights[3], rs.fundamental_weights[4]
        self.assertEqual(dims(tensor_decompose(rs, w4, w4)), [10, 120, 126])
        self.assertEqual(dims(tensor_decompose(rs, w4, w5)), [1, 45, 210])

    def test_e6_fundamental_square(self):
        """Test 27 (x) 27 = 27 + 351 + 351"""
        rs = rs_of("E", 6)
        w1 = rs.fundamental_weights[0]
        decomposition = tensor_decompose(rs, w1, w1)
        self.assertEqual(dims(decomposition), [27, 351, 351])
        self.assertEqual(decomposition.total_dimension(), 729)

    def test_summands_ordered_highest_first(self):
        """Test that the first summand has highest weight lam + mu"""
        rs = rs_of("C", 3)
        w1, w2 = rs.fundamental_weights[0], rs.fundamental_weights[1]
        decomposition = tensor_decompose(rs, w1, w2)
        self.assertEqual(decomposition.weights()[0], w1 + w2)
        self.assertEqual(decomposition.total_dimension(), 6 * 14)

    def test_non_dominant(self):
        """Test rejection of non-dominant factors"""
        rs = rs_of("A", 2)
        with self.assertRaises(NonDominantWeightError):
            tensor_decompose(rs, rs.from_fundamental([-1, 0]), rs.from_fundamental([1, 0]))

    def test_bound(self):
        """Test the product dimension bound"""
        rs = rs_of("D", 5)
        w4 = rs.fundamental_weights[3]
        with self.assertRaises(BoundExceededError):
            tensor_decompose(rs, w4, w4, bound=100)

    def test_to_dict(self):
        """Test summand serialization"""
        rs = rs_of("A", 2)
        w1 = rs.fundamental_weights[0]
        data = tensor_decompose(rs, w1, w1).to_dict()
        self.assertEqual([s["fundamental"] for s in data["summands"]], ["2*w1", "w2"])
        self.assertEqual([s["dimension"] for s in data["summands"]], [6, 3])


class TestTypeARules(unittest.TestCase):
    """Test cases for the closed-form type A rules"""

    def setUp(self):
        """Set up test fixtures"""
        logging.disable(logging.CRITICAL)

    def tearDown(self):
        """Tear down test fixtures"""
        logging.disable(logging.NOTSET)

    def test_rules_match_oracle(self):
        """Test each case against character convolution"""
        for rank in (2, 3, 4, 5):
            rs = rs_of("A", rank)
            for case in RuleCase:
                for r, s in [(1, 1), (2, 1), (2, 2), (3, 1)]:
                    with self.subTest(rank=rank, case=case.value, r=r, s=s):
                        rule = type_a_rule(rank, case, r, s)
                        lam, mu = type_a_factors(rank, case, r, s)
                        self.assertTrue(rule.same_as(tensor_decompose(rs, lam, mu)))

    @slow
    def test_rules_match_oracle_full_grid(self):
        """Test every case for ranks 2 to 5 and r >= s up to 4"""
        pairs = [(r, s) for r in range(1, 5) for s in range(1, r + 1)]
        for rank in range(2, 6):
            rs = rs_of("A", rank)
            for case in RuleCase:
                for r, s in pairs:
                    with self.subTest(rank=rank, case=case.value, r=r, s=s):
                        lam, mu = type_a_factors(rank, case, r, s)
                        oracle = tensor_decompose(rs, lam, mu)
                        self.assertTrue(type_a_rule(rank, case, r, s).same_as(oracle))

    def test_case_three_contains_trivial(self):
        """Test V(w1) (x) V(wl) = 1 + adjoint"""
        self.assertEqual(dims(type_a_rule(3, RuleCase.III, 1, 1)), [1, 15])

    def test_invalid_arguments(self):
        """Test argument validation"""
        with self.assertRaises(ValueError):
            type_a_rule(3, RuleCase.I, 1, 2)
        with self.assertRaises(UnsupportedLabelError):
            type_a_rule(1, RuleCase.I, 1, 1)
        self.assertEqual(type_a_rule(2, "i", 1, 0).weights(),
                         [rs_of("A", 2).fundamental_weights[0]])


class TestOkadaRule(unittest.TestCase):
    """Test cases for the type D spinor rule"""

    def setUp(self):
        """Set up test fixtures"""
        logging.disable(logging.CRITICAL)

    def tearDown(self):
        """Tear down test fixtures"""
        logging.disable(logging.NOTSET)

    def test_same_sign_matches_oracle(self):
        """Test equal-sign products against character convolution"""
        for rank, r, s in [(3, 1, 1), (3, 2, 1), (5, 1, 1), (5, 2, 1), (5, -1, -2)]:
            rs = rs_of("D", rank)
            with self.subTest(rank=rank, r=r, s=s):
                rule = okada_rule(rank, r, s)
                self.assertIsInstance(rule, DecompositionList)
                oracle = tensor_decompose(rs, okada_module(rs, r), okada_module(rs, s))
                self.assertTrue(rule.same_as(oracle))

    @slow
    def test_same_sign_full_grid(self):
        """Test equal-sign products for D5 with |r|, |s| up to 3"""
        rs = rs_of("D", 5)
        pairs = [(r, s) for r in range(1, 4) for s in range(1, r + 1)]
        for sign in (1, -1):
            for r, s in pairs:
                with self.subTest(r=sign * r, s=sign * s):
                    rule = okada_rule(5, sign * r, sign * s)
                    oracle = tensor_decompose(rs, okada_module(rs, sign * r),
                                              okada_module(rs, sign * s))
                    self.assertTrue(rule.same_as(oracle))

    def test_spinor_square_dimensions(self):
        """Test 2016 = 672 + 144 + 1200 for U(2) (x) U(1)"""
        self.assertEqual(dims(okada_rule(5, 2, 1)), [144, 672, 1200])

    def test_mixed_signs_give_membership(self):
        """Test that U(r+s) occurs once in U(r) (x) U(s) for mixed signs"""
        for r, s in [(1, -1), (2, -1)]:
            answer = okada_rule(5, r, s)
            self.assertIsInstance(answer, MembershipAnswer)
            self.assertTrue(answer.holds)
            self.assertEqual(answer.to_dict()["expected_t"], r + s)

    @slow
    def test_mixed_signs_full_grid(self):
        """Test membership for every mixed-sign pair with |r|, |s| up to 2"""
        for r in (1, 2, -1, -2):
            for s in (1, 2, -1, -2):
                if r * s > 0:
                    continue
                with self.subTest(r=r, s=s):
                    answer = okada_rule(5, r, s)
                    self.assertIsInstance(answer, MembershipAnswer)
                    self.assertTrue(answer.holds)
                    self.assertEqual(answer.to_dict()["expected_t"], r + s)

    def test_okada_index(self):
        """Test recovery of t from U(t)"""
        rs = rs_of("D", 5)
        for t in (-3, -1, 0, 2):
            self.assertEqual(okada_index(rs, okada_module(rs, t)), t)
        self.assertIsNone(okada_index(rs, rs.fundamental_weights[0]))
        self.assertIsNone(okada_index(rs, rs.from_fundamental([0, 0, 0, 1, 1])))

    def test_even_rank_rejected(self):
        """Test that even ranks are unsupported"""
        with self.assertRaises(UnsupportedLabelError):
            okada_rule(4, 1, 1)


class TestFormatting(unittest.TestCase):
    """Test cases for format_fundamental"""

    def test_format(self):
        """Test fundamental weight strings"""
        self.assertEqual(format_fundamental([1, 0, 2]), "w1+2*w3")
        self.assertEqual(format_fundamental([0, 0]), "0")
        self.assertEqual(format_fundamental([Fraction(1, 2)]), "1/2*w1")


if __name__ == '__main__':
    unittest.main()
