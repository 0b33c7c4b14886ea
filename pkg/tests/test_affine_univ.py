"""
Unit tests for the universal affine vertex algebra and its singular vectors
"""

import unittest
import os
import sys
import logging

# Add parent directory to path to import modules
sys.path.append(os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from src.lie.rootlie import SeriesLabel, Weight, build_root_system, weyl_dimension
from src.vertex.affine_univ import (AffineLevel, ExplicitVector, PBWVector, act_element,
                                    act_mode, basis_signs, build_explicit_vector,
                                    build_explicit_vector_at, ideal_graded_dims, is_singular, pbw_basis,
                                    pbw_monomial_vector, resolve_signs, vector_weight)
from src.vertex.fock import FockVector, phi_image
from src.utils.errors import BoundExceededError, UnsupportedLabelError

A1 = SeriesLabel("A", 1)


class TestModeActions(unittest.TestCase):
    """Test cases for PBW bases and mode actions"""

    def setUp(self):
        """Set up test fixtures"""
        logging.disable(logging.CRITICAL)
        self.level = AffineLevel(A1, 3)
        self.alg = self.level.alg
        alpha = self.alg.rs.simple_roots[0]
        self.e = self.alg.index_of_root(alpha)
        self.f = self.alg.index_of_root(-alpha)
        self.h = self.alg.cartan_index(0)

    def tearDown(self):
        """Tear down test fixtures"""
        logging.disable(logging.NOTSET)

    def test_pbw_basis_sizes(self):
        """Test PBW basis sizes of sl(2)"""
        self.assertEqual(len(pbw_basis(self.level, 0)), 1)
        self.assertEqual(len(pbw_basis(self.level, 1)), 3)
        self.assertEqual(len(pbw_basis(self.level, 2)), 3 + 6)
        zero = Weight.zero(2)
        self.assertEqual(len(pbw_basis(self.level, 1, weight=zero)), 1)
        with self.assertRaises(BoundExceededError):
            pbw_basis(self.level, 4, cutoff=3)

    def test_central_term(self):
        """Test e(1) f(-1) 1 = k 1 and h(1) h(-1) 1 = 2k 1"""
        vac = PBWVector.vacuum(self.level)
        fv = pbw_monomial_vector(self.level, [(self.f, -1)])
        hv = pbw_monomial_vector(self.level, [(self.h, -1)])
        self.assertEqual(act_mode(self.level, self.e, 1, fv), vac * 3)
        self.assertEqual(act_mode(self.level, self.h, 1, hv), vac * 6)

    def test_zero_mode_is_adjoint(self):
        """Test h(0) e(-1) 1 = 2 e(-1) 1"""
        ev = pbw_monomial_vector(self.level, [(self.e, -1)])
        self.assertEqual(act_mode(self.level, self.h, 0, ev), ev * 2)
        self.assertTrue(act_mode(self.level, self.e, 0, ev).is_zero())

    def test_straightening(self):
        """Test that out-of-order products straighten to canonical monomials"""
        fe = pbw_monomial_vector(self.level, [(self.f, -1), (self.e, -1)])
        ef = pbw_monomial_vector(self.level, [(self.e, -1), (self.f, -1)])
        h2 = pbw_monomial_vector(self.level, [(self.h, -2)])
        # [f(-1), e(-1)] = -h(-2)
        self.assertEqual(fe - ef, h2 * -1)

    def test_cutoff(self):
        """Test that actions beyond the cutoff are refused"""
        v = PBWVector.vacuum(self.level, cutoff=1)
        with self.assertRaises(BoundExceededError):
            act_mode(self.level, self.e, -2, v)

    def test_at_level(self):
        """Test moving a vector between levels"""
        v = pbw_monomial_vector(self.level, [(self.e, -1)])
        moved = v.at_level(AffineLevel(A1, -1))
        self.assertEqual(moved.terms, v.terms)
        self.assertNotEqual(moved, v)
        with self.assertRaises(UnsupportedLabelError):
            v.at_level(AffineLevel(SeriesLabel("A", 2), 1))


class TestSingularVectors(unittest.TestCase):
    """Test cases for singularity checks and the explicit vectors"""

    def setUp(self):
        """Set up test fixtures"""
        logging.disable(logging.CRITICAL)

    def tearDown(self):
        """Tear down test fixtures"""
        logging.disable(logging.NOTSET)

    def test_integrable_sl2_vector(self):
        """Test that e(-1)^2 1 is singular exactly at level 1"""
        for k, expected in [(1, True), (2, False)]:
            level = AffineLevel(A1, k)
            e = level.alg.index_of_root(level.alg.rs.simple_roots[0])
            v = pbw_monomial_vector(level, [(e, -1), (e, -1)])
            check = is_singular(level, v)
            self.assertEqual(bool(check), expected)
            if not expected:
                self.assertEqual(check.operator, "f_theta(1)")
                self.assertIsNotNone(check.to_dict()["witness"])

    def test_ideal_of_sl2_vector(self):
        """Test the graded dimensions of the ideal generated at level 1"""
        level = AffineLevel(A1, 1)
        e = level.alg.index_of_root(level.alg.rs.simple_roots[0])
        v = pbw_monomial_vector(level, [(e, -1), (e, -1)], cutoff=2)
        self.assertEqual(ideal_graded_dims(level, v, 2), {0: 0, 1: 0, 2: 5})
        with self.assertRaises(BoundExceededError):
            ideal_graded_dims(level, v, 3)

    def test_vacuum_generates_everything(self):
        """Test that the vacuum generates the whole truncated module"""
        level = AffineLevel(A1, 1)
        self.assertEqual(ideal_graded_dims(level, PBWVector.vacuum(level, cutoff=2), 2),
                         {0: 1, 1: 3, 2: 9})

    def test_explicit_vectors_singular(self):
        """Test the explicit vectors at their levels"""
        cases = [(ExplicitVector.A_TYPE, 3, -1, 3), (ExplicitVector.A_TYPE, 4, -1, 2),
                 (ExplicitVector.A_TYPE, 5, -1, 2), (ExplicitVector.D_TYPE, 4, -2, 2),
                 (ExplicitVector.D_TYPE, 5, -3, 2), (ExplicitVector.E6, 0, -3, 2)]
        for which, rank, k, degree in cases:
            with self.subTest(vector=which.value, rank=rank):
                v, level = build_explicit_vector(which, rank)
                self.assertEqual(level.k, k)
                self.assertEqual(v.degrees(), {degree})
                self.assertFalse(v.is_zero())
                self.assertTrue(is_singular(level, v))

    def test_explicit_vectors_off_level(self):
        """Test that the vectors stop being singular away from their levels"""
        cases = [(ExplicitVector.A_TYPE, 4, (0, 1, -2)), (ExplicitVector.E6, 0, (0, 1, -2)),
                 (ExplicitVector.D_TYPE, 4, (0, -1, -3))]
        for which, rank, levels in cases:
            for k in levels:
                with self.subTest(vector=which.value, rank=rank, k=k):
                    v = build_explicit_vector_at(which, rank, k)
                    check = is_singular(v.level, v)
                    self.assertFalse(check)
                    self.assertEqual(check.operator, "f_theta(1)")

    def test_ideal_of_explicit_vectors(self):
        """Test that the ideal starts with one copy of the g-module of v"""
        for which, rank in [(ExplicitVector.A_TYPE, 4), (ExplicitVector.D_TYPE, 4)]:
            with self.subTest(vector=which.value, rank=rank):
                v, level = build_explicit_vector(which, rank)
                rs = build_root_system(level.label)
                top = weyl_dimension(rs, vector_weight(level, v))
                self.assertEqual(ideal_graded_dims(level, v, 2), {0: 0, 1: 0, 2: top})
        self.assertEqual(weyl_dimension(build_root_system(SeriesLabel("A", 3)),
                                        Weight((1, 1, -1, -1))), 20)
        d4 = build_root_system(SeriesLabel("D", 4))
        self.assertEqual(weyl_dimension(d4, Weight((2, 0, 0, 0))), 35)

    def test_vector_weight(self):
        """Test the weight of the A_type vector for l = 4"""
        v, level = build_explicit_vector(ExplicitVector.A_TYPE, 4)
        self.assertEqual(vector_weight(level, v), Weight((1, 1, -1, -1)))

    def test_sign_resolution(self):
        """Test that every resolved sign is +-1"""
        for which, rank, terms in [(ExplicitVector.A_TYPE, 3, 3), (ExplicitVector.D_TYPE, 4, 3),
                                   (ExplicitVector.E6, 0, 4)]:
            resolution = resolve_signs(which, rank)
            self.assertEqual(len(resolution.resolved), terms)
            self.assertTrue(all(abs(c) == 1 for c in resolution.resolved))
            self.assertEqual(resolution.to_dict()["vector"], which.value)

    def test_sign_table_matches_kernel(self):
        """Test that the sign table agrees with the signs recomputed from the raising operators"""
        cases = [(ExplicitVector.A_TYPE, 3), (ExplicitVector.A_TYPE, 4), (ExplicitVector.A_TYPE, 5),
                 (ExplicitVector.D_TYPE, 3), (ExplicitVector.D_TYPE, 4), (ExplicitVector.D_TYPE, 5),
                 (ExplicitVector.E6, 0)]
        for which, rank in cases:
            with self.subTest(vector=which.value, rank=rank):
                resolution = resolve_signs(which, rank)
                self.assertEqual(basis_signs(which, rank), resolution.resolved)
                self.assertTrue(resolution.matches_table)
        self.assertEqual(basis_signs(ExplicitVector.E6), [1, 1, -1, 1])
        self.assertEqual(basis_signs(ExplicitVector.D_TYPE, 5), [1, -1, 1, -1])
        self.assertEqual(basis_signs(ExplicitVector.A_TYPE, 3), [1, -1, -1])

    def test_unsupported_ranks(self):
        """Test rank validation of the explicit families"""
        with self.assertRaises(UnsupportedLabelError):
            build_explicit_vector(ExplicitVector.A_TYPE, 2)
        with self.assertRaises(UnsupportedLabelError):
            build_explicit_vector(ExplicitVector.D_TYPE, 2)
        with self.assertRaises(ValueError):
            build_explicit_vector("B_type", 3)


class TestFreeFieldImage(unittest.TestCase):
    """Test cases for the map into the Weyl vertex algebra"""

    def setUp(self):
        """Set up test fixtures"""
        logging.disable(logging.CRITICAL)

    def tearDown(self):
        """Tear down test fixtures"""
        logging.disable(logging.NOTSET)

    def test_singular_vector_maps_to_zero(self):
        """Test that the A_type vector vanishes in M_l"""
        for rank in (3, 4, 5):
            with self.subTest(rank=rank):
                v, _ = build_explicit_vector(ExplicitVector.A_TYPE, rank)
                self.assertTrue(phi_image(rank, v).is_zero())

    def test_generator_images_are_nonzero(self):
        """Test that x(-1) 1 maps to a nonzero vector"""
        level = AffineLevel(SeriesLabel("A", 2), -1)
        alg = level.alg
        for index in range(alg.dim):
            image = phi_image(3, pbw_monomial_vector(level, [(index, -1)]))
            self.assertFalse(image.is_zero())
            self.assertEqual(image.charges(), {0})

    def test_vacuum_and_rank_checks(self):
        """Test the vacuum image and label checks"""
        level = AffineLevel(SeriesLabel("A", 2), -1)
        self.assertEqual(phi_image(3, PBWVector.vacuum(level)), FockVector.vacuum())
        with self.assertRaises(UnsupportedLabelError):
            phi_image(4, PBWVector.vacuum(level))
        with self.assertRaises(UnsupportedLabelError):
            phi_image(1, PBWVector.vacuum(level))

    def test_element_action_matches_basis(self):
        """Test act_element on a single basis element"""
        level = AffineLevel(A1, -1)
        alg = level.alg
        e = alg.e(alg.rs.simple_roots[0])
        vac = PBWVector.vacuum(level)
        index = next(iter(e))
        self.assertEqual(act_element(level, e, -1, vac), act_mode(level, index, -1, vac))


if __name__ == '__main__':
    unittest.main()
