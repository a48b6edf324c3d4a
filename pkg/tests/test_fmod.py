#!/usr/bin/env python3
"""
Unit tests for free modules, conjugate modules and self-conjugates.
"""

import os
import random
import sys
import unittest
from fractions import Fraction

from hypothesis import given, strategies as st

sys.path.append(os.path.abspath(os.path.dirname(os.path.dirname(__file__))))
from involute.errors import ConditionViolation, InputError, PreconditionError, ScalarMismatchError
from involute.fmod import (
    LinMap, SelfConjugate, Side, Vector, apply, as_antilinear, basis_vector,
    bilinear_universal_check, check_hom_evaluation, check_selfconj, compose, conjmod_law_check,
    hom_involve, map_add, mk_module, nontrivial_selfconjs, sc_apply, std_selfconj, tensor,
    tensor_module, tensor_vector, transpose,
)
from involute.scalars import GAUSS, GF9, RATIONAL, GaussianRational, GF9Element
from tests.strategies import gaussians

I = GaussianRational(0, 1)
ONE, ZERO = GAUSS.one, GAUSS.zero


class TestVectorsAndMaps(unittest.TestCase):
    """Test case for vectors and (anti)linear maps."""

    def setUp(self):
        self.M = mk_module(GAUSS, 2)

    def test_str(self):
        """Test the readable form of vectors."""
        self.assertEqual(str(Vector(self.M, (ONE, ZERO))), "e1")
        self.assertEqual(str(Vector(self.M, (GaussianRational(Fraction(1, 2)), ONE))), "(1/2)e1 + e2")
        self.assertEqual(str(Vector(self.M, (ZERO, ZERO))), "0")

    def test_shape_errors(self):
        """Test that wrong coordinate counts and matrix shapes are rejected."""
        with self.assertRaises(InputError):
            Vector(self.M, (ONE,))
        with self.assertRaises(InputError):
            LinMap(self.M, self.M, [[ONE, ZERO]])
        with self.assertRaises(InputError):
            self.M.index("e3")

    def test_scalar_mismatch(self):
        """Test that modules over different semirings do not mix."""
        with self.assertRaises(ScalarMismatchError):
            LinMap(self.M, mk_module(GF9, 2), [[GF9.one, GF9.zero], [GF9.zero, GF9.one]])

    def test_antilinear_apply(self):
        """Test that an antilinear map conjugates its argument first."""
        f = as_antilinear(LinMap(self.M, self.M, [[ONE, ZERO], [ZERO, ONE]]))
        x = Vector(self.M, (I, ONE))
        self.assertEqual(apply(f, x), Vector(self.M, (-I, ONE)))

    def test_compose_sides(self):
        """Test that two antilinear maps compose to a linear one."""
        f = as_antilinear(LinMap(self.M, self.M, [[ZERO, I], [ONE, ZERO]]))
        g = compose(f, f)
        self.assertIs(g.side, Side.LINEAR)
        x = Vector(self.M, (ONE, I))
        self.assertEqual(apply(g, x), apply(f, apply(f, x)))

    def test_transpose(self):
        """Test that transpose swaps the conjugated side and needs one."""
        f = as_antilinear(LinMap(self.M, self.M, [[ONE, ZERO], [ZERO, ONE]]))
        self.assertIs(transpose(f).side, Side.CONJ_CODOMAIN)
        self.assertEqual(transpose(transpose(f)), f)
        with self.assertRaises(PreconditionError):
            transpose(LinMap(self.M, self.M, [[ONE, ZERO], [ZERO, ONE]]))

    def test_add_sides_must_match(self):
        """Test that linear and antilinear maps do not add."""
        f = LinMap(self.M, self.M, [[ONE, ZERO], [ZERO, ONE]])
        with self.assertRaises(InputError):
            map_add(f, as_antilinear(f))

    def test_tensor_vector(self):
        """Test the tensor of basis vectors and the tensor basis names."""
        T = tensor_module(self.M, self.M)
        self.assertEqual(T.basis[1], "(e1,e2)")
        self.assertEqual(tensor_vector(basis_vector(self.M, 0), basis_vector(self.M, 1)), basis_vector(T, 1))


class TestSelfConjugates(unittest.TestCase):
    """Test case for self-conjugate modules."""

    def setUp(self):
        self.M = mk_module(GAUSS, 2)

    def test_validity(self):
        """Test that the swap and diag(i, 1) are valid while [[0, i], [-i, 0]] is not."""
        self.assertTrue(SelfConjugate(self.M, [[ZERO, ONE], [ONE, ZERO]]).is_valid())
        self.assertTrue(SelfConjugate(self.M, [[I, ZERO], [ZERO, ONE]]).is_valid())
        bad = SelfConjugate(self.M, [[ZERO, I], [-I, ZERO]])
        self.assertFalse(bad.is_valid())
        with self.assertRaises(ConditionViolation) as ctx:
            bad.require_valid()
        self.assertIn("J_conjJ", ctx.exception.witness)

    def test_nontrivial_selfconjs(self):
        """Test that the shipped non-identity J's are valid."""
        cs = nontrivial_selfconjs(self.M)
        self.assertEqual(len(cs), 2)
        self.assertTrue(all(c.is_valid() for c in cs))
        self.assertEqual(len(nontrivial_selfconjs(mk_module(RATIONAL, 1))), 0)

    def test_std_conjugates_coordinates(self):
        """Test the coordinatewise conjugation."""
        c = std_selfconj(self.M)
        self.assertEqual(sc_apply(c, Vector(self.M, (I, ONE))), Vector(self.M, (-I, ONE)))

    def test_check_selfconj(self):
        """Test the self-conjugate law report on valid and invalid J."""
        for c in [std_selfconj(self.M)] + nontrivial_selfconjs(self.M):
            self.assertTrue(check_selfconj(c, random.Random(0), 5).passed)
        bad = SelfConjugate(self.M, [[ZERO, I], [-I, ZERO]])
        self.assertFalse(check_selfconj(bad, random.Random(0), 5).passed)

    def test_tensor_is_valid(self):
        """Test that tensors of valid self-conjugates are valid."""
        swap, diag = nontrivial_selfconjs(self.M)
        self.assertTrue(tensor(swap, diag).is_valid())

    def test_hom_evaluation(self):
        """Test the evaluation law on hom-modules over GF(9)."""
        M1, M2 = mk_module(GF9, 1), mk_module(GF9, 2)
        cX = nontrivial_selfconjs(M1)[0]
        for cY in [std_selfconj(M2)] + nontrivial_selfconjs(M2):
            self.assertTrue(check_hom_evaluation(cX, cY).passed)

    @given(st.lists(gaussians, min_size=4, max_size=4), st.sampled_from([0, 1]))
    def test_hom_involution_is_involutive(self, entries, which):
        """Test that F -> J_Y conj(F) conj(J_X) is an involution."""
        c = nontrivial_selfconjs(self.M)[which]
        F = LinMap(self.M, self.M, [entries[:2], entries[2:]])
        self.assertEqual(hom_involve(c, c, hom_involve(c, c, F)), F)


class TestModuleLaws(unittest.TestCase):
    """Test case for the conjugate-module and bimorphism checkers."""

    def test_conjmod_law_check(self):
        """Test the law checker over GF(9) and the Gaussian rationals."""
        self.assertTrue(conjmod_law_check(GF9, 5, random.Random(0), max_dim=2).passed)
        self.assertTrue(conjmod_law_check(GAUSS, 5, random.Random(0), max_dim=2).passed)

    def test_conjmod_budget(self):
        """Test that a zero budget is rejected."""
        with self.assertRaises(InputError):
            conjmod_law_check(GF9, 0)

    def test_bilinear_universal(self):
        """Test unique factorisation through the tensor product."""
        report = bilinear_universal_check(mk_module(GF9, 1), mk_module(GF9, 2), mk_module(GF9, 1))
        self.assertTrue(report.passed, report.failures())
        self.assertEqual(report.results["unique_factorization"].checked, 81)

    def test_bilinear_sampled(self):
        """Test the sampled variant over the Gaussian rationals."""
        M = mk_module(GAUSS, 2)
        report = bilinear_universal_check(M, M, M, budget=10, rng=random.Random(2))
        self.assertTrue(report.passed, report.failures())
        self.assertEqual(report.results["unique_factorization"].checked, 10)

    def test_bilinear_gf9_square_exhaustive(self):
        """Test that every bilinear map GF(9)^2 x GF(9)^2 -> GF(9) factors uniquely."""
        M = mk_module(GF9, 2)
        report = bilinear_universal_check(M, M, mk_module(GF9, 1))
        self.assertTrue(report.passed, report.failures())
        self.assertEqual(report.results["unique_factorization"].checked, 9 ** 4)

    def test_bilinear_gf9_square_sampled(self):
        """Test that uniqueness is still checked when GF(9) maps are sampled."""
        M = mk_module(GF9, 2)
        report = bilinear_universal_check(M, M, M, budget=25, rng=random.Random(8))
        self.assertTrue(report.passed, report.failures())
        self.assertEqual(report.results["unique_factorization"].checked, 25)
        self.assertEqual(report.results["tensor_basis"].checked, 4)

    def test_bilinear_dimension_limit(self):
        """Test that dimensions above two are refused."""
        with self.assertRaises(PreconditionError):
            bilinear_universal_check(mk_module(GF9, 3), mk_module(GF9, 1), mk_module(GF9, 1))

    def test_gf9_imaginary_diag(self):
        """Test diag(i) on a one-dimensional GF(9) module."""
        M = mk_module(GF9, 1)
        c = nontrivial_selfconjs(M)[0]
        self.assertEqual(c.J[0][0], GF9Element(0, 1))
        x = Vector(M, (GF9Element(1, 1),))
        self.assertEqual(sc_apply(c, x), Vector(M, (GF9Element(1, 1),)))


if __name__ == '__main__':
    unittest.main()
