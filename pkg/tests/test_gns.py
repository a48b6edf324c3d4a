#!/usr/bin/env python3
"""
Unit tests for the correspondence between hermitian functionals and
sesquilinear forms.
"""

import os
import random
import sys
import unittest
from fractions import Fraction

from hypothesis import given, settings, strategies as st

sys.path.append(os.path.abspath(os.path.dirname(os.path.dirname(__file__))))
from involute.errors import ConditionViolation, InputError, PreconditionError
from involute.fmod import Vector, mk_module, nontrivial_selfconjs
from involute.gns import (
    SesquiForm, check_condition_a, check_condition_b, check_roundtrip, form_eval,
    functional_eval, gram_counts, hermitian_part, ip2state, is_hermitian, is_state,
    mk_functional, normalized_trace, roundtrip_check, state2ip, zero_functional,
)
from involute.scalars import GAUSS, GF9, GaussianRational
from involute.staralg import mk_entrywise_matrix_algebra, mk_function_algebra, mk_matrix_algebra
from tests.strategies import gaussians

HALF = GaussianRational(Fraction(1, 2))


class TestStateToForm(unittest.TestCase):
    """Test case for state2ip on the matrix algebra."""

    def setUp(self):
        self.A = mk_matrix_algebra(2, GAUSS)

    def test_normalized_trace_gram(self):
        """Test that the normalised trace induces half the identity."""
        f = normalized_trace(self.A, 2)
        self.assertTrue(is_state(f))
        p = state2ip(f)
        for i in range(4):
            for j in range(4):
                expected = HALF if i == j else GAUSS.zero
                self.assertEqual(p.gram[i][j].coords, (expected,))

    def test_form_eval(self):
        """Test that the form is antilinear in its first argument."""
        p = state2ip(normalized_trace(self.A, 2))
        i = GaussianRational(0, 1)
        x = Vector(self.A.module, (i, GAUSS.zero, GAUSS.zero, GAUSS.zero))
        self.assertEqual(form_eval(p, x, self.A.e("E11")).coords, (GaussianRational(0, Fraction(-1, 2)),))

    def test_nonhermitian_rejected(self):
        """Test that a non-hermitian functional raises with the offending basis element."""
        f = mk_functional(self.A, [GAUSS.zero, GAUSS.one, GAUSS.zero, GAUSS.zero])
        self.assertFalse(is_hermitian(f))
        with self.assertRaises(ConditionViolation) as ctx:
            state2ip(f)
        self.assertEqual(ctx.exception.witness["basis"], "E12")

    def test_value_count(self):
        """Test that a functional needs one value per basis element."""
        with self.assertRaises(InputError):
            mk_functional(self.A, [GAUSS.one])


class TestFormToState(unittest.TestCase):
    """Test case for ip2state and the two conditions."""

    def setUp(self):
        self.A = mk_matrix_algebra(2, GAUSS)
        self.trace = normalized_trace(self.A, 2)

    def _tampered(self):
        p = state2ip(self.trace)
        gram = [list(row) for row in p.gram]
        gram[0][0] = Vector(p.codomain.module, (GAUSS.one,))
        return SesquiForm(self.A, p.codomain, gram)

    def test_roundtrip(self):
        """Test that the trace survives both round trips."""
        p = state2ip(self.trace)
        self.assertEqual(ip2state(p), self.trace)
        self.assertTrue(check_roundtrip(self.trace).passed)

    def test_tampered_gram_violates_b(self):
        """Test that changing one Gram entry breaks condition (b) with a witness."""
        p = self._tampered()
        self.assertTrue(check_condition_a(p).passed)
        report = check_condition_b(p)
        self.assertFalse(report.passed)
        with self.assertRaises(ConditionViolation) as ctx:
            ip2state(p)
        self.assertEqual(str(ctx.exception), "condition_b violated")
        self.assertEqual(set(ctx.exception.witness), {"a", "b", "c", "lhs", "rhs"})

    def test_zero_functional(self):
        """Test that the zero functional gives the zero form and back."""
        z = zero_functional(self.A)
        self.assertEqual(ip2state(state2ip(z)), z)
        self.assertFalse(is_state(z))

    def test_is_state_needs_scalar_codomain(self):
        """Test that is_state refuses vector-valued functionals."""
        A = mk_function_algebra(2, GF9)
        c = nontrivial_selfconjs(mk_module(GF9, 2))[0]
        with self.assertRaises(PreconditionError):
            is_state(zero_functional(A, c))

    @given(st.lists(gaussians, min_size=4, max_size=4), st.booleans())
    @settings(max_examples=30, deadline=None)
    def test_hermitian_part_roundtrips(self, values, entrywise):
        """Test both round trips on the hermitian part of any functional."""
        A = mk_entrywise_matrix_algebra(2, GAUSS) if entrywise else self.A
        h = hermitian_part(mk_functional(A, values))
        self.assertTrue(is_hermitian(h))
        self.assertTrue(check_roundtrip(h).passed)

    def test_functional_eval(self):
        """Test evaluation on the unit."""
        self.assertEqual(functional_eval(self.trace, self.A.unit).coords, (GAUSS.one,))


class TestRoundtripCheck(unittest.TestCase):
    """Test case for the exhaustive and sampled round-trip checks."""

    def test_exhaustive_function_algebra(self):
        """Test the bijection on the two-point function algebra over GF(9)."""
        A = mk_function_algebra(2, GF9)
        report = roundtrip_check(A)
        self.assertTrue(report.passed, report.failures())
        self.assertIn("bijection", report.results)
        self.assertEqual(gram_counts(A), (81, 9, 9))

    def test_sampled_matrix_algebra(self):
        """Test the sampled round trips on Mat2 over the Gaussian rationals."""
        report = roundtrip_check(mk_matrix_algebra(2, GAUSS), budget=5, rng=random.Random(4))
        self.assertTrue(report.passed, report.failures())
        self.assertNotIn("bijection", report.results)

    def test_vector_valued_codomain(self):
        """Test functionals valued in a non-trivial self-conjugate."""
        A = mk_function_algebra(1, GAUSS)
        c = nontrivial_selfconjs(mk_module(GAUSS, 2))[0]
        report = roundtrip_check(A, c, budget=5, rng=random.Random(1))
        self.assertTrue(report.passed, report.failures())


if __name__ == '__main__':
    unittest.main()
