#!/usr/bin/env python3
"""
Unit tests for the involutive multiset monad.
"""

import os
import random
import sys
import unittest

from hypothesis import given

sys.path.append(os.path.abspath(os.path.dirname(os.path.dirname(__file__))))
from involute.errors import InputError, ScalarMismatchError
from involute.multiset import (
    Multiset, all_multisets, mset_add, mset_dst, mset_eta, mset_law_check, mset_map,
    mset_mu, mset_nu, mset_scale, mset_zero, nu_first_entry_only,
)
from involute.report import FAIL
from involute.scalars import BOOLEAN, GAUSS, GF9, RATIONAL, GaussianRational, GF9Element
from tests.strategies import gaussians, gf9_elements, multisets

I = GaussianRational(0, 1)


class TestMultisetBasics(unittest.TestCase):
    """Test case for the canonical representation."""

    def test_build_merges_and_drops_zeros(self):
        """Test that repeated keys add up and zero entries vanish."""
        phi = Multiset.build(GAUSS, [("x", GAUSS.one), ("y", I), ("x", -GAUSS.one)])
        self.assertEqual(phi.entries, (("y", I),))
        self.assertEqual(Multiset.build(GAUSS, [("x", GAUSS.zero)]), mset_zero(GAUSS))

    def test_entries_are_sorted(self):
        """Test that insertion order does not matter."""
        a = Multiset.build(GF9, [("y", GF9.one), ("x", GF9.one), (2, GF9.one)])
        b = Multiset.build(GF9, [(2, GF9.one), ("x", GF9.one), ("y", GF9.one)])
        self.assertEqual(a, b)
        self.assertEqual(a.support(), [2, "x", "y"])

    def test_lookup_and_str(self):
        """Test coefficient lookup and the readable form."""
        phi = Multiset.build(GF9, [("x", GF9Element(0, 1))])
        self.assertEqual(phi("x"), GF9Element(0, 1))
        self.assertEqual(phi("z"), GF9.zero)
        self.assertEqual(str(phi), "(i)x")
        self.assertEqual(str(mset_zero(GF9)), "0")

    def test_foreign_scalar_rejected(self):
        """Test that scalars from another semiring are rejected."""
        with self.assertRaises(InputError):
            Multiset.build(GF9, [("x", I)])

    def test_unsupported_key(self):
        """Test that keys without an order are rejected."""
        with self.assertRaises(InputError):
            Multiset.build(GF9, [(1.5, GF9.one)])


class TestMonadOperations(unittest.TestCase):
    """Test case for eta, mu, nu and dst."""

    def test_nu_conjugates(self):
        """Test that nu conjugates every coefficient."""
        phi = Multiset.build(GAUSS, [("x", I), ("y", GAUSS.one)])
        self.assertEqual(mset_nu(phi), Multiset.build(GAUSS, [("x", -I), ("y", GAUSS.one)]))

    def test_mu_flattens(self):
        """Test that mu multiplies outer by inner coefficients."""
        phi = Multiset.build(GAUSS, [("x", I)])
        Phi = Multiset.build(GAUSS, [(phi, I), (mset_eta("y", GAUSS), GAUSS.one)])
        expected = Multiset.build(GAUSS, [("x", I * I), ("y", GAUSS.one)])
        self.assertEqual(mset_mu(Phi), expected)

    def test_mu_rejects_plain_keys(self):
        """Test that mu needs multisets as keys."""
        with self.assertRaises(InputError):
            mset_mu(mset_eta("x", GAUSS))

    def test_dst_pairs_keys(self):
        """Test that dst multiplies coefficients over pairs of keys."""
        phi = Multiset.build(GF9, [("x", GF9Element(2)), ("y", GF9.one)])
        psi = Multiset.build(GF9, [("z", GF9Element(0, 1))])
        expected = Multiset.build(GF9, [(("x", "z"), GF9Element(0, 2)), (("y", "z"), GF9Element(0, 1))])
        self.assertEqual(mset_dst(phi, psi), expected)

    def test_scalar_mismatch(self):
        """Test that mixing semirings raises a mismatch error."""
        with self.assertRaises(ScalarMismatchError):
            mset_add(mset_eta("x", GF9), mset_eta("x", GAUSS))
        with self.assertRaises(ScalarMismatchError):
            mset_mu(Multiset.build(GF9, [(mset_eta("x", GAUSS), GF9.one)]))

    def test_all_multisets(self):
        """Test the enumeration on a two-element carrier."""
        self.assertEqual(len(all_multisets(GF9, ["x", "y"])), 81)
        self.assertEqual(len(set(all_multisets(BOOLEAN, ["x", "y"]))), 4)

    @given(multisets(GAUSS, gaussians), multisets(GAUSS, gaussians))
    def test_nu_is_additive(self, phi, psi):
        """Test that nu commutes with addition."""
        self.assertEqual(mset_nu(mset_add(phi, psi)), mset_add(mset_nu(phi), mset_nu(psi)))

    @given(multisets(GF9, gf9_elements), multisets(GF9, gf9_elements))
    def test_dst_commutes_with_swap(self, phi, psi):
        """Test that swapping the pairs of dst(phi, psi) gives dst(psi, phi)."""
        swapped = mset_map(lambda k: (k[1], k[0]), mset_dst(phi, psi))
        self.assertEqual(swapped, mset_dst(psi, phi))

    @given(gaussians, multisets(GAUSS, gaussians))
    def test_nu_of_scaled(self, s, phi):
        """Test that nu(s phi) = conj(s) nu(phi)."""
        self.assertEqual(mset_nu(mset_scale(s, phi)), mset_scale(GAUSS.conj(s), mset_nu(phi)))


class TestMultisetLaws(unittest.TestCase):
    """Test case for the monad law checker."""

    def test_enumerable_semirings_pass(self):
        """Test the exhaustive checks on GF(9) and the booleans."""
        for S in (GF9, BOOLEAN):
            with self.subTest(semiring=S.name):
                report = mset_law_check(S, 20, random.Random(0))
                self.assertTrue(report.passed, report.failures())

    def test_sampled_semirings_pass(self):
        """Test the seeded checks on the rationals and Gaussian rationals."""
        for S in (RATIONAL, GAUSS):
            with self.subTest(semiring=S.name):
                report = mset_law_check(S, 15, random.Random(3))
                self.assertTrue(report.passed, report.failures())

    def test_broken_nu_detected(self):
        """Test that conjugating only the first entry breaks naturality."""
        report = mset_law_check(GF9, 10, random.Random(0), nu=nu_first_entry_only)
        self.assertFalse(report.passed)
        self.assertEqual(report.verdict("nu_natural"), FAIL)
        self.assertIn("phi", report.results["nu_natural"].witness)


if __name__ == '__main__':
    unittest.main()
