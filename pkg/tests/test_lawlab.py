#!/usr/bin/env python3
"""
Unit tests for the involutive-category harness.
"""

import os
import random
import sys
import unittest

sys.path.append(os.path.abspath(os.path.dirname(os.path.dirname(__file__))))
from involute.errors import InputError, PreconditionError
from involute.fmod import LinMap, mk_module, nontrivial_selfconjs, std_selfconj
from involute.lawlab import (
    FinMap, FinPosetRev, FinSet, FinSetTriv, ModSConj, Poset, SCFinSet, SCObject,
    check_adjunction_34, check_def43_free_adjunction, check_functor_involutive,
    check_iota_coherence, check_monoidal_7, check_prop63, check_sc_comonad, check_sc_lift,
    check_sc_product, check_selfconj_counts, check_writer_monad, enumerate_selfconj,
    forgetful_functor, identity_functor, involution_count, is_selfconj, j_without_conj,
    lift_selfconj, multiset_functor, selfconj_from_module, writer_functor,
)
from involute.report import FAIL, PASS
from involute.scalars import BOOLEAN, GAUSS, GF9, GaussianRational
from involute.staralg import mk_function_algebra, mk_matrix_algebra


class ReversingIota(FinSetTriv):
    """Finite sets whose iota reverses every set."""
    name = "finset-reversing-iota"

    def iota(self, X):
        return self._structural(X, X, tuple(reversed(range(X.size))))


class TestIota(unittest.TestCase):
    """Test case for the coherence of iota."""

    def test_shipped_categories(self):
        """Test every shipped category."""
        for cat in (FinSetTriv(), FinPosetRev(), SCFinSet(), ModSConj(GF9, (1, 2)), ModSConj(GAUSS, (1, 2))):
            with self.subTest(category=cat.name):
                report = check_iota_coherence(cat, random.Random(0), 5)
                self.assertTrue(report.passed, report.failures())

    def test_broken_iota_detected(self):
        """Test that a non-invertible pairing of iota is caught."""
        report = check_iota_coherence(ReversingIota((1, 2)), random.Random(0), 5)
        self.assertEqual(report.verdict("iota_iso"), FAIL)
        self.assertEqual(report.results["iota_iso"].witness, {"X": 2})

    def test_poset_reversal(self):
        """Test that conj reverses the order of a chain."""
        cat = FinPosetRev()
        P = cat.objects()[1]
        self.assertIn((1, 0), cat.conj_obj(P).leq)
        self.assertNotIn((1, 0), P.leq)

    def test_not_a_poset(self):
        """Test that non-reflexive relations are rejected."""
        with self.assertRaises(InputError):
            FinPosetRev([Poset(2, frozenset({(0, 1)}))])

    def test_finmap_table(self):
        """Test that out-of-range tables are rejected."""
        with self.assertRaises(InputError):
            FinMap(FinSet(2), FinSet(2), (0, 2))


class TestSelfConjugates(unittest.TestCase):
    """Test case for self-conjugate finite sets and the free/cofree adjunctions."""

    def test_involution_counts(self):
        """Test the number of involutive permutations."""
        self.assertEqual([len(enumerate_selfconj(n)) for n in range(7)], [1, 1, 2, 4, 10, 26, 76])
        self.assertEqual([involution_count(n) for n in range(7)], [1, 1, 2, 4, 10, 26, 76])
        self.assertTrue(check_selfconj_counts(5).passed)
        with self.assertRaises(PreconditionError):
            enumerate_selfconj(9)

    def test_adjunctions(self):
        """Test both adjunctions for every involution on three points."""
        for target in enumerate_selfconj(3):
            for n in (1, 2):
                with self.subTest(j=target.j.table, n=n):
                    report = check_adjunction_34(n, target)
                    self.assertTrue(report.passed, report.failures())

    def test_adjunction_preconditions(self):
        """Test that non-involutions and large sets are refused."""
        X = FinSet(3)
        with self.assertRaises(InputError):
            check_adjunction_34(1, SCObject(X, FinMap(X, X, (1, 2, 0))))
        with self.assertRaises(PreconditionError):
            check_adjunction_34(4, enumerate_selfconj(2)[0])

    def test_products(self):
        """Test product self-conjugates in finite sets and modules."""
        finsets = enumerate_selfconj(2)
        report = check_sc_product(FinSetTriv((1, 2)), finsets[0], finsets[1])
        self.assertTrue(report.passed, report.failures())
        M = mk_module(GAUSS, 2)
        cs = [selfconj_from_module(c) for c in [std_selfconj(M)] + nontrivial_selfconjs(M)]
        report = check_sc_product(ModSConj(GAUSS, (1, 2)), cs[1], cs[2], random.Random(0))
        self.assertTrue(report.passed, report.failures())

    def test_comonad(self):
        """Test the self-conjugate comonad on a swap."""
        swap = enumerate_selfconj(2)[1]
        self.assertTrue(check_sc_comonad(FinSetTriv(), swap).passed)

    def test_comonad_rejects_non_selfconjugate(self):
        """Test that a j with j . conj(j) != 1 fails only the morphism check."""
        M = mk_module(GAUSS, 2)
        i = GaussianRational(0, 1)
        j = LinMap(M, M, [[i, GAUSS.zero], [GAUSS.zero, GAUSS.one]])
        bad = SCObject(M, j)
        cat = ModSConj(GAUSS, (2,))
        self.assertFalse(is_selfconj(cat, bad))
        report = check_sc_comonad(cat, bad)
        self.assertEqual(report.verdict("j_is_sc_morphism"), FAIL)
        self.assertEqual(report.verdict("counit_delta"), PASS)
        self.assertEqual(report.verdict("lifted_counit_delta"), PASS)
        self.assertEqual(report.verdict("coassociative"), PASS)


class TestFunctors(unittest.TestCase):
    """Test case for involutive functors and lifting."""

    def test_functors_are_involutive(self):
        """Test the shipped functors."""
        functors = [
            identity_functor(FinSetTriv((1, 2))),
            forgetful_functor((1, 2)),
            multiset_functor(BOOLEAN),
            writer_functor(mk_function_algebra(2, GF9)),
        ]
        for F in functors:
            with self.subTest(functor=F.name):
                report = check_functor_involutive(F, random.Random(0), 3)
                self.assertTrue(report.passed, report.failures())

    def test_functor_preconditions(self):
        """Test that non-enumerable scalars and reversing algebras are refused."""
        with self.assertRaises(PreconditionError):
            multiset_functor(GAUSS)
        with self.assertRaises(PreconditionError):
            writer_functor(mk_matrix_algebra(2, GAUSS))

    def test_multiset_lift(self):
        """Test that the multiset functor lifts the swap to a self-conjugate."""
        F = multiset_functor(BOOLEAN)
        swap = enumerate_selfconj(2)[1]
        lifted = lift_selfconj(F, swap)
        self.assertTrue(is_selfconj(F.target, lifted))
        self.assertTrue(check_sc_lift(F, swap).passed)

    def test_writer_monad(self):
        """Test the writer monad laws on a non-reversing algebra."""
        report = check_writer_monad(mk_function_algebra(2, GF9))
        self.assertTrue(report.passed, report.failures())


class TestMonoidalAndAlgebras(unittest.TestCase):
    """Test case for the monoidal coherence and the multiset-algebra checks."""

    def test_monoidal(self):
        """Test the monoidal coherence of iota, zeta and xi."""
        for cat in (FinSetTriv(), FinPosetRev(), ModSConj(GAUSS, (1, 2))):
            with self.subTest(category=cat.name):
                report = check_monoidal_7(cat)
                self.assertTrue(report.passed, report.failures())

    def test_module_algebra_routes(self):
        """Test both routes for a self-conjugate over GF(9)."""
        for c in nontrivial_selfconjs(mk_module(GF9, 2)):
            report = check_prop63(c, budget=20)
            self.assertTrue(report.passed, report.failures())

    def test_dropped_conjugation_detected(self):
        """Test that x -> J x fails both routes together."""
        c = nontrivial_selfconjs(mk_module(GF9, 1))[0]
        report = check_prop63(c, j_fn=j_without_conj(c), budget=20)
        self.assertEqual(report.verdict("route1:sc_morphism"), FAIL)
        self.assertEqual(report.verdict("route2:conjugate_algebra_map"), FAIL)
        self.assertEqual(report.verdict("routes_agree"), PASS)

    def test_free_algebra_adjunction(self):
        """Test the involutive free-algebra functor."""
        self.assertTrue(check_def43_free_adjunction(GF9, 30).passed)
        self.assertTrue(check_def43_free_adjunction(GAUSS, 20, random.Random(5)).passed)


if __name__ == '__main__':
    unittest.main()
