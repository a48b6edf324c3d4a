#!/usr/bin/env python3
"""
Unit tests for the JSON encodings.
"""

import json
import os
import sys
import unittest
from fractions import Fraction
from unittest.mock import mock_open, patch

sys.path.append(os.path.abspath(os.path.dirname(os.path.dirname(__file__))))
from involute.codec import (
    decode_algebra, decode_form, decode_functional, decode_map, decode_multiset, decode_vector,
    encode_algebra, encode_map, encode_multiset, load_algebra, load_json_file, parse_json_text,
    resolve_algebra,
)
from involute.errors import InputError
from involute.fmod import LinMap, mk_module
from involute.multiset import Multiset
from involute.scalars import GAUSS, GF9, RATIONAL, GaussianRational
from involute.staralg import alg_mul
from involute.words import Mode

FIXTURES = os.path.join(os.path.dirname(os.path.dirname(os.path.abspath(__file__))), "fixtures")


def fixture(*parts):
    return os.path.join(FIXTURES, *parts)


class TestLoadJson(unittest.TestCase):
    """Test case for reading JSON documents."""

    def test_truncated_file(self):
        """Test that a truncated document reports its position."""
        with self.assertRaises(InputError) as cm:
            load_json_file(fixture("malformed", "truncated.json"))
        self.assertIn("invalid JSON", str(cm.exception))
        self.assertIsNotNone(cm.exception.position)

    def test_missing_file(self):
        """Test that a missing file is an input error."""
        with self.assertRaises(InputError):
            load_json_file(fixture("pass", "absent.json"))

    @patch('builtins.open', new_callable=mock_open, read_data='{"values": ["1"]}')
    def test_reads_file(self, mock_file):
        """Test that files are opened for reading."""
        self.assertEqual(load_json_file("doc.json"), {"values": ["1"]})
        mock_file.assert_called_once_with("doc.json", 'r')

    def test_inline_text(self):
        """Test parsing inline JSON text."""
        self.assertEqual(parse_json_text('{"x": "1"}'), {"x": "1"})
        with self.assertRaises(InputError):
            parse_json_text('{"x": ')


class TestAlgebras(unittest.TestCase):
    """Test case for algebra documents and instance names."""

    def test_load_fixture(self):
        """Test that the fixture matches the registered matrix algebra."""
        A = load_algebra(fixture("pass", "mat2.json"))
        B = resolve_algebra("mat2-gauss")
        self.assertEqual(A.name, "mat2")
        self.assertEqual(A.mode, Mode.REVERSING)
        self.assertEqual(A.module.basis, B.module.basis)
        self.assertEqual(A.structconst, B.structconst)
        self.assertEqual(alg_mul(A, A.e("E12"), A.e("E21")), A.e("E11"))

    def test_encode_decode(self):
        """Test that an encoded algebra decodes to the same structure."""
        B = resolve_algebra("fun2-gf9")
        doc = json.loads(json.dumps(encode_algebra(B)))
        A = decode_algebra(doc)
        self.assertEqual(A.structconst, B.structconst)
        self.assertEqual(A.invol.J, B.invol.J)
        self.assertEqual(A.mode, B.mode)

    def test_group_table(self):
        """Test decoding a group table over GF(9)."""
        A = load_algebra(fixture("pass", "z3-gf9.json"))
        self.assertEqual(A.scalars, GF9)
        self.assertEqual(A.module.basis, ("1", "g", "g2"))
        self.assertEqual(alg_mul(A, A.e("g"), A.e("g2")), A.unit)

    def test_group_order_mismatch(self):
        """Test that a wrong group order is rejected."""
        with self.assertRaises(InputError):
            decode_algebra({"scalars": "gf9", "order": 2, "table": [[0, 1, 2], [1, 2, 0], [2, 0, 1]]})

    def test_unknown_scalars(self):
        """Test that an unknown semiring name is rejected."""
        with self.assertRaises(InputError):
            load_algebra(fixture("malformed", "unknown-scalars.json"))

    def test_unknown_instance(self):
        """Test that unregistered instance names are rejected."""
        for name in ("mat2", "mat9-gauss", "mat2-quaternion"):
            with self.subTest(name=name):
                with self.assertRaises(InputError):
                    resolve_algebra(name)

    def test_missing_keys(self):
        """Test that an algebra document needs all its keys."""
        with self.assertRaises(InputError) as cm:
            decode_algebra({"module": {"scalars": "gauss", "basis": ["u"]}, "unit": ["1"]})
        self.assertIn("structconst", str(cm.exception))

    def test_structconst_shape(self):
        """Test that a ragged structure-constant array is rejected."""
        doc = encode_algebra(resolve_algebra("fun2-gauss"))
        doc["structconst"] = doc["structconst"][:1]
        with self.assertRaises(InputError):
            decode_algebra(doc)


class TestFunctionalsAndForms(unittest.TestCase):
    """Test case for functional and Gram documents."""

    def setUp(self):
        self.A = resolve_algebra("mat2-gauss")

    def _load(self, *parts):
        with open(fixture(*parts), 'r') as f:
            return json.load(f)

    def test_trace_functional(self):
        """Test decoding bare rationals as Gaussian scalars."""
        f = decode_functional(self._load("pass", "trace-half.json"), self.A)
        half = GaussianRational(Fraction(1, 2))
        self.assertEqual([v.coords[0] for v in f.values], [half, GAUSS.zero, GAUSS.zero, half])

    def test_noncanonical_rational(self):
        """Test that 2/4 is not accepted for 1/2."""
        with self.assertRaises(InputError):
            decode_functional(self._load("malformed", "noncanonical.json"), self.A)

    def test_short_gram(self):
        """Test that a Gram matrix with a missing row is rejected."""
        with self.assertRaises(InputError):
            decode_form(self._load("malformed", "short-gram.json"), self.A)

    def test_unregistered_algebra_name(self):
        """Test that a document's algebra name must resolve when no algebra is given."""
        with self.assertRaises(InputError):
            decode_functional(self._load("pass", "trace-half.json"))

    def test_algebra_named_in_document(self):
        """Test resolving a registered instance named by the document."""
        f = decode_functional({"algebra": "fun2-gf9", "values": [1, 2]})
        self.assertEqual(f.algebra.name, "fun2-gf9")

    def test_codomain_scalars_must_match(self):
        """Test that a codomain over other scalars is rejected."""
        doc = {
            "values": ["1", "0", "0", "1"],
            "codomain": {"module": {"scalars": "rat", "basis": ["v"]}, "J": [["1"]]},
        }
        with self.assertRaises(InputError):
            decode_functional(doc, self.A)


class TestVectorsAndMaps(unittest.TestCase):
    """Test case for vector and linear map documents."""

    def test_bare_coordinates(self):
        """Test vectors given as bare coordinates in a known module."""
        X = mk_module(RATIONAL, 2)
        x = decode_vector(["1/2", "3"], X)
        self.assertEqual(x.coords, (Fraction(1, 2), Fraction(3)))
        with self.assertRaises(InputError):
            decode_vector(["1"], X)
        with self.assertRaises(InputError):
            decode_vector(["1", "2"])

    def test_map_document(self):
        """Test that a map document keeps its matrix."""
        X = mk_module(GF9, 2)
        f = LinMap(X, X, [[GF9.zero, GF9.one], [GF9.one, GF9.zero]])
        g = decode_map(json.loads(json.dumps(encode_map(f))))
        self.assertEqual(g.matrix, f.matrix)
        self.assertEqual(g.dom.dim, 2)


class TestMultisets(unittest.TestCase):
    """Test case for multiset documents."""

    def test_fixture(self):
        """Test decoding the canonical document."""
        with open(fixture("pass", "imaginary-x.json"), 'r') as f:
            phi = decode_multiset(json.load(f))
        self.assertEqual(phi.entries, (("x", GaussianRational(0, 1)),))

    def test_key_object(self):
        """Test the {key: scalar} shorthand."""
        phi = decode_multiset({"x": "1", "y": "0"}, RATIONAL)
        self.assertEqual(phi.entries, (("x", Fraction(1)),))
        with self.assertRaises(InputError):
            decode_multiset({"x": "1"})

    def test_scalar_mismatch(self):
        """Test that declared scalars must match the requested ones."""
        with self.assertRaises(InputError):
            decode_multiset({"scalars": "rat", "entries": []}, GAUSS)

    def test_pair_keys(self):
        """Test that list keys decode to tuples."""
        phi = Multiset.build(RATIONAL, [(("x", "y"), Fraction(2))])
        doc = encode_multiset(phi)
        self.assertEqual(doc["entries"], [[["x", "y"], "2"]])
        self.assertEqual(decode_multiset(doc), phi)

    def test_bad_entries(self):
        """Test that malformed entries are rejected."""
        for doc in ({"scalars": "rat", "entries": [["x"]]}, {"scalars": "rat", "entries": [[True, "1"]]}, []):
            with self.subTest(doc=doc):
                with self.assertRaises(InputError):
                    decode_multiset(doc, RATIONAL)


if __name__ == '__main__':
    unittest.main()
