#!/usr/bin/env python3
"""
Unit tests for the involute command line: outputs and exit codes.
"""

import io
import json
import os
import sys
import unittest
from unittest.mock import MagicMock, patch

sys.path.append(os.path.abspath(os.path.dirname(os.path.dirname(__file__))))
from involute.cli import COMMANDS, EXIT_INPUT, EXIT_OK, EXIT_VIOLATION, run
from involute.suites import SUITES

ROOT = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))
FIXTURES = os.path.join(ROOT, "fixtures")
NO_CONFIG = os.path.join(FIXTURES, "no-such-config.json")


def fixture(*parts):
    return os.path.join(FIXTURES, *parts)


def invoke(*argv):
    """Run the CLI with captured streams and no config file or seed override."""
    with patch.dict(os.environ, {"INVOLUTE_SEED": ""}), \
            patch('sys.stdout', new_callable=io.StringIO) as out, \
            patch('sys.stderr', new_callable=io.StringIO) as err:
        code = run(list(argv) + ["--config", NO_CONFIG])
    return code, out.getvalue(), err.getvalue()


def records(out):
    return [json.loads(line) for line in out.splitlines() if line]


class TestWordCommand(unittest.TestCase):
    """Test case for `involute word`."""

    def test_involve_reversing(self):
        """Test that the reversing involution reverses the word."""
        code, out, _ = invoke("word", "involve", "a * ~b", "--mode", "reversing")
        self.assertEqual(code, EXIT_OK)
        self.assertEqual(out, "b * ~a\n")

    def test_normalize_grouped(self):
        """Test normalizing a grouped involution."""
        code, out, _ = invoke("word", "normalize", "~(a * b)", "--mode", "reversing")
        self.assertEqual(code, EXIT_OK)
        self.assertEqual(out, "~b * ~a\n")

    def test_eval_int_add(self):
        """Test evaluating a word in the integers under addition."""
        code, out, _ = invoke("word", "eval", "a * ~b", "--target", "int-add", "--map", "a=2,b=5")
        self.assertEqual(code, EXIT_OK)
        self.assertEqual(out, "-3\n")

    def test_json_format(self):
        """Test the JSON rendering of a normalized word."""
        code, out, _ = invoke("word", "normalize", "a * ~b", "--format", "json")
        self.assertEqual(code, EXIT_OK)
        doc = json.loads(out)
        self.assertEqual(doc["word"], "a * ~b")
        self.assertEqual(doc["letters"], [["+", "a"], ["-", "b"]])
        self.assertEqual(doc["mode"], "non-reversing")

    def test_eval_without_target(self):
        """Test that eval without --target is an input error."""
        code, _, err = invoke("word", "eval", "a")
        self.assertEqual(code, EXIT_INPUT)
        self.assertIn("--target", err)

    def test_parse_error(self):
        """Test that a malformed expression exits with code 2."""
        code, out, _ = invoke("word", "normalize", "a + b")
        self.assertEqual(code, EXIT_INPUT)
        self.assertEqual(out, "")

    def test_options_before_command(self):
        """Test that common options are accepted before the command name."""
        with patch.dict(os.environ, {"INVOLUTE_SEED": ""}), \
                patch('sys.stdout', new_callable=io.StringIO) as out, \
                patch('sys.stderr', new_callable=io.StringIO):
            code = run(["--config", NO_CONFIG, "--format", "json", "word", "normalize", "a"])
        self.assertEqual(code, EXIT_OK)
        self.assertEqual(json.loads(out.getvalue())["word"], "a")


class TestAlgCommand(unittest.TestCase):
    """Test case for `involute alg`."""

    def test_mul_from_file(self):
        """Test multiplying basis elements of an algebra file."""
        code, out, _ = invoke("alg", "mul", fixture("pass", "mat2.json"), "--x", "E12", "--y", "E21")
        self.assertEqual(code, EXIT_OK)
        self.assertEqual(out, "E11\n")

    def test_involve_instance(self):
        """Test the transpose involution on a registered instance."""
        code, out, _ = invoke("alg", "involve", "mat2-gauss", "--x", "E12")
        self.assertEqual(code, EXIT_OK)
        self.assertEqual(out, "E21\n")

    def test_check_passes(self):
        """Test the law records of a valid algebra file."""
        code, out, _ = invoke("alg", "check", fixture("pass", "mat2.json"), "--format", "json")
        self.assertEqual(code, EXIT_OK)
        recs = records(out)
        self.assertTrue(recs)
        self.assertTrue(all(r["verdict"] == "pass" for r in recs))

    def test_check_without_transpose_fails(self):
        """Test that an identity involution on 2x2 matrices fails the laws."""
        code, out, err = invoke("alg", "check", fixture("violation", "mat2-no-transpose.json"), "--format", "json")
        self.assertEqual(code, EXIT_VIOLATION)
        self.assertTrue(any(r["verdict"] == "fail" for r in records(out)))
        self.assertIn("failed", err)

    def test_mul_refuses_invalid_algebra(self):
        """Test that operations refuse an algebra that fails its laws."""
        code, out, _ = invoke("alg", "mul", fixture("violation", "mat2-no-transpose.json"), "--x", "E11", "--y", "E11")
        self.assertEqual(code, EXIT_VIOLATION)
        doc = json.loads(out)
        self.assertTrue(doc["error"].startswith("algebra mat2-no-transpose fails"))

    def test_load_group_table(self):
        """Test loading a group-table document."""
        code, out, _ = invoke("alg", "load", fixture("pass", "z3-gf9.json"), "--format", "json")
        self.assertEqual(code, EXIT_OK)
        doc = json.loads(out)
        self.assertEqual(doc["name"], "z3-table")
        self.assertEqual(doc["module"], {"scalars": "gf9", "basis": ["1", "g", "g2"]})
        self.assertEqual(doc["mode"], "reversing")

    def test_load_text_table(self):
        """Test the text rendering of an algebra."""
        code, out, _ = invoke("alg", "load", "mat2-gauss")
        self.assertEqual(code, EXIT_OK)
        self.assertIn("Multiplication", out)
        self.assertIn("E11", out)

    def test_unknown_scalars(self):
        """Test that an unknown semiring is an input error."""
        code, _, _ = invoke("alg", "load", fixture("malformed", "unknown-scalars.json"))
        self.assertEqual(code, EXIT_INPUT)

    def test_missing_operand(self):
        """Test that mul without --y is an input error."""
        code, _, _ = invoke("alg", "mul", "mat2-gauss", "--x", "E11")
        self.assertEqual(code, EXIT_INPUT)


class TestGnsCommand(unittest.TestCase):
    """Test case for `involute gns`."""

    def setUp(self):
        self.mat2 = fixture("pass", "mat2.json")

    def test_gram_of_trace(self):
        """Test that the normalised trace gives half the identity."""
        code, out, _ = invoke("gns", "gram", self.mat2, fixture("pass", "trace-half.json"))
        self.assertEqual(code, EXIT_OK)
        gram = json.loads(out)["gram"]
        half, zero = [{"im": "0", "re": "1/2"}], [{"im": "0", "re": "0"}]
        for i in range(4):
            for j in range(4):
                self.assertEqual(gram[i][j], half if i == j else zero)

    def test_state_of_gram(self):
        """Test recovering the trace from its Gram matrix."""
        code, out, _ = invoke("gns", "state", self.mat2, fixture("pass", "trace-half-gram.json"))
        self.assertEqual(code, EXIT_OK)
        values = json.loads(out)["values"]
        half, zero = [{"im": "0", "re": "1/2"}], [{"im": "0", "re": "0"}]
        self.assertEqual(values, [half, zero, zero, half])

    def test_roundtrip(self):
        """Test the roundtrip report on the trace."""
        code, out, _ = invoke("gns", "roundtrip", self.mat2, fixture("pass", "trace-half.json"))
        self.assertEqual(code, EXIT_OK)
        self.assertTrue(all(r["verdict"] == "pass" for r in records(out)))

    def test_inline_functional(self):
        """Test that the input may be inline JSON."""
        code, _, _ = invoke("gns", "gram", "mat2-gauss", '{"values": ["1/2", "0", "0", "1/2"]}')
        self.assertEqual(code, EXIT_OK)

    def test_tampered_gram(self):
        """Test that a tampered Gram matrix passes condition (a) and fails (b)."""
        gram = fixture("violation", "tampered-gram.json")
        self.assertEqual(invoke("gns", "checka", self.mat2, gram)[0], EXIT_OK)
        self.assertEqual(invoke("gns", "checkb", self.mat2, gram)[0], EXIT_VIOLATION)

        code, out, _ = invoke("gns", "state", self.mat2, gram)
        self.assertEqual(code, EXIT_VIOLATION)
        doc = json.loads(out)
        self.assertEqual(doc["error"], "condition_b violated")
        self.assertEqual(set(doc["witness"]), {"a", "b", "c", "lhs", "rhs"})

    def test_nonhermitian(self):
        """Test that a non-hermitian functional is rejected with its witness."""
        code, out, _ = invoke("gns", "gram", self.mat2, fixture("violation", "nonhermitian.json"))
        self.assertEqual(code, EXIT_VIOLATION)
        self.assertEqual(json.loads(out)["witness"]["basis"], "E12")

    def test_invalid_algebra(self):
        """Test that gns refuses an algebra failing its laws."""
        code, _, _ = invoke("gns", "gram", fixture("violation", "mat2-no-transpose.json"), fixture("pass", "trace-half.json"))
        self.assertEqual(code, EXIT_VIOLATION)

    def test_malformed_inputs(self):
        """Test that every malformed fixture exits with code 2."""
        cases = [
            ("gram", "noncanonical.json"),
            ("state", "short-gram.json"),
            ("gram", "truncated.json"),
        ]
        for action, name in cases:
            with self.subTest(name=name):
                code, out, _ = invoke("gns", action, self.mat2, fixture("malformed", name))
                self.assertEqual(code, EXIT_INPUT)
                self.assertEqual(out, "")

    def test_missing_file(self):
        """Test that a missing input file is an input error."""
        code, _, err = invoke("gns", "gram", self.mat2, fixture("pass", "absent.json"))
        self.assertEqual(code, EXIT_INPUT)
        self.assertIn("file not found", err)


class TestMsetCommand(unittest.TestCase):
    """Test case for `involute mset`."""

    def test_nu_of_fixture(self):
        """Test conjugating the coefficients of a multiset file."""
        code, out, _ = invoke("mset", "nu", fixture("pass", "imaginary-x.json"))
        self.assertEqual(code, EXIT_OK)
        self.assertEqual(out, '{"entries":[["x",{"im":"-1","re":"0"}]],"scalars":"gauss"}\n')

    def test_eta(self):
        """Test the unit of the multiset monad."""
        code, out, _ = invoke("mset", "eta", "x", "--scalars", "rat")
        self.assertEqual(code, EXIT_OK)
        self.assertEqual(json.loads(out), {"entries": [["x", "1"]], "scalars": "rat"})

    def test_dst(self):
        """Test the double strength on two inline multisets."""
        code, out, _ = invoke("mset", "dst", '{"x": "2"}', '{"y": "1/2"}', "--scalars", "rat")
        self.assertEqual(code, EXIT_OK)
        self.assertEqual(json.loads(out)["entries"], [[["x", "y"], "1"]])

    def test_map_merges_keys(self):
        """Test that relabelling keys adds coefficients that land together."""
        code, out, _ = invoke("mset", "map", '{"x": "1", "y": "2"}', "--scalars", "rat", "--map", "x=y")
        self.assertEqual(code, EXIT_OK)
        self.assertEqual(json.loads(out)["entries"], [["y", "3"]])

    def test_text_format(self):
        """Test the text rendering of a multiset."""
        code, out, _ = invoke("mset", "eta", "x", "--scalars", "rat", "--format", "text")
        self.assertEqual(code, EXIT_OK)
        self.assertEqual(out.strip(), "(1)x")

    def test_wrong_arity(self):
        """Test that nu with two arguments is an input error."""
        code, _, _ = invoke("mset", "nu", "{}", "{}")
        self.assertEqual(code, EXIT_INPUT)

    def test_unknown_scalars(self):
        """Test that argparse rejects an unknown semiring."""
        with patch('sys.stderr', new_callable=io.StringIO):
            with self.assertRaises(SystemExit) as cm:
                run(["mset", "eta", "x", "--scalars", "quaternion"])
        self.assertEqual(cm.exception.code, 2)


class TestLawsCommand(unittest.TestCase):
    """Test case for `involute laws`."""

    def test_single_suite(self):
        """Test a passing suite run on one instance."""
        code, out, err = invoke("laws", "--suite", "semiring", "--instance", "gf9")
        self.assertEqual(code, EXIT_OK)
        recs = records(out)
        self.assertTrue(recs)
        for rec in recs:
            self.assertEqual((rec["suite"], rec["instance"], rec["verdict"]), ("semiring", "gf9", "pass"))
        self.assertIn("laws passed", err)

    def test_deterministic(self):
        """Test that the same seed reproduces the same output."""
        argv = ("laws", "--suite", "semiring,conjmod", "--instance", "gauss", "--seed", "7", "--budget", "5")
        first = invoke(*argv)
        second = invoke(*argv)
        self.assertEqual(first[0], EXIT_OK)
        self.assertEqual(first[1], second[1])

    def test_list(self):
        """Test listing the registered suites."""
        code, out, _ = invoke("laws", "--list")
        self.assertEqual(code, EXIT_OK)
        lines = out.splitlines()
        self.assertEqual(len(lines), len(SUITES))
        self.assertTrue(lines[0].startswith("semiring"))

    def test_text_table(self):
        """Test the rich table rendering."""
        code, out, _ = invoke("laws", "--suite", "words", "--instance", "z2", "--format", "text")
        self.assertEqual(code, EXIT_OK)
        self.assertIn("Law checks", out)

    def test_unknown_suite(self):
        """Test that an unknown suite is an input error."""
        code, _, err = invoke("laws", "--suite", "nope")
        self.assertEqual(code, EXIT_INPUT)
        self.assertIn("unknown suite", err)

    def test_unaccepted_instance(self):
        """Test that an instance no selected suite accepts is an input error."""
        code, _, _ = invoke("laws", "--suite", "semiring", "--instance", "mat2-gauss")
        self.assertEqual(code, EXIT_INPUT)

    def test_zero_budget(self):
        """Test that argparse rejects a budget below one."""
        with patch('sys.stderr', new_callable=io.StringIO):
            with self.assertRaises(SystemExit) as cm:
                run(["laws", "--budget", "0"])
        self.assertEqual(cm.exception.code, 2)


class TestExitCodes(unittest.TestCase):
    """Test case for the error handling in run()."""

    def test_keyboard_interrupt(self):
        """Test that an interrupt exits with code 1."""
        with patch.dict(COMMANDS, {"laws": MagicMock(side_effect=KeyboardInterrupt)}):
            code, _, err = invoke("laws")
        self.assertEqual(code, EXIT_VIOLATION)
        self.assertIn("Interrupted", err)

    def test_unexpected_error(self):
        """Test that an unexpected exception exits with code 1."""
        with patch.dict(COMMANDS, {"laws": MagicMock(side_effect=RuntimeError("boom"))}):
            code, _, err = invoke("laws")
        self.assertEqual(code, EXIT_VIOLATION)
        self.assertIn("An unexpected error occurred: boom", err)

    def test_missing_command(self):
        """Test that a missing command is a usage error."""
        with patch('sys.stderr', new_callable=io.StringIO):
            with self.assertRaises(SystemExit) as cm:
                run([])
        self.assertEqual(cm.exception.code, 2)

    def test_debug_output(self):
        """Test that --debug writes diagnostics to stderr only."""
        code, out, err = invoke("word", "normalize", "a", "--debug")
        self.assertEqual(code, EXIT_OK)
        self.assertEqual(out, "a\n")
        self.assertIn("[DEBUG] Debug mode enabled", err)


if __name__ == '__main__':
    unittest.main()
