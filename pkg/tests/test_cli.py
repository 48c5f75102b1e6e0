import io
import json
import os
import tempfile
import unittest
from contextlib import redirect_stderr, redirect_stdout
from unittest import mock

from betahole import cli
from betahole.core.errors import InvariantViolation


def _run(*argv):
    out, err = io.StringIO(), io.StringIO()
    with redirect_stdout(out), redirect_stderr(err):
        code = cli.main(list(argv))
    return code, out.getvalue(), err.getvalue()


class TestCommands(unittest.TestCase):

    def test_delta(self):
        self.assertEqual(_run("delta", "--m", "2"), (0, '{"delta":"(110)"}\n', ""))
        code, out, _ = _run("delta", "--m", "two")
        self.assertEqual((code, out), (0, '{"delta":"(1)"}\n'))

    def test_lyndon_check(self):
        self.assertEqual(_run("lyndon-check", "--m", "1", "--word", "01")[1], '{"lyndon":false}\n')
        self.assertEqual(_run("lyndon-check", "--m", "1", "--word", "001")[1], '{"lyndon":true}\n')

    def test_dim(self):
        code, out, _ = _run("dim", "--m", "1", "--t", "1/4", "--depth", "12")
        self.assertEqual(code, 0)
        payload = json.loads(out)
        self.assertEqual(payload["method"], "exact_sft")
        self.assertEqual(payload["word"], "001")
        self.assertAlmostEqual((payload["dim_lo"] + payload["dim_hi"]) / 2, 0.5844, places=4)

    def test_member(self):
        code, out, _ = _run("member", "--m", "1", "--t", "1/4", "--depth", "6")
        payload = json.loads(out)
        self.assertEqual(code, 0)
        self.assertEqual(payload["status"], "nonmember")
        self.assertEqual(payload["in_E"]["witness"], 3)
        self.assertEqual(payload["location"]["interval"]["word"], "001")

    def test_expand(self):
        payload = json.loads(_run("expand", "--m", "1", "--t", "(001)")[1])
        self.assertEqual(payload["sequence"], "(001)")
        payload = json.loads(_run("expand", "--m", "1", "--unit")[1])
        self.assertEqual(payload["sequence"], "11(0)")
        self.assertEqual(payload["kind"], "greedy_unit")

    def test_staircase_csv(self):
        code, out, _ = _run("staircase", "--m", "1", "--grid", "0:2/5:1/10", "--depth", "6", "--format", "csv")
        self.assertEqual(code, 0)
        lines = out.splitlines()
        self.assertEqual(lines[0], "t_decimal,t_exact,dim_lo,dim_hi,method,depth")
        self.assertEqual(len(lines), 6)
        # 1/10 drops too late to name its plateau at this depth
        self.assertEqual(lines[2].split(",")[4], "bracketed")

    def test_lyndon_enum_csv(self):
        out = _run("lyndon-enum", "--m", "1", "--depth", "3", "--format", "csv")[1]
        lines = out.splitlines()
        self.assertEqual(lines[0], "length,t_left.coeffs,t_left.decimal,t_right.coeffs,t_right.decimal,word")
        self.assertEqual(len(lines), 2)
        self.assertTrue(lines[1].endswith(",001"))

    def test_emit_graph(self):
        with tempfile.TemporaryDirectory() as tmp:
            path = os.path.join(tmp, "g.dot")
            code = _run("dim", "--m", "1", "--t", "1/4", "--depth", "6", "--emit-graph", path)[0]
            self.assertEqual(code, 0)
            with open(path, encoding="utf-8") as handle:
                self.assertTrue(handle.read().startswith("digraph survivor {"))

    def test_output_is_byte_stable(self):
        first = _run("sup-e", "--m", "2", "--depth", "6")
        self.assertEqual(first, _run("sup-e", "--m", "2", "--depth", "6"))


class TestExitCodes(unittest.TestCase):

    def test_domain_errors(self):
        for argv in (
            ("dim", "--m", "1", "--t", "x + 1"),
            ("dim", "--m", "1", "--t", "1"),
            ("delta", "--m", "0"),
            ("delta", "--depth", "0"),
            ("no-such-command",),
            ("dim", "--m", "1"),
        ):
            code, out, err = _run(*argv)
            self.assertEqual(code, 1, argv)
            self.assertEqual(out, "")
            self.assertTrue(err.startswith("error:"), err)

    def test_unknown_verdict_is_success(self):
        code, out, _ = _run("member", "--m", "1", "--t", "1/7", "--horizon", "2", "--depth", "3")
        self.assertEqual(code, 0)
        self.assertEqual(json.loads(out)["in_E"]["status"], "unknown")

    def test_invariant_violation(self):
        def broken(config, args):
            raise InvariantViolation("routes disagree")

        with mock.patch.dict(cli.COMMANDS, {"delta": broken}):
            code, out, err = _run("delta")
        self.assertEqual(code, 2)
        self.assertEqual(out, "")
        self.assertIn("routes disagree", err)


if __name__ == "__main__":
    unittest.main()
