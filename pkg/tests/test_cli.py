import json
import tempfile
import unittest
from pathlib import Path

from typer.testing import CliRunner

from scripts.python.cli import app

FIXTURE_DIR = Path(__file__).resolve().parent.parent / "fixtures"

runner = CliRunner()


def invoke(*args: str):
    return runner.invoke(app, [a if a.startswith("-") or "." not in a else str(FIXTURE_DIR / a) for a in args])


class TestExitCodes(unittest.TestCase):
    def test_malformed_input_exits_2(self):
        self.assertEqual(invoke("check-algebra", "malformed.json").exit_code, 2)
        self.assertEqual(invoke("check-algebra", "missing.json").exit_code, 2)
        self.assertEqual(invoke("fixtures", "nope").exit_code, 2)

    def test_failing_verdict_exits_1(self):
        self.assertEqual(invoke("check-algebra", "not_lie.json").exit_code, 1)

    def test_passing_commands_exit_0(self):
        for args in (
            ("check-algebra", "heisenberg_f2.json"),
            ("build-el", "abelian1_f3.json"),
            ("check-carrier", "pend_f2.json"),
            ("check-carrier", "el_abelian2_f2.json", "--suite", "lie"),
            ("extend", "tau_abelian2_f2.json"),
            ("fixtures", "classes"),
        ):
            with self.subTest(args=args):
                result = invoke(*args)
                self.assertEqual(result.exit_code, 0, result.output)


class TestReports(unittest.TestCase):
    def test_out_writes_the_json_report(self):
        with tempfile.TemporaryDirectory() as tmp:
            out = Path(tmp) / "report.json"
            result = runner.invoke(app, ["check-carrier", str(FIXTURE_DIR / "pend_f2.json"), "--seed", "5", "--out", str(out)])
            self.assertEqual(result.exit_code, 0, result.output)
            report = json.loads(out.read_text())
        self.assertEqual(report["schema"], "lisa/1")
        self.assertEqual(report["mode"], "exhaustive")
        self.assertTrue(all(v["verdict"] == "pass" for v in report["verdicts"]))

    def test_fixture_suite_report(self):
        with tempfile.TemporaryDirectory() as tmp:
            out = Path(tmp) / "classes.json"
            result = runner.invoke(app, ["fixtures", "classes", "--out", str(out)])
            self.assertEqual(result.exit_code, 0, result.output)
            report = json.loads(out.read_text())
        [fixture] = report["fixtures"]
        self.assertEqual(fixture["claims"][0]["line"], "domains: confirmed")
        self.assertEqual(report["config"]["seed"], 1729)

    def test_expected_failure_keeps_exit_0(self):
        with tempfile.TemporaryDirectory() as tmp:
            out = Path(tmp) / "jacobson.json"
            result = invoke("extend", "jacobson_premorphism_f3.json", "--json", "--out", str(out))
            self.assertEqual(result.exit_code, 0, result.output)
            report = json.loads(out.read_text())
        [homomorphism] = [v for v in report["verdicts"] if v["axiom"] == "extension.homomorphism"]
        self.assertEqual(homomorphism["verdict"], "fail (expected)")

    def test_check_action(self):
        result = invoke("check-action", "partial_action_idempotent_f2.json")
        self.assertEqual(result.exit_code, 0, result.output)


if __name__ == "__main__":
    unittest.main()
