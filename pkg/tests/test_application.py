import json
import os
import tempfile
import unittest
from pathlib import Path
from unittest import mock

from lisa.application.executor import Executor
from lisa.application.fixtures import FIXTURES, run_fixture
from lisa.application.suite import ACCEPTANCE
from lisa.utils.config import DimCaps, RunConfig, load_config
from lisa.utils.errors import EnumerationBoundExceeded, MalformedInput
from lisa.utils.objects import AlgebraModel, FieldModel
from lisa.utils.utils import algebra_from_model

FIXTURE_DIR = Path(__file__).resolve().parent.parent / "fixtures"


def fixture_path(name: str) -> str:
    return str(FIXTURE_DIR / name)


class TestFixtures(unittest.TestCase):
    def setUp(self):
        self.config = RunConfig(trials=20)

    def assertAllPass(self, reports):
        for report in reports:
            self.assertTrue(report.passed, (report.name, report.summary))

    def test_acceptance_covers_every_fixture(self):
        self.assertEqual(set(ACCEPTANCE), set(FIXTURES))

    def test_unknown_fixture(self):
        with self.assertRaises(MalformedInput):
            run_fixture("nope", self.config)

    def test_classes(self):
        reports = run_fixture("classes", self.config)
        self.assertAllPass(reports)
        self.assertEqual(reports[0].summary, ["domains: confirmed"])

    def test_partial_functions(self):
        reports = run_fixture("partial-functions", self.config)
        self.assertEqual(len(reports), 2)
        self.assertAllPass(reports)

    def test_idempotent_action(self):
        [report] = run_fixture("idempotent-action", self.config)
        self.assertTrue(report.passed, report.summary)
        self.assertIn("not_a_restriction: inapplicable", report.summary)
        self.assertIn("strong: confirmed", report.summary)

    def test_extension(self):
        reports = run_fixture("extension", self.config)
        self.assertAllPass(reports)
        self.assertEqual(reports[1].summary, ["homomorphism: confirmed", "unique: confirmed"])

    def test_heisenberg(self):
        reports = run_fixture("heisenberg", self.config)
        self.assertEqual(len(reports), 2)
        self.assertAllPass(reports)

    def test_el_axioms(self):
        [report] = run_fixture("el-axioms", self.config)
        self.assertTrue(report.passed, report.summary)
        self.assertEqual(report.claims[0].detail, {"size": 51})

    def test_equivalence(self):
        reports = run_fixture("equivalence", self.config)
        self.assertEqual(len(reports), 3)
        self.assertAllPass(reports)

    def test_adjunction(self):
        reports = run_fixture("adjunction", self.config)
        self.assertEqual([r.summary for r in reports], [["beta_bijection: confirmed"]] * 2)

    def test_pend_laws(self):
        [report] = run_fixture("pend-laws", self.config)
        self.assertEqual(report.summary, ["size: confirmed", "left_distributivity_fails: confirmed"])

    def test_sampled_runs_replay(self):
        [report] = run_fixture("sampled", self.config)
        self.assertTrue(report.passed, report.summary)
        self.assertEqual(report.claims[0].detail, {"seed": 1729, "trials": 20})


class TestExecutor(unittest.TestCase):
    def setUp(self):
        self.executor = Executor(RunConfig(trials=20))

    def test_check_algebra(self):
        report = self.executor.check_algebra(fixture_path("diagonal_f2.json"))
        self.assertTrue(report.passed)
        self.assertEqual(report.verdict("class.unital_assoc").note, "member")

    def test_not_lie_fails_the_flavor(self):
        report = self.executor.check_algebra(fixture_path("not_lie.json"))
        self.assertFalse(report.passed)
        self.assertEqual(report.verdict("algebra.flavor").verdict, "fail")

    def test_malformed(self):
        with self.assertRaises(MalformedInput):
            self.executor.check_algebra(fixture_path("malformed.json"))

    def test_check_carrier(self):
        self.assertTrue(self.executor.check_carrier(fixture_path("pend_f2.json"), "isv").passed)
        self.assertTrue(self.executor.check_carrier(fixture_path("sf_two_chain_f2.json"), "semilattice").passed)
        with self.assertRaises(MalformedInput):
            self.executor.check_carrier(fixture_path("pend_f2.json"), "jordan")

    def test_build_el(self):
        report = self.executor.build_el(fixture_path("abelian1_f3.json"))
        self.assertTrue(report.passed, report.failures())
        self.assertTrue(report.subject.endswith("4 elements"))
        sampled = self.executor.build_el(fixture_path("abelian1_f3.json"), field="Q")
        self.assertEqual(sampled.verdict("finverse").verdict, "skipped")

    def test_extend(self):
        report = self.executor.extend(fixture_path("tau_abelian2_f2.json"))
        self.assertTrue(report.passed, report.failures())
        report = self.executor.extend(fixture_path("class_premorphism_f2.json"))
        self.assertTrue(report.passed, report.failures())

    def test_equivalence_and_adjunction(self):
        eq = self.executor.verify_equivalence(
            fixture_path("rep_subspaces_abelian1_f3.json"), fixture_path("el_abelian1_f3.json")
        )
        self.assertTrue(eq.passed, eq.failures())
        beta = self.executor.verify_adjunction(
            fixture_path("abelian1_f3.json"), fixture_path("rep_subspaces_abelian1_f3.json")
        )
        self.assertTrue(beta.passed, beta.failures())

    def test_remaining_fixture_files(self):
        finverse = self.executor.check_carrier(fixture_path("f_lambda_abelian1_f3.json"), "finverse")
        self.assertTrue(finverse.passed, finverse.failures())
        classes = self.executor.check_carrier(fixture_path("pde_class_diagonal_f2.json"), "semilattice")
        self.assertTrue(classes.passed, classes.failures())
        beta = self.executor.verify_adjunction(
            fixture_path("abelian1_f3.json"), fixture_path("rep_subspaces_heisenberg_f3.json")
        )
        self.assertTrue(beta.passed, beta.failures())
        sampled = self.executor.build_el(fixture_path("heisenberg_q.json"))
        self.assertEqual((sampled.mode, sampled.trials), ("sampled", 20))
        self.assertTrue(sampled.passed, sampled.failures())

    def test_algebra_cap(self):
        capped = Executor(RunConfig(trials=20, dim_caps=DimCaps(algebra=2)))
        with self.assertRaises(EnumerationBoundExceeded):
            capped.check_algebra(fixture_path("heisenberg_f2.json"))
        with self.assertRaises(EnumerationBoundExceeded):
            algebra_from_model(AlgebraModel(dim=13, flavor="lie", field=FieldModel(kind="prime_field", characteristic=2)))

    def test_tau_needs_no_target(self):
        data = json.loads(Path(fixture_path("tau_abelian2_f2.json")).read_text())
        del data["target"]
        with tempfile.TemporaryDirectory() as tmp:
            path = Path(tmp) / "tau.json"
            path.write_text(json.dumps(data))
            report = self.executor.extend(str(path))
            self.assertTrue(report.passed, report.failures())
            del data["rule"]
            path.write_text(json.dumps(data))
            with self.assertRaises(MalformedInput):
                self.executor.extend(str(path))

    def test_check_action(self):
        report = self.executor.check_action(fixture_path("partial_action_idempotent_f2.json"))
        self.assertTrue(report.passed, report.failures())
        self.assertEqual(report.verdict("partial_action.global").note, "not global")


class TestConfig(unittest.TestCase):
    @mock.patch.dict(os.environ, {}, clear=True)
    def test_overrides(self):
        config = load_config(seed=7, trials=None, dim_cap=4)
        self.assertEqual(config.seed, 7)
        self.assertEqual(config.trials, 1000)
        self.assertEqual(config.dim_caps.el, 4)
        self.assertEqual(config.dim_caps.subspaces, 4)

    @mock.patch.dict(os.environ, {"LISA_THREADS": "2"}, clear=True)
    def test_threads_from_environment(self):
        self.assertEqual(load_config().threads, 2)


if __name__ == "__main__":
    unittest.main()
