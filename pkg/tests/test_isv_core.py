import unittest

import numpy as np

from lisa.linalg.algebra import abelian, heisenberg
from lisa.linalg.exactalg import FieldSpec
from lisa.semialgebra.carrier import AlgebraCarrier
from lisa.semialgebra.exel import ELCarrier
from lisa.semialgebra.isv_core import (
    ISV_AXIOMS,
    check_F_inverse,
    check_inverse_semivector,
    check_lie_isa,
    check_semilattice_of_algebras,
    is_idempotent,
    run_axioms,
    run_suites,
    sigma_partition,
)
from lisa.semialgebra.pmaps import PEndCarrier
from lisa.utils.config import RunConfig
from lisa.utils.errors import UnsupportedField

QQ = FieldSpec.rationals()
F2 = FieldSpec.prime(2)
F3 = FieldSpec.prime(3)


class TestExhaustive(unittest.TestCase):
    def test_pend_laws(self):
        c = PEndCarrier(F2, 2)
        self.assertEqual(len(c.elements()), 29)
        report = run_suites(c, ["isv", "naisa", "associative", "right_distributive"])
        self.assertTrue(report.passed, report.failures())
        self.assertEqual(report.mode, "exhaustive")
        self.assertIsNone(report.seed)

    def test_pend_left_distributivity_fails(self):
        report = run_suites(PEndCarrier(F2, 2), ["left_distributive"])
        verdict = report.verdict("left_distributive")
        self.assertEqual(verdict.verdict, "fail")
        self.assertEqual(set(verdict.counterexample), {"x", "y", "z"})
        self.assertFalse(report.passed)

    def test_abelian_el_is_a_semilattice_of_algebras(self):
        el = ELCarrier(abelian(2, F2))
        self.assertEqual(len(el.elements()), 11)
        self.assertTrue(check_lie_isa(el).passed)
        self.assertTrue(check_semilattice_of_algebras(el).passed)

    def test_char2_checks_are_skipped(self):
        report = check_lie_isa(ELCarrier(abelian(1, F2)))
        verdict = report.verdict("lie.self_bracket")
        self.assertEqual((verdict.verdict, verdict.note), ("skipped", "skipped: char 2"))
        self.assertTrue(report.passed)

    def test_vector_space_is_an_inverse_semivector_space(self):
        c = AlgebraCarrier(heisenberg(F2))
        self.assertTrue(check_inverse_semivector(c).passed)
        self.assertEqual(c.idempotents(), [c.zero()])

    def test_infinite_carriers_cannot_be_exhausted(self):
        with self.assertRaises(UnsupportedField):
            run_axioms(PEndCarrier(QQ, 2), ISV_AXIOMS, mode="exhaustive")


class TestSampled(unittest.TestCase):
    def test_replay_is_deterministic(self):
        config = RunConfig(trials=40)
        el = ELCarrier(heisenberg(QQ))
        first = check_lie_isa(el, config=config)
        again = check_lie_isa(el, config=config)
        self.assertEqual(first.mode, "sampled")
        self.assertEqual((first.seed, first.trials), (1729, 40))
        self.assertEqual(first.model_dump(), again.model_dump())
        self.assertTrue(first.passed, first.failures())

    def test_threads_do_not_change_verdicts(self):
        el = ELCarrier(heisenberg(QQ))
        serial = check_lie_isa(el, config=RunConfig(trials=40))
        threaded = check_lie_isa(el, config=RunConfig(trials=40, threads=4))
        self.assertEqual(serial.model_dump(), threaded.model_dump())
        pend = PEndCarrier(F2, 2)
        self.assertEqual(
            run_suites(pend, ["isv", "left_distributive"]).model_dump(),
            run_suites(pend, ["isv", "left_distributive"], config=RunConfig(threads=3)).model_dump(),
        )

    def test_idempotents_of_samples(self):
        c = PEndCarrier(QQ, 3)
        rng = np.random.default_rng(7)
        for _ in range(20):
            x = c.sample(rng)
            self.assertTrue(is_idempotent(c, c.zero_of(x)))
            self.assertTrue(c.leq(x, x))


class TestSigma(unittest.TestCase):
    def test_line_over_f3(self):
        el = ELCarrier(abelian(1, F3))
        sigma = sigma_partition(el)
        self.assertEqual(len(sigma.classes), 3)
        self.assertEqual(len(sigma.idempotents), 2)
        for k in range(len(sigma.classes)):
            self.assertIsNotNone(sigma.maxima[k])
        self.assertTrue(check_F_inverse(el, sigma).passed)

    def test_sigma_needs_finite_carrier(self):
        with self.assertRaises(UnsupportedField):
            sigma_partition(ELCarrier(abelian(1, QQ)))


if __name__ == "__main__":
    unittest.main()
