import json
import unittest
from pathlib import Path

from lisa.linalg.algebra import abelian, diagonal, heisenberg, sl2, tensor_lie, truncated_poly
from lisa.linalg.exactalg import FieldSpec, Subspace
from lisa.semialgebra.exel import jacobson_derivation
from lisa.semialgebra.paction import (
    GlobalRestriction,
    PartialAction,
    action_hom_correspondence,
    check_partial_action,
    check_restriction,
    idempotent_action,
    is_global,
    is_strong,
    partial_action_from_model,
    restrict_global,
)
from lisa.semialgebra.pmaps import pe_zero
from lisa.utils.errors import MalformedInput, NotAnIdeal, ValidationFailure
from lisa.utils.objects import PartialActionModel
from lisa.utils.utils import load_model

F2 = FieldSpec.prime(2)
F3 = FieldSpec.prime(3)

FIXTURES = Path(__file__).resolve().parent.parent / "fixtures"


def jacobson_restriction() -> GlobalRestriction:
    big = tensor_lie(sl2(F3), truncated_poly(3))
    n = big.dim
    ideal = Subspace.span(F3, n, [F3.unit_vector(n, s * 3 + i) for s in range(3) for i in (1, 2)])
    return GlobalRestriction(abelian(1, F3), big, ideal, (jacobson_derivation(F3, 3, 3),))


class TestIdempotentAction(unittest.TestCase):
    def setUp(self):
        self.pa = idempotent_action(abelian(1, F2), diagonal(2, F2))

    def test_is_a_strong_partial_action(self):
        report = check_partial_action(self.pa)
        self.assertTrue(report.passed, report.failures())
        self.assertEqual(report.verdict("partial_action.global").verdict, "skipped")
        self.assertFalse(is_global(self.pa))
        self.assertTrue(is_strong(self.pa).strong)

    def test_correspondence(self):
        corr = action_hom_correspondence(self.pa, "unital_assoc", enumerate_all=True)
        self.assertTrue(corr.report.passed, corr.report.failures())
        bijection = corr.report.verdict("correspondence.bijection")
        self.assertEqual(bijection.verdict, "pass")
        self.assertEqual(bijection.note, "4 partial actions, 4 homomorphisms")
        self.assertEqual(corr.report.verdict("correspondence.roundtrip").verdict, "pass")

    def test_base_must_be_idempotent(self):
        with self.assertRaises(ValidationFailure):
            idempotent_action(abelian(1, F2), heisenberg(F2))


class TestTables(unittest.TestCase):
    def test_every_point_needs_an_entry(self):
        base = diagonal(2, F2)
        with self.assertRaises(MalformedInput):
            PartialAction.from_table(abelian(1, F2), base, {(F2.zero,): pe_zero(Subspace.full(F2, 2))})

    def test_domains_must_be_ideals(self):
        h = heisenberg(F2)
        line = Subspace.span(F2, 3, [h.basis_vector(0)])
        table = {(F2.zero,): pe_zero(Subspace.full(F2, 3)), (F2.one,): pe_zero(line)}
        with self.assertRaises(NotAnIdeal):
            PartialAction.from_table(abelian(1, F2), h, table)

    def test_loaded_table_matches_the_idempotent_action(self):
        model = load_model(str(FIXTURES / "partial_action_idempotent_f2.json"), PartialActionModel)
        pa = partial_action_from_model(model)
        rule = idempotent_action(abelian(1, F2), diagonal(2, F2))
        for x in (F2.vec([0]), F2.vec([1])):
            self.assertEqual(pa.theta(x), rule.theta(x))
        self.assertTrue(check_partial_action(pa).passed)

    def test_theta_shape_is_checked(self):
        data = json.loads((FIXTURES / "partial_action_idempotent_f2.json").read_text())
        data["entries"][0]["theta"] = [["0"], ["0"]]
        with self.assertRaises(MalformedInput):
            partial_action_from_model(PartialActionModel.model_validate(data))


class TestGlobalRestriction(unittest.TestCase):
    def test_restriction_of_the_jacobson_derivation(self):
        gr = jacobson_restriction()
        report = check_restriction(gr)
        self.assertTrue(report.passed, report.failures())
        self.assertEqual(report.verdict("partial_action.global").verdict, "skipped")
        pa = restrict_global(gr)
        self.assertEqual(pa.domain((F3.one,)).dim, 3)
        strong = is_strong(pa)
        self.assertFalse(strong.strong)
        self.assertIsNotNone(strong.witness)

    def test_ideal_is_required(self):
        gr = jacobson_restriction()
        line = Subspace.span(F3, gr.big.dim, [F3.unit_vector(gr.big.dim, 0)])
        with self.assertRaises(NotAnIdeal):
            GlobalRestriction(gr.source, gr.big, line, gr.eta)


if __name__ == "__main__":
    unittest.main()
