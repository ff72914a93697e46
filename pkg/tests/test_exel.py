import unittest

from lisa.linalg.algebra import AlgebraHom, abelian, diagonal, heisenberg
from lisa.linalg.exactalg import FieldSpec, Subspace
from lisa.semialgebra.exel import (
    ELCarrier,
    ELElement,
    Premorphism,
    check_extension,
    check_premorphism,
    compose_with_hom,
    extend_premorphism,
    heisenberg_fixture,
    is_strong,
    jacobson_fixture,
    sigma_classes_el,
    tau,
    tau_premorphism,
)
from lisa.utils.errors import AmbientMismatch, MalformedInput, PreconditionFailure, UnsupportedField, ValidationFailure

QQ = FieldSpec.rationals()
F2 = FieldSpec.prime(2)
F3 = FieldSpec.prime(3)


class TestELCarrier(unittest.TestCase):
    def test_size(self):
        self.assertEqual(len(ELCarrier(heisenberg(F2)).elements()), 51)
        self.assertEqual(len(ELCarrier(abelian(1, F3)).elements()), 4)

    def test_bracket_grows_the_subspace(self):
        h = heisenberg(QQ)
        el = ELCarrier(h)
        a, b, c = (h.basis_vector(i) for i in range(3))
        bracket = el.mul(el.tau(a), el.tau(b))
        self.assertEqual(bracket, ELElement(Subspace.full(QQ, 3), c))
        self.assertTrue(el.leq(bracket, el.tau(c)))
        self.assertFalse(el.leq(el.tau(c), bracket))

    def test_point_must_lie_in_the_subspace(self):
        with self.assertRaises(ValidationFailure):
            ELElement(Subspace.zero(F3, 2), F3.vec([1, 0]))

    def test_requires_a_lie_algebra(self):
        with self.assertRaises(ValidationFailure):
            ELCarrier(diagonal(2, F3))

    def test_parse_round_trip(self):
        el = ELCarrier(abelian(2, F3))
        x = tau(F3, F3.vec([1, 2]))
        self.assertEqual(el.parse(el.describe(x)), x)
        with self.assertRaises(MalformedInput):
            el.parse({"A": {"ambient": 2}})


class TestPremorphisms(unittest.TestCase):
    def test_tau_is_a_strong_premorphism(self):
        rho = tau_premorphism(heisenberg(F3))
        self.assertTrue(check_premorphism(rho).passed)
        self.assertTrue(is_strong(rho))

    def test_table_must_cover_the_source(self):
        line = abelian(1, F2)
        el = ELCarrier(line)
        with self.assertRaises(MalformedInput):
            Premorphism.from_table(line, el, {(F2.zero,): el.zero()})

    def test_compose_with_hom(self):
        rho = tau_premorphism(abelian(1, F3))
        other = abelian(2, F3)
        with self.assertRaises(AmbientMismatch):
            compose_with_hom(rho, AlgebraHom.identity(other))
        pulled = compose_with_hom(rho, AlgebraHom.identity(abelian(1, F3)))
        self.assertEqual(pulled((F3.one,)), rho((F3.one,)))


class TestExtension(unittest.TestCase):
    def test_tau_extends_to_the_identity(self):
        alg = abelian(2, F2)
        ext = extend_premorphism(tau_premorphism(alg))
        for x in ext.el.elements():
            self.assertEqual(ext(x), x)
        report = check_extension(ext)
        self.assertTrue(report.passed, report.failures())
        self.assertEqual(report.verdict("extension.uniqueness").verdict, "pass")

    def test_target_must_satisfy_the_zero_bracket_law(self):
        with self.assertRaises(PreconditionFailure):
            extend_premorphism(tau_premorphism(heisenberg(QQ)))


class TestFixtures(unittest.TestCase):
    def test_heisenberg(self):
        report = heisenberg_fixture(F3)
        self.assertTrue(report.passed, report.summary)
        self.assertIn("0_{[x,y]} != 0_{x+y}: confirmed", report.summary)

    def test_heisenberg_needs_odd_characteristic(self):
        with self.assertRaises(UnsupportedField):
            heisenberg_fixture(F2)

    def test_jacobson(self):
        report = jacobson_fixture(3)
        self.assertTrue(report.passed, report.summary)
        statuses = {c.claim: c.status for c in report.claims}
        self.assertEqual(statuses["not_a_homomorphism"], "confirmed")
        self.assertEqual(statuses["non_global"], "confirmed")

    def test_jacobson_needs_a_perfect_factor(self):
        report = jacobson_fixture(3, simple=abelian(1, F3))
        self.assertEqual([c.status for c in report.claims], ["inapplicable"])
        with self.assertRaises(UnsupportedField):
            jacobson_fixture(2)

    def test_sigma_classes_are_points(self):
        sigma = sigma_classes_el(abelian(1, F3))
        self.assertTrue(sigma.agrees)
        self.assertTrue(sigma.maxima_are_tau)
        self.assertEqual(len(sigma.by_point), 3)


if __name__ == "__main__":
    unittest.main()
