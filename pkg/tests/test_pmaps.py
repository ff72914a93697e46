import unittest

from lisa.linalg.algebra import diagonal, heisenberg, sl2
from lisa.linalg.exactalg import FieldSpec, Matrix, Subspace
from lisa.semialgebra.carrier import MinusCarrier
from lisa.semialgebra.isv_core import check_lie_isa
from lisa.semialgebra.pmaps import (
    PartialEndo,
    PDerCarrier,
    PEndCarrier,
    check_domain_coincidence,
    in_class,
    make_pder,
    pde_class_carrier,
    pe_add,
    pe_bracket,
    pe_compose,
    pe_identity,
    pe_leq,
    pe_total,
    pe_zero,
    s_minus,
    validate_pder,
)
from lisa.utils.config import RunConfig
from lisa.utils.errors import (
    LeibnizViolation,
    MalformedInput,
    NotSubalgebra,
    PreconditionFailure,
    UnsupportedField,
    ValidationFailure,
)

QQ = FieldSpec.rationals()
F2 = FieldSpec.prime(2)
F3 = FieldSpec.prime(3)


def line(field, n, i):
    return Subspace.span(field, n, [field.unit_vector(n, i)])


class TestPartialEndo(unittest.TestCase):
    def test_sum_lives_on_the_intersection(self):
        phi = pe_identity(line(QQ, 2, 0))
        total = pe_total(Matrix.identity(QQ, 2))
        s = pe_add(phi, total)
        self.assertEqual(s.domain, line(QQ, 2, 0))
        self.assertEqual(s.apply(QQ.vec([1, 0])), QQ.vec([2, 0]))

    def test_composition_domain_is_a_preimage(self):
        swap = pe_total(Matrix.from_rows(QQ, [[0, 1], [1, 0]]))
        phi = pe_identity(line(QQ, 2, 0))
        composed = pe_compose(phi, swap)
        self.assertEqual(composed.domain, line(QQ, 2, 1))
        self.assertEqual(composed.apply(QQ.vec([0, 3])), QQ.vec([3, 0]))

    def test_order_is_restriction(self):
        total = pe_total(Matrix.identity(F3, 2))
        restricted = total.restrict(line(F3, 2, 1))
        self.assertTrue(pe_leq(restricted, total))
        self.assertFalse(pe_leq(total, restricted))
        self.assertTrue(pe_leq(pe_zero(line(F3, 2, 0)), pe_zero(Subspace.full(F3, 2))))

    def test_parse(self):
        c = PEndCarrier(F3, 2)
        phi = c.parse({"domain": {"ambient": 2, "basis": [["1", "0"]]}, "action": [["2"], ["0"]]})
        self.assertEqual(phi.apply(F3.vec([1, 0])), F3.vec([2, 0]))
        self.assertEqual(c.parse(c.describe(phi)), phi)
        with self.assertRaises(MalformedInput):
            c.parse({"domain": {"basis": [["1", "0"]]}, "action": [["2"], ["0"]]})
        with self.assertRaises(MalformedInput):
            c.parse({"domain": {"ambient": 2, "basis": [["1", "0", "0"]]}, "action": []})


class TestPartialDerivations(unittest.TestCase):
    def test_domain_must_be_a_subalgebra(self):
        h = heisenberg(QQ)
        ab = Subspace.span(QQ, 3, [h.basis_vector(0), h.basis_vector(1)])
        with self.assertRaises(NotSubalgebra):
            validate_pder(h, PartialEndo(QQ, 3, ab, (h.zero(), h.zero())))

    def test_leibniz_is_enforced(self):
        h = heisenberg(QQ)
        twist = Matrix.from_columns(QQ, [h.basis_vector(0), h.zero(), h.zero()], 3)
        with self.assertRaises(LeibnizViolation) as ctx:
            make_pder(h, Subspace.full(QQ, 3), twist)
        self.assertEqual(set(ctx.exception.witness), {"x", "y"})
        ad = make_pder(h, Subspace.full(QQ, 3), h.ad(h.basis_vector(0)))
        self.assertEqual(ad.apply(h.basis_vector(1)), h.basis_vector(2))

    def test_bracket_of_derivations(self):
        h = heisenberg(QQ)
        full = Subspace.full(QQ, 3)
        d1 = make_pder(h, full, h.ad(h.basis_vector(0)))
        d2 = make_pder(h, full, h.ad(h.basis_vector(1)))
        bracket = pe_bracket(d1.inner, d2.inner)
        self.assertEqual(bracket, pe_total(h.ad(h.basis_vector(2))))

    def test_sampled_lie_laws(self):
        report = check_lie_isa(PDerCarrier(heisenberg(QQ)), config=RunConfig(trials=30))
        self.assertEqual(report.mode, "sampled")
        self.assertTrue(report.passed, report.failures())


class TestClasses(unittest.TestCase):
    def test_membership(self):
        self.assertTrue(in_class(diagonal(2, F2), "unital_assoc"))
        self.assertTrue(in_class(diagonal(2, F2), "idempotent"))
        self.assertFalse(in_class(heisenberg(F2), "idempotent"))
        self.assertTrue(in_class(sl2(QQ), "semisimple_lie"))
        with self.assertRaises(UnsupportedField):
            in_class(sl2(QQ), "jordan")

    def test_unital_ideal_domains(self):
        c = pde_class_carrier(diagonal(2, F2), "unital_assoc")
        self.assertEqual(len(c.domains()), 4)
        self.assertEqual(len(c.elements()), 4)
        report = check_domain_coincidence(c)
        self.assertTrue(report.passed, report.failures())

    def test_rational_domains_default_to_trivial_ideals(self):
        c = pde_class_carrier(sl2(QQ), "semisimple_lie")
        self.assertEqual([k.dim for k in c.domains()], [0, 3])

    def test_base_must_belong_to_the_class(self):
        with self.assertRaises(ValidationFailure):
            pde_class_carrier(heisenberg(F2), "unital_assoc")


class TestMinus(unittest.TestCase):
    def test_pend_minus_is_lie(self):
        c = s_minus(PEndCarrier(F2, 1))
        self.assertIsInstance(c, MinusCarrier)
        self.assertTrue(check_lie_isa(c).passed)

    def test_precondition(self):
        with self.assertRaises(PreconditionFailure):
            s_minus(PDerCarrier(heisenberg(QQ)))


if __name__ == "__main__":
    unittest.main()
