import unittest

from lisa.linalg.algebra import AlgebraHom, abelian, heisenberg, solvable2
from lisa.linalg.exactalg import FieldSpec, Matrix
from lisa.semialgebra.exel import ELCarrier
from lisa.semialgebra.finverse import (
    FCarrier,
    PartialRep,
    RepMorphism,
    adjunction_beta,
    beta_bijection_check,
    build_F,
    check_partial_rep,
    check_rep_morphism,
    el_to_F_iso,
    equivalence_witnesses,
    functor_K,
    identity_map,
    identity_morphism,
    sigma_quotient,
    subspace_rep,
    trivial_rep,
    verify_F,
)
from lisa.semialgebra.semilat import chain_semilattice
from lisa.utils.errors import EnumerationBoundExceeded, MalformedInput, UnsupportedField

F2 = FieldSpec.prime(2)
F3 = FieldSpec.prime(3)


class TestPartialRep(unittest.TestCase):
    def test_subspace_rep(self):
        r = subspace_rep(abelian(1, F3))
        self.assertEqual(sorted(r.lattice.elements), ["0", "<1>"])
        self.assertEqual(r.unit, "0")
        self.assertEqual(r.act(F3.vec([1]), "0"), "<1>")
        report = check_partial_rep(r)
        self.assertTrue(report.passed, report.failures())

    def test_trivial_rep(self):
        self.assertTrue(check_partial_rep(trivial_rep(heisenberg(F3))).passed)

    def test_characteristic_two_is_refused(self):
        with self.assertRaises(UnsupportedField):
            check_partial_rep(subspace_rep(abelian(1, F2)))

    def test_action_must_be_total(self):
        alg = abelian(1, F3)
        with self.assertRaises(MalformedInput):
            PartialRep(alg, chain_semilattice(["eps"]), {(F3.vec([0]), "eps"): "eps"})


class TestFCarrier(unittest.TestCase):
    def test_elements(self):
        fc = build_F(subspace_rep(abelian(1, F3)))
        self.assertEqual(len(fc.elements()), 4)
        self.assertEqual(fc.maximum(F3.vec([1])).level, "<1>")

    def test_el_is_F_of_subspaces(self):
        self.assertTrue(el_to_F_iso(abelian(1, F3)).verified)
        self.assertTrue(el_to_F_iso(abelian(2, F2)).verified)

    def test_verify_F(self):
        report = verify_F(subspace_rep(solvable2(F3)))
        self.assertTrue(report.passed, report.failures())
        self.assertEqual(report.verdict("sigma.analytic").verdict, "pass")

    def test_sigma_quotient(self):
        sq = sigma_quotient(ELCarrier(abelian(1, F3)))
        self.assertEqual(sq.quotient.dim, 1)
        self.assertTrue(sq.report.passed)

    def test_functor_K(self):
        fc = FCarrier(subspace_rep(abelian(1, F3)))
        k = functor_K(fc)
        self.assertEqual(len(k.rep.lattice.elements), 2)
        self.assertTrue(check_partial_rep(k.rep).passed)


class TestEquivalence(unittest.TestCase):
    def test_witnesses(self):
        alg = abelian(1, F3)
        r = subspace_rep(alg)
        el = ELCarrier(alg)
        eq = equivalence_witnesses(r, el, rep_morphisms=[identity_morphism(r)], carrier_maps=[identity_map(el)])
        self.assertTrue(eq.report.passed, eq.report.failures())
        self.assertEqual(len(eq.xi), 2)
        self.assertEqual(len(eq.gamma), 4)

    def test_bad_morphism(self):
        alg = abelian(1, F3)
        r = subspace_rep(alg)
        zero = AlgebraHom(alg, alg, Matrix.zeros(F3, 1, 1))
        mor = RepMorphism(r, r, {lam: lam for lam in r.lattice.elements}, zero)
        report = check_rep_morphism(mor)
        self.assertEqual(report.verdict("morphism.unit").verdict, "pass")
        self.assertEqual(report.verdict("morphism.action").verdict, "fail")
        with self.assertRaises(MalformedInput):
            RepMorphism(r, r, {}, zero)


class TestAdjunction(unittest.TestCase):
    def test_beta_is_a_bijection(self):
        alg = abelian(1, F3)
        report = beta_bijection_check(alg, subspace_rep(alg))
        self.assertTrue(report.passed, report.failures())

    def test_beta_of_the_identity(self):
        alg = abelian(1, F3)
        r = subspace_rep(alg)
        beta = adjunction_beta(AlgebraHom.identity(alg), r, r)
        self.assertEqual(beta.theta, {lam: lam for lam in r.lattice.elements})

    def test_dimension_cap(self):
        with self.assertRaises(EnumerationBoundExceeded):
            beta_bijection_check(abelian(3, F3), subspace_rep(abelian(1, F3)))


if __name__ == "__main__":
    unittest.main()
