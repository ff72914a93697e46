import unittest
from pathlib import Path

from lisa.linalg.algebra import AlgebraHom, abelian, diagonal, from_products
from lisa.linalg.exactalg import FieldSpec, Matrix
from lisa.semialgebra.carrier import AlgebraCarrier
from lisa.semialgebra.exel import ELCarrier
from lisa.semialgebra.isv_core import check_lie_isa, check_semilattice_of_algebras
from lisa.semialgebra.semilat import (
    MeetSemilattice,
    Presheaf,
    SLAlgebraElement,
    build_SF,
    chain_semilattice,
    check_carrier_map,
    check_presheaf,
    decompose,
    decompose_with_witness,
    minus_semilattice,
    one_point,
    partial_functions,
    presheaf_iso,
    roundtrip_iso,
    subset_semilattice,
    two_chain,
)
from lisa.utils.config import DimCaps, RunConfig
from lisa.utils.errors import (
    AmbientMismatch,
    EnumerationBoundExceeded,
    PreconditionFailure,
    UnsupportedField,
    ValidationFailure,
)
from lisa.utils.objects import CarrierModel
from lisa.utils.utils import load_model

QQ = FieldSpec.rationals()
F2 = FieldSpec.prime(2)

FIXTURES = Path(__file__).resolve().parent.parent / "fixtures"


class TestMeetSemilattice(unittest.TestCase):
    def test_chain(self):
        s = chain_semilattice(["a", "b", "c"])
        self.assertEqual(s.meet("a", "c"), "c")
        self.assertTrue(s.leq("c", "a"))
        self.assertEqual(s.unit, "a")
        self.assertEqual(len(s.pairs_below()), 6)

    def test_subsets(self):
        s = subset_semilattice(2)
        self.assertEqual(len(s.elements), 4)
        self.assertEqual(s.unit, "{1,2}")
        self.assertEqual(s.meet("{1}", "{2}"), "{}")

    def test_table_is_validated(self):
        with self.assertRaises(ValidationFailure) as ctx:
            MeetSemilattice(("a", "b"), ((1, 1), (1, 1)))
        self.assertEqual(ctx.exception.witness["law"], "idempotence")

    def test_unknown_element(self):
        with self.assertRaises(AmbientMismatch):
            chain_semilattice(["a", "b"]).index("z")


class TestPresheaf(unittest.TestCase):
    def test_restrictions_are_required(self):
        with self.assertRaises(ValidationFailure):
            Presheaf(chain_semilattice(["top", "bottom"]), {"top": diagonal(2, F2), "bottom": diagonal(1, F2)})

    def test_functoriality(self):
        one = diagonal(1, F2)
        ident = AlgebraHom.identity(one)
        zero = AlgebraHom(one, one, Matrix.zeros(F2, 1, 1))
        p = Presheaf(
            chain_semilattice(["a", "b", "c"]),
            {"a": one, "b": one, "c": one},
            {("a", "b"): ident, ("b", "c"): ident, ("a", "c"): zero},
        )
        report = check_presheaf(p)
        self.assertEqual(report.verdict("presheaf.functorial").verdict, "fail")
        with self.assertRaises(PreconditionFailure):
            build_SF(p)

    def test_from_model(self):
        model = load_model(str(FIXTURES / "sf_two_chain_f2.json"), CarrierModel)
        p = Presheaf.from_model(model.presheaf)
        self.assertEqual(p.eta("lambda", "mu").apply(F2.vec([1, 0])), F2.vec([1]))
        self.assertTrue(check_presheaf(p).passed)


class TestSF(unittest.TestCase):
    def test_partial_functions(self):
        p = partial_functions(2, F2)
        sf = build_SF(p)
        self.assertEqual(len(sf.elements()), 9)
        self.assertEqual(sf.zero(), SLAlgebraElement("{1,2}", F2.vec([0, 0])))
        report = check_semilattice_of_algebras(sf)
        self.assertTrue(report.passed, report.failures())

    def test_round_trips(self):
        p = partial_functions(2, F2)
        self.assertTrue(roundtrip_iso(build_SF(p)).verified)
        self.assertTrue(presheaf_iso(p).verified)
        self.assertTrue(roundtrip_iso(ELCarrier(abelian(2, F2))).verified)

    def test_decompose_levels(self):
        q = decompose(ELCarrier(abelian(2, F2)))
        self.assertEqual(len(q.base.elements), 5)
        self.assertIsNotNone(q.base.unit)
        with self.assertRaises(UnsupportedField):
            decompose(build_SF(one_point(abelian(1, QQ))))

    def test_caps(self):
        with self.assertRaises(EnumerationBoundExceeded):
            build_SF(one_point(abelian(4, F2)))
        with self.assertRaises(EnumerationBoundExceeded):
            build_SF(partial_functions(2, F2), config=RunConfig(dim_caps=DimCaps(levels=3)))
        el = ELCarrier(abelian(2, F2))
        with self.assertRaises(EnumerationBoundExceeded):
            decompose(el, RunConfig(dim_caps=DimCaps(levels=4)))
        with self.assertRaises(EnumerationBoundExceeded):
            decompose(el, RunConfig(dim_caps=DimCaps(level=1)))

    def test_level_outside_its_flavor_is_kept_as_general(self):
        class ClaimsAssociative(AlgebraCarrier):
            traits = frozenset({"associative"})

        skew = from_products(F2, 2, {(0, 0): {1: 1}, (1, 0): {0: 1}}, "general")
        with self.assertLogs("lisa.semialgebra.semilat", level="WARNING") as logs:
            d = decompose_with_witness(ClaimsAssociative(skew), check=False)
        [level] = d.presheaf.objects.values()
        self.assertEqual(level.flavor, "general")
        self.assertIn("kept as general", logs.output[0])

    def test_collapse_to_the_bottom_is_not_induced_by_the_presheaf(self):
        hom = AlgebraHom(diagonal(2, F2), diagonal(1, F2), Matrix.from_rows(F2, [[1, 0]]))
        p = two_chain(hom)
        sf = build_SF(p)

        def collapse(x):
            return SLAlgebraElement("mu", p.eta(x.level, "mu").apply(x.value))

        self.assertTrue(check_carrier_map(sf, sf, collapse, "collapse").passed)
        top_zero = SLAlgebraElement("lambda", F2.vec([0, 0]))
        self.assertNotEqual(collapse(top_zero), top_zero)

    def test_minus(self):
        c = minus_semilattice(build_SF(partial_functions(1, F2)))
        self.assertTrue(c.bracket)
        self.assertTrue(check_lie_isa(c).passed)


if __name__ == "__main__":
    unittest.main()
