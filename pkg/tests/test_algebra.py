import unittest

from lisa.linalg.algebra import (
    AlgebraHom,
    abelian,
    commutator_algebra,
    derivation_space,
    diagonal,
    enumerate_homs,
    from_products,
    heisenberg,
    ideals,
    is_derivation,
    matrix_algebra,
    sl2,
    tensor_lie,
    truncated_poly,
    zero_product,
)
from lisa.linalg.exactalg import FieldSpec, Matrix, Subspace
from lisa.utils.errors import NotSubalgebra, UnsupportedField, ValidationFailure

QQ = FieldSpec.rationals()
F2 = FieldSpec.prime(2)
F3 = FieldSpec.prime(3)


class TestStructAlgebra(unittest.TestCase):
    def test_heisenberg_bracket(self):
        h = heisenberg(QQ)
        a, b, c = (h.basis_vector(i) for i in range(3))
        self.assertEqual(h.multiply(a, b), c)
        self.assertEqual(h.multiply(b, a), QQ.vec([0, 0, -1]))
        self.assertEqual(h.multiply(a, c), h.zero())

    def test_flavor_is_validated(self):
        with self.assertRaises(ValidationFailure) as ctx:
            from_products(QQ, 2, {(0, 1): {0: 1}}, "lie")
        self.assertEqual(ctx.exception.witness, {"i": 0, "j": 1})
        with self.assertRaises(ValidationFailure):
            from_products(QQ, 1, {}, "jordan")

    def test_semisimplicity(self):
        self.assertTrue(sl2(QQ).is_semisimple_lie())
        self.assertFalse(heisenberg(QQ).is_semisimple_lie())
        with self.assertRaises(UnsupportedField):
            sl2(F3).is_semisimple_lie()

    def test_unit(self):
        self.assertEqual(diagonal(2, F2).find_unit(), F2.vec([1, 1]))
        self.assertEqual(truncated_poly(3).find_unit(), F3.vec([1, 0, 0]))
        self.assertIsNone(heisenberg(F2).find_unit())

    def test_subalgebra(self):
        h = heisenberg(QQ)
        ac = Subspace.span(QQ, 3, [h.basis_vector(0), h.basis_vector(2)])
        sub = h.subalgebra(ac)
        self.assertEqual(sub.dim, 2)
        self.assertEqual(sub.derived_subspace().dim, 0)
        with self.assertRaises(NotSubalgebra):
            h.subalgebra(Subspace.span(QQ, 3, [h.basis_vector(0), h.basis_vector(1)]))

    def test_ideals(self):
        self.assertEqual(len(ideals(diagonal(2, F2))), 4)
        h = heisenberg(F2)
        center = Subspace.span(F2, 3, [h.basis_vector(2)])
        self.assertTrue(h.is_ideal(center))
        self.assertFalse(h.is_ideal(Subspace.span(F2, 3, [h.basis_vector(0)])))

    def test_constructions(self):
        t = tensor_lie(heisenberg(F3), truncated_poly(3))
        self.assertEqual((t.dim, t.flavor), (9, "lie"))
        gl2 = commutator_algebra(matrix_algebra(2, QQ))
        self.assertEqual(gl2.flavor, "lie")
        self.assertEqual(gl2.derived_subspace().dim, 3)

    def test_zero_product(self):
        z = zero_product(2, F2)
        self.assertEqual(z.flavor, "associative")
        self.assertEqual(z.multiply(z.basis_vector(0), z.basis_vector(0)), z.zero())
        self.assertIsNone(z.find_unit())
        self.assertFalse(z.is_idempotent_algebra())
        self.assertEqual(len(derivation_space(z)), 4)


class TestMaps(unittest.TestCase):
    def test_enumerate_homs(self):
        line = abelian(1, F3)
        self.assertEqual(len(list(enumerate_homs(line, line))), 3)
        with self.assertRaises(UnsupportedField):
            list(enumerate_homs(abelian(1, QQ), abelian(1, QQ)))

    def test_hom_must_preserve_products(self):
        h = heisenberg(QQ)
        squash = Matrix.from_rows(QQ, [[1, 0, 0], [0, 1, 0], [0, 0, 0]])
        with self.assertRaises(ValidationFailure):
            AlgebraHom(h, h, squash)
        ident = AlgebraHom.identity(h)
        self.assertTrue(ident.compose(ident).is_iso())

    def test_derivations(self):
        self.assertEqual(derivation_space(diagonal(2, F2)), [])
        h = heisenberg(QQ)
        self.assertEqual(len(derivation_space(h)), 6)
        full = Subspace.full(QQ, 3)
        self.assertIsNone(is_derivation(h, full, h.ad(h.basis_vector(0)).columns()))
        twist = (h.basis_vector(0), h.zero(), h.zero())
        self.assertIsNotNone(is_derivation(h, full, twist))


if __name__ == "__main__":
    unittest.main()
