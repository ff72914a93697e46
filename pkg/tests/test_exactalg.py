import unittest

from hypothesis import given, settings
from hypothesis import strategies as st

from lisa.linalg.exactalg import (
    FieldSpec,
    Matrix,
    Subspace,
    enumerate_subspaces,
    gaussian_binomial_total,
    image,
    intersect,
    preimage,
    solve,
    subspace_sum,
)
from lisa.utils.errors import AmbientMismatch, EnumerationBoundExceeded, UnsupportedField

QQ = FieldSpec.rationals()
F2 = FieldSpec.prime(2)
F3 = FieldSpec.prime(3)

rows = st.lists(st.lists(st.integers(-4, 4), min_size=3, max_size=3), max_size=4)


class TestFieldSpec(unittest.TestCase):
    def test_parse(self):
        self.assertEqual(FieldSpec.parse("F3"), F3)
        self.assertEqual(FieldSpec.parse("gf2"), F2)
        self.assertEqual(FieldSpec.parse("Q"), QQ)
        with self.assertRaises(UnsupportedField):
            FieldSpec.parse("F4")

    def test_scalars_print_canonically(self):
        self.assertEqual(F3.to_str(F3(-1)), "2")
        self.assertEqual(QQ.to_str(QQ("6/8")), "3/4")
        self.assertEqual(QQ.to_str(QQ(-2)), "-2")

    def test_vectors(self):
        self.assertEqual(len(list(F3.vectors(2))), 9)
        with self.assertRaises(UnsupportedField):
            QQ.elements()


class TestSubspace(unittest.TestCase):
    def test_enumeration_matches_gaussian_binomials(self):
        for n, field in ((2, F2), (3, F2), (2, F3), (3, F3)):
            spaces = list(enumerate_subspaces(n, field))
            self.assertEqual(len(spaces), gaussian_binomial_total(n, field.characteristic))
            self.assertEqual(len(set(spaces)), len(spaces))

    def test_enumeration_is_capped(self):
        with self.assertRaises(EnumerationBoundExceeded):
            list(enumerate_subspaces(5, F2, cap=4))
        with self.assertRaises(UnsupportedField):
            list(enumerate_subspaces(2, QQ))

    def test_enumerated_spaces_are_canonical(self):
        for s in enumerate_subspaces(3, F3):
            self.assertEqual(Subspace.span(F3, 3, s.basis), s)

    def test_dimension_formula(self):
        spaces = list(enumerate_subspaces(3, F2))
        for a in spaces:
            for b in spaces:
                self.assertEqual(subspace_sum(a, b).dim + intersect(a, b).dim, a.dim + b.dim)

    def test_coordinates(self):
        s = Subspace.span(QQ, 3, [QQ.vec([1, 2, 0]), QQ.vec([0, 1, 1])])
        v = QQ.vec([2, 5, 1])
        coords = s.coordinates(v)
        self.assertIsNotNone(coords)
        self.assertFalse(s.contains(QQ.vec([0, 0, 1])))
        with self.assertRaises(AmbientMismatch):
            s.contains(QQ.vec([1, 0]))

    def test_preimage_and_image(self):
        m = Matrix.from_rows(QQ, [[1, 0], [0, 0]])
        kernel = preimage(m, Subspace.zero(QQ, 2))
        self.assertEqual(kernel, Subspace.span(QQ, 2, [QQ.vec([0, 1])]))
        self.assertEqual(image(m, Subspace.full(QQ, 2)), Subspace.span(QQ, 2, [QQ.vec([1, 0])]))

    def test_solve(self):
        m = Matrix.from_rows(F3, [[1, 1], [0, 1]])
        x = solve(m, F3.vec([2, 1]))
        self.assertEqual(m.matvec(x), F3.vec([2, 1]))
        singular = Matrix.from_rows(QQ, [[1, 1], [1, 1]])
        self.assertIsNone(solve(singular, QQ.vec([0, 1])))

    @settings(max_examples=60, deadline=None)
    @given(rows)
    def test_span_is_idempotent(self, vectors):
        s = Subspace.span(QQ, 3, [QQ.vec(v) for v in vectors])
        self.assertEqual(Subspace.span(QQ, 3, s.basis), s)
        for v in vectors:
            self.assertTrue(s.contains(QQ.vec(v)))

    @settings(max_examples=40, deadline=None)
    @given(rows, rows, rows)
    def test_modular_law(self, xs, ys, zs):
        a = Subspace.span(QQ, 3, [QQ.vec(v) for v in xs])
        b = Subspace.span(QQ, 3, [QQ.vec(v) for v in ys])
        c = subspace_sum(a, Subspace.span(QQ, 3, [QQ.vec(v) for v in zs]))
        self.assertEqual(subspace_sum(a, intersect(b, c)), intersect(subspace_sum(a, b), c))


if __name__ == "__main__":
    unittest.main()
