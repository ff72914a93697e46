from __future__ import annotations

import dataclasses
import itertools
import logging
from dataclasses import dataclass
from functools import cached_property
from typing import Iterator, Mapping, Optional, Sequence

from lisa.linalg.exactalg import (
    FieldSpec,
    Matrix,
    Subspace,
    Vector,
    enumerate_subspaces,
    solve,
    vec_add,
    vec_combine,
    vec_is_zero,
    vec_sub,
)
from lisa.utils.errors import (
    AmbientMismatch,
    EnumerationBoundExceeded,
    NotSubalgebra,
    UnsupportedField,
    ValidationFailure,
)

logger = logging.getLogger(__name__)

FLAVORS = ("general", "associative", "lie")


@dataclass(frozen=True)
class StructAlgebra:
    """
    A finite-dimensional algebra e_i e_j = sum_k table[i][j][k] e_k.

    Construction validates the flavor on all basis triples, which is a complete check by
    multilinearity.
    """

    field: FieldSpec
    dim: int
    table: tuple
    flavor: str = "general"
    name: str = dataclasses.field(default="", compare=False)

    def __post_init__(self) -> None:
        if self.flavor not in FLAVORS:
            raise ValidationFailure(f"unknown flavor {self.flavor!r}")
        if len(self.table) != self.dim or any(
            len(row) != self.dim or any(len(v) != self.dim for v in row) for row in self.table
        ):
            raise ValidationFailure("structure constants do not match the dimension")
        self.validate()

    def __hash__(self) -> int:
        return self._hash

    @cached_property
    def _hash(self) -> int:
        return hash((self.field, self.dim, self.table, self.flavor))

    @cached_property
    def _terms(self) -> tuple:
        return tuple(
            (i, j, self.table[i][j])
            for i in range(self.dim)
            for j in range(self.dim)
            if not vec_is_zero(self.table[i][j])
        )

    @property
    def label(self) -> str:
        return self.name or f"{self.flavor}-algebra(dim {self.dim} over {self.field.label})"

    def basis_vector(self, i: int) -> Vector:
        return self.field.unit_vector(self.dim, i)

    def zero(self) -> Vector:
        return self.field.zero_vector(self.dim)

    def multiply(self, x: Vector, y: Vector) -> Vector:
        if len(x) != self.dim or len(y) != self.dim:
            raise AmbientMismatch(f"vectors must have length {self.dim}")
        out = list(self.zero())
        for i, j, v in self._terms:
            c = x[i] * y[j]
            if c:
                for k, a in enumerate(v):
                    if a:
                        out[k] += c * a
        return tuple(out)

    def basis_product(self, i: int, j: int) -> Vector:
        return self.table[i][j]

    def validate(self) -> None:
        n = self.dim
        e = self.basis_vector
        if self.flavor == "lie":
            for i in range(n):
                if not vec_is_zero(self.table[i][i]):
                    raise ValidationFailure(f"[e{i},e{i}] != 0", {"i": i})
                for j in range(i + 1, n):
                    if vec_add(self.table[i][j], self.table[j][i]) != self.zero():
                        raise ValidationFailure(f"bracket not antisymmetric on e{i}, e{j}", {"i": i, "j": j})
            for i, j, k in itertools.combinations(range(n), 3):
                jac = vec_add(
                    vec_add(
                        self.multiply(self.table[i][j], e(k)),
                        self.multiply(self.table[j][k], e(i)),
                    ),
                    self.multiply(self.table[k][i], e(j)),
                )
                if not vec_is_zero(jac):
                    raise ValidationFailure(f"Jacobi fails on e{i}, e{j}, e{k}", {"i": i, "j": j, "k": k})
        elif self.flavor == "associative":
            for i, j, k in itertools.product(range(n), repeat=3):
                left = self.multiply(self.table[i][j], e(k))
                right = self.multiply(e(i), self.table[j][k])
                if left != right:
                    raise ValidationFailure(
                        f"associativity fails on e{i}, e{j}, e{k}", {"i": i, "j": j, "k": k}
                    )

    def left_matrix(self, x: Vector) -> Matrix:
        return Matrix.from_columns(self.field, [self.multiply(x, self.basis_vector(j)) for j in range(self.dim)], self.dim)

    def right_matrix(self, y: Vector) -> Matrix:
        return Matrix.from_columns(self.field, [self.multiply(self.basis_vector(j), y) for j in range(self.dim)], self.dim)

    def ad(self, x: Vector) -> Matrix:
        return self.left_matrix(x)

    def is_subalgebra(self, s: Subspace) -> bool:
        self._check_space(s)
        return all(s.contains(self.multiply(x, y)) for x in s.basis for y in s.basis)

    def is_ideal(self, s: Subspace) -> bool:
        self._check_space(s)
        for x in s.basis:
            for i in range(self.dim):
                e = self.basis_vector(i)
                if not (s.contains(self.multiply(x, e)) and s.contains(self.multiply(e, x))):
                    return False
        return True

    def product_space(self, a: Subspace, b: Subspace) -> Subspace:
        """span{xy | x in a, y in b}."""
        return Subspace.span(self.field, self.dim, [self.multiply(x, y) for x in a.basis for y in b.basis])

    def derived_subspace(self) -> Subspace:
        full = Subspace.full(self.field, self.dim)
        return self.product_space(full, full)

    def find_unit(self) -> Optional[Vector]:
        """The two-sided unit u, found by solving u e_k = e_k = e_k u for every k."""
        n = self.dim
        if n == 0:
            return ()
        rows, rhs = [], []
        for k in range(n):
            left = [self.table[i][k] for i in range(n)]
            right = [self.table[k][i] for i in range(n)]
            target = self.basis_vector(k)
            for comp in range(n):
                rows.append(tuple(left[i][comp] for i in range(n)))
                rhs.append(target[comp])
                rows.append(tuple(right[i][comp] for i in range(n)))
                rhs.append(target[comp])
        return solve(Matrix(self.field, len(rows), n, tuple(rows)), tuple(rhs))

    def is_idempotent_algebra(self) -> bool:
        return self.derived_subspace().is_full

    def killing_form(self) -> Matrix:
        ads = [self.ad(self.basis_vector(i)) for i in range(self.dim)]
        return Matrix(
            self.field,
            self.dim,
            self.dim,
            tuple(tuple(ads[i].matmul(ads[j]).trace() for j in range(self.dim)) for i in range(self.dim)),
        )

    def is_semisimple_lie(self) -> bool:
        if self.flavor != "lie":
            raise ValidationFailure("semisimplicity is decided for Lie algebras only")
        if self.field.characteristic != 0:
            raise UnsupportedField("semisimplicity is only decided in characteristic 0")
        if self.dim == 0:
            return True
        return bool(self.killing_form().det())

    def subalgebra(self, s: Subspace) -> "StructAlgebra":
        """The subalgebra s as an algebra in coordinates of its canonical basis."""
        self._check_space(s)
        if not self.is_subalgebra(s):
            raise NotSubalgebra(f"{s!r} is not closed under the product")
        table = tuple(
            tuple(s.coordinates(self.multiply(x, y)) for y in s.basis) for x in s.basis
        )
        return StructAlgebra(self.field, s.dim, table, self.flavor, f"{self.label}|{s!r}")

    def _check_space(self, s: Subspace) -> None:
        if s.ambient_dim != self.dim or s.field != self.field:
            raise AmbientMismatch(f"{s!r} is not a subspace of {self.label}")


def from_products(
    field: FieldSpec,
    dim: int,
    products: Mapping[tuple[int, int], Mapping[int, object]],
    flavor: str = "general",
    name: str = "",
) -> StructAlgebra:
    table = [[list(field.zero_vector(dim)) for _ in range(dim)] for _ in range(dim)]
    for (i, j), out in products.items():
        for k, coeff in out.items():
            table[i][j][k] += field(coeff)
    frozen = tuple(tuple(tuple(v) for v in row) for row in table)
    return StructAlgebra(field, dim, frozen, flavor, name)


def _lie_products(pairs: Mapping[tuple[int, int], Mapping[int, object]]) -> dict:
    """Complete a bracket table given on i<j by antisymmetry."""
    products: dict = {}
    for (i, j), out in pairs.items():
        products[(i, j)] = dict(out)
        products[(j, i)] = {k: -c for k, c in out.items()}
    return products


def heisenberg(field: FieldSpec) -> StructAlgebra:
    # basis a, b, c with [a,b] = c central
    return from_products(field, 3, _lie_products({(0, 1): {2: 1}}), "lie", f"heisenberg({field.label})")


def sl2(field: FieldSpec) -> StructAlgebra:
    # basis e, h, f
    pairs = {(0, 2): {1: 1}, (1, 0): {0: 2}, (1, 2): {2: -2}}
    return from_products(field, 3, _lie_products(pairs), "lie", f"sl2({field.label})")


def abelian(n: int, field: FieldSpec) -> StructAlgebra:
    return from_products(field, n, {}, "lie", f"abelian({n},{field.label})")


def solvable2(field: FieldSpec) -> StructAlgebra:
    # [x, y] = y
    return from_products(field, 2, _lie_products({(0, 1): {1: 1}}), "lie", f"solvable2({field.label})")


def truncated_poly(p: int) -> StructAlgebra:
    """F_p[z]/(z^p) with basis 1, z, ..., z^(p-1)."""
    if p <= 2:
        raise UnsupportedField("truncated_poly needs a prime p > 2")
    field = FieldSpec.prime(p)
    products = {(i, j): {i + j: 1} for i in range(p) for j in range(p) if i + j < p}
    return from_products(field, p, products, "associative", f"F{p}[z]/(z^{p})")


def diagonal(n: int, field: FieldSpec) -> StructAlgebra:
    return from_products(field, n, {(i, i): {i: 1} for i in range(n)}, "associative", f"{field.label}^{n}(diag)")


def zero_product(n: int, field: FieldSpec) -> StructAlgebra:
    return from_products(field, n, {}, "associative", f"zero-product({n},{field.label})")


def matrix_algebra(n: int, field: FieldSpec) -> StructAlgebra:
    """M_n(F) with basis E_ij at index i*n + j."""
    products = {
        (i * n + j, j * n + l): {i * n + l: 1}
        for i in range(n)
        for j in range(n)
        for l in range(n)
    }
    return from_products(field, n * n, products, "associative", f"M{n}({field.label})")


def tensor_lie(s: StructAlgebra, a: StructAlgebra) -> StructAlgebra:
    """S tensor A with [s x a, t x b] = [s,t] x ab; basis s_i x a_j at index i*dim(A) + j."""
    if s.flavor != "lie":
        raise ValidationFailure("tensor_lie needs a Lie left factor")
    if s.field != a.field:
        raise AmbientMismatch("factors live over different fields")
    m = a.dim
    dim = s.dim * m
    table = [[list(s.field.zero_vector(dim)) for _ in range(dim)] for _ in range(dim)]
    for i1, j1, st in s._terms:
        for i2, j2, ab in a._terms:
            for k1, c1 in enumerate(st):
                if not c1:
                    continue
                for k2, c2 in enumerate(ab):
                    if c2:
                        table[i1 * m + i2][j1 * m + j2][k1 * m + k2] += c1 * c2
    frozen = tuple(tuple(tuple(v) for v in row) for row in table)
    return StructAlgebra(s.field, dim, frozen, "lie", f"{s.label}(x){a.label}")


def commutator_algebra(alg: StructAlgebra) -> StructAlgebra:
    """The algebra with product xy - yx; Lie whenever alg is associative."""
    table = tuple(
        tuple(vec_sub(alg.table[i][j], alg.table[j][i]) for j in range(alg.dim)) for i in range(alg.dim)
    )
    flavor = "lie" if alg.flavor in ("associative", "lie") else "general"
    return StructAlgebra(alg.field, alg.dim, table, flavor, f"{alg.label}^-")


@dataclass(frozen=True)
class AlgebraHom:
    source: StructAlgebra
    target: StructAlgebra
    matrix: Matrix

    def __post_init__(self) -> None:
        if (self.matrix.rows, self.matrix.cols) != (self.target.dim, self.source.dim):
            raise AmbientMismatch("hom matrix shape does not match the algebras")
        witness = self.violation()
        if witness is not None:
            raise ValidationFailure(f"map does not preserve e{witness[0]} e{witness[1]}", {"i": witness[0], "j": witness[1]})

    def violation(self) -> Optional[tuple[int, int]]:
        cols = self.matrix.columns()
        for i in range(self.source.dim):
            for j in range(self.source.dim):
                lhs = self.matrix.matvec(self.source.table[i][j])
                if lhs != self.target.multiply(cols[i], cols[j]):
                    return i, j
        return None

    def apply(self, v: Vector) -> Vector:
        return self.matrix.matvec(v)

    def compose(self, other: "AlgebraHom") -> "AlgebraHom":
        """self after other."""
        return AlgebraHom(other.source, self.target, self.matrix.matmul(other.matrix))

    def is_iso(self) -> bool:
        return self.matrix.is_invertible()

    @classmethod
    def identity(cls, alg: StructAlgebra) -> "AlgebraHom":
        return cls(alg, alg, Matrix.identity(alg.field, alg.dim))


def is_hom_matrix(source: StructAlgebra, target: StructAlgebra, columns: Sequence[Vector]) -> bool:
    for i in range(source.dim):
        for j in range(i if source.flavor == "lie" else 0, source.dim):
            lhs = vec_combine(source.table[i][j], columns, target.dim, target.field)
            if lhs != target.multiply(columns[i], columns[j]):
                return False
    return True


def enumerate_homs(source: StructAlgebra, target: StructAlgebra, cap: int = 250_000) -> Iterator[AlgebraHom]:
    """All algebra homomorphisms source -> target over a common prime field."""
    field = source.field
    if not field.is_finite or target.field != field:
        raise UnsupportedField("hom enumeration needs a common prime field")
    total = field.characteristic ** (source.dim * target.dim)
    if total > cap:
        raise EnumerationBoundExceeded(f"{total} candidate matrices exceed cap {cap}")
    vectors = list(field.vectors(target.dim))
    for columns in itertools.product(vectors, repeat=source.dim):
        if is_hom_matrix(source, target, columns):
            yield AlgebraHom(source, target, Matrix.from_columns(field, columns, target.dim))


def derivation_space(alg: StructAlgebra, domain: Optional[Subspace] = None) -> list[tuple[Vector, ...]]:
    """
    Basis of the derivations K -> A of a subalgebra K, each given by the images of K's canonical
    basis. Solves phi(b_i b_j) = phi(b_i) b_j + b_i phi(b_j) as a linear system in the entries.
    """
    field, n = alg.field, alg.dim
    if domain is None:
        domain = Subspace.full(field, n)
    if not alg.is_subalgebra(domain):
        raise NotSubalgebra(f"{domain!r} is not a subalgebra")
    k = domain.dim
    if k == 0:
        return []
    rights = [alg.right_matrix(b) for b in domain.basis]
    lefts = [alg.left_matrix(b) for b in domain.basis]
    rows = []
    for i in range(k):
        for j in range(k):
            coords = domain.coordinates(alg.multiply(domain.basis[i], domain.basis[j]))
            for comp in range(n):
                row = [field.zero] * (n * k)
                for t in range(k):
                    if coords[t]:
                        row[t * n + comp] += coords[t]
                for r in range(n):
                    row[i * n + r] -= rights[j].entries[comp][r]
                    row[j * n + r] -= lefts[i].entries[comp][r]
                rows.append(tuple(row))
    system = Matrix(field, len(rows), n * k, tuple(rows))
    return [tuple(tuple(sol[t * n:(t + 1) * n]) for t in range(k)) for sol in system.nullspace()]


def is_derivation(alg: StructAlgebra, domain: Subspace, images: Sequence[Vector]) -> Optional[tuple[int, int]]:
    """None when the map is Leibniz on all basis pairs, otherwise the first failing pair."""
    for i, x in enumerate(domain.basis):
        for j, y in enumerate(domain.basis):
            coords = domain.coordinates(alg.multiply(x, y))
            if coords is None:
                return i, j
            lhs = vec_combine(coords, images, alg.dim, alg.field)
            rhs = vec_add(alg.multiply(images[i], y), alg.multiply(x, images[j]))
            if lhs != rhs:
                return i, j
    return None


def ideals(alg: StructAlgebra, cap: int = 4) -> list[Subspace]:
    return [s for s in enumerate_subspaces(alg.dim, alg.field, cap) if alg.is_ideal(s)]
