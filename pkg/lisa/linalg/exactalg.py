"""
Exact fields, dense matrices and canonical subspaces.

Everything here is built on sympy's DomainMatrix over QQ or GF(p). Vectors are plain tuples of
domain elements, so every value is hashable and can key the tables used by the checkers.
"""

from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass
from functools import cached_property, lru_cache
from typing import Any, Iterable, Iterator, Optional, Sequence

from sympy import Rational, isprime
from sympy.polys.domains import GF, QQ
from sympy.polys.matrices import DomainMatrix

from lisa.utils.errors import AmbientMismatch, EnumerationBoundExceeded, UnsupportedField

logger = logging.getLogger(__name__)

Vector = tuple


@lru_cache(maxsize=None)
def _domain(kind: str, characteristic: int):
    if kind == "rationals":
        return QQ
    return GF(characteristic, symmetric=False)


@dataclass(frozen=True)
class FieldSpec:
    kind: str
    characteristic: int = 0

    def __post_init__(self) -> None:
        if self.kind == "rationals":
            if self.characteristic != 0:
                raise UnsupportedField("rationals have characteristic 0")
        elif self.kind == "prime_field":
            if not isprime(self.characteristic):
                raise UnsupportedField(f"{self.characteristic} is not prime")
        else:
            raise UnsupportedField(f"unknown field kind {self.kind!r}")

    @classmethod
    def rationals(cls) -> "FieldSpec":
        return cls("rationals", 0)

    @classmethod
    def prime(cls, p: int) -> "FieldSpec":
        return cls("prime_field", p)

    @classmethod
    def parse(cls, label: str) -> "FieldSpec":
        """Accepts "Q", "QQ" or "F<p>" / "GF<p>"."""
        text = label.strip().upper()
        if text in ("Q", "QQ"):
            return cls.rationals()
        for prefix in ("GF", "F"):
            if text.startswith(prefix) and text[len(prefix):].isdigit():
                return cls.prime(int(text[len(prefix):]))
        raise UnsupportedField(f"cannot parse field {label!r}")

    @property
    def label(self) -> str:
        return "Q" if self.kind == "rationals" else f"F{self.characteristic}"

    @property
    def domain(self):
        return _domain(self.kind, self.characteristic)

    @property
    def is_finite(self) -> bool:
        return self.kind == "prime_field"

    @cached_property
    def zero(self):
        return self.domain.zero

    @cached_property
    def one(self):
        return self.domain.one

    def __call__(self, value: Any):
        """Coerce ints, strings like "3/4", sympy Rationals or domain elements."""
        dom = self.domain
        if isinstance(value, str):
            value = Rational(value)
        if isinstance(value, int):
            return dom(value)
        if isinstance(value, Rational):
            return dom(int(value.p)) / dom(int(value.q))
        if hasattr(value, "numerator") and hasattr(value, "denominator") and not self.is_finite:
            return dom(int(value.numerator)) / dom(int(value.denominator))
        return dom.convert(value)

    def elements(self) -> list:
        if not self.is_finite:
            raise UnsupportedField("the rationals cannot be enumerated")
        return [self.domain(i) for i in range(self.characteristic)]

    def nonzero(self) -> list:
        return [a for a in self.elements() if a != self.zero]

    def to_str(self, x) -> str:
        if self.is_finite:
            return str(int(x) % self.characteristic)
        if x.denominator == 1:
            return str(int(x.numerator))
        return f"{int(x.numerator)}/{int(x.denominator)}"

    def vec(self, values: Iterable[Any]) -> Vector:
        return tuple(self(v) for v in values)

    def zero_vector(self, n: int) -> Vector:
        return (self.zero,) * n

    def unit_vector(self, n: int, i: int) -> Vector:
        return tuple(self.one if k == i else self.zero for k in range(n))

    def vectors(self, n: int) -> Iterator[Vector]:
        """All vectors of F^n, in lexicographic residue order."""
        return (tuple(v) for v in itertools.product(self.elements(), repeat=n))


def vec_add(x: Vector, y: Vector) -> Vector:
    return tuple(a + b for a, b in zip(x, y))


def vec_sub(x: Vector, y: Vector) -> Vector:
    return tuple(a - b for a, b in zip(x, y))


def vec_scale(alpha, x: Vector) -> Vector:
    return tuple(alpha * a for a in x)


def vec_is_zero(x: Vector) -> bool:
    return all(not a for a in x)


def vec_combine(coeffs: Sequence, vectors: Sequence[Vector], n: int, field: FieldSpec) -> Vector:
    out = list(field.zero_vector(n))
    for c, v in zip(coeffs, vectors):
        if c:
            for k, a in enumerate(v):
                if a:
                    out[k] += c * a
    return tuple(out)


@dataclass(frozen=True)
class Matrix:
    """A dense rows x cols matrix of exact entries, stored row-major as nested tuples."""

    field: FieldSpec
    rows: int
    cols: int
    entries: tuple

    def __post_init__(self) -> None:
        if len(self.entries) != self.rows or any(len(r) != self.cols for r in self.entries):
            raise AmbientMismatch(
                f"entry layout does not match shape {self.rows}x{self.cols}"
            )

    @classmethod
    def from_rows(cls, field: FieldSpec, rows: Sequence[Sequence[Any]], cols: Optional[int] = None) -> "Matrix":
        entries = tuple(field.vec(r) for r in rows)
        if cols is None:
            cols = len(entries[0]) if entries else 0
        return cls(field, len(entries), cols, entries)

    @classmethod
    def from_columns(cls, field: FieldSpec, columns: Sequence[Vector], nrows: int) -> "Matrix":
        entries = tuple(tuple(col[i] for col in columns) for i in range(nrows))
        return cls(field, nrows, len(columns), entries)

    @classmethod
    def identity(cls, field: FieldSpec, n: int) -> "Matrix":
        return cls(field, n, n, tuple(field.unit_vector(n, i) for i in range(n)))

    @classmethod
    def zeros(cls, field: FieldSpec, rows: int, cols: int) -> "Matrix":
        return cls(field, rows, cols, tuple(field.zero_vector(cols) for _ in range(rows)))

    @classmethod
    def from_domain_matrix(cls, field: FieldSpec, dm: DomainMatrix) -> "Matrix":
        rows, cols = dm.shape
        return cls(field, rows, cols, tuple(tuple(r) for r in dm.to_list()))

    def to_domain_matrix(self) -> DomainMatrix:
        return DomainMatrix([list(r) for r in self.entries], (self.rows, self.cols), self.field.domain)

    def column(self, j: int) -> Vector:
        return tuple(r[j] for r in self.entries)

    def columns(self) -> list[Vector]:
        return [self.column(j) for j in range(self.cols)]

    def transpose(self) -> "Matrix":
        return Matrix(self.field, self.cols, self.rows, tuple(self.columns()))

    def rref(self) -> "Matrix":
        return rref_with_pivots(self)[0]

    def matvec(self, v: Vector) -> Vector:
        if len(v) != self.cols:
            raise AmbientMismatch(f"vector of length {len(v)} against {self.cols} columns")
        zero = self.field.zero
        out = []
        for row in self.entries:
            acc = zero
            for a, b in zip(row, v):
                if a and b:
                    acc += a * b
            out.append(acc)
        return tuple(out)

    def matmul(self, other: "Matrix") -> "Matrix":
        if self.cols != other.rows:
            raise AmbientMismatch(f"cannot multiply {self.rows}x{self.cols} by {other.rows}x{other.cols}")
        if self.rows == 0 or other.cols == 0 or self.cols == 0:
            return Matrix.zeros(self.field, self.rows, other.cols)
        return Matrix.from_domain_matrix(self.field, self.to_domain_matrix() * other.to_domain_matrix())

    def nullspace(self) -> list[Vector]:
        """Basis of {v | self v = 0}."""
        if self.cols == 0:
            return []
        if self.rows == 0:
            return [self.field.unit_vector(self.cols, i) for i in range(self.cols)]
        return [tuple(r) for r in self.to_domain_matrix().nullspace().to_list()]

    def det(self):
        if self.rows != self.cols:
            raise AmbientMismatch("determinant of a non-square matrix")
        if self.rows == 0:
            return self.field.one
        return self.to_domain_matrix().det()

    def trace(self):
        acc = self.field.zero
        for i in range(min(self.rows, self.cols)):
            acc += self.entries[i][i]
        return acc

    def is_invertible(self) -> bool:
        return self.rows == self.cols and bool(self.det())

    def to_json(self) -> list[list[str]]:
        return [[self.field.to_str(a) for a in r] for r in self.entries]


@lru_cache(maxsize=65536)
def rref_with_pivots(m: Matrix) -> tuple[Matrix, tuple[int, ...]]:
    if m.rows == 0 or m.cols == 0:
        return m, ()
    reduced, pivots = m.to_domain_matrix().rref()
    return Matrix.from_domain_matrix(m.field, reduced), tuple(pivots)


def rref(m: Matrix) -> Matrix:
    return rref_with_pivots(m)[0]


@dataclass(frozen=True)
class Subspace:
    """A subspace of F^n stored by its reduced row-echelon basis (no zero rows)."""

    field: FieldSpec
    ambient_dim: int
    basis: tuple
    pivots: tuple

    @classmethod
    def span(cls, field: FieldSpec, ambient_dim: int, vectors: Iterable[Vector]) -> "Subspace":
        rows = [tuple(v) for v in vectors]
        for v in rows:
            if len(v) != ambient_dim:
                raise AmbientMismatch(f"vector of length {len(v)} in ambient {ambient_dim}")
        return _span(field, ambient_dim, tuple(rows))

    @classmethod
    def zero(cls, field: FieldSpec, n: int) -> "Subspace":
        return cls(field, n, (), ())

    @classmethod
    def full(cls, field: FieldSpec, n: int) -> "Subspace":
        return cls(field, n, tuple(field.unit_vector(n, i) for i in range(n)), tuple(range(n)))

    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def is_zero(self) -> bool:
        return not self.basis

    @property
    def is_full(self) -> bool:
        return self.dim == self.ambient_dim

    def basis_matrix(self) -> Matrix:
        return Matrix(self.field, self.dim, self.ambient_dim, self.basis)

    def coordinates(self, v: Vector) -> Optional[Vector]:
        """Coordinates of v in the canonical basis, or None when v is outside."""
        if len(v) != self.ambient_dim:
            raise AmbientMismatch(f"vector of length {len(v)} in ambient {self.ambient_dim}")
        coords = tuple(v[p] for p in self.pivots)
        rebuilt = vec_combine(coords, self.basis, self.ambient_dim, self.field)
        return coords if rebuilt == tuple(v) else None

    def contains(self, v: Vector) -> bool:
        return self.coordinates(v) is not None

    def includes(self, other: "Subspace") -> bool:
        _same_ambient(self, other)
        return all(self.contains(b) for b in other.basis)

    def elements(self) -> Iterator[Vector]:
        for coeffs in itertools.product(self.field.elements(), repeat=self.dim):
            yield vec_combine(coeffs, self.basis, self.ambient_dim, self.field)

    def complement_equations(self) -> list[Vector]:
        """Rows c with c.v = 0 exactly for v in the subspace."""
        if self.is_zero:
            return [self.field.unit_vector(self.ambient_dim, i) for i in range(self.ambient_dim)]
        return self.basis_matrix().nullspace()

    def to_json(self) -> dict:
        return {"ambient": self.ambient_dim, "basis": [[self.field.to_str(a) for a in r] for r in self.basis]}

    def __repr__(self) -> str:
        rows = ", ".join("(" + ",".join(self.field.to_str(a) for a in r) + ")" for r in self.basis)
        return f"span{{{rows}}}<{self.field.label}^{self.ambient_dim}>"


@lru_cache(maxsize=65536)
def _span(field: FieldSpec, ambient_dim: int, rows: tuple) -> Subspace:
    nonzero = tuple(r for r in rows if not vec_is_zero(r))
    if not nonzero:
        return Subspace.zero(field, ambient_dim)
    reduced, pivots = rref_with_pivots(Matrix(field, len(nonzero), ambient_dim, nonzero))
    return Subspace(field, ambient_dim, reduced.entries[: len(pivots)], pivots)


def _same_ambient(a: Subspace, b: Subspace) -> None:
    if a.ambient_dim != b.ambient_dim or a.field != b.field:
        raise AmbientMismatch(f"{a!r} and {b!r} live in different spaces")


@lru_cache(maxsize=65536)
def subspace_sum(a: Subspace, b: Subspace) -> Subspace:
    _same_ambient(a, b)
    if a.includes(b):
        return a
    if b.includes(a):
        return b
    return Subspace.span(a.field, a.ambient_dim, a.basis + b.basis)


@lru_cache(maxsize=65536)
def intersect(a: Subspace, b: Subspace) -> Subspace:
    """Solve x.A = y.B through the left kernel of the stacked bases."""
    _same_ambient(a, b)
    if a.is_zero or b.is_zero:
        return Subspace.zero(a.field, a.ambient_dim)
    if a.includes(b):
        return b
    if b.includes(a):
        return a
    stacked = Matrix(a.field, a.dim + b.dim, a.ambient_dim, a.basis + tuple(vec_scale(-a.field.one, r) for r in b.basis))
    kernel = stacked.transpose().nullspace()
    vectors = [vec_combine(k[: a.dim], a.basis, a.ambient_dim, a.field) for k in kernel]
    return Subspace.span(a.field, a.ambient_dim, vectors)


def kernel(m: Matrix) -> Subspace:
    return Subspace.span(m.field, m.cols, m.nullspace())


@lru_cache(maxsize=65536)
def preimage(m: Matrix, target: Subspace) -> Subspace:
    """{v | m v in target}; m is target.ambient_dim x n."""
    if m.rows != target.ambient_dim:
        raise AmbientMismatch(f"map with {m.rows} rows cannot land in ambient {target.ambient_dim}")
    if target.is_full:
        return Subspace.full(m.field, m.cols)
    equations = target.complement_equations()
    eqs = Matrix(m.field, len(equations), m.rows, tuple(equations))
    return kernel(eqs.matmul(m))


def image(m: Matrix, source: Subspace) -> Subspace:
    return Subspace.span(m.field, m.rows, [m.matvec(b) for b in source.basis])


def membership(v: Vector, s: Subspace) -> bool:
    return s.contains(v)


def solve(m: Matrix, b: Vector) -> Optional[Vector]:
    """One solution x of m x = b, or None."""
    if m.rows != len(b):
        raise AmbientMismatch("right-hand side length mismatch")
    augmented = Matrix(m.field, m.rows, m.cols + 1, tuple(r + (c,) for r, c in zip(m.entries, b)))
    reduced, pivots = rref_with_pivots(augmented)
    if m.cols in pivots:
        return None
    x = list(m.field.zero_vector(m.cols))
    for row, p in zip(reduced.entries, pivots):
        x[p] = row[m.cols]
    return tuple(x)


def enumerate_subspaces(ambient_dim: int, field: FieldSpec, cap: int = 4) -> Iterator[Subspace]:
    """
    Every subspace of F_p^n exactly once, in canonical form.

    Walks pivot sets by dimension and fills the free (non-pivot, right of pivot) entries with all
    field values, so each yielded basis is already reduced row-echelon.
    """
    if not field.is_finite:
        raise UnsupportedField("subspaces of Q^n cannot be enumerated")
    if ambient_dim > cap:
        raise EnumerationBoundExceeded(f"ambient dimension {ambient_dim} exceeds cap {cap}")
    elements = field.elements()
    for k in range(ambient_dim + 1):
        for pivots in itertools.combinations(range(ambient_dim), k):
            free = [
                (i, j)
                for i, p in enumerate(pivots)
                for j in range(p + 1, ambient_dim)
                if j not in pivots
            ]
            for values in itertools.product(elements, repeat=len(free)):
                rows = [[field.zero] * ambient_dim for _ in range(k)]
                for i, p in enumerate(pivots):
                    rows[i][p] = field.one
                for (i, j), value in zip(free, values):
                    rows[i][j] = value
                yield Subspace(field, ambient_dim, tuple(tuple(r) for r in rows), pivots)


def gaussian_binomial_total(n: int, q: int) -> int:
    """Number of subspaces of F_q^n."""
    total = 0
    for k in range(n + 1):
        num, den = 1, 1
        for i in range(k):
            num *= q ** (n - i) - 1
            den *= q ** (i + 1) - 1
        total += num // den
    return total


def vector_to_json(field: FieldSpec, v: Vector) -> list[str]:
    return [field.to_str(a) for a in v]
