"""
The carrier contract every concrete inverse semivector space implements, plus the generic
wrappers built on top of it: tabulation, the minus bracket and plain algebras.
"""

from __future__ import annotations

import abc
import logging
from typing import Any, Hashable, Optional

from lisa.linalg.algebra import StructAlgebra
from lisa.linalg.exactalg import FieldSpec, vec_add, vector_to_json
from lisa.utils.errors import UnsupportedField, ValidationFailure

logger = logging.getLogger(__name__)

QQ_SCALAR_SEEDS = (0, 1, -1, 2)


class Carrier(abc.ABC):
    """
    An inverse semivector space: add / neg / smul, optionally a product `mul` (the bracket when
    `bracket` is set), optionally a global `zero`, and an element generator.
    """

    name: str = "carrier"
    field: FieldSpec
    bracket: bool = False
    traits: frozenset = frozenset()

    @abc.abstractmethod
    def add(self, x, y): ...

    @abc.abstractmethod
    def neg(self, x): ...

    @abc.abstractmethod
    def smul(self, alpha, x): ...

    def mul(self, x, y):
        raise NotImplementedError(f"{self.name} has no product")

    @property
    def has_mul(self) -> bool:
        return type(self).mul is not Carrier.mul

    def zero(self) -> Optional[Hashable]:
        return None

    @property
    def is_finite(self) -> bool:
        return False

    def elements(self) -> list:
        raise UnsupportedField(f"{self.name} cannot be enumerated")

    def sample(self, rng) -> Hashable:
        raise UnsupportedField(f"{self.name} has no sampler")

    def describe(self, x) -> Any:
        return repr(x)

    def parse(self, obj: Any) -> Hashable:
        raise NotImplementedError(f"{self.name} cannot parse elements")

    def zero_of(self, x):
        return self.add(x, self.neg(x))

    def leq(self, x, y) -> bool:
        return x == self.add(y, self.zero_of(x))

    def scalars(self) -> list:
        return self.field.elements()

    def sample_scalar(self, rng, bound: int = 7):
        if self.field.is_finite:
            return self.field(int(rng.integers(self.field.characteristic)))
        if rng.random() < 0.3:
            return self.field(QQ_SCALAR_SEEDS[int(rng.integers(len(QQ_SCALAR_SEEDS)))])
        num = int(rng.integers(-bound, bound + 1))
        den = int(rng.integers(1, bound + 1))
        return self.field(num) / self.field(den)

    def idempotents(self) -> list:
        seen = {}
        for x in self.elements():
            e = self.zero_of(x)
            seen.setdefault(e, None)
        return list(seen)


class Tabulated(Carrier):
    """
    A finite carrier re-indexed by integers with lazily filled operation tables, so exhaustive
    checks cost list lookups instead of rebuilding subspaces.
    """

    def __init__(self, base: Carrier) -> None:
        self.base = base
        self.name = base.name
        self.field = base.field
        self.bracket = base.bracket
        self.traits = base.traits
        self.items = list(base.elements())
        self.index = {x: i for i, x in enumerate(self.items)}
        n = len(self.items)
        self._add = [[None] * n for _ in range(n)]
        self._mul = [[None] * n for _ in range(n)]
        self._neg: list = [None] * n
        self._zero_of: list = [None] * n
        self._smul: dict = {}
        logger.info("tabulated %s: %d elements", base.name, n)

    def _id(self, x) -> int:
        try:
            return self.index[x]
        except KeyError:
            raise ValidationFailure(
                f"{self.base.name} is not closed under its operations",
                {"element": self.base.describe(x)},
            ) from None

    @property
    def is_finite(self) -> bool:
        return True

    @property
    def has_mul(self) -> bool:
        return self.base.has_mul

    def elements(self) -> list:
        return list(range(len(self.items)))

    def add(self, i, j):
        r = self._add[i][j]
        if r is None:
            r = self._id(self.base.add(self.items[i], self.items[j]))
            self._add[i][j] = r
        return r

    def mul(self, i, j):
        r = self._mul[i][j]
        if r is None:
            r = self._id(self.base.mul(self.items[i], self.items[j]))
            self._mul[i][j] = r
        return r

    def neg(self, i):
        r = self._neg[i]
        if r is None:
            r = self._id(self.base.neg(self.items[i]))
            self._neg[i] = r
        return r

    def smul(self, alpha, i):
        key = (alpha, i)
        r = self._smul.get(key)
        if r is None:
            r = self._id(self.base.smul(alpha, self.items[i]))
            self._smul[key] = r
        return r

    def zero_of(self, i):
        r = self._zero_of[i]
        if r is None:
            r = self.add(i, self.neg(i))
            self._zero_of[i] = r
        return r

    def zero(self):
        z = self.base.zero()
        return None if z is None else self._id(z)

    def describe(self, i) -> Any:
        return self.base.describe(self.items[i])

    def element(self, i):
        return self.items[i]


class DerivedCarrier(Carrier):
    """Delegates the semivector structure to an inner carrier."""

    def __init__(self, inner: Carrier, name: str) -> None:
        self.inner = inner
        self.name = name
        self.field = inner.field

    def add(self, x, y):
        return self.inner.add(x, y)

    def neg(self, x):
        return self.inner.neg(x)

    def smul(self, alpha, x):
        return self.inner.smul(alpha, x)

    def zero(self):
        return self.inner.zero()

    @property
    def is_finite(self) -> bool:
        return self.inner.is_finite

    def elements(self) -> list:
        return self.inner.elements()

    def sample(self, rng):
        return self.inner.sample(rng)

    def describe(self, x) -> Any:
        return self.inner.describe(x)

    def parse(self, obj: Any):
        return self.inner.parse(obj)


class MinusCarrier(DerivedCarrier):
    """S^- : the same carrier with bracket xy - yx."""

    bracket = True

    def __init__(self, inner: Carrier) -> None:
        super().__init__(inner, f"{inner.name}^-")
        self.traits = frozenset((inner.traits & {"semilattice"}) | {"sminus"})

    def mul(self, x, y):
        return self.inner.add(self.inner.mul(x, y), self.inner.neg(self.inner.mul(y, x)))


class AlgebraCarrier(Carrier):
    """A plain algebra seen as an inverse semivector space whose only idempotent is 0."""

    def __init__(self, alg: StructAlgebra) -> None:
        self.alg = alg
        self.name = alg.label
        self.field = alg.field
        self.bracket = alg.flavor == "lie"

    def add(self, x, y):
        return vec_add(x, y)

    def neg(self, x):
        return tuple(-a for a in x)

    def smul(self, alpha, x):
        return tuple(alpha * a for a in x)

    def mul(self, x, y):
        return self.alg.multiply(x, y)

    def zero(self):
        return self.alg.zero()

    @property
    def is_finite(self) -> bool:
        return self.field.is_finite

    def elements(self) -> list:
        return list(self.field.vectors(self.alg.dim))

    def sample(self, rng):
        return tuple(self.sample_scalar(rng) for _ in range(self.alg.dim))

    def describe(self, x) -> Any:
        return vector_to_json(self.field, x)

    def parse(self, obj: Any):
        return self.field.vec(obj)
