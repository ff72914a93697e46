"""
Partial endomorphisms PEnd(V), partial derivations PDer(A) and the class-restricted PDer_A(A).

A partial map stores its domain canonically and the images of the canonical domain basis, so two
maps are equal exactly when their domains and those images agree.
"""

from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass
from functools import cached_property, lru_cache
from typing import Any, Optional, Sequence

from lisa.linalg.algebra import StructAlgebra, derivation_space, ideals, is_derivation
from lisa.linalg.exactalg import (
    FieldSpec,
    Matrix,
    Subspace,
    Vector,
    enumerate_subspaces,
    intersect,
    preimage,
    subspace_sum,
    vec_add,
    vec_combine,
    vec_scale,
    vector_to_json,
)
from lisa.semialgebra.carrier import Carrier, MinusCarrier
from lisa.semialgebra.isv_core import Axiom, run_axioms, run_suites
from lisa.utils.config import RunConfig
from lisa.utils.errors import (
    AmbientMismatch,
    EnumerationBoundExceeded,
    LeibnizViolation,
    NotAnIdeal,
    NotSubalgebra,
    PreconditionFailure,
    UnsupportedField,
    ValidationFailure,
)
from lisa.utils.objects import CheckReport, PartialMapModel
from lisa.utils.utils import parse_model, subspace_from_model

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class PartialEndo:
    field: FieldSpec
    n: int
    domain: Subspace
    images: tuple

    def __post_init__(self) -> None:
        if self.domain.ambient_dim != self.n or len(self.images) != self.domain.dim:
            raise AmbientMismatch("one image per canonical domain basis vector is required")

    def __hash__(self) -> int:
        return self._hash

    @cached_property
    def _hash(self) -> int:
        return hash((self.n, self.domain, self.images))

    def action(self) -> Matrix:
        return Matrix.from_columns(self.field, self.images, self.n)

    def apply(self, v: Vector) -> Vector:
        coords = self.domain.coordinates(v)
        if coords is None:
            raise AmbientMismatch(f"{v} lies outside the domain {self.domain!r}")
        return vec_combine(coords, self.images, self.n, self.field)

    def restrict(self, k: Subspace) -> "PartialEndo":
        if not self.domain.includes(k):
            raise AmbientMismatch(f"{k!r} is not inside {self.domain!r}")
        return PartialEndo(self.field, self.n, k, tuple(self.apply(b) for b in k.basis))

    def preimage(self, target: Subspace) -> Subspace:
        """{x in dom | phi(x) in target}, as a subspace of the ambient space."""
        coords = preimage(self.action(), target)
        return Subspace.span(
            self.field, self.n, [vec_combine(c, self.domain.basis, self.n, self.field) for c in coords.basis]
        )

    def image(self) -> Subspace:
        return Subspace.span(self.field, self.n, self.images)

    def to_json(self) -> dict:
        return {
            "domain": self.domain.to_json(),
            "action": [vector_to_json(self.field, r) for r in self.action().entries],
        }

    def __repr__(self) -> str:
        imgs = ", ".join("(" + ",".join(self.field.to_str(a) for a in v) + ")" for v in self.images)
        return f"PartialEndo({self.domain!r} -> [{imgs}])"


def _same(phi1: PartialEndo, phi2: PartialEndo) -> None:
    if phi1.n != phi2.n or phi1.field != phi2.field:
        raise AmbientMismatch("partial maps on different spaces")


def pe_total(m: Matrix) -> PartialEndo:
    full = Subspace.full(m.field, m.cols)
    return PartialEndo(m.field, m.cols, full, tuple(m.columns()))


def pe_identity(k: Subspace) -> PartialEndo:
    return PartialEndo(k.field, k.ambient_dim, k, k.basis)


def pe_zero(k: Subspace) -> PartialEndo:
    return PartialEndo(k.field, k.ambient_dim, k, tuple(k.field.zero_vector(k.ambient_dim) for _ in k.basis))


@lru_cache(maxsize=200_000)
def pe_add(phi1: PartialEndo, phi2: PartialEndo) -> PartialEndo:
    _same(phi1, phi2)
    k = intersect(phi1.domain, phi2.domain)
    return PartialEndo(phi1.field, phi1.n, k, tuple(vec_add(phi1.apply(b), phi2.apply(b)) for b in k.basis))


def pe_smul(alpha, phi: PartialEndo) -> PartialEndo:
    return PartialEndo(phi.field, phi.n, phi.domain, tuple(vec_scale(alpha, v) for v in phi.images))


def pe_neg(phi: PartialEndo) -> PartialEndo:
    return pe_smul(-phi.field.one, phi)


@lru_cache(maxsize=200_000)
def pe_compose(phi1: PartialEndo, phi2: PartialEndo) -> PartialEndo:
    """phi1 after phi2 on phi2^-1(K1)."""
    _same(phi1, phi2)
    k = phi2.preimage(phi1.domain)
    return PartialEndo(phi1.field, phi1.n, k, tuple(phi1.apply(phi2.apply(b)) for b in k.basis))


def pe_zero_of(phi: PartialEndo) -> PartialEndo:
    return pe_zero(phi.domain)


def pe_leq(phi1: PartialEndo, phi2: PartialEndo) -> bool:
    """phi1 is a restriction of phi2."""
    return phi2.domain.includes(phi1.domain) and all(
        phi2.apply(b) == v for b, v in zip(phi1.domain.basis, phi1.images)
    )


def pe_bracket(phi1: PartialEndo, phi2: PartialEndo) -> PartialEndo:
    return pe_add(pe_compose(phi1, phi2), pe_neg(pe_compose(phi2, phi1)))


def pe_from_json(field: FieldSpec, obj: Any) -> PartialEndo:
    model = parse_model(obj, PartialMapModel, "partial map")
    n = model.domain.ambient
    domain = subspace_from_model(field, model.domain)
    action = [field.vec(r) for r in model.action]
    columns = tuple(tuple(row[j] for row in action) for j in range(len(action[0]) if action else 0))
    if len(columns) != domain.dim:
        raise AmbientMismatch("action needs one column per canonical domain basis vector")
    return PartialEndo(field, n, domain, columns)


def random_subspace(field: FieldSpec, n: int, rng, bound: int = 3) -> Subspace:
    k = int(rng.integers(0, n + 1))
    vectors = [tuple(field(int(a)) for a in rng.integers(-bound, bound + 1, size=n)) for _ in range(k)]
    return Subspace.span(field, n, vectors)


def random_vector(field: FieldSpec, n: int, rng, bound: int = 3) -> Vector:
    if field.is_finite:
        return tuple(field(int(a)) for a in rng.integers(0, field.characteristic, size=n))
    return tuple(field(int(a)) for a in rng.integers(-bound, bound + 1, size=n))


class PEndCarrier(Carrier):
    """PEnd(F^n) with composition; a right distributive associative inverse semialgebra."""

    traits = frozenset({"associative", "right_distributive"})

    def __init__(self, field: FieldSpec, n: int, cap: int = 2) -> None:
        self.field = field
        self.n = n
        self.cap = cap
        self.name = f"PEnd({field.label}^{n})"

    def add(self, x, y):
        return pe_add(x, y)

    def neg(self, x):
        return pe_neg(x)

    def smul(self, alpha, x):
        return pe_smul(alpha, x)

    def mul(self, x, y):
        return pe_compose(x, y)

    def zero(self):
        return pe_total(Matrix.zeros(self.field, self.n, self.n))

    def zero_of(self, x):
        return pe_zero_of(x)

    def leq(self, x, y) -> bool:
        return pe_leq(x, y)

    @property
    def is_finite(self) -> bool:
        return self.field.is_finite

    def elements(self) -> list:
        if not self.field.is_finite:
            raise UnsupportedField("PEnd over Q is infinite")
        if self.n > self.cap:
            raise EnumerationBoundExceeded(f"PEnd enumeration capped at ambient dim {self.cap}")
        vectors = list(self.field.vectors(self.n))
        out = []
        for k in enumerate_subspaces(self.n, self.field, self.cap):
            for images in itertools.product(vectors, repeat=k.dim):
                out.append(PartialEndo(self.field, self.n, k, tuple(images)))
        return out

    def sample(self, rng):
        k = random_subspace(self.field, self.n, rng)
        return PartialEndo(self.field, self.n, k, tuple(random_vector(self.field, self.n, rng) for _ in k.basis))

    def describe(self, x) -> Any:
        return x.to_json()

    def parse(self, obj: Any):
        return pe_from_json(self.field, obj)


@dataclass(frozen=True)
class PartialDerivation:
    base: StructAlgebra
    inner: PartialEndo

    @property
    def domain(self) -> Subspace:
        return self.inner.domain

    def apply(self, v: Vector) -> Vector:
        return self.inner.apply(v)


def validate_pder(base: StructAlgebra, inner: PartialEndo) -> PartialDerivation:
    if inner.n != base.dim or inner.field != base.field:
        raise AmbientMismatch("partial map and algebra live in different spaces")
    if not base.is_subalgebra(inner.domain):
        raise NotSubalgebra(f"{inner.domain!r} is not a subalgebra", {"domain": inner.domain.to_json()})
    bad = is_derivation(base, inner.domain, inner.images)
    if bad is not None:
        i, j = bad
        raise LeibnizViolation(
            "Leibniz rule fails",
            {
                "x": vector_to_json(base.field, inner.domain.basis[i]),
                "y": vector_to_json(base.field, inner.domain.basis[j]),
            },
        )
    return PartialDerivation(base, inner)


def make_pder(base: StructAlgebra, domain: Subspace, action: Matrix) -> PartialDerivation:
    """Validated partial derivation; action columns are images of the canonical domain basis."""
    if action.cols != domain.dim or action.rows != base.dim:
        raise AmbientMismatch("action matrix shape does not match the domain")
    return validate_pder(base, PartialEndo(base.field, base.dim, domain, tuple(action.columns())))


def _same_base(d1: PartialDerivation, d2: PartialDerivation) -> None:
    if d1.base != d2.base:
        raise AmbientMismatch("partial derivations of different algebras")


def pd_add(d1: PartialDerivation, d2: PartialDerivation) -> PartialDerivation:
    _same_base(d1, d2)
    return validate_pder(d1.base, pe_add(d1.inner, d2.inner))


def pd_smul(alpha, d: PartialDerivation) -> PartialDerivation:
    return validate_pder(d.base, pe_smul(alpha, d.inner))


def pd_bracket(d1: PartialDerivation, d2: PartialDerivation) -> PartialDerivation:
    """phi1 phi2 - phi2 phi1 on phi1^-1(K2) cap phi2^-1(K1); re-validated as a derivation."""
    _same_base(d1, d2)
    return validate_pder(d1.base, pe_bracket(d1.inner, d2.inner))


def subalgebra_closure(alg: StructAlgebra, s: Subspace) -> Subspace:
    while True:
        grown = subspace_sum(s, alg.product_space(s, s))
        if grown == s:
            return s
        s = grown


class PDerCarrier(Carrier):
    """
    PDer(A) inside PEnd(A)^-: elements are the inner partial maps, the product is the
    commutator bracket.
    """

    bracket = True
    traits = frozenset({"sminus"})

    def __init__(self, base: StructAlgebra, cap: int = 3) -> None:
        self.base = base
        self.field = base.field
        self.n = base.dim
        self.cap = cap
        self.name = f"PDer({base.label})"

    def add(self, x, y):
        return pe_add(x, y)

    def neg(self, x):
        return pe_neg(x)

    def smul(self, alpha, x):
        return pe_smul(alpha, x)

    def mul(self, x, y):
        return pe_bracket(x, y)

    def zero(self):
        return pe_zero(Subspace.full(self.field, self.n))

    def zero_of(self, x):
        return pe_zero_of(x)

    def leq(self, x, y) -> bool:
        return pe_leq(x, y)

    def domains(self) -> list[Subspace]:
        return [k for k in enumerate_subspaces(self.n, self.field, self.cap) if self.base.is_subalgebra(k)]

    @property
    def is_finite(self) -> bool:
        return self.field.is_finite

    def elements(self) -> list:
        if not self.field.is_finite:
            raise UnsupportedField("PDer over Q is infinite")
        out = []
        for k in self.domains():
            basis = derivation_space(self.base, k)
            for coeffs in itertools.product(self.field.elements(), repeat=len(basis)):
                images = tuple(
                    vec_combine(coeffs, [d[t] for d in basis], self.n, self.field) for t in range(k.dim)
                )
                out.append(PartialEndo(self.field, self.n, k, images))
        logger.info("%s: %d partial derivations", self.name, len(out))
        return out

    def sample_domain(self, rng) -> Subspace:
        return subalgebra_closure(self.base, random_subspace(self.field, self.n, rng))

    def sample(self, rng):
        k = self.sample_domain(rng)
        basis = derivation_space(self.base, k)
        coeffs = [self.field(int(a)) for a in rng.integers(-3, 4, size=len(basis))]
        images = tuple(vec_combine(coeffs, [d[t] for d in basis], self.n, self.field) for t in range(k.dim))
        return PartialEndo(self.field, self.n, k, images)

    def describe(self, x) -> Any:
        return x.to_json()

    def parse(self, obj: Any):
        return validate_pder(self.base, pe_from_json(self.field, obj)).inner

    def wrap(self, x: PartialEndo) -> PartialDerivation:
        return PartialDerivation(self.base, x)


CLASSES = ("unital_assoc", "semisimple_lie", "idempotent")


def in_class(alg: StructAlgebra, cls: str) -> bool:
    if cls == "unital_assoc":
        return alg.flavor == "associative" and alg.find_unit() is not None
    if cls == "semisimple_lie":
        return alg.flavor == "lie" and alg.is_semisimple_lie()
    if cls == "idempotent":
        return alg.is_idempotent_algebra()
    raise UnsupportedField(f"class {cls!r} has no decision procedure")


class PDeClassCarrier(PDerCarrier):
    """PDer_A(A): partial derivations whose domains are ideals belonging to the class."""

    def __init__(self, base: StructAlgebra, cls: str, domains: Sequence[Subspace], cap: int = 3) -> None:
        super().__init__(base, cap)
        self.cls = cls
        self._domains = list(domains)
        self.traits = frozenset({"sminus", "semilattice"})
        self.name = f"PDer_{cls}({base.label})"

    def domains(self) -> list[Subspace]:
        return list(self._domains)

    def sample_domain(self, rng) -> Subspace:
        return self._domains[int(rng.integers(len(self._domains)))]


def pde_class_carrier(
    base: StructAlgebra, cls: str, domains: Optional[Sequence[Subspace]] = None, cap: int = 4
) -> PDeClassCarrier:
    """
    Over F_p the ideal domains are enumerated; over Q they must be supplied and default to
    {0, A}, which is the full list for simple algebras such as sl2.
    """
    if cls not in CLASSES:
        raise UnsupportedField(f"class {cls!r} has no decision procedure")
    if not in_class(base, cls):
        raise ValidationFailure(f"{base.label} is not in class {cls}")
    if domains is None:
        if base.field.is_finite:
            domains = ideals(base, cap)
        else:
            domains = [Subspace.zero(base.field, base.dim), Subspace.full(base.field, base.dim)]
    chosen = []
    for k in domains:
        if not base.is_ideal(k):
            raise NotAnIdeal(f"{k!r} is not an ideal", {"domain": k.to_json()})
        if in_class(base.subalgebra(k), cls):
            chosen.append(k)
    logger.info("%s class %s: %d ideal domains", base.label, cls, len(chosen))
    return PDeClassCarrier(base, cls, chosen, cap)


def _domains_coincide(c: Carrier, phi1: PartialEndo, phi2: PartialEndo) -> bool:
    k = intersect(phi1.domain, phi2.domain)
    return (
        pe_add(phi1, phi2).domain
        == k
        == intersect(phi1.preimage(phi2.domain), phi2.preimage(phi1.domain))
        == pe_bracket(phi1, phi2).domain
    )


DOMAIN_COINCIDENCE = Axiom("pder_class.domains", (("phi1", "elem"), ("phi2", "elem")), _domains_coincide)


def check_domain_coincidence(c: PDeClassCarrier, config: Optional[RunConfig] = None) -> CheckReport:
    """dom(phi1+phi2) = K1 cap K2 = phi1^-1(K2) cap phi2^-1(K1) = dom([phi1,phi2])."""
    mode = "exhaustive" if c.is_finite else "sampled"
    return run_axioms(c, [DOMAIN_COINCIDENCE], config=config, mode=mode, tabulate=False)


def s_minus(c: Carrier, config: Optional[RunConfig] = None) -> MinusCarrier:
    """The carrier with bracket xy - yx, after checking its associative precondition."""
    if c.is_finite:
        report = run_suites(c, ["isv", "naisa", "associative", "right_distributive"], config=config)
        if not report.passed:
            raise PreconditionFailure(f"{c.name} is not a right distributive associative inverse semialgebra", report)
    elif not {"associative", "right_distributive"} <= set(c.traits):
        raise PreconditionFailure(f"{c.name} does not declare associativity and right distributivity")
    return MinusCarrier(c)


def restrict_to_subspace(eta: Matrix, ideal: Subspace) -> PartialEndo:
    """eta on D = I cap eta^-1(I), written in the coordinates of the canonical basis of I."""
    field, k = ideal.field, ideal.dim
    dom = intersect(ideal, pe_total(eta).preimage(ideal))
    coords = Subspace.span(field, k, [ideal.coordinates(b) for b in dom.basis])
    images = tuple(
        ideal.coordinates(eta.matvec(vec_combine(c, ideal.basis, ideal.ambient_dim, field))) for c in coords.basis
    )
    return PartialEndo(field, k, coords, images)


def lift_subspace(ideal: Subspace, inner: Subspace) -> Subspace:
    """A subspace given in coordinates of ideal, written back in the ambient space."""
    return Subspace.span(
        ideal.field, ideal.ambient_dim, [vec_combine(c, ideal.basis, ideal.ambient_dim, ideal.field) for c in inner.basis]
    )
