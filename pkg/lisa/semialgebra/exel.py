"""
The Lie inverse semialgebra E(L) of pairs (A, a) with a in A, the premorphism tau: a -> (Fa, a),
and the linear extension of a premorphism rho: L -> S to E(L).

Premorphisms are either finite tables (L over F_p, one entry per point of L) or intensional rules
such as tau, restrictions of global actions, or composition with a Lie homomorphism.
"""

from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass
from typing import Any, Callable, Optional, Sequence

from lisa.linalg.algebra import (
    AlgebraHom,
    StructAlgebra,
    abelian,
    heisenberg,
    is_derivation,
    sl2,
    tensor_lie,
    truncated_poly,
)
from lisa.linalg.exactalg import (
    FieldSpec,
    Matrix,
    Subspace,
    Vector,
    enumerate_subspaces,
    intersect,
    subspace_sum,
    vec_add,
    vec_combine,
    vec_scale,
    vector_to_json,
)
from lisa.semialgebra.carrier import AlgebraCarrier, Carrier
from lisa.semialgebra.isv_core import (
    ELEM,
    NONZERO,
    SCALAR,
    SEMILATTICE_AXIOMS,
    SMINUS_AXIOMS,
    Axiom,
    SigmaData,
    check_lie_isa,
    run_axioms,
    run_suites,
    sigma_partition,
)
from lisa.semialgebra.pmaps import PDerCarrier, lift_subspace, random_subspace, restrict_to_subspace, validate_pder
from lisa.utils.config import RunConfig
from lisa.utils.errors import (
    AmbientMismatch,
    EnumerationBoundExceeded,
    MalformedInput,
    PreconditionFailure,
    UnsupportedField,
    ValidationFailure,
)
from lisa.utils.objects import AxiomVerdict, CheckReport, ClaimResult, ELElementModel, FixtureReport
from lisa.utils.utils import parse_model, subspace_from_model

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class ELElement:
    subspace: Subspace
    point: tuple

    def __post_init__(self) -> None:
        if not self.subspace.contains(self.point):
            raise ValidationFailure(
                "point must lie in the subspace",
                {"A": self.subspace.to_json(), "a": vector_to_json(self.subspace.field, self.point)},
            )

    def to_json(self) -> dict:
        return {"A": self.subspace.to_json(), "a": vector_to_json(self.subspace.field, self.point)}

    def __repr__(self) -> str:
        return f"({self.subspace!r}, ({','.join(self.subspace.field.to_str(x) for x in self.point)}))"


def tau(field: FieldSpec, a: Vector) -> ELElement:
    """a -> (Fa, a)."""
    a = tuple(a)
    return ELElement(Subspace.span(field, len(a), [a]), a)


def el_add(x: ELElement, y: ELElement) -> ELElement:
    return ELElement(subspace_sum(x.subspace, y.subspace), vec_add(x.point, y.point))


def el_smul(alpha, x: ELElement) -> ELElement:
    return ELElement(x.subspace, vec_scale(alpha, x.point))


def el_neg(x: ELElement) -> ELElement:
    return el_smul(-x.subspace.field.one, x)


def el_zero_of(x: ELElement) -> ELElement:
    return ELElement(x.subspace, x.subspace.field.zero_vector(x.subspace.ambient_dim))


def el_bracket(alg: StructAlgebra, x: ELElement, y: ELElement) -> ELElement:
    """[(A,a),(B,b)] = (A + B + F[a,b], [a,b])."""
    if x.subspace.ambient_dim != alg.dim or y.subspace.ambient_dim != alg.dim:
        raise AmbientMismatch(f"elements do not live over {alg.label}")
    c = alg.multiply(x.point, y.point)
    space = subspace_sum(subspace_sum(x.subspace, y.subspace), Subspace.span(alg.field, alg.dim, [c]))
    return ELElement(space, c)


def el_leq(x: ELElement, y: ELElement) -> bool:
    return x.point == y.point and x.subspace.includes(y.subspace)


class ELCarrier(Carrier):
    """E(L) over a Lie algebra L; enumerable over F_p up to the dimension cap."""

    bracket = True

    def __init__(self, alg: StructAlgebra, cap: int = 3) -> None:
        if alg.flavor != "lie":
            raise ValidationFailure(f"{alg.label} is not a Lie algebra")
        self.alg = alg
        self.field = alg.field
        self.cap = cap
        self.name = f"E({alg.label})"

    def add(self, x, y):
        return el_add(x, y)

    def neg(self, x):
        return el_neg(x)

    def smul(self, alpha, x):
        return el_smul(alpha, x)

    def mul(self, x, y):
        return el_bracket(self.alg, x, y)

    def zero(self):
        return ELElement(Subspace.zero(self.field, self.alg.dim), self.alg.zero())

    def zero_of(self, x):
        return el_zero_of(x)

    def leq(self, x, y) -> bool:
        return el_leq(x, y)

    @property
    def is_finite(self) -> bool:
        return self.field.is_finite

    def elements(self) -> list:
        if not self.field.is_finite:
            raise UnsupportedField("E(L) over Q is infinite")
        if self.alg.dim > self.cap:
            raise EnumerationBoundExceeded(f"E(L) is materialized for dim L <= {self.cap}")
        return [
            ELElement(a_space, point)
            for a_space in enumerate_subspaces(self.alg.dim, self.field, self.cap)
            for point in a_space.elements()
        ]

    def sample(self, rng):
        space = random_subspace(self.field, self.alg.dim, rng)
        coeffs = [self.sample_scalar(rng, 3) for _ in space.basis]
        return ELElement(space, vec_combine(coeffs, space.basis, self.alg.dim, self.field))

    def tau(self, a: Vector) -> ELElement:
        return tau(self.field, a)

    def describe(self, x) -> Any:
        return x.to_json()

    def parse(self, obj: Any):
        model = parse_model(obj, ELElementModel, "E(L) element")
        return ELElement(subspace_from_model(self.field, model.A), self.field.vec(model.a))


@dataclass
class Premorphism:
    source: StructAlgebra
    target: Carrier
    rule: Callable[[Vector], Any]
    name: str = "rho"
    table: Optional[dict] = None

    def __call__(self, x: Vector):
        return self.rule(tuple(x))

    @classmethod
    def from_table(cls, source: StructAlgebra, target: Carrier, table: dict, name: str = "rho") -> "Premorphism":
        if not source.field.is_finite:
            raise UnsupportedField("premorphism tables need L over a prime field")
        for v in source.field.vectors(source.dim):
            if v not in table:
                raise MalformedInput(
                    f"table has no entry for a point of {source.label}", {"x": vector_to_json(source.field, v)}
                )
        frozen = dict(table)
        return cls(source, target, frozen.__getitem__, name, frozen)


def tau_premorphism(alg: StructAlgebra, cap: int = 3) -> Premorphism:
    el = ELCarrier(alg, cap)
    return Premorphism(alg, el, el.tau, "tau")


def compose_with_hom(rho: Premorphism, hom: AlgebraHom) -> Premorphism:
    """rho after a Lie homomorphism into its source."""
    if hom.target != rho.source:
        raise AmbientMismatch("hom does not land in the premorphism source")
    return Premorphism(hom.source, rho.target, lambda x: rho(hom.apply(x)), f"{rho.name}.hom")


def premorphism_axioms(rho: Premorphism, strong: bool = False) -> list[Axiom]:
    t, alg = rho.target, rho.source
    xy = (("x", ELEM), ("y", ELEM))
    axioms = [
        Axiom(
            "premorphism.additive",
            xy,
            lambda c, x, y: t.leq(t.add(rho(x), rho(y)), rho(vec_add(x, y))),
        ),
        Axiom(
            "premorphism.bracket",
            xy,
            lambda c, x, y: t.leq(t.mul(rho(x), rho(y)), rho(alg.multiply(x, y))),
        ),
        Axiom(
            "premorphism.scale",
            (("alpha", NONZERO), ("x", ELEM)),
            lambda c, a, x: rho(vec_scale(a, x)) == t.smul(a, rho(x)),
        ),
        Axiom("premorphism.zero_bound", (("x", ELEM),), lambda c, x: t.leq(t.zero_of(rho(x)), rho(alg.zero()))),
    ]
    if t.zero() is not None:
        axioms += [
            Axiom("premorphism.unit", (), lambda c: rho(alg.zero()) == t.zero()),
            Axiom(
                "premorphism.equality",
                xy,
                lambda c, x, y: t.add(rho(x), rho(y)) == t.add(rho(vec_add(x, y)), t.zero_of(rho(y))),
            ),
        ]
    if strong:
        axioms.append(
            Axiom(
                "premorphism.strong",
                xy,
                lambda c, x, y: t.mul(rho(x), rho(y))
                == t.add(rho(alg.multiply(x, y)), t.zero_of(t.add(rho(x), rho(y)))),
            )
        )
    return axioms


def check_premorphism(
    rho: Premorphism, config: Optional[RunConfig] = None, strong: bool = False, mode: str = "auto"
) -> CheckReport:
    """Exhaustive over L when L is over F_p, sampled otherwise."""
    source = AlgebraCarrier(rho.source)
    return run_axioms(
        source,
        premorphism_axioms(rho, strong),
        subject=f"{rho.name}: {rho.source.label} -> {rho.target.name}",
        config=config,
        mode=mode,
        tabulate=False,
    )


def is_strong(rho: Premorphism, config: Optional[RunConfig] = None) -> bool:
    return check_premorphism(rho, config, strong=True).verdict("premorphism.strong").verdict == "pass"


class ExtendedPremorphism:
    """(A, a) -> inf E(rho(A)) + rho(a), the infimum taken over the canonical basis of A."""

    def __init__(self, rho: Premorphism, el: ELCarrier) -> None:
        self.rho = rho
        self.el = el
        self.target = rho.target

    def inf(self, generators: Sequence[Vector]):
        t = self.target
        acc = t.zero()
        for x in generators:
            acc = t.add(acc, t.zero_of(self.rho(x)))
        return acc

    def inf_of(self, space: Subspace):
        return self.inf(space.basis)

    def __call__(self, x: ELElement):
        return self.target.add(self.inf_of(x.subspace), self.rho(x.point))


def extend_premorphism(rho: Premorphism, config: Optional[RunConfig] = None, cap: int = 3) -> ExtendedPremorphism:
    """
    Build rho~ after checking that the target has a zero and satisfies 0_[x,y] = [0_x,y] + [x,0_y]
    (declared by the carrier, or checked exhaustively when it is finite).
    """
    t = rho.target
    if t.zero() is None:
        raise PreconditionFailure(f"{t.name} has no zero")
    if not t.traits & {"sminus", "semilattice"}:
        if not t.is_finite:
            raise PreconditionFailure(f"{t.name} does not declare 0_[x,y] = [0_x,y] + [x,0_y]")
        report = run_suites(t, ["sminus"], config=config)
        if not report.passed:
            raise PreconditionFailure(f"{t.name} violates 0_[x,y] = [0_x,y] + [x,0_y]", report)
    return ExtendedPremorphism(rho, ELCarrier(rho.source, cap))


def _alternative_generators(space: Subspace) -> list[list[Vector]]:
    field, n = space.field, space.ambient_dim
    basis = list(space.basis)
    redundant = vec_combine([field.one] * len(basis), basis, n, field)
    out = [basis + [redundant]]
    if len(basis) >= 2:
        out.append([vec_add(basis[0], basis[1])] + basis[1:])
    return out


def extension_axioms(ext: ExtendedPremorphism) -> list[Axiom]:
    t, rho, el = ext.target, ext.rho, ext.el
    xy = (("x", ELEM), ("y", ELEM))

    def moreover(c, x, y):
        lhs = t.mul(ext(x), ext(y))
        rhs = t.add(
            t.add(ext(el.mul(x, y)), t.mul(rho(x.point), ext.inf_of(y.subspace))),
            t.mul(ext.inf_of(x.subspace), rho(y.point)),
        )
        return lhs == rhs

    return [
        Axiom("extension.unique", (("x", ELEM),), lambda c, x: ext(el.tau(x.point)) == rho(x.point)),
        Axiom("extension.moreover", xy, moreover),
        Axiom(
            "extension.generators",
            (("x", ELEM),),
            lambda c, x: all(ext.inf(g) == ext.inf_of(x.subspace) for g in _alternative_generators(x.subspace)),
        ),
        Axiom("extension.additive", xy, lambda c, x, y: ext(el.add(x, y)) == t.add(ext(x), ext(y))),
        Axiom("extension.scale", (("alpha", SCALAR), ("x", ELEM)), lambda c, a, x: ext(el.smul(a, x)) == t.smul(a, ext(x))),
        Axiom(
            "extension.inf_additive",
            xy,
            lambda c, x, y: ext.inf_of(subspace_sum(x.subspace, y.subspace))
            == t.add(ext.inf_of(x.subspace), ext.inf_of(y.subspace)),
        ),
        Axiom("extension.homomorphism", xy, lambda c, x, y: t.mul(ext(x), ext(y)) == ext(el.mul(x, y))),
    ]


def check_uniqueness(ext: ExtendedPremorphism, cap: int = 250_000) -> AxiomVerdict:
    """
    Every linear psi: E(L) -> S with psi tau = rho equals rho~. Linearity forces
    psi(A, a) = psi(A, 0) + rho(a) with psi(A, 0) idempotent, so the candidates are the
    assignments of an idempotent to each nonzero subspace.
    """
    el, t, rho = ext.el, ext.target, ext.rho
    axiom, mode = "extension.uniqueness", "exhaustive"
    if not (el.is_finite and t.is_finite):
        return AxiomVerdict(axiom=axiom, mode=mode, verdict="skipped", note="needs finite E(L) and target")
    spaces = [s for s in enumerate_subspaces(el.alg.dim, el.field, el.cap) if not s.is_zero]
    try:
        idems = t.idempotents()
    except EnumerationBoundExceeded as err:
        return AxiomVerdict(axiom=axiom, mode=mode, verdict="skipped", note=str(err))
    total = len(idems) ** len(spaces)
    if total > cap:
        return AxiomVerdict(axiom=axiom, mode=mode, verdict="skipped", note=f"{total} candidates exceed cap {cap}")
    elements = el.elements()
    scalars = el.field.elements()
    expected = {x: ext(x) for x in elements}
    linear = 0
    for choice in itertools.product(idems, repeat=len(spaces)):
        at = dict(zip(spaces, choice))
        values = {x: rho(x.point) if x.subspace.is_zero else t.add(at[x.subspace], rho(x.point)) for x in elements}
        if any(values[el.tau(x.point)] != rho(x.point) for x in elements):
            continue
        if any(values[el.add(x, y)] != t.add(values[x], values[y]) for x in elements for y in elements):
            continue
        if any(values[el.smul(a, x)] != t.smul(a, values[x]) for a in scalars for x in elements):
            continue
        linear += 1
        for x in elements:
            if values[x] != expected[x]:
                return AxiomVerdict(
                    axiom=axiom,
                    mode=mode,
                    verdict="fail",
                    instances=total,
                    counterexample={"x": el.describe(x), "psi": t.describe(values[x]), "extension": t.describe(expected[x])},
                )
    if linear == 0:
        return AxiomVerdict(axiom=axiom, mode=mode, verdict="fail", instances=total, note="the extension itself is not linear")
    return AxiomVerdict(axiom=axiom, mode=mode, verdict="pass", instances=total)


def check_extension(
    ext: ExtendedPremorphism, config: Optional[RunConfig] = None, mode: str = "auto", uniqueness: bool = True
) -> CheckReport:
    """
    Extension laws over E(L). The homomorphism law is only a theorem for targets that are
    semilattices of Lie algebras; elsewhere a failure is reported as "fail (expected)".
    """
    config = config or RunConfig()
    report = run_axioms(
        ext.el,
        extension_axioms(ext),
        subject=f"{ext.rho.name}~: {ext.el.name} -> {ext.target.name}",
        config=config,
        mode=mode,
        tabulate=False,
    )
    if "semilattice" not in ext.target.traits:
        report = report.model_copy(
            update={
                "verdicts": [
                    v.model_copy(update={"verdict": "fail (expected)", "note": "target is not a semilattice of Lie algebras"})
                    if v.axiom == "extension.homomorphism" and v.verdict == "fail"
                    else v
                    for v in report.verdicts
                ]
            }
        )
    if uniqueness and report.mode == "exhaustive":
        verdict = check_uniqueness(ext, config.dim_caps.hom_candidates)
        report = report.model_copy(update={"verdicts": report.verdicts + [verdict]})
    return report


@dataclass
class ELSigmaPartition:
    sigma: SigmaData
    by_point: dict
    agrees: bool
    maxima_are_tau: bool


def sigma_classes_el(alg: StructAlgebra, cap: int = 3) -> ELSigmaPartition:
    """Sigma classes of E(L) from the generic definition, compared with the classes a = b."""
    el = ELCarrier(alg, cap)
    sigma = sigma_partition(el)
    generic = {frozenset(sigma.element(i) for i in cls) for cls in sigma.classes}
    by_point: dict = {}
    for x in el.elements():
        by_point.setdefault(x.point, []).append(x)
    analytic = {frozenset(xs) for xs in by_point.values()}
    maxima_are_tau = all(
        m is not None and sigma.element(m) == el.tau(sigma.element(m).point) for m in sigma.maxima.values()
    )
    logger.info("%s: %d sigma classes, analytic agreement %s", el.name, len(sigma.classes), generic == analytic)
    return ELSigmaPartition(sigma, by_point, generic == analytic, maxima_are_tau)


def claim(name: str, holds: bool, **detail) -> ClaimResult:
    return ClaimResult(claim=name, status="confirmed" if holds else "refuted", detail=detail)


def heisenberg_fixture(field: FieldSpec, config: Optional[RunConfig] = None) -> FixtureReport:
    """E(heisenberg) breaks the semilattice identity: 0_[x,y] = (L, 0) while 0_{x+y} = (A+B, 0)."""
    if field.characteristic == 2:
        raise UnsupportedField("the heisenberg fixture needs characteristic other than 2")
    alg = heisenberg(field)
    el = ELCarrier(alg)
    a, b, c = (alg.basis_vector(i) for i in range(3))
    x, y = el.tau(a), el.tau(b)
    logger.info("1. x = (Fa, a), y = (Fb, b) in %s", el.name)
    bracket = el.mul(x, y)
    full = Subspace.full(field, 3)
    a_plus_b = subspace_sum(x.subspace, y.subspace)
    claims = [
        claim("bracket", bracket == ELElement(full, c), value=el.describe(bracket)),
        claim(
            "0_{[x,y]} != 0_{x+y}",
            el.zero_of(bracket) == ELElement(full, alg.zero()) != ELElement(a_plus_b, alg.zero()),
            zero_of_bracket=el.describe(el.zero_of(bracket)),
            zero_of_sum=el.describe(el.zero_of(el.add(x, y))),
        ),
    ]
    logger.info("2. checking the semilattice identity and 0_[x,y] = [0_x,y] + [x,0_y] on x, y")
    identity = [a for a in SEMILATTICE_AXIOMS if a.id == "semilattice.identity"]
    semilattice = run_axioms(el, identity, config=config, elements=[x, y], mode="listed")
    sminus = run_axioms(el, SMINUS_AXIOMS, config=config, elements=[x, y], mode="listed")
    claims.append(claim("semilattice_identity_fails", not semilattice.passed))
    claims.append(claim("sminus_fails", not sminus.passed))

    logger.info("3. abelian control")
    flat = ELCarrier(abelian(3, field))
    fx, fy = flat.tau(a), flat.tau(b)
    claims.append(claim("abelian_control", flat.zero_of(flat.mul(fx, fy)) == flat.zero_of(flat.add(fx, fy))))

    listed = [x, y, el.tau(c), el.zero(), el.add(x, y), bracket]
    lie = check_lie_isa(el, config=config, elements=listed, mode="listed")
    return FixtureReport(
        name=f"heisenberg({field.label})",
        claims=claims,
        checks=[lie],
        config=(config or RunConfig()).model_dump(),
    )


def _scaled(m: Matrix, alpha) -> Matrix:
    return Matrix(m.field, m.rows, m.cols, tuple(vec_scale(alpha, r) for r in m.entries))


def jacobson_derivation(field: FieldSpec, s_dim: int, p: int) -> Matrix:
    """d(s x z^i) = i s x z^(i-1) on S x F_p[z]/(z^p), basis index i_s * p + i."""
    n = s_dim * p
    columns = []
    for idx in range(n):
        i_s, i = divmod(idx, p)
        if i == 0:
            columns.append(field.zero_vector(n))
        else:
            columns.append(vec_scale(field(i), field.unit_vector(n, i_s * p + i - 1)))
    return Matrix.from_columns(field, columns, n)


def jacobson_fixture(p: int, simple: Optional[StructAlgebra] = None, config: Optional[RunConfig] = None) -> FixtureReport:
    """
    L = S x F_p[z]/(z^p) with the ideal I = S x span{z, ..., z^(p-1)} and d = d/dz. The
    restriction of the line F d to I is a premorphism whose extension is not a homomorphism:
    [d|I_d, d|I_d] lives on d^-1(I_d) cap I_d, which is smaller than I_d.
    """
    if p <= 2:
        raise UnsupportedField("the jacobson fixture needs a prime p > 2")
    field = FieldSpec.prime(p)
    s = simple or sl2(field)
    if s.field != field:
        raise AmbientMismatch("simple factor must live over F_p")
    name = f"jacobson(p={p}, S={s.label})"
    if not s.derived_subspace().is_full:
        logger.info("%s: S is not perfect, fixture inapplicable", name)
        return FixtureReport(
            name=name,
            claims=[ClaimResult(claim="not_a_homomorphism", status="inapplicable", detail={"reason": "S is not simple"})],
        )
    big = tensor_lie(s, truncated_poly(p))
    n = big.dim
    ideal = Subspace.span(field, n, [field.unit_vector(n, i_s * p + i) for i_s in range(s.dim) for i in range(1, p)])
    expected = Subspace.span(field, n, [field.unit_vector(n, i_s * p + i) for i_s in range(s.dim) for i in range(2, p)])
    d = jacobson_derivation(field, s.dim, p)
    logger.info("1. L = %s, dim %d; I has dim %d", big.label, n, ideal.dim)
    claims = [
        claim("ideal", big.is_ideal(ideal)),
        claim("derivation", is_derivation(big, Subspace.full(field, n), d.columns()) is None),
    ]

    logger.info("2. restricting F d to I")
    ideal_alg = big.subalgebra(ideal)
    target = PDerCarrier(ideal_alg)
    line = abelian(1, field)

    def restriction(x: Vector):
        return validate_pder(ideal_alg, restrict_to_subspace(_scaled(d, x[0]), ideal)).inner

    rho = Premorphism(line, target, restriction, "restriction of F d")
    premorphism = check_premorphism(rho, config)
    rho_d = rho((field.one,))
    i_d = lift_subspace(ideal, rho_d.domain)
    claims.append(claim("I_d", i_d == expected, dim=i_d.dim, expected_dim=expected.dim))
    claims.append(claim("non_global", i_d != ideal))

    logger.info("3. comparing [rho~(Fd,d), rho~(Fd,d)] with rho~([(Fd,d),(Fd,d)])")
    ext = extend_premorphism(rho, config)
    x = tau(field, (field.one,))
    lhs = target.mul(ext(x), ext(x))
    rhs = ext(el_bracket(line, x, x))
    quoted = intersect(rho_d.domain, rho_d.preimage(rho_d.domain))
    claims.append(claim("bracket_domain", lhs.domain == quoted, dim=quoted.dim))
    claims.append(
        claim(
            "not_a_homomorphism",
            lhs != rhs,
            bracket_domain_dim=lhs.domain.dim,
            zero_of_rho_d_domain_dim=rhs.domain.dim,
        )
    )
    return FixtureReport(name=name, claims=claims, checks=[premorphism], config=(config or RunConfig()).model_dump())
