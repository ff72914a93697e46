"""
Partial actions theta = {theta_x: D_x -> A} of a Lie algebra L on an algebra A by partial
derivations on ideals, their strongness, restrictions of global actions to an ideal, and the
correspondence between class-restricted partial actions and homomorphisms E(L) -> PDer_A(A).
"""

from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass
from typing import Callable, Optional, Sequence

from lisa.linalg.algebra import StructAlgebra, is_derivation
from lisa.linalg.exactalg import Matrix, Subspace, Vector, intersect, vec_add, vec_combine, vec_scale, vec_sub
from lisa.semialgebra.carrier import AlgebraCarrier
from lisa.semialgebra.exel import (
    ELCarrier,
    ExtendedPremorphism,
    Premorphism,
    check_extension,
    extend_premorphism,
)
from lisa.semialgebra.isv_core import ELEM, NONZERO, Axiom, run_axioms
from lisa.semialgebra.pmaps import (
    CLASSES,
    PartialEndo,
    PDeClassCarrier,
    PDerCarrier,
    in_class,
    pde_class_carrier,
    pe_zero,
    restrict_to_subspace,
)
from lisa.utils.config import RunConfig
from lisa.utils.errors import (
    AmbientMismatch,
    MalformedInput,
    NotAnIdeal,
    UnsupportedField,
    ValidationFailure,
)
from lisa.utils.objects import AxiomVerdict, CheckReport, PartialActionModel
from lisa.utils.utils import algebra_from_model, subspace_from_model

logger = logging.getLogger(__name__)


@dataclass
class PartialAction:
    source: StructAlgebra
    base: StructAlgebra
    rule: Callable[[Vector], PartialEndo]
    name: str = "theta"
    table: Optional[dict] = None

    def theta(self, x: Vector) -> PartialEndo:
        return self.rule(tuple(x))

    def domain(self, x: Vector) -> Subspace:
        return self.theta(x).domain

    @classmethod
    def from_table(cls, source: StructAlgebra, base: StructAlgebra, table: dict, name: str = "theta") -> "PartialAction":
        if not source.field.is_finite:
            raise UnsupportedField("partial action tables need L over a prime field")
        for v in source.field.vectors(source.dim):
            if v not in table:
                raise MalformedInput(f"no entry for a point of {source.label}", {"x": [source.field.to_str(a) for a in v]})
        for x, phi in table.items():
            if phi.n != base.dim:
                raise AmbientMismatch("theta entries must act on the base algebra")
            if not base.is_ideal(phi.domain):
                raise NotAnIdeal(f"D_x is not an ideal of {base.label}", {"D": phi.domain.to_json()})
        frozen = dict(table)
        return cls(source, base, frozen.__getitem__, name, frozen)


def partial_action_from_model(model: PartialActionModel, cap: Optional[int] = None) -> PartialAction:
    """theta rows are the n coordinates of the images of D's canonical basis, one column per basis vector."""
    source, base = algebra_from_model(model.L, cap), algebra_from_model(model.A, cap)
    field = base.field
    table = {}
    for entry in model.entries:
        d = subspace_from_model(field, entry.D)
        if d.ambient_dim != base.dim:
            raise MalformedInput("D must live in the base algebra")
        rows = [field.vec(r) for r in entry.theta]
        if d.dim and (len(rows) != base.dim or any(len(r) != d.dim for r in rows)):
            raise MalformedInput(f"theta must be {base.dim} x {d.dim}", {"x": entry.x})
        columns = tuple(tuple(r[j] for r in rows) for j in range(d.dim))
        table[source.field.vec(entry.x)] = PartialEndo(field, base.dim, d, columns)
    return PartialAction.from_table(source, base, table)


def _inside(outer: Subspace, inner: Subspace) -> bool:
    return outer.includes(inner)


def _agree_on(space: Subspace, f: Callable[[Vector], Vector], g: Callable[[Vector], Vector]) -> bool:
    return all(f(b) == g(b) for b in space.basis)


def partial_action_axioms(pa: PartialAction) -> list[Axiom]:
    alg, base = pa.source, pa.base
    th = pa.theta
    xy = (("x", ELEM), ("y", ELEM))

    def derivation_on_ideal(c, x):
        phi = th(x)
        return base.is_ideal(phi.domain) and is_derivation(base, phi.domain, phi.images) is None

    def unit(c):
        phi = th(alg.zero())
        return phi.domain.is_full and all(not any(v) for v in phi.images)

    def additive(c, x, y):
        k = intersect(pa.domain(x), pa.domain(y))
        s = th(vec_add(x, y))
        return _inside(s.domain, k) and _agree_on(k, s.apply, lambda a: vec_add(th(x).apply(a), th(y).apply(a)))

    def domain_equality(c, x, y):
        return intersect(pa.domain(x), pa.domain(y)) == intersect(pa.domain(vec_add(x, y)), pa.domain(x))

    def bracket(c, x, y):
        tx, ty = th(x), th(y)
        k = intersect(tx.preimage(ty.domain), ty.preimage(tx.domain))
        b = th(alg.multiply(x, y))
        return _inside(b.domain, k) and _agree_on(
            k, b.apply, lambda a: vec_sub(tx.apply(ty.apply(a)), ty.apply(tx.apply(a)))
        )

    def scale(c, a, x):
        tx, tax = th(x), th(vec_scale(a, x))
        return tax.domain == tx.domain and _agree_on(tx.domain, tax.apply, lambda v: vec_scale(a, tx.apply(v)))

    return [
        Axiom("partial_action.derivations", (("x", ELEM),), derivation_on_ideal),
        Axiom("partial_action.unit", (), unit),
        Axiom("partial_action.additive", xy, additive),
        Axiom("partial_action.domain_equality", xy, domain_equality),
        Axiom("partial_action.bracket", xy, bracket),
        Axiom("partial_action.scale", (("alpha", NONZERO), ("x", ELEM)), scale),
    ]


def is_global(pa: PartialAction, elements: Optional[Sequence[Vector]] = None) -> bool:
    points = elements if elements is not None else list(pa.source.field.vectors(pa.source.dim))
    return all(pa.domain(x).is_full for x in points)


def check_partial_action(pa: PartialAction, config: Optional[RunConfig] = None, mode: str = "auto") -> CheckReport:
    """The four defining conditions plus D_x cap D_y = D_{x+y} cap D_x; global actions get a flag verdict."""
    source = AlgebraCarrier(pa.source)
    report = run_axioms(
        source,
        partial_action_axioms(pa),
        subject=f"{pa.name}: {pa.source.label} on {pa.base.label}",
        config=config,
        mode=mode,
        tabulate=False,
    )
    if report.mode == "exhaustive":
        flag = is_global(pa)
        report = report.merge(
            CheckReport(
                subject=report.subject,
                mode=report.mode,
                verdicts=[
                    AxiomVerdict(
                        axiom="partial_action.global",
                        mode="exhaustive",
                        verdict="pass" if flag else "skipped",
                        note="global" if flag else "not global",
                    )
                ],
            )
        )
    return report


def _strong_axiom(pa: PartialAction) -> Axiom:
    th = pa.theta

    def strong(c, x, y):
        tx, ty = th(x), th(y)
        left = intersect(tx.preimage(ty.domain), ty.preimage(tx.domain))
        right = intersect(intersect(tx.domain, ty.domain), pa.domain(pa.source.multiply(x, y)))
        return left == right

    return Axiom("partial_action.strong", (("x", ELEM), ("y", ELEM)), strong)


@dataclass
class StrongResult:
    strong: bool
    witness: Optional[dict]
    report: CheckReport


def is_strong(pa: PartialAction, config: Optional[RunConfig] = None, mode: str = "auto") -> StrongResult:
    """theta_x^-1(D_y) cap theta_y^-1(D_x) = D_x cap D_y cap D_[x,y] on every pair."""
    report = run_axioms(AlgebraCarrier(pa.source), [_strong_axiom(pa)], config=config, mode=mode, tabulate=False)
    v = report.verdict("partial_action.strong")
    return StrongResult(v.verdict == "pass", v.counterexample, report)


@dataclass
class GlobalRestriction:
    """
    A global action eta: L -> Der(B), given by the derivations assigned to a basis of L, together
    with an ideal A of B.
    """

    source: StructAlgebra
    big: StructAlgebra
    ideal: Subspace
    eta: tuple

    def __post_init__(self) -> None:
        if len(self.eta) != self.source.dim:
            raise AmbientMismatch("one derivation per basis vector of L is required")
        if not self.big.is_ideal(self.ideal):
            raise NotAnIdeal(f"{self.ideal!r} is not an ideal of {self.big.label}", {"A": self.ideal.to_json()})
        full = Subspace.full(self.big.field, self.big.dim)
        for i, d in enumerate(self.eta):
            if (d.rows, d.cols) != (self.big.dim, self.big.dim):
                raise AmbientMismatch("derivation matrices must be square on B")
            if is_derivation(self.big, full, d.columns()) is not None:
                raise ValidationFailure(f"eta(e{i}) is not a derivation of {self.big.label}", {"i": i})
        for i in range(self.source.dim):
            for j in range(self.source.dim):
                lhs = self.at(self.source.table[i][j])
                commutator = self.eta[i].matmul(self.eta[j])
                other = self.eta[j].matmul(self.eta[i])
                rhs = Matrix(
                    commutator.field,
                    commutator.rows,
                    commutator.cols,
                    tuple(vec_sub(r, s) for r, s in zip(commutator.entries, other.entries)),
                )
                if lhs != rhs:
                    raise ValidationFailure("eta is not a Lie homomorphism", {"i": i, "j": j})

    def at(self, x: Vector) -> Matrix:
        """eta_x = sum x_i eta(e_i)."""
        n = self.big.dim
        field = self.big.field
        columns = [
            vec_combine(x, [d.column(k) for d in self.eta], n, field) for k in range(n)
        ]
        return Matrix.from_columns(field, columns, n)


def restrict_global(gr: GlobalRestriction, name: str = "restriction") -> PartialAction:
    """D_x = A cap eta_x^-1(A), theta_x = eta_x on D_x, in coordinates of the canonical basis of A."""
    base = gr.big.subalgebra(gr.ideal)
    return PartialAction(gr.source, base, lambda x: restrict_to_subspace(gr.at(x), gr.ideal), name)


def restriction_identity(pa: PartialAction) -> Axiom:
    th = pa.theta

    def holds(c, x, y):
        tx, ty = th(x), th(y)
        left = intersect(tx.preimage(ty.domain), ty.preimage(tx.domain))
        right = intersect(intersect(pa.domain(pa.source.multiply(x, y)), tx.preimage(ty.domain)), ty.domain)
        return left == right

    return Axiom("restriction.identity", (("x", ELEM), ("y", ELEM)), holds)


def check_restriction(gr: GlobalRestriction, config: Optional[RunConfig] = None, mode: str = "auto") -> CheckReport:
    pa = restrict_global(gr)
    report = check_partial_action(pa, config, mode)
    extra = run_axioms(AlgebraCarrier(pa.source), [restriction_identity(pa)], config=config, mode=mode, tabulate=False)
    return report.merge(extra)


def idempotent_action(source: StructAlgebra, base: StructAlgebra) -> PartialAction:
    """D_0 = A and D_x = 0 otherwise, every theta_x zero; needs A^2 = A."""
    if not base.is_idempotent_algebra():
        raise ValidationFailure(f"{base.label} is not idempotent")
    full = Subspace.full(base.field, base.dim)
    zero = Subspace.zero(base.field, base.dim)

    def rule(x: Vector) -> PartialEndo:
        return pe_zero(zero if any(x) else full)

    return PartialAction(source, base, rule, "idempotent action")


def as_premorphism(pa: PartialAction, target: Optional[PDerCarrier] = None) -> Premorphism:
    """The partial action as a premorphism L -> PDer(A)."""
    return Premorphism(pa.source, target or PDerCarrier(pa.base), pa.theta, pa.name)


@dataclass
class Correspondence:
    forward: ExtendedPremorphism
    report: CheckReport


def action_hom_correspondence(
    pa: PartialAction, cls: str, config: Optional[RunConfig] = None, enumerate_all: bool = False
) -> Correspondence:
    """
    Forward: the extension of theta into PDer_A(A). Backward: precompose a homomorphism with tau.
    With enumerate_all, both sides are listed for finite L and A and matched one to one.
    """
    config = config or RunConfig()
    if cls not in CLASSES:
        raise UnsupportedField(f"class {cls!r} has no decision procedure")
    target = pde_class_carrier(pa.base, cls)
    points = list(pa.source.field.vectors(pa.source.dim)) if pa.source.field.is_finite else []
    for x in points:
        d = pa.domain(x)
        if not in_class(pa.base.subalgebra(d), cls):
            raise ValidationFailure(f"D_x is not in class {cls}", {"x": [pa.source.field.to_str(a) for a in x]})
    rho = as_premorphism(pa, target)
    forward = extend_premorphism(rho, config)
    hom_report = check_extension(forward, config)
    verdicts = list(hom_report.verdicts)
    el = forward.el
    if el.is_finite:
        back_ok = all(forward(el.tau(x)) == pa.theta(x) for x in points)
        verdicts.append(
            AxiomVerdict(axiom="correspondence.roundtrip", mode="exhaustive", verdict="pass" if back_ok else "fail", instances=len(points))
        )
    if enumerate_all:
        verdicts.append(_bijection(pa.source, target, config))
    return Correspondence(forward, CheckReport(subject=f"{pa.name} <-> E({pa.source.label}) -> {target.name}", mode=hom_report.mode, verdicts=verdicts))


def _bijection(source: StructAlgebra, target: PDeClassCarrier, config: RunConfig) -> AxiomVerdict:
    """Enumerate class partial actions and zero-preserving homomorphisms E(L) -> target and match them."""
    axiom = "correspondence.bijection"
    el = ELCarrier(source, config.dim_caps.el)
    points = list(source.field.vectors(source.dim))
    values = target.elements()
    es = el.elements()
    budget = config.dim_caps.hom_candidates
    if len(values) ** len(points) > budget or len(values) ** len(es) > budget:
        return AxiomVerdict(axiom=axiom, mode="exhaustive", verdict="skipped", note="candidate count exceeds cap")
    quiet = config.model_copy(update={"trials": 1})
    actions = []
    for choice in itertools.product(values, repeat=len(points)):
        pa = PartialAction.from_table(source, target.base, dict(zip(points, choice)))
        if check_partial_action(pa, quiet).passed:
            actions.append(pa)
    zero, scalars = el.zero(), el.field.elements()
    homs = []
    for choice in itertools.product(values, repeat=len(es)):
        psi = dict(zip(es, choice))
        if psi[zero] != target.zero():
            continue
        if all(
            psi[el.add(x, y)] == target.add(psi[x], psi[y]) and psi[el.mul(x, y)] == target.mul(psi[x], psi[y])
            for x in es
            for y in es
        ) and all(psi[el.smul(a, x)] == target.smul(a, psi[x]) for a in scalars for x in es):
            homs.append(psi)
    images = []
    for pa in actions:
        ext = extend_premorphism(as_premorphism(pa, target), quiet)
        images.append({x: ext(x) for x in es})
    matched = all(img in homs for img in images) and len({tuple(img[x] for x in es) for img in images}) == len(actions)
    backward = all(
        any(all(psi[el.tau(x)] == pa.theta(x) for x in points) for pa in actions) for psi in homs
    )
    ok = matched and backward and len(actions) == len(homs)
    logger.info("%d partial actions, %d homomorphisms", len(actions), len(homs))
    return AxiomVerdict(
        axiom=axiom,
        mode="exhaustive",
        verdict="pass" if ok else "fail",
        instances=len(actions) + len(homs),
        note=f"{len(actions)} partial actions, {len(homs)} homomorphisms",
    )
