"""
Partial representations (Lambda, L) of a Lie algebra on a unital meet semilattice, the F-inverse
carrier F(Lambda, L), the sigma quotient S/sigma, the functor K and the witnesses xi, eta, gamma of
the equivalence F -| K, and the map beta(phi) = (Theta_phi, phi) behind the adjunction with Lie
algebras.

Everything here is exhaustive over a prime field of odd characteristic.
"""

from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass, field
from functools import cached_property
from typing import Any, Callable, Optional, Sequence

from lisa.linalg.algebra import AlgebraHom, StructAlgebra, enumerate_homs
from lisa.linalg.exactalg import (
    FieldSpec,
    Matrix,
    Subspace,
    Vector,
    enumerate_subspaces,
    image,
    subspace_sum,
    vec_add,
    vec_scale,
    vector_to_json,
)
from lisa.semialgebra.carrier import Carrier
from lisa.semialgebra.exel import ELCarrier
from lisa.semialgebra.isv_core import SigmaData, check_F_inverse, check_lie_isa, sigma_partition
from lisa.semialgebra.semilat import IsoWitness, MeetSemilattice, chain_semilattice, check_carrier_map
from lisa.utils.config import RunConfig
from lisa.utils.errors import (
    AmbientMismatch,
    EnumerationBoundExceeded,
    MalformedInput,
    PreconditionFailure,
    UnsupportedField,
    ValidationFailure,
)
from lisa.utils.objects import AxiomVerdict, CheckReport, PartialRepModel
from lisa.utils.utils import algebra_from_model

logger = logging.getLogger(__name__)

VEC, LAM, SCALAR, SPACE = "vec", "lam", "scalar", "space"


def require_odd(f: FieldSpec) -> None:
    if not f.is_finite:
        raise UnsupportedField("partial representations are enumerated over F_p only")
    if f.characteristic == 2:
        raise UnsupportedField("partial representations need characteristic other than 2")


def subspace_name(s: Subspace) -> str:
    if s.is_zero:
        return "0"
    return "<" + ";".join(",".join(s.field.to_str(a) for a in row) for row in s.basis) + ">"


@dataclass
class PartialRep:
    """
    A total action table (a, lam) -> a.lam of L on a meet semilattice with unit eps. `spaces` is set
    when the lattice is P_f(L) under +, mapping each element name to its subspace.
    """

    source: StructAlgebra
    lattice: MeetSemilattice
    action: dict
    kind: str = "table"
    spaces: Optional[dict] = None

    def __post_init__(self) -> None:
        if not self.source.field.is_finite:
            raise UnsupportedField("partial representations are enumerated over F_p only")
        if self.lattice.unit is None:
            raise ValidationFailure("the semilattice of a partial representation needs a unit")
        for a in self.points:
            for lam in self.lattice.elements:
                out = self.action.get((a, lam))
                if out is None:
                    raise MalformedInput(
                        "the action table is not total", {"a": vector_to_json(self.field, a), "lambda": lam}
                    )
                self.lattice.index(out)

    @property
    def field(self) -> FieldSpec:
        return self.source.field

    @property
    def unit(self) -> str:
        return self.lattice.unit

    @cached_property
    def points(self) -> list[Vector]:
        return list(self.field.vectors(self.source.dim))

    @property
    def label(self) -> str:
        return f"({self.kind}, {self.source.label})"

    def act(self, a: Vector, lam: str) -> str:
        return self.action[(tuple(a), lam)]

    def meet(self, lam: str, mu: str) -> str:
        return self.lattice.meet(lam, mu)

    def leq(self, lam: str, mu: str) -> bool:
        return self.lattice.leq(lam, mu)

    def inf_of(self, space: Subspace) -> str:
        """inf A.eps, the meet of a.eps over every a in A."""
        out = self.unit
        for a in space.elements():
            out = self.meet(out, self.act(a, self.unit))
        return out

    def orbit(self, generators: Sequence[Vector]) -> str:
        """x1.(x2.(...(xk.eps)...))."""
        lam = self.unit
        for x in reversed(list(generators)):
            lam = self.act(x, lam)
        return lam


def subspace_rep(alg: StructAlgebra, cap: int = 3) -> PartialRep:
    """(P_f(L), L): subspaces under + with unit 0, acted on by a.A = A + Fa."""
    f, n = alg.field, alg.dim
    if not f.is_finite:
        raise UnsupportedField("P_f(L) is enumerated over F_p only")
    spaces = {subspace_name(s): s for s in enumerate_subspaces(n, f, cap)}
    lattice = MeetSemilattice.from_meet(
        list(spaces), lambda a, b: subspace_name(subspace_sum(spaces[a], spaces[b])), "0"
    )
    action = {
        (a, name): subspace_name(subspace_sum(s, Subspace.span(f, n, [a])))
        for a in f.vectors(n)
        for name, s in spaces.items()
    }
    logger.info("P_f(%s): %d subspaces", alg.label, len(spaces))
    return PartialRep(alg, lattice, action, "subspaces", spaces)


def trivial_rep(alg: StructAlgebra, lattice: Optional[MeetSemilattice] = None) -> PartialRep:
    """a.lam = lam on any unital semilattice; the one-point lattice by default."""
    lattice = lattice or chain_semilattice(["eps"])
    action = {(a, lam): lam for a in alg.field.vectors(alg.dim) for lam in lattice.elements}
    return PartialRep(alg, lattice, action, "trivial")


def partial_rep_from_model(model: PartialRepModel) -> PartialRep:
    alg = algebra_from_model(model.L)
    lattice = MeetSemilattice.from_model(model.lattice) if model.lattice is not None else None
    if model.preset == "subspaces":
        return subspace_rep(alg)
    if model.preset == "trivial":
        return trivial_rep(alg, lattice)
    if lattice is None:
        raise MalformedInput("a tabulated partial representation needs its lattice")
    action = {(alg.field.vec(e.a), e.lambda_): e.out for e in model.action}
    return PartialRep(alg, lattice, action)


def _describe(f: FieldSpec, slots: tuple, args: Sequence) -> dict[str, Any]:
    out: dict[str, Any] = {}
    for (name, kind), arg in zip(slots, args):
        if kind == VEC:
            out[name] = vector_to_json(f, arg)
        elif kind == SCALAR:
            out[name] = f.to_str(arg)
        elif kind == SPACE:
            out[name] = arg.to_json()
        else:
            out[name] = arg
    return out


def _first_failure(f: FieldSpec, axiom: str, slots: tuple, holds: Callable[..., bool], pools: Sequence[list]) -> AxiomVerdict:
    count = 0
    for args in itertools.product(*pools):
        count += 1
        if not holds(*args):
            return AxiomVerdict(
                axiom=axiom, mode="exhaustive", verdict="fail", instances=count, counterexample=_describe(f, slots, args)
            )
    return AxiomVerdict(axiom=axiom, mode="exhaustive", verdict="pass", instances=count)


def check_partial_rep(r: PartialRep, config: Optional[RunConfig] = None) -> CheckReport:
    """
    The four defining axioms, the derived identities (idempotence, absorption, the swap rule,
    a.lam <= lam, monotonicity, the fixed-point criterion, the generator formula), and
    inf(A+B).eps = inf A.eps ^ inf B.eps over every pair of subspaces.
    """
    config = config or RunConfig()
    require_odd(r.field)
    f, eps, act, meet, leq = r.field, r.unit, r.act, r.meet, r.leq
    pts, lams = r.points, list(r.lattice.elements)
    zero = r.source.zero()
    spaces = list(enumerate_subspaces(r.source.dim, f, config.dim_caps.subspaces))
    inf = {s: r.inf_of(s) for s in spaces}
    a_, b_, lam_, mu_ = ("a", VEC), ("b", VEC), ("lambda", LAM), ("mu", LAM)

    def generators(s: Subspace) -> bool:
        basis = list(s.basis)
        chained = r.orbit(basis)
        meets = eps
        for x in basis:
            meets = meet(meets, act(x, eps))
        return (
            chained == meets == inf[s] == r.orbit(basis[::-1])
            and all(meet(act(a, eps), meets) == meets == act(a, chained) for a in s.elements())
        )

    def inf_point(a: Vector, s: Subspace) -> bool:
        grown = subspace_sum(s, Subspace.span(f, r.source.dim, [a]))
        return meet(act(a, eps), inf[s]) == inf[grown] == act(a, inf[s])

    laws = [
        ("rep.zero", (lam_,), lambda lam: act(zero, lam) == lam, [lams]),
        ("rep.meet", (a_, lam_, mu_), lambda a, lam, mu: act(a, meet(lam, mu)) == meet(act(a, lam), act(a, mu)), [pts, lams, lams]),
        (
            "rep.compose",
            (a_, b_, lam_),
            lambda a, b, lam: act(a, act(b, lam)) == meet(act(a, eps), act(vec_add(a, b), lam)),
            [pts, pts, lams],
        ),
        (
            "rep.scale",
            (("alpha", SCALAR), a_, lam_),
            lambda al, a, lam: act(vec_scale(al, a), lam) == act(a, lam),
            [f.nonzero(), pts, lams],
        ),
        ("rep.idempotent", (a_, lam_), lambda a, lam: act(a, act(a, lam)) == act(a, lam), [pts, lams]),
        (
            "rep.absorb",
            (a_, lam_, mu_),
            lambda a, lam, mu: meet(act(a, lam), act(a, mu)) == meet(act(a, lam), mu) == meet(lam, act(a, mu)),
            [pts, lams, lams],
        ),
        (
            "rep.swap",
            (a_, b_, lam_),
            lambda a, b, lam: meet(act(a, eps), act(vec_add(a, b), lam)) == meet(act(b, eps), act(vec_add(a, b), lam)),
            [pts, pts, lams],
        ),
        ("rep.decreasing", (a_, lam_), lambda a, lam: leq(act(a, lam), lam), [pts, lams]),
        (
            "rep.monotone",
            (a_, lam_, mu_),
            lambda a, lam, mu: not leq(lam, mu) or leq(act(a, lam), act(a, mu)),
            [pts, lams, lams],
        ),
        ("rep.fixed", (a_, lam_), lambda a, lam: leq(lam, act(a, eps)) == (act(a, lam) == lam), [pts, lams]),
        ("rep.generators", (("A", SPACE),), generators, [spaces]),
        (
            "rep.inf_sum",
            (("A", SPACE), ("B", SPACE)),
            lambda s, t: inf[subspace_sum(s, t)] == meet(inf[s], inf[t]),
            [spaces, spaces],
        ),
        ("rep.inf_point", (a_, ("A", SPACE)), inf_point, [pts, spaces]),
    ]
    verdicts = [_first_failure(f, axiom, slots, holds, pools) for axiom, slots, holds, pools in laws]
    for v in verdicts:
        if v.verdict == "fail":
            logger.info("%s: %s fails at %s", r.label, v.axiom, v.counterexample)
    return CheckReport(subject=f"partial representation {r.label}", mode="exhaustive", verdicts=verdicts)


@dataclass(frozen=True)
class FLambdaElement:
    level: str
    point: tuple

    def to_json(self, f: FieldSpec) -> dict:
        return {"lambda": self.level, "a": vector_to_json(f, self.point)}


class FCarrier(Carrier):
    """F(Lambda, L) = {(lam, a) | lam <= a.eps} with (lam ^ mu, a + b), (lam, alpha a) and ([a,b].(lam ^ mu), [a,b])."""

    bracket = True

    def __init__(self, rep: PartialRep, name: Optional[str] = None) -> None:
        self.rep = rep
        self.alg = rep.source
        self.field = rep.field
        self.name = name or f"F{rep.label}"

    def add(self, x, y):
        return FLambdaElement(self.rep.meet(x.level, y.level), vec_add(x.point, y.point))

    def neg(self, x):
        return FLambdaElement(x.level, vec_scale(-self.field.one, x.point))

    def smul(self, alpha, x):
        return FLambdaElement(x.level, vec_scale(alpha, x.point))

    def mul(self, x, y):
        c = self.alg.multiply(x.point, y.point)
        return FLambdaElement(self.rep.act(c, self.rep.meet(x.level, y.level)), c)

    def zero(self):
        return FLambdaElement(self.rep.unit, self.alg.zero())

    def zero_of(self, x):
        return FLambdaElement(x.level, self.alg.zero())

    def leq(self, x, y) -> bool:
        return x.point == y.point and self.rep.leq(x.level, y.level)

    @property
    def is_finite(self) -> bool:
        return True

    @cached_property
    def _elements(self) -> list:
        rep = self.rep
        return [
            FLambdaElement(lam, a)
            for a in rep.points
            for lam in rep.lattice.elements
            if rep.leq(lam, rep.act(a, rep.unit))
        ]

    def elements(self) -> list:
        return list(self._elements)

    def sample(self, rng):
        return self._elements[int(rng.integers(len(self._elements)))]

    def maximum(self, a: Vector) -> FLambdaElement:
        """(a.eps, a), the greatest element of the sigma class of a."""
        return FLambdaElement(self.rep.act(a, self.rep.unit), tuple(a))

    def describe(self, x) -> Any:
        return x.to_json(self.field)

    def parse(self, obj: Any):
        x = FLambdaElement(str(obj["lambda"]), self.field.vec(obj["a"]))
        if not self.rep.leq(x.level, self.rep.act(x.point, self.rep.unit)):
            raise ValidationFailure("lambda must lie below a.eps", {"element": obj})
        return x


def build_F(r: PartialRep, config: Optional[RunConfig] = None, check: bool = True) -> FCarrier:
    if check:
        report = check_partial_rep(r, config)
        if not report.passed:
            raise PreconditionFailure(f"{r.label} is not a partial representation", report)
    return FCarrier(r)


def check_F_sigma(fc: FCarrier, sigma: Optional[SigmaData] = None) -> CheckReport:
    """The generic sigma classes are the fibres over L, with maxima (a.eps, a) and idempotents (lam, 0)."""
    sigma = sigma or sigma_partition(fc)
    t = sigma.table
    by_point: dict = {}
    for k, members in enumerate(sigma.classes):
        for i in members:
            by_point.setdefault(t.element(i).point, set()).add(k)
    analytic = len(sigma.classes) == len(fc.rep.points) and all(len(ks) == 1 for ks in by_point.values())
    wrong_max = next(
        (
            k
            for k, members in enumerate(sigma.classes)
            if sigma.maxima[k] is None or t.element(sigma.maxima[k]) != fc.maximum(t.element(members[0]).point)
        ),
        None,
    )
    idems = {t.element(e) for e in sigma.idempotents}
    expected = {FLambdaElement(lam, fc.alg.zero()) for lam in fc.rep.lattice.elements}
    return CheckReport(
        subject=fc.name,
        mode="exhaustive",
        verdicts=[
            AxiomVerdict(axiom="sigma.analytic", mode="exhaustive", verdict="pass" if analytic else "fail", instances=len(t.items)),
            AxiomVerdict(
                axiom="sigma.maxima",
                mode="exhaustive",
                verdict="pass" if wrong_max is None else "fail",
                instances=len(sigma.classes),
                counterexample=None if wrong_max is None else {"class": [t.describe(i) for i in sigma.classes[wrong_max]]},
            ),
            AxiomVerdict(
                axiom="finverse.idempotents",
                mode="exhaustive",
                verdict="pass" if idems == expected else "fail",
                instances=len(idems),
            ),
        ],
    )


def verify_F(r: PartialRep, config: Optional[RunConfig] = None) -> CheckReport:
    """build_F, then the Lie inverse semialgebra laws, the F-inverse laws and the analytic sigma."""
    fc = build_F(r, config)
    sigma = sigma_partition(fc)
    report = check_lie_isa(fc, config=config)
    return report.merge(check_F_inverse(fc, sigma)).merge(check_F_sigma(fc, sigma))


@dataclass
class SigmaQuotient:
    """S/sigma as a Lie algebra, with sigma# given by class coordinates in a greedy basis."""

    carrier: Carrier
    sigma: SigmaData
    quotient: StructAlgebra
    coords: dict
    report: CheckReport
    by_vector: dict = field(default_factory=dict)

    def __post_init__(self) -> None:
        self.by_vector = {v: k for k, v in self.coords.items()}

    def project(self, x) -> Vector:
        return self.coords[self.sigma.class_of[self.sigma.table.index[x]]]

    def maximum(self, v: Vector):
        m = self.sigma.maxima[self.by_vector[tuple(v)]]
        return None if m is None else self.sigma.element(m)


def sigma_quotient(c: Carrier, config: Optional[RunConfig] = None) -> SigmaQuotient:
    """
    Classes of s sigma t iff s + e = t + e for an idempotent e; the congruence laws and the Lie
    structure of the quotient are re-checked on every class.
    """
    if not c.has_mul:
        raise PreconditionFailure(f"{c.name} has no bracket")
    sigma = sigma_partition(c)
    t, f = sigma.table, c.field
    cls = sigma.class_of
    reps = [members[0] for members in sigma.classes]
    scalars = f.elements()
    elems = t.elements()
    mode = "exhaustive"

    congruent = next(
        (
            (s, u, r)
            for members in sigma.classes
            for s, u in itertools.combinations(members, 2)
            for r in elems
            if cls[t.add(r, s)] != cls[t.add(r, u)] or cls[t.mul(r, s)] != cls[t.mul(r, u)]
        ),
        None,
    )
    if congruent is None:
        congruent = next(
            (
                (s, u, a)
                for members in sigma.classes
                for s, u in itertools.combinations(members, 2)
                for a in scalars
                if cls[t.smul(a, s)] != cls[t.smul(a, u)]
            ),
            None,
        )
    verdicts = [
        AxiomVerdict(
            axiom="sigma.congruence",
            mode=mode,
            verdict="fail" if congruent else "pass",
            instances=len(elems),
            counterexample={"s": t.describe(congruent[0]), "t": t.describe(congruent[1])} if congruent else None,
        )
    ]
    if congruent:
        raise PreconditionFailure(f"sigma is not a congruence on {c.name}", CheckReport(subject=c.name, mode=mode, verdicts=verdicts))

    zero_cls = cls[sigma.idempotents[0]]
    span: dict[int, tuple] = {zero_cls: ()}
    basis: list[int] = []
    for k in range(len(sigma.classes)):
        if k in span:
            continue
        grown: dict[int, tuple] = {}
        for s, co in span.items():
            for a in scalars:
                grown[cls[t.add(reps[s], t.smul(a, reps[k]))]] = co + (a,)
        span = grown
        basis.append(k)
    d = len(basis)
    if len(span) != len(sigma.classes) or len(span) != len(scalars) ** d:
        raise PreconditionFailure(
            f"{c.name}/sigma is not a vector space",
            CheckReport(subject=c.name, mode=mode, verdicts=verdicts),
        )
    table = tuple(tuple(span[cls[t.mul(reps[i], reps[j])]] for j in basis) for i in basis)
    try:
        quotient = StructAlgebra(f, d, table, "lie", f"{c.name}/sigma")
    except ValidationFailure as err:
        verdicts.append(AxiomVerdict(axiom="sigma.quotient_lie", mode=mode, verdict="fail", note=str(err)))
        raise PreconditionFailure(f"{c.name}/sigma is not a Lie algebra", CheckReport(subject=c.name, mode=mode, verdicts=verdicts)) from err
    verdicts.append(AxiomVerdict(axiom="sigma.quotient_lie", mode=mode, verdict="pass", instances=d))

    classes = range(len(sigma.classes))
    linear = all(
        span[cls[t.add(reps[i], reps[j])]] == vec_add(span[i], span[j]) for i in classes for j in classes
    ) and all(span[cls[t.smul(a, reps[i])]] == vec_scale(a, span[i]) for a in scalars for i in classes)
    bracket = all(
        span[cls[t.mul(reps[i], reps[j])]] == quotient.multiply(span[i], span[j]) for i in classes for j in classes
    )
    verdicts.append(AxiomVerdict(axiom="sigma.linear", mode=mode, verdict="pass" if linear else "fail", instances=len(sigma.classes) ** 2))
    verdicts.append(AxiomVerdict(axiom="sigma.bracket", mode=mode, verdict="pass" if bracket else "fail", instances=len(sigma.classes) ** 2))
    report = CheckReport(subject=f"{c.name}/sigma", mode=mode, verdicts=verdicts)
    if not report.passed:
        raise PreconditionFailure(f"sigma# is not a homomorphism on {c.name}", report)
    logger.info("%s/sigma: %d classes, dimension %d", c.name, len(sigma.classes), d)
    return SigmaQuotient(c, sigma, quotient, span, report)


@dataclass
class KRepresentation:
    """K(S) = (E(S), S/sigma) with v.e = 0_{m_v} + e, plus the naming of idempotents."""

    rep: PartialRep
    quotient: SigmaQuotient
    names: dict

    def name_of(self, e) -> str:
        t = self.quotient.sigma.table
        return self.names[t.index[e]]

    def idempotent(self, name: str):
        t = self.quotient.sigma.table
        return t.element(next(i for i, n in self.names.items() if n == name))


def functor_K(c: Carrier, config: Optional[RunConfig] = None) -> KRepresentation:
    require_odd(c.field)
    sq = sigma_quotient(c, config)
    sigma = sq.sigma
    report = check_F_inverse(c, sigma)
    if not report.passed:
        raise PreconditionFailure(f"{c.name} is not F-inverse", report)
    t = sigma.table
    idems = sigma.idempotents
    names = {e: f"e{k}" for k, e in enumerate(idems)}
    unit = next((e for e in idems if all(t.add(e, g) == g for g in idems)), None)
    if unit is None:
        raise PreconditionFailure(f"the idempotents of {c.name} have no unit", report)
    lattice = MeetSemilattice.from_meet(
        [names[e] for e in idems],
        lambda a, b: names[t.add(idems[int(a[1:])], idems[int(b[1:])])],
        names[unit],
    )
    action = {}
    for v in sq.quotient.field.vectors(sq.quotient.dim):
        m = sigma.maxima[sq.by_vector[v]]
        top = t.zero_of(m)
        for e in idems:
            action[(v, names[e])] = names[t.add(top, e)]
    rep = PartialRep(sq.quotient, lattice, action, f"K({c.name})")
    logger.info("K(%s): %d idempotents over a %d-dimensional quotient", c.name, len(idems), sq.quotient.dim)
    return KRepresentation(rep, sq, names)


@dataclass
class RepMorphism:
    """(theta, phi) with theta a unit-preserving meet homomorphism and theta(a.lam) = phi(a).theta(lam)."""

    source: PartialRep
    target: PartialRep
    theta: dict
    phi: AlgebraHom

    def __post_init__(self) -> None:
        if self.phi.source != self.source.source or self.phi.target != self.target.source:
            raise AmbientMismatch("phi must map the source algebra to the target algebra")
        missing = [lam for lam in self.source.lattice.elements if lam not in self.theta]
        if missing:
            raise MalformedInput("theta is not total", {"missing": missing})

    def key(self) -> tuple:
        return tuple(sorted(self.theta.items())), self.phi.matrix


def identity_morphism(r: PartialRep) -> RepMorphism:
    return RepMorphism(r, r, {lam: lam for lam in r.lattice.elements}, AlgebraHom.identity(r.source))


def hat_morphism(source: PartialRep, target: PartialRep, phi: AlgebraHom) -> RepMorphism:
    """(phi^, phi) between subspace representations, phi^(A) = phi(A)."""
    theta = {name: subspace_name(image(phi.matrix, s)) for name, s in source.spaces.items()}
    return RepMorphism(source, target, theta, phi)


def check_rep_morphism(mor: RepMorphism) -> CheckReport:
    src, dst = mor.source, mor.target
    f, th, phi = src.field, mor.theta, mor.phi
    lams = list(src.lattice.elements)
    verdicts = [
        AxiomVerdict(
            axiom="morphism.unit",
            mode="exhaustive",
            verdict="pass" if th[src.unit] == dst.unit else "fail",
            instances=1,
        ),
        _first_failure(
            f,
            "morphism.meet",
            (("lambda", LAM), ("mu", LAM)),
            lambda lam, mu: th[src.meet(lam, mu)] == dst.meet(th[lam], th[mu]),
            [lams, lams],
        ),
        _first_failure(
            f,
            "morphism.action",
            (("a", VEC), ("lambda", LAM)),
            lambda a, lam: th[src.act(a, lam)] == dst.act(phi.apply(a), th[lam]),
            [src.points, lams],
        ),
    ]
    return CheckReport(subject=f"{src.label} -> {dst.label}", mode="exhaustive", verdicts=verdicts)


@dataclass
class CarrierMap:
    """A homomorphism of F-inverse carriers that maps sigma-class maxima to maxima."""

    source: Carrier
    target: Carrier
    f: Callable[[Any], Any]


def identity_map(c: Carrier) -> CarrierMap:
    return CarrierMap(c, c, lambda x: x)


@dataclass
class Equivalence:
    xi: dict
    eta: dict
    gamma: dict
    report: CheckReport


def _verdict(axiom: str, ok: bool, instances: int = 0, **counterexample) -> AxiomVerdict:
    return AxiomVerdict(
        axiom=axiom,
        mode="exhaustive",
        verdict="pass" if ok else "fail",
        instances=instances,
        counterexample=counterexample or None if not ok else None,
    )


def _xi_eta(r: PartialRep, fc: FCarrier, kf: KRepresentation) -> tuple[dict, dict]:
    zero = r.source.zero()
    xi = {lam: kf.name_of(FLambdaElement(lam, zero)) for lam in r.lattice.elements}
    eta = {a: kf.quotient.project(fc.maximum(a)) for a in r.points}
    return xi, eta


def _xi_eta_verdicts(r: PartialRep, kf: KRepresentation, xi: dict, eta: dict) -> list[AxiomVerdict]:
    krep = kf.rep
    lams = list(r.lattice.elements)
    f = r.field
    verdicts = [
        _verdict("xi.bijective", sorted(xi.values()) == sorted(krep.lattice.elements), len(lams)),
        _verdict("xi.unit", xi[r.unit] == krep.unit, 1),
        _first_failure(
            f, "xi.meet", (("lambda", LAM), ("mu", LAM)), lambda lam, mu: xi[r.meet(lam, mu)] == krep.meet(xi[lam], xi[mu]), [lams, lams]
        ),
    ]
    columns = [eta[r.source.basis_vector(i)] for i in range(r.source.dim)]
    try:
        hom = AlgebraHom(r.source, krep.source, Matrix.from_columns(f, columns, krep.source.dim))
        lie = all(eta[a] == hom.apply(a) for a in r.points) and hom.is_iso()
        note = None
    except (ValidationFailure, AmbientMismatch) as err:
        lie, note = False, str(err)
    verdicts.append(
        AxiomVerdict(axiom="eta.iso", mode="exhaustive", verdict="pass" if lie else "fail", instances=len(r.points), note=note)
    )
    verdicts.append(
        _first_failure(
            f,
            "xi_eta.action",
            (("a", VEC), ("lambda", LAM)),
            lambda a, lam: xi[r.act(a, lam)] == krep.act(eta[a], xi[lam]),
            [r.points, lams],
        )
    )
    return verdicts


def _gamma(c: Carrier, kc: KRepresentation) -> dict:
    return {s: FLambdaElement(kc.name_of(c.zero_of(s)), kc.quotient.project(s)) for s in c.elements()}


def _gamma_verdicts(c: Carrier, kc: KRepresentation, fk: FCarrier, gamma: dict) -> list[AxiomVerdict]:
    images = set(gamma.values())
    verdicts = [_verdict("gamma.bijective", len(images) == len(gamma) and images == set(fk.elements()), len(gamma))]
    hom = check_carrier_map(c, fk, gamma.__getitem__, f"gamma: {c.name} -> {fk.name}", list(gamma))
    verdicts += [v.model_copy(update={"axiom": "gamma." + v.axiom.split(".", 1)[1]}) for v in hom.verdicts]
    sq = kc.quotient
    wrong = next(
        (v for v in sq.by_vector if gamma[sq.maximum(v)] != fk.maximum(v)),
        None,
    )
    verdicts.append(_verdict("gamma.maxima", wrong is None, len(sq.by_vector)))
    return verdicts


def equivalence_witnesses(
    r: PartialRep,
    c: Optional[Carrier] = None,
    config: Optional[RunConfig] = None,
    rep_morphisms: Sequence[RepMorphism] = (),
    carrier_maps: Sequence[CarrierMap] = (),
) -> Equivalence:
    """
    xi(lam) = (lam, 0) and eta(a) = class of (., a) identify r with KF(r); gamma(s) = (0_s, class of s)
    identifies S with FK(S). Naturality is checked against the supplied morphisms.
    """
    require_odd(r.field)
    fr = build_F(r, config)
    kf = functor_K(fr, config)
    xi, eta = _xi_eta(r, fr, kf)
    verdicts = _xi_eta_verdicts(r, kf, xi, eta)
    verdicts += check_F_sigma(fr, kf.quotient.sigma).verdicts

    for mor in rep_morphisms:
        if mor.source is not r:
            raise AmbientMismatch("naturality morphisms must start at the given representation")
        fr2 = build_F(mor.target, config)
        kf2 = functor_K(fr2, config)
        xi2, eta2 = _xi_eta(mor.target, fr2, kf2)
        zero2 = mor.target.source.zero()

        def kf_theta(name: str) -> str:
            e = kf.idempotent(name)
            return kf2.name_of(FLambdaElement(mor.theta[e.level], zero2))

        def kf_phi(v: Vector) -> Vector:
            m = kf.quotient.maximum(v)
            return kf2.quotient.project(fr2.maximum(mor.phi.apply(m.point)))

        verdicts.append(
            _verdict(
                "naturality.xi",
                all(kf_theta(xi[lam]) == xi2[mor.theta[lam]] for lam in r.lattice.elements),
                len(r.lattice.elements),
            )
        )
        verdicts.append(
            _verdict("naturality.eta", all(kf_phi(eta[a]) == eta2[mor.phi.apply(a)] for a in r.points), len(r.points))
        )

    gamma: dict = {}
    if c is not None:
        kc = functor_K(c, config)
        fk = build_F(kc.rep, config)
        gamma = _gamma(c, kc)
        verdicts += _gamma_verdicts(c, kc, fk, gamma)
        for cm in carrier_maps:
            if cm.source is not c:
                raise AmbientMismatch("naturality maps must start at the given carrier")
            kt = functor_K(cm.target, config)
            gamma_t = _gamma(cm.target, kt)

            def fk_map(x: FLambdaElement) -> FLambdaElement:
                level = kt.name_of(cm.f(kc.idempotent(x.level)))
                return FLambdaElement(level, kt.quotient.project(cm.f(kc.quotient.maximum(x.point))))

            verdicts.append(
                _verdict(
                    "naturality.gamma",
                    all(fk_map(gamma[s]) == gamma_t[cm.f(s)] for s in gamma),
                    len(gamma),
                )
            )
    subject = f"equivalence witnesses for {r.label}" + (f" and {c.name}" if c is not None else "")
    return Equivalence(xi, eta, gamma, CheckReport(subject=subject, mode="exhaustive", verdicts=verdicts))


def el_to_F_iso(alg: StructAlgebra, config: Optional[RunConfig] = None) -> IsoWitness:
    """(A, a) -> (A, a) from E(L) onto F(P_f(L), L), checked to be a bijective homomorphism."""
    config = config or RunConfig()
    el = ELCarrier(alg, config.dim_caps.el)
    fc = FCarrier(subspace_rep(alg, config.dim_caps.el))
    xs = el.elements()
    mapping = {x: FLambdaElement(subspace_name(x.subspace), x.point) for x in xs}
    bijective = len(set(mapping.values())) == len(xs) and set(mapping.values()) == set(fc.elements())
    report = check_carrier_map(el, fc, mapping.__getitem__, f"{el.name} -> {fc.name}", xs)
    report = report.model_copy(
        update={"verdicts": [_verdict("map.bijective", bijective, len(xs))] + report.verdicts}
    )
    return IsoWitness(mapping, report)


def theta_phi(phi: AlgebraHom, source: PartialRep, target: PartialRep) -> dict:
    """Theta_phi(A) = inf phi(A).eps."""
    return {name: target.inf_of(image(phi.matrix, s)) for name, s in source.spaces.items()}


def adjunction_beta(phi: AlgebraHom, target: PartialRep, source: Optional[PartialRep] = None) -> RepMorphism:
    """beta(phi) = (Theta_phi, phi) from (P_f(L), L) to the target representation."""
    require_odd(phi.source.field)
    source = source or subspace_rep(phi.source)
    if source.spaces is None:
        raise AmbientMismatch("beta starts at a subspace representation")
    return RepMorphism(source, target, theta_phi(phi, source, target), phi)


def beta_bijection_check(alg: StructAlgebra, target: PartialRep, config: Optional[RunConfig] = None) -> CheckReport:
    """
    Enumerates Hom(L, H) and every morphism (P_f(L), L) -> (Pi, H), checks that beta is a bijection
    between them, and that beta is natural in L (against every endomorphism of L) and in (Pi, H)
    (against the hat morphisms of every endomorphism of H when Pi = P_f(H), else the identity).
    """
    config = config or RunConfig()
    require_odd(alg.field)
    if alg.dim > config.dim_caps.finverse:
        raise EnumerationBoundExceeded(f"dim L = {alg.dim} exceeds cap {config.dim_caps.finverse}")
    cap = config.dim_caps.hom_candidates
    h = target.source
    src = subspace_rep(alg)
    homs = list(enumerate_homs(alg, h, cap))
    betas = [adjunction_beta(phi, target, src) for phi in homs]
    logger.info("1. %d homomorphisms %s -> %s", len(homs), alg.label, h.label)

    bad = next((b for b in betas if not check_rep_morphism(b).passed), None)
    verdicts = [
        _verdict("beta.morphism", bad is None, len(betas), **({"phi": bad.phi.matrix.to_json()} if bad else {})),
        _verdict("beta.injective", len({b.key() for b in betas}) == len(betas), len(betas)),
    ]

    free = [lam for lam in src.lattice.elements if lam != src.unit]
    candidates = len(target.lattice.elements) ** len(free) * len(homs)
    if candidates > cap:
        raise EnumerationBoundExceeded(f"{candidates} candidate morphisms exceed cap {cap}")
    found = set()
    for phi in homs:
        for choice in itertools.product(target.lattice.elements, repeat=len(free)):
            theta = dict(zip(free, choice))
            theta[src.unit] = target.unit
            mor = RepMorphism(src, target, theta, phi)
            if check_rep_morphism(mor).passed:
                found.add(mor.key())
    logger.info("2. %d partial representation morphisms out of %d candidates", len(found), candidates)
    image_keys = {b.key() for b in betas}
    verdicts.append(
        AxiomVerdict(
            axiom="beta.surjective",
            mode="exhaustive",
            verdict="pass" if found == image_keys else "fail",
            instances=candidates,
            note=f"{len(homs)} homomorphisms, {len(found)} morphisms",
        )
    )

    by_phi = {b.phi.matrix: b for b in betas}
    first_ok, first_count = True, 0
    for gamma in enumerate_homs(alg, alg, cap):
        hat = hat_morphism(src, src, gamma)
        for phi in homs:
            first_count += 1
            composed = by_phi[phi.compose(gamma).matrix]
            if any(composed.theta[name] != by_phi[phi.matrix].theta[hat.theta[name]] for name in src.spaces):
                first_ok = False
                break
        if not first_ok:
            break
    verdicts.append(_verdict("naturality.first", first_ok, first_count))

    if target.spaces is not None:
        outs = [hat_morphism(target, target, psi) for psi in enumerate_homs(h, h, cap)]
    else:
        outs = [identity_morphism(target)]
    second_ok, second_count = True, 0
    for out in outs:
        for phi in homs:
            second_count += 1
            composed = theta_phi(out.phi.compose(phi), src, out.target)
            if any(composed[name] != out.theta[by_phi[phi.matrix].theta[name]] for name in src.spaces):
                second_ok = False
                break
        if not second_ok:
            break
    logger.info("3. naturality over %d + %d pairs", first_count, second_count)
    verdicts.append(_verdict("naturality.second", second_ok, second_count))
    return CheckReport(subject=f"beta: Hom({alg.label}, {h.label}) -> Hom(P_f, {target.label})", mode="exhaustive", verdicts=verdicts)
