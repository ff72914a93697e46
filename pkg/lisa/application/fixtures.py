"""
Named end-to-end examples. Each fixture builds its objects from scratch, runs the relevant checks
and returns one FixtureReport per instance, so the CLI and the acceptance suite share them.
"""

import logging
from typing import Callable, Optional

from lisa.linalg.algebra import abelian, diagonal, enumerate_homs, heisenberg, solvable2
from lisa.linalg.exactalg import FieldSpec, Subspace
from lisa.semialgebra.exel import (
    ELCarrier,
    Premorphism,
    check_extension,
    check_premorphism,
    claim,
    extend_premorphism,
    heisenberg_fixture,
    jacobson_fixture,
    sigma_classes_el,
    tau_premorphism,
)
from lisa.semialgebra.finverse import (
    beta_bijection_check,
    el_to_F_iso,
    equivalence_witnesses,
    hat_morphism,
    identity_map,
    subspace_rep,
    verify_F,
)
from lisa.semialgebra.isv_core import check_lie_isa, check_naisa, run_suites
from lisa.semialgebra.paction import action_hom_correspondence, check_partial_action, idempotent_action, is_strong
from lisa.semialgebra.pmaps import PDerCarrier, PEndCarrier, check_domain_coincidence, pde_class_carrier, pe_zero
from lisa.semialgebra.semilat import build_SF, partial_functions, presheaf_iso, roundtrip_iso
from lisa.utils.config import RunConfig
from lisa.utils.errors import MalformedInput
from lisa.utils.objects import ClaimResult, FixtureReport

logger = logging.getLogger(__name__)

F2 = FieldSpec.prime(2)
F3 = FieldSpec.prime(3)
QQ = FieldSpec.rationals()


def _report(name: str, config: RunConfig, claims: list, checks: list) -> FixtureReport:
    return FixtureReport(name=name, claims=claims, checks=checks, config=config.model_dump())


def pend_laws(config: RunConfig, **_) -> list[FixtureReport]:
    """PEnd(F2^2): the right distributive associative laws hold and left distributivity breaks."""
    c = PEndCarrier(F2, 2, config.dim_caps.pend)
    size = len(c.elements())
    logger.info("1. %s has %d elements", c.name, size)
    laws = run_suites(c, ["isv", "naisa", "associative", "right_distributive"], config=config)
    left = run_suites(c, ["left_distributive"], config=config)
    witness = next((v.counterexample for v in left.verdicts if v.verdict == "fail"), None)
    claims = [
        claim("size", size == 29, size=size),
        claim("left_distributivity_fails", witness is not None, counterexample=witness),
    ]
    return [_report(f"pend-laws({c.name})", config, claims, [laws])]


def el_axioms(config: RunConfig, **_) -> list[FixtureReport]:
    """E(heisenberg(F2)): 51 elements, Lie inverse semialgebra, [0_x,y] = [x,0_y] = 0_{x+y}."""
    el = ELCarrier(heisenberg(F2), config.dim_caps.el)
    size = len(el.elements())
    logger.info("1. %s has %d elements", el.name, size)
    report = run_suites(el, ["isv", "lie", "el_zero"], config=config)
    return [_report(f"el-axioms({el.name})", config, [claim("size", size == 51, size=size)], [report])]


def heisenberg_examples(config: RunConfig, **_) -> list[FixtureReport]:
    return [heisenberg_fixture(field, config) for field in (QQ, F3)]


def jacobson(config: RunConfig, p: int = 3, **_) -> list[FixtureReport]:
    return [jacobson_fixture(p, config=config)]


def extension(config: RunConfig, **_) -> list[FixtureReport]:
    """
    The extension of tau is the identity on E(abelian(2,F2)), and a premorphism into
    PDer_unital_assoc(F2 x F2) extends to the unique linear homomorphism.
    """
    alg = abelian(2, F2)
    ext = extend_premorphism(tau_premorphism(alg, config.dim_caps.el), config, config.dim_caps.el)
    moved = next((x for x in ext.el.elements() if ext(x) != x), None)
    tau_report = check_extension(ext, config)
    claims = [claim("tau_extension_is_identity", moved is None, moved=None if moved is None else ext.el.describe(moved))]

    base = diagonal(2, F2)
    target = pde_class_carrier(base, "unital_assoc", cap=config.dim_caps.subspaces)
    line = abelian(1, F2)
    e1 = Subspace.span(F2, 2, [F2.unit_vector(2, 0)])
    table = {(F2.zero,): target.zero(), (F2.one,): pe_zero(e1)}
    rho = Premorphism.from_table(line, target, table, "rho")
    logger.info("2. extending %s into %s", rho.name, target.name)
    premorphism = check_premorphism(rho, config)
    extended = check_extension(extend_premorphism(rho, config, config.dim_caps.el), config)
    claims.append(claim("homomorphism", extended.verdict("extension.homomorphism").verdict == "pass"))
    claims.append(claim("unique", extended.verdict("extension.uniqueness").verdict == "pass"))
    return [
        _report(f"extension(tau, {alg.label})", config, claims[:1], [tau_report]),
        _report(f"extension({rho.name} -> {target.name})", config, claims[1:], [premorphism, extended]),
    ]


def partial_functions_roundtrip(config: RunConfig, **_) -> list[FixtureReport]:
    """Partial functions on two points and E(abelian(2,F2)) survive decompose after build."""
    p = partial_functions(2, F2, config.dim_caps.level)
    sf = build_SF(p, config=config)
    there = roundtrip_iso(sf, config)
    back = presheaf_iso(p, config)
    el = ELCarrier(abelian(2, F2), config.dim_caps.el)
    flat = roundtrip_iso(el, config)
    return [
        _report(
            f"partial-functions({sf.name})",
            config,
            [claim("carrier_roundtrip", there.verified), claim("presheaf_roundtrip", back.verified)],
            [there.report, back.report],
        ),
        _report(f"partial-functions({el.name})", config, [claim("carrier_roundtrip", flat.verified)], [flat.report]),
    ]


def classes(config: RunConfig, **_) -> list[FixtureReport]:
    """PDer_unital_assoc(F2 x F2): four unital ideal domains, and domains coincide on every pair."""
    c = pde_class_carrier(diagonal(2, F2), "unital_assoc", cap=config.dim_caps.subspaces)
    domains = c.domains()
    report = check_domain_coincidence(c, config)
    return [_report(f"classes({c.name})", config, [claim("domains", len(domains) == 4, count=len(domains))], [report])]


def idempotent_action_example(config: RunConfig, **_) -> list[FixtureReport]:
    """
    D_0 = A and D_x = 0 elsewhere on the idempotent algebra F2 x F2. It is a strong partial action
    that is not global. Whether it restricts from a global action is not checked.
    """
    pa = idempotent_action(abelian(1, F2), diagonal(2, F2))
    report = check_partial_action(pa, config)
    strong = is_strong(pa, config)
    corr = action_hom_correspondence(pa, "idempotent", config, enumerate_all=True)
    claims = [
        claim("partial_action", report.passed),
        claim("not_global", report.verdict("partial_action.global").verdict == "skipped"),
        claim("strong", strong.strong, witness=strong.witness),
        ClaimResult(
            claim="not_a_restriction",
            status="inapplicable",
            detail={"reason": "quantifies over every enveloping algebra"},
        ),
    ]
    return [_report(f"idempotent-action({pa.base.label})", config, claims, [report, strong.report, corr.report])]


def equivalence(config: RunConfig, **_) -> list[FixtureReport]:
    """F(P_f(L), L) = E(L), with xi, eta, gamma natural against every endomorphism of L."""
    out = []
    for alg in (abelian(1, F3), abelian(2, F3), solvable2(F3)):
        logger.info("1. %s", alg.label)
        r = subspace_rep(alg, config.dim_caps.el)
        el = ELCarrier(alg, config.dim_caps.el)
        endos = [hat_morphism(r, r, g) for g in enumerate_homs(alg, alg, config.dim_caps.hom_candidates)]
        iso = el_to_F_iso(alg, config)
        sigma = sigma_classes_el(alg, config.dim_caps.el)
        witnesses = equivalence_witnesses(r, el, config, rep_morphisms=endos, carrier_maps=[identity_map(el)])
        claims = [
            claim("F(P_f(L),L) = E(L)", iso.verified),
            claim("sigma_generic_is_analytic", sigma.agrees and sigma.maxima_are_tau),
            claim("witnesses", witnesses.report.passed, endomorphisms=len(endos)),
        ]
        out.append(_report(f"equivalence({alg.label})", config, claims, [verify_F(r, config), iso.report, witnesses.report]))
    return out


def adjunction(config: RunConfig, **_) -> list[FixtureReport]:
    """beta: Hom(L, H) -> Hom((P_f(L), L), (P_f(H), H)) for L = F3 and H in {F3, heisenberg(F3)}."""
    alg = abelian(1, F3)
    out = []
    for h in (abelian(1, F3), heisenberg(F3)):
        report = beta_bijection_check(alg, subspace_rep(h, config.dim_caps.el), config)
        out.append(_report(f"adjunction({alg.label}, {h.label})", config, [claim("beta_bijection", report.passed)], [report]))
    return out


def sampled(config: RunConfig, **_) -> list[FixtureReport]:
    """Seeded laws over Q on PEnd(Q^3), PDer(heisenberg(Q)) and E(heisenberg(Q)), replayed once."""
    h = heisenberg(QQ)
    pend = run_suites(PEndCarrier(QQ, 3), ["isv", "naisa", "associative", "right_distributive"], config=config)
    pder = check_lie_isa(PDerCarrier(h), config=config)
    el = ELCarrier(h)
    first = check_lie_isa(el, config=config)
    again = check_lie_isa(el, config=config)
    naisa = check_naisa(el, config=config)
    claims = [claim("replay", first.model_dump() == again.model_dump(), seed=config.seed, trials=config.trials)]
    return [_report("sampled(Q)", config, claims, [pend, pder, first, naisa])]


FIXTURES: dict[str, Callable[..., list[FixtureReport]]] = {
    "heisenberg": heisenberg_examples,
    "jacobson": jacobson,
    "idempotent-action": idempotent_action_example,
    "partial-functions": partial_functions_roundtrip,
    "pend-laws": pend_laws,
    "el-axioms": el_axioms,
    "extension": extension,
    "classes": classes,
    "equivalence": equivalence,
    "adjunction": adjunction,
    "sampled": sampled,
}


def run_fixture(name: str, config: Optional[RunConfig] = None, p: int = 3) -> list[FixtureReport]:
    try:
        fixture = FIXTURES[name]
    except KeyError:
        raise MalformedInput(f"unknown fixture {name!r}", {"known": sorted(FIXTURES)}) from None
    return fixture(config or RunConfig(), p=p)
