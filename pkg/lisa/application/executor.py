import logging
from typing import Optional

from dotenv import load_dotenv

from lisa.application.fixtures import run_fixture
from lisa.application.suite import run_suite
from lisa.linalg.exactalg import FieldSpec
from lisa.semialgebra.carrier import AlgebraCarrier, Carrier
from lisa.semialgebra.exel import (
    ELCarrier,
    Premorphism,
    check_extension,
    check_premorphism,
    extend_premorphism,
    tau_premorphism,
)
from lisa.semialgebra.finverse import (
    beta_bijection_check,
    build_F,
    equivalence_witnesses,
    identity_map,
    identity_morphism,
    partial_rep_from_model,
)
from lisa.semialgebra.isv_core import (
    check_F_inverse,
    check_inverse_semivector,
    check_lie_isa,
    check_naisa,
    check_semilattice_of_algebras,
)
from lisa.semialgebra.paction import check_partial_action, partial_action_from_model
from lisa.semialgebra.pmaps import CLASSES, PDerCarrier, PEndCarrier, in_class, pde_class_carrier, s_minus
from lisa.semialgebra.semilat import Presheaf, build_SF, minus_semilattice
from lisa.utils.config import RunConfig, load_config
from lisa.utils.errors import LisaError, MalformedInput, ValidationFailure
from lisa.utils.objects import (
    AlgebraModel,
    AxiomVerdict,
    CarrierModel,
    CheckReport,
    PartialActionModel,
    PartialRepModel,
    PremorphismModel,
    SuiteReport,
)
from lisa.utils.utils import algebra_from_model, field_from_model, field_to_model, load_model

logger = logging.getLogger(__name__)

SUITES = {
    "isv": check_inverse_semivector,
    "naisa": check_naisa,
    "lie": check_lie_isa,
    "semilattice": check_semilattice_of_algebras,
}


class Executor:
    """Turns JSON inputs into carriers and runs one command against them."""

    def __init__(self, config: Optional[RunConfig] = None) -> None:
        load_dotenv()
        self.config = config or load_config()

    def build_carrier(self, model: CarrierModel) -> Carrier:
        caps = self.config.dim_caps
        alg = algebra_from_model(model.algebra, caps.algebra) if model.algebra is not None else None

        def need(value, what: str):
            if value is None:
                raise MalformedInput(f"a {model.kind} carrier needs {what}")
            return value

        if model.kind == "pend":
            c: Carrier = PEndCarrier(field_from_model(need(model.field, "a field")), need(model.dim, "a dim"), caps.pend)
        elif model.kind == "pder":
            c = PDerCarrier(need(alg, "an algebra"), caps.subspaces)
        elif model.kind == "pde_class":
            c = pde_class_carrier(need(alg, "an algebra"), need(model.algebra_class, "a class"), cap=caps.subspaces)
        elif model.kind == "el":
            c = ELCarrier(need(alg, "an algebra"), caps.el)
        elif model.kind == "sf":
            c = build_SF(Presheaf.from_model(need(model.presheaf, "a presheaf"), caps.algebra), config=self.config)
        elif model.kind == "f_lambda":
            c = build_F(partial_rep_from_model(need(model.rep, "a partial representation")), self.config)
        else:
            c = AlgebraCarrier(need(alg, "an algebra"))
        if model.minus:
            c = minus_semilattice(c, self.config) if model.kind == "sf" else s_minus(c, self.config)
        logger.info("built %s", c.name)
        return c

    def check_algebra(self, path: str) -> CheckReport:
        model = load_model(path, AlgebraModel)
        try:
            alg = algebra_from_model(model, self.config.dim_caps.algebra)
        except ValidationFailure as err:
            verdict = AxiomVerdict(axiom="algebra.flavor", mode="exhaustive", verdict="fail", counterexample=err.witness, note=str(err))
            return CheckReport(subject=model.name or path, mode="exhaustive", verdicts=[verdict])
        verdicts = [AxiomVerdict(axiom="algebra.flavor", mode="exhaustive", verdict="pass", instances=alg.dim**3, note=alg.flavor)]
        for cls in CLASSES:
            try:
                member = in_class(alg, cls)
            except LisaError as err:
                verdicts.append(AxiomVerdict(axiom=f"class.{cls}", mode="exhaustive", verdict="skipped", note=str(err)))
                continue
            verdicts.append(
                AxiomVerdict(
                    axiom=f"class.{cls}",
                    mode="exhaustive",
                    verdict="pass" if member else "skipped",
                    note="member" if member else "not a member",
                )
            )
        return CheckReport(subject=alg.label, mode="exhaustive", verdicts=verdicts)

    def build_el(self, path: str, field: Optional[str] = None) -> CheckReport:
        model = load_model(path, AlgebraModel)
        if field is not None:
            model = model.model_copy(update={"field": field_to_model(FieldSpec.parse(field))})
        el = ELCarrier(algebra_from_model(model, self.config.dim_caps.algebra), self.config.dim_caps.el)
        report = check_lie_isa(el, config=self.config)
        if not el.is_finite:
            skipped = AxiomVerdict(axiom="finverse", mode="sampled", verdict="skipped", note="E(L) over Q is infinite")
            return report.model_copy(update={"verdicts": report.verdicts + [skipped]})
        size = len(el.elements())
        logger.info("%s has %d elements", el.name, size)
        report = report.merge(check_F_inverse(el))
        return report.model_copy(update={"subject": f"{el.name}: {size} elements"})

    def check_carrier(self, path: str, suite: str) -> CheckReport:
        c = self.build_carrier(load_model(path, CarrierModel))
        if suite == "finverse":
            return check_F_inverse(c)
        try:
            checker = SUITES[suite]
        except KeyError:
            raise MalformedInput(f"unknown suite {suite!r}", {"known": sorted(SUITES) + ["finverse"]}) from None
        return checker(c, config=self.config)

    def extend(self, path: str) -> CheckReport:
        model = load_model(path, PremorphismModel)
        alg = algebra_from_model(model.L, self.config.dim_caps.algebra)
        if model.rule == "tau":
            rho = tau_premorphism(alg, self.config.dim_caps.el)
        else:
            if model.target is None:
                raise MalformedInput(f"{path}: a table premorphism needs a target carrier")
            target = self.build_carrier(model.target)
            table = {alg.field.vec(e.x): target.parse(e.value) for e in model.entries}
            rho = Premorphism.from_table(alg, target, table)
        report = check_premorphism(rho, self.config)
        ext = extend_premorphism(rho, self.config, self.config.dim_caps.el)
        return report.merge(check_extension(ext, self.config))

    def check_action(self, path: str) -> CheckReport:
        pa = partial_action_from_model(load_model(path, PartialActionModel), self.config.dim_caps.algebra)
        return check_partial_action(pa, self.config)

    def fixtures(self, name: str, p: int = 3) -> SuiteReport:
        return SuiteReport(fixtures=run_fixture(name, self.config, p), config=self.config.model_dump())

    def verify_equivalence(self, rep_path: str, carrier_path: str) -> CheckReport:
        r = partial_rep_from_model(load_model(rep_path, PartialRepModel))
        c = self.build_carrier(load_model(carrier_path, CarrierModel))
        eq = equivalence_witnesses(r, c, self.config, rep_morphisms=[identity_morphism(r)], carrier_maps=[identity_map(c)])
        return eq.report

    def verify_adjunction(self, algebra_path: str, rep_path: str) -> CheckReport:
        alg = algebra_from_model(load_model(algebra_path, AlgebraModel), self.config.dim_caps.algebra)
        target = partial_rep_from_model(load_model(rep_path, PartialRepModel))
        return beta_bijection_check(alg, target, self.config)

    def suite(self) -> SuiteReport:
        return run_suite(self.config)

