from __future__ import annotations

from typing import Any, Literal, Optional, Union

from pydantic import BaseModel, ConfigDict, Field, computed_field

SCHEMA = "lisa/1"

Scalar = Union[int, str]

Verdict = Literal["pass", "fail", "skipped", "fail (expected)"]


class Versioned(BaseModel):
    model_config = ConfigDict(populate_by_name=True)

    schema_version: str = Field(default=SCHEMA, alias="schema")


class FieldModel(BaseModel):
    kind: Literal["rationals", "prime_field"]
    characteristic: int = 0


class SubspaceModel(BaseModel):
    ambient: int
    basis: list[list[Scalar]] = []


class ProductEntry(BaseModel):
    i: int
    j: int
    out: list[tuple[int, Scalar]]


class AlgebraModel(Versioned):
    field: FieldModel
    dim: int
    flavor: Literal["general", "associative", "lie"] = "general"
    products: list[ProductEntry] = []
    name: str = ""


class PartialMapModel(BaseModel):
    domain: SubspaceModel
    action: list[list[Scalar]]


class ELElementModel(BaseModel):
    A: SubspaceModel
    a: list[Scalar]


class SemilatticeModel(BaseModel):
    elements: list[str]
    meet: list[list[Scalar]]
    unit: Optional[str] = None


class RestrictionModel(BaseModel):
    from_: str = Field(alias="from")
    to: str
    hom: list[list[Scalar]]

    model_config = ConfigDict(populate_by_name=True)


class PresheafModel(Versioned):
    base: SemilatticeModel
    objects: dict[str, AlgebraModel]
    restrictions: list[RestrictionModel] = []


class CarrierModel(Versioned):
    """A reference to one of the concrete carriers the library can build."""

    kind: Literal["pend", "pder", "pde_class", "el", "sf", "f_lambda", "algebra"]
    field: Optional[FieldModel] = None
    dim: Optional[int] = None
    algebra: Optional[AlgebraModel] = None
    presheaf: Optional[PresheafModel] = None
    rep: Optional["PartialRepModel"] = None
    algebra_class: Optional[Literal["unital_assoc", "semisimple_lie", "idempotent"]] = Field(
        default=None, alias="class"
    )
    minus: bool = False


class PremorphismEntry(BaseModel):
    x: list[Scalar]
    value: Any


class PremorphismModel(Versioned):
    L: AlgebraModel
    target: Optional[CarrierModel] = None
    entries: list[PremorphismEntry] = []
    rule: Optional[Literal["tau"]] = None


class PartialActionEntry(BaseModel):
    x: list[Scalar]
    D: SubspaceModel
    theta: list[list[Scalar]]


class PartialActionModel(Versioned):
    L: AlgebraModel
    A: AlgebraModel
    entries: list[PartialActionEntry]


class ActionEntry(BaseModel):
    a: list[Scalar]
    lambda_: str = Field(alias="lambda")
    out: str

    model_config = ConfigDict(populate_by_name=True)


class PartialRepModel(Versioned):
    L: AlgebraModel
    lattice: Optional[SemilatticeModel] = None
    action: list[ActionEntry] = []
    preset: Optional[Literal["subspaces", "trivial"]] = None


CarrierModel.model_rebuild()


class AxiomVerdict(BaseModel):
    axiom: str
    mode: str
    verdict: Verdict
    instances: int = 0
    counterexample: Optional[dict[str, Any]] = None
    note: Optional[str] = None


class CheckReport(Versioned):
    subject: str
    mode: str
    seed: Optional[int] = None
    trials: Optional[int] = None
    verdicts: list[AxiomVerdict] = []

    @property
    def passed(self) -> bool:
        return all(v.verdict != "fail" for v in self.verdicts)

    def verdict(self, axiom: str) -> AxiomVerdict:
        for v in self.verdicts:
            if v.axiom == axiom:
                return v
        raise KeyError(axiom)

    def failures(self) -> list[AxiomVerdict]:
        return [v for v in self.verdicts if v.verdict == "fail"]

    def merge(self, other: "CheckReport") -> "CheckReport":
        return self.model_copy(update={"verdicts": self.verdicts + other.verdicts})


class ClaimResult(BaseModel):
    claim: str
    status: Literal["confirmed", "refuted", "inapplicable"]
    detail: dict[str, Any] = {}

    @computed_field
    @property
    def line(self) -> str:
        return f"{self.claim}: {self.status}"


class FixtureReport(Versioned):
    name: str
    claims: list[ClaimResult] = []
    checks: list[CheckReport] = []
    config: Optional[dict[str, Any]] = None

    @property
    def summary(self) -> list[str]:
        return [c.line for c in self.claims]

    @property
    def passed(self) -> bool:
        return all(c.status != "refuted" for c in self.claims) and all(r.passed for r in self.checks)


class SuiteReport(Versioned):
    fixtures: list[FixtureReport] = []
    config: dict[str, Any] = {}

    @property
    def passed(self) -> bool:
        return all(f.passed for f in self.fixtures)


def dump(model: BaseModel) -> str:
    return model.model_dump_json(by_alias=True, indent=2)

