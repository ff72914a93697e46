import json
import logging
from pathlib import Path
from typing import Any, Optional, Type, TypeVar

from pydantic import BaseModel, ValidationError
from rich.console import Console
from rich.logging import RichHandler

from lisa.linalg.algebra import StructAlgebra, from_products
from lisa.linalg.exactalg import FieldSpec, Subspace
from lisa.utils.config import DimCaps
from lisa.utils.errors import EnumerationBoundExceeded, MalformedInput
from lisa.utils.objects import AlgebraModel, FieldModel, SubspaceModel

M = TypeVar("M", bound=BaseModel)


def configure_logging(verbose: bool = False) -> None:
    """Rich log records on stderr; stdout stays reserved for reports."""
    logging.basicConfig(
        level=logging.DEBUG if verbose else logging.WARNING,
        format="%(message)s",
        datefmt="[%X]",
        handlers=[RichHandler(console=Console(stderr=True), rich_tracebacks=True, show_path=verbose)],
        force=True,
    )


def load_json(path: str) -> Any:
    try:
        with open(Path(path), "r") as open_file:
            return json.load(open_file)
    except (OSError, json.JSONDecodeError) as err:
        raise MalformedInput(f"cannot read {path}: {err}") from err


def parse_model(data: Any, model: Type[M], source: str = "input") -> M:
    try:
        return model.model_validate(data)
    except ValidationError as err:
        raise MalformedInput(f"{source} does not match {model.__name__}", {"errors": err.errors()}) from err


def load_model(path: str, model: Type[M]) -> M:
    return parse_model(load_json(path), model, path)


def field_from_model(model: FieldModel) -> FieldSpec:
    if model.kind == "rationals":
        return FieldSpec.rationals()
    return FieldSpec.prime(model.characteristic)


def field_to_model(field: FieldSpec) -> FieldModel:
    return FieldModel(kind="rationals" if not field.is_finite else "prime_field", characteristic=field.characteristic)


def subspace_from_model(field: FieldSpec, model: SubspaceModel) -> Subspace:
    vectors = [field.vec(row) for row in model.basis]
    if any(len(v) != model.ambient for v in vectors):
        raise MalformedInput(f"basis vectors must have length {model.ambient}")
    return Subspace.span(field, model.ambient, vectors)


def algebra_from_model(model: AlgebraModel, cap: Optional[int] = None) -> StructAlgebra:
    """cap defaults to DimCaps().algebra; callers holding a RunConfig pass theirs."""
    cap = DimCaps().algebra if cap is None else cap
    if model.dim > cap:
        raise EnumerationBoundExceeded(f"algebra dimension {model.dim} exceeds cap {cap}")
    field = field_from_model(model.field)
    products: dict = {}
    for entry in model.products:
        if not (0 <= entry.i < model.dim and 0 <= entry.j < model.dim):
            raise MalformedInput(f"product index ({entry.i}, {entry.j}) out of range")
        products[(entry.i, entry.j)] = {k: coeff for k, coeff in entry.out}
    return from_products(field, model.dim, products, model.flavor, model.name)

