import logging
from enum import Enum
from pathlib import Path
from typing import Annotated, Callable, Optional, Union

import typer
from devtools import pprint
from pydantic import ValidationError

from lisa.application.executor import Executor
from lisa.utils.config import load_config
from lisa.utils.errors import LisaError, MalformedInput, PreconditionFailure
from lisa.utils.objects import CheckReport, SuiteReport, dump
from lisa.utils.utils import configure_logging

app = typer.Typer()
logger = logging.getLogger("lisa")

Seed = Annotated[Optional[int], typer.Option(help="seed for sampled checks")]
Trials = Annotated[Optional[int], typer.Option(help="trials per sampled axiom")]
DimCap = Annotated[Optional[int], typer.Option(help="largest dimension to enumerate")]
Out = Annotated[Optional[Path], typer.Option(help="write the JSON report here")]
Json = Annotated[bool, typer.Option("--json", help="print the JSON report")]
Verbose = Annotated[bool, typer.Option("--verbose", "-v")]


class Suite(str, Enum):
    isv = "isv"
    naisa = "naisa"
    lie = "lie"
    semilattice = "semilattice"
    finverse = "finverse"


Report = Union[CheckReport, SuiteReport]


def summarize(report: Report) -> dict:
    if isinstance(report, CheckReport):
        return {report.subject: [f"{v.axiom}: {v.verdict}" for v in report.verdicts]}
    out = {}
    for f in report.fixtures:
        failing = [f"{v.axiom}: fail" for r in f.checks for v in r.failures()]
        out[f.name] = f.summary + failing
    return out


def run(
    command: Callable[[Executor], Report],
    seed: Optional[int],
    trials: Optional[int],
    dim_cap: Optional[int],
    out: Optional[Path],
    as_json: bool,
    verbose: bool,
) -> None:
    """Exit 2 on malformed input, 1 when a verdict fails, 0 otherwise."""
    configure_logging(verbose)
    try:
        executor = Executor(load_config(seed=seed, trials=trials, dim_cap=dim_cap))
        report = command(executor)
    except (MalformedInput, ValidationError) as err:
        logger.error("malformed input: %s", err)
        raise typer.Exit(code=2)
    except PreconditionFailure as err:
        logger.error("precondition failed: %s", err)
        if isinstance(err.report, CheckReport):
            emit(err.report, out, as_json)
        raise typer.Exit(code=1)
    except LisaError as err:
        logger.error("%s: %s", type(err).__name__, err)
        raise typer.Exit(code=1)
    emit(report, out, as_json)
    raise typer.Exit(code=0 if report.passed else 1)


def emit(report: Report, out: Optional[Path], as_json: bool) -> None:
    text = dump(report)
    if out is not None:
        out.write_text(text + "\n")
    if as_json:
        typer.echo(text)
    elif out is None:
        pprint(summarize(report))


@app.command()
def check_algebra(
    file: str, seed: Seed = None, trials: Trials = None, dim_cap: DimCap = None, out: Out = None, json: Json = False, verbose: Verbose = False
) -> None:
    """
    Validate an algebra's flavor and decide its class memberships
    """
    run(lambda e: e.check_algebra(file), seed, trials, dim_cap, out, json, verbose)


@app.command()
def build_el(
    algebra_file: str,
    field: Annotated[Optional[str], typer.Option(help="re-read the algebra over Q or Fp")] = None,
    seed: Seed = None,
    trials: Trials = None,
    dim_cap: DimCap = None,
    out: Out = None,
    json: Json = False,
    verbose: Verbose = False,
) -> None:
    """
    Materialize E(L) and check the Lie inverse semialgebra and F-inverse laws
    """
    run(lambda e: e.build_el(algebra_file, field), seed, trials, dim_cap, out, json, verbose)


@app.command()
def check_carrier(
    carrier_file: str,
    suite: Annotated[Suite, typer.Option(help="which law suite to run")] = Suite.isv,
    seed: Seed = None,
    trials: Trials = None,
    dim_cap: DimCap = None,
    out: Out = None,
    json: Json = False,
    verbose: Verbose = False,
) -> None:
    """
    Run a law suite against a carrier
    """
    run(lambda e: e.check_carrier(carrier_file, suite.value), seed, trials, dim_cap, out, json, verbose)


@app.command()
def extend(
    premorphism_file: str, seed: Seed = None, trials: Trials = None, dim_cap: DimCap = None, out: Out = None, json: Json = False, verbose: Verbose = False
) -> None:
    """
    Extend a premorphism to E(L) and check uniqueness, the bracket formula and the homomorphism law
    """
    run(lambda e: e.extend(premorphism_file), seed, trials, dim_cap, out, json, verbose)


@app.command()
def check_action(
    action_file: str, seed: Seed = None, trials: Trials = None, dim_cap: DimCap = None, out: Out = None, json: Json = False, verbose: Verbose = False
) -> None:
    """
    Check a tabulated partial action of L on A by partial derivations
    """
    run(lambda e: e.check_action(action_file), seed, trials, dim_cap, out, json, verbose)


@app.command()
def fixtures(
    name: str,
    p: Annotated[int, typer.Option("--p", help="prime for the jacobson fixture")] = 3,
    seed: Seed = None,
    trials: Trials = None,
    dim_cap: DimCap = None,
    out: Out = None,
    json: Json = False,
    verbose: Verbose = False,
) -> None:
    """
    Run a named example end to end
    """
    run(lambda e: e.fixtures(name, p), seed, trials, dim_cap, out, json, verbose)


@app.command()
def verify_equivalence(
    rep_file: str,
    carrier_file: str,
    seed: Seed = None,
    trials: Trials = None,
    dim_cap: DimCap = None,
    out: Out = None,
    json: Json = False,
    verbose: Verbose = False,
) -> None:
    """
    Check the xi, eta and gamma witnesses for a partial representation and an F-inverse carrier
    """
    run(lambda e: e.verify_equivalence(rep_file, carrier_file), seed, trials, dim_cap, out, json, verbose)


@app.command()
def verify_adjunction(
    algebra_file: str,
    rep_file: str,
    seed: Seed = None,
    trials: Trials = None,
    dim_cap: DimCap = None,
    out: Out = None,
    json: Json = False,
    verbose: Verbose = False,
) -> None:
    """
    Check that beta is a natural bijection onto morphisms from (P_f(L), L)
    """
    run(lambda e: e.verify_adjunction(algebra_file, rep_file), seed, trials, dim_cap, out, json, verbose)


@app.command()
def suite(
    seed: Seed = None, trials: Trials = None, dim_cap: DimCap = None, out: Out = None, json: Json = False, verbose: Verbose = False
) -> None:
    """
    Run every acceptance fixture
    """
    run(lambda e: e.suite(), seed, trials, dim_cap, out, json, verbose)


if __name__ == "__main__":
    app()
