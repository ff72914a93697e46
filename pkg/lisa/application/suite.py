import logging
from typing import Optional

from lisa.application.fixtures import run_fixture
from lisa.utils.config import RunConfig
from lisa.utils.objects import SuiteReport

logger = logging.getLogger(__name__)

ACCEPTANCE = (
    "pend-laws",
    "el-axioms",
    "heisenberg",
    "extension",
    "jacobson",
    "partial-functions",
    "classes",
    "equivalence",
    "adjunction",
    "sampled",
    "idempotent-action",
)


def run_suite(config: Optional[RunConfig] = None, names: Optional[tuple] = None) -> SuiteReport:
    """Every acceptance fixture, in a fixed order."""
    config = config or RunConfig()
    reports = []
    for k, name in enumerate(names or ACCEPTANCE, start=1):
        logger.info("%d. %s", k, name)
        reports.extend(run_fixture(name, config))
    failed = [r.name for r in reports if not r.passed]
    if failed:
        logger.warning("suite failures: %s", ", ".join(failed))
    return SuiteReport(fixtures=reports, config=config.model_dump())

