"""
Axiom checking for inverse semivector spaces, inverse semialgebras and their Lie variants.

Every check is a named identity over a quantifier pattern (elements, idempotents, scalars).
Finite carriers are checked exhaustively through a `Tabulated` view; infinite ones are sampled
with a seeded numpy Generator so every verdict can be replayed from the report.
"""

from __future__ import annotations

import itertools
import logging
import zlib
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Any, Callable, Iterable, Optional, Sequence

import numpy as np

from lisa.semialgebra.carrier import Carrier, Tabulated
from lisa.utils.config import RunConfig
from lisa.utils.errors import LisaError, UnsupportedField
from lisa.utils.objects import AxiomVerdict, CheckReport

logger = logging.getLogger(__name__)

ELEM, IDEM, SCALAR, NONZERO = "elem", "idem", "scalar", "nonzero"


def zero_of(c: Carrier, x):
    """0_x = x + (-x)."""
    return c.zero_of(x)


def leq(c: Carrier, x, y) -> bool:
    """x below y in the natural order: x = y + 0_x."""
    return c.leq(x, y)


def is_idempotent(c: Carrier, x) -> bool:
    return c.add(x, x) == x


def jacobiator(c: Carrier, x, y, z):
    return c.add(
        c.add(c.mul(c.mul(x, y), z), c.mul(c.mul(y, z), x)),
        c.mul(c.mul(z, x), y),
    )


@dataclass(frozen=True)
class Axiom:
    id: str
    slots: tuple
    holds: Callable[..., bool]
    needs_mul: bool = False
    bracket_only: bool = False
    odd_char: bool = False


def _x(*names: str) -> tuple:
    return tuple((n, ELEM) for n in names)


def _alpha(kind: str = SCALAR, name: str = "alpha") -> tuple:
    return ((name, kind),)


ISV_AXIOMS = [
    Axiom("isv.add_comm", _x("x", "y"), lambda c, x, y: c.add(x, y) == c.add(y, x)),
    Axiom(
        "isv.add_assoc",
        _x("x", "y", "z"),
        lambda c, x, y, z: c.add(c.add(x, y), z) == c.add(x, c.add(y, z)),
    ),
    Axiom("isv.regular", _x("x"), lambda c, x: c.add(c.add(x, c.neg(x)), x) == x),
    Axiom(
        "isv.inverse",
        _x("x"),
        lambda c, x: c.neg(c.neg(x)) == x and c.add(c.add(c.neg(x), x), c.neg(x)) == c.neg(x),
    ),
    Axiom(
        "isv.inverse_unique",
        _x("x", "y"),
        lambda c, x, y: not (c.add(c.add(x, y), x) == x and c.add(c.add(y, x), y) == y) or y == c.neg(x),
    ),
    Axiom(
        "isv.scalar_sum",
        _alpha() + _alpha(name="beta") + _x("x"),
        lambda c, a, b, x: c.smul(a + b, x) == c.add(c.smul(a, x), c.smul(b, x)),
    ),
    Axiom(
        "isv.scalar_distributes",
        _alpha() + _x("x", "y"),
        lambda c, a, x, y: c.smul(a, c.add(x, y)) == c.add(c.smul(a, x), c.smul(a, y)),
    ),
    Axiom(
        "isv.scalar_assoc",
        _alpha() + _alpha(name="beta") + _x("x"),
        lambda c, a, b, x: c.smul(a, c.smul(b, x)) == c.smul(a * b, x),
    ),
    Axiom("isv.unit_scalar", _x("x"), lambda c, x: c.smul(c.field.one, x) == x),
    Axiom(
        "isv.negative_scalar",
        _alpha() + _x("x"),
        lambda c, a, x: c.smul(-a, x) == c.smul(a, c.neg(x)) == c.neg(c.smul(a, x)),
    ),
    Axiom(
        "isv.zero_scalar",
        _alpha() + _x("x"),
        lambda c, a, x: c.smul(c.field.zero, x) == c.zero_of(c.smul(a, x)) == c.zero_of(x),
    ),
    Axiom("isv.scaled_zero", _alpha() + _x("x"), lambda c, a, x: c.smul(a, c.zero_of(x)) == c.zero_of(x)),
]


def _naisa_scalar(c, a, x, y):
    return c.smul(a, c.mul(x, y)) == c.mul(c.smul(a, x), y) == c.mul(x, c.smul(a, y))


NAISA_AXIOMS = [
    Axiom("naisa.homogeneous", _alpha(NONZERO) + _x("x", "y"), _naisa_scalar, needs_mul=True),
    Axiom(
        "naisa.left_subdistributive",
        _x("x", "y", "z"),
        lambda c, x, y, z: c.leq(c.add(c.mul(x, y), c.mul(x, z)), c.mul(x, c.add(y, z))),
        needs_mul=True,
    ),
    Axiom(
        "naisa.right_subdistributive",
        _x("x", "z", "y"),
        lambda c, x, z, y: c.leq(c.add(c.mul(x, y), c.mul(z, y)), c.mul(c.add(x, z), y)),
        needs_mul=True,
    ),
    Axiom(
        "naisa.left_idempotent_sum",
        (("x", ELEM), ("e", IDEM), ("z", ELEM)),
        lambda c, x, e, z: c.mul(x, c.add(e, z)) == c.add(c.mul(x, e), c.mul(x, z)),
        needs_mul=True,
    ),
    Axiom(
        "naisa.right_idempotent_sum",
        (("x", ELEM), ("e", IDEM), ("z", ELEM)),
        lambda c, x, e, z: c.mul(c.add(x, e), z) == c.add(c.mul(x, z), c.mul(e, z)),
        needs_mul=True,
    ),
    Axiom(
        "naisa.idempotent_order",
        (("e", IDEM), ("f", IDEM)),
        lambda c, e, f: c.leq(c.add(e, f), c.mul(e, f)) and c.leq(c.mul(e, f), f),
        needs_mul=True,
    ),
    Axiom(
        "naisa.idempotent_commute",
        (("e", IDEM), ("f", IDEM)),
        lambda c, e, f: c.add(c.mul(e, f), c.mul(f, e)) == c.add(e, f),
        needs_mul=True,
    ),
    Axiom(
        "naisa.zero_products_idempotent",
        _x("x", "y"),
        lambda c, x, y: is_idempotent(c, c.mul(x, c.zero_of(y))) and is_idempotent(c, c.mul(c.zero_of(x), y)),
        needs_mul=True,
    ),
    Axiom(
        "naisa.zero_of_product",
        _x("x", "y"),
        lambda c, x, y: all(
            c.leq(c.zero_of(c.mul(x, y)), bound)
            for bound in (
                c.mul(c.zero_of(x), y),
                c.mul(x, c.zero_of(y)),
                c.mul(c.zero_of(x), c.zero_of(y)),
            )
        ),
        needs_mul=True,
    ),
    Axiom(
        "naisa.distributive_defect",
        _x("x", "y", "z"),
        lambda c, x, y, z: c.add(c.mul(x, c.add(y, z)), c.neg(c.add(c.mul(x, y), c.mul(x, z))))
        == c.add(c.zero_of(c.mul(x, y)), c.zero_of(c.mul(x, z))),
        needs_mul=True,
    ),
]

LIE_AXIOMS = [
    Axiom("lie.homogeneous", _alpha(NONZERO) + _x("x", "y"), _naisa_scalar, needs_mul=True),
    Axiom(
        "lie.left_subdistributive",
        _x("x", "y", "z"),
        lambda c, x, y, z: c.leq(c.add(c.mul(x, y), c.mul(x, z)), c.mul(x, c.add(y, z))),
        needs_mul=True,
    ),
    Axiom("lie.antisymmetric", _x("x", "y"), lambda c, x, y: c.mul(x, y) == c.neg(c.mul(y, x)), needs_mul=True),
    Axiom(
        "lie.idempotent_sum",
        (("x", ELEM), ("e", IDEM), ("z", ELEM)),
        lambda c, x, e, z: c.mul(x, c.add(e, z)) == c.add(c.mul(x, e), c.mul(x, z)),
        needs_mul=True,
    ),
    Axiom(
        "lie.jacobi",
        _x("x", "y", "z"),
        lambda c, x, y, z: c.leq(jacobiator(c, x, y, z), c.zero_of(c.add(c.add(x, y), z))),
        needs_mul=True,
    ),
    Axiom("lie.idempotent_bracket", (("e", IDEM), ("f", IDEM)), lambda c, e, f: c.mul(e, f) == c.add(e, f), needs_mul=True),
    Axiom(
        "lie.negation",
        _x("x", "y"),
        lambda c, x, y: c.mul(x, c.neg(y)) == c.neg(c.mul(x, y)) == c.mul(c.neg(x), y),
        needs_mul=True,
    ),
    Axiom(
        "lie.bracket_with_idempotent",
        (("x", ELEM), ("e", IDEM)),
        lambda c, x, e: is_idempotent(c, c.mul(x, e)),
        needs_mul=True,
    ),
    Axiom(
        "lie.zero_of_bracket",
        _x("x", "y"),
        lambda c, x, y: c.leq(
            c.zero_of(c.mul(x, y)),
            c.add(c.add(c.mul(x, c.zero_of(y)), c.mul(c.zero_of(x), y)), c.zero_of(c.add(x, y))),
        ),
        needs_mul=True,
    ),
    Axiom(
        "lie.self_bracket",
        _x("x"),
        lambda c, x: c.leq(c.mul(x, x), c.zero_of(x)),
        needs_mul=True,
        odd_char=True,
    ),
]


def _local_zeros(c, x, y):
    zx, zy = c.zero_of(x), c.zero_of(y)
    return c.mul(x, zy) == c.mul(zx, y) == c.mul(zx, zy) == c.zero_of(c.mul(x, y)) == c.add(zx, zy)


SEMILATTICE_AXIOMS = [
    Axiom(
        "semilattice.identity",
        _x("x", "y"),
        lambda c, x, y: c.zero_of(c.mul(x, y)) == c.zero_of(c.add(x, y)),
        needs_mul=True,
    ),
    Axiom(
        "semilattice.left_distributive",
        _x("x", "y", "z"),
        lambda c, x, y, z: c.mul(x, c.add(y, z)) == c.add(c.mul(x, y), c.mul(x, z)),
        needs_mul=True,
    ),
    Axiom(
        "semilattice.right_distributive",
        _x("x", "y", "z"),
        lambda c, x, y, z: c.mul(c.add(x, y), z) == c.add(c.mul(x, z), c.mul(y, z)),
        needs_mul=True,
    ),
    Axiom("semilattice.local_zeros", _x("x", "y"), _local_zeros, needs_mul=True),
    Axiom(
        "semilattice.idempotent_product",
        (("e", IDEM), ("f", IDEM)),
        lambda c, e, f: c.mul(e, f) == c.add(e, f) == c.mul(f, e),
        needs_mul=True,
    ),
    Axiom(
        "semilattice.jacobi",
        _x("x", "y", "z"),
        lambda c, x, y, z: jacobiator(c, x, y, z) == c.zero_of(c.add(c.add(x, y), z)),
        needs_mul=True,
        bracket_only=True,
    ),
    Axiom(
        "semilattice.self_bracket",
        _x("x"),
        lambda c, x: c.mul(x, x) == c.zero_of(x),
        needs_mul=True,
        bracket_only=True,
        odd_char=True,
    ),
]

ASSOC_AXIOMS = [
    Axiom(
        "associative",
        _x("x", "y", "z"),
        lambda c, x, y, z: c.mul(c.mul(x, y), z) == c.mul(x, c.mul(y, z)),
        needs_mul=True,
    ),
    Axiom(
        "associative.commutator_zero",
        _x("x", "y"),
        lambda c, x, y: c.leq(
            c.zero_of(c.add(c.mul(x, y), c.neg(c.mul(y, x)))),
            c.add(c.zero_of(x), c.zero_of(y)),
        ),
        needs_mul=True,
    ),
]

RIGHT_DISTRIBUTIVE_AXIOMS = [
    Axiom(
        "right_distributive",
        _x("x", "y", "z"),
        lambda c, x, y, z: c.mul(c.add(x, y), z) == c.add(c.mul(x, z), c.mul(y, z)),
        needs_mul=True,
    ),
    Axiom(
        "right_distributive.zero_left",
        _x("x", "y"),
        lambda c, x, y: c.mul(c.zero_of(x), y) == c.zero_of(c.mul(x, y)),
        needs_mul=True,
    ),
]

LEFT_DISTRIBUTIVE_AXIOMS = [
    Axiom(
        "left_distributive",
        _x("x", "y", "z"),
        lambda c, x, y, z: c.mul(x, c.add(y, z)) == c.add(c.mul(x, y), c.mul(x, z)),
        needs_mul=True,
    ),
]

SMINUS_AXIOMS = [
    Axiom(
        "sminus",
        _x("x", "y"),
        lambda c, x, y: c.zero_of(c.mul(x, y)) == c.add(c.mul(c.zero_of(x), y), c.mul(x, c.zero_of(y))),
        needs_mul=True,
    ),
]

EL_ZERO_AXIOMS = [
    Axiom(
        "el.zero_bracket",
        _x("x", "y"),
        lambda c, x, y: c.mul(c.zero_of(x), y) == c.mul(x, c.zero_of(y)) == c.zero_of(c.add(x, y)),
        needs_mul=True,
    ),
]

SUITES: dict[str, list[Axiom]] = {
    "isv": ISV_AXIOMS,
    "naisa": NAISA_AXIOMS,
    "lie": LIE_AXIOMS,
    "semilattice": SEMILATTICE_AXIOMS,
    "associative": ASSOC_AXIOMS,
    "right_distributive": RIGHT_DISTRIBUTIVE_AXIOMS,
    "left_distributive": LEFT_DISTRIBUTIVE_AXIOMS,
    "sminus": SMINUS_AXIOMS,
    "el_zero": EL_ZERO_AXIOMS,
}


class _Pools:
    """Argument pools for one run: exhaustive lists, a listed universe, or a seeded sampler."""

    def __init__(self, c: Carrier, mode: str, universe: Optional[list], bound: int) -> None:
        self.c = c
        self.mode = mode
        self.bound = bound
        self.universe = universe
        if universe is not None:
            idems: dict = {}
            for x in universe:
                idems.setdefault(c.zero_of(x), None)
            self.idems = list(idems)
        if c.field.is_finite:
            self.scalars = c.field.elements()
            self.nonzero = c.field.nonzero()
        else:
            self.scalars = [c.field(k) for k in (0, 1, -1, 2, 3, -2)] + [c.field.one / c.field(2)]
            self.nonzero = [s for s in self.scalars if s]

    def pool(self, kind: str) -> list:
        return {ELEM: self.universe, IDEM: self.idems, SCALAR: self.scalars, NONZERO: self.nonzero}[kind]

    def draw(self, kind: str, rng):
        c = self.c
        if kind == ELEM:
            return c.sample(rng)
        if kind == IDEM:
            return c.zero_of(c.sample(rng))
        alpha = c.sample_scalar(rng, self.bound)
        while kind == NONZERO and not alpha:
            alpha = c.sample_scalar(rng, self.bound)
        return alpha


def _describe(c: Carrier, slots: tuple, args: Sequence) -> dict[str, Any]:
    out = {}
    for (name, kind), arg in zip(slots, args):
        out[name] = c.field.to_str(arg) if kind in (SCALAR, NONZERO) else c.describe(arg)
    return out


def _check_one(axiom: Axiom, c: Carrier, pools: _Pools, trials: int, seed: int) -> AxiomVerdict:
    mode = pools.mode
    if axiom.needs_mul and not c.has_mul:
        return AxiomVerdict(axiom=axiom.id, mode=mode, verdict="skipped", note="carrier has no product")
    if axiom.bracket_only and not c.bracket:
        return AxiomVerdict(axiom=axiom.id, mode=mode, verdict="skipped", note="product is not a bracket")
    if axiom.odd_char and c.field.characteristic == 2:
        return AxiomVerdict(axiom=axiom.id, mode=mode, verdict="skipped", note="skipped: char 2")
    if mode == "sampled":
        rng = np.random.default_rng([seed, zlib.crc32(axiom.id.encode())])
        instances: Iterable = ([pools.draw(kind, rng) for _, kind in axiom.slots] for _ in range(trials))
    else:
        instances = itertools.product(*(pools.pool(kind) for _, kind in axiom.slots))
    count = 0
    try:
        for args in instances:
            count += 1
            if not axiom.holds(c, *args):
                return AxiomVerdict(
                    axiom=axiom.id,
                    mode=mode,
                    verdict="fail",
                    instances=count,
                    counterexample=_describe(c, axiom.slots, args),
                )
    except LisaError as err:
        return AxiomVerdict(axiom=axiom.id, mode=mode, verdict="fail", instances=count, note=str(err))
    return AxiomVerdict(axiom=axiom.id, mode=mode, verdict="pass", instances=count)


def run_axioms(
    c: Carrier,
    axioms: Sequence[Axiom],
    subject: Optional[str] = None,
    config: Optional[RunConfig] = None,
    elements: Optional[Sequence] = None,
    mode: str = "auto",
    tabulate: bool = True,
) -> CheckReport:
    """
    Check every axiom against the carrier.

    mode "auto" picks "listed" when elements are supplied, "exhaustive" for finite carriers and
    "sampled" otherwise. Predicates that inspect element internals pass tabulate=False.
    """
    config = config or RunConfig()
    if mode == "auto":
        mode = "listed" if elements is not None else ("exhaustive" if c.is_finite else "sampled")
    view: Carrier = c
    universe: Optional[list] = None
    if mode == "exhaustive":
        if not c.is_finite:
            raise UnsupportedField(f"{c.name} is infinite; use sampled mode")
        if tabulate:
            view = Tabulated(c)
            universe = view.elements()
        else:
            universe = list(c.elements())
    elif mode == "listed":
        universe = list(elements or [])
    pools = _Pools(view, mode, universe, config.scalar_bound)
    if config.threads > 1 and len(axioms) > 1:
        # one rng per axiom and idempotent table fills keep verdicts independent of scheduling
        with ThreadPoolExecutor(max_workers=config.threads) as pool:
            verdicts = list(pool.map(lambda a: _check_one(a, view, pools, config.trials, config.seed), axioms))
    else:
        verdicts = [_check_one(a, view, pools, config.trials, config.seed) for a in axioms]
    for v in verdicts:
        if v.verdict == "fail":
            logger.info("%s: %s fails at %s", subject or c.name, v.axiom, v.counterexample)
    sampled = mode == "sampled"
    return CheckReport(
        subject=subject or c.name,
        mode=mode,
        seed=config.seed if sampled else None,
        trials=config.trials if sampled else None,
        verdicts=verdicts,
    )


def run_suites(c: Carrier, suites: Sequence[str], **kwargs) -> CheckReport:
    axioms = [a for name in suites for a in SUITES[name]]
    return run_axioms(c, axioms, **kwargs)


def check_inverse_semivector(c: Carrier, **kwargs) -> CheckReport:
    return run_suites(c, ["isv"], **kwargs)


def check_naisa(c: Carrier, **kwargs) -> CheckReport:
    return run_suites(c, ["isv", "naisa"], **kwargs)


def check_lie_isa(c: Carrier, **kwargs) -> CheckReport:
    return run_suites(c, ["isv", "lie"], **kwargs)


def check_semilattice_of_algebras(c: Carrier, **kwargs) -> CheckReport:
    return run_suites(c, ["isv", "naisa", "semilattice"], **kwargs)


@dataclass
class SigmaData:
    """The sigma partition of a finite carrier, computed on its tabulated view."""

    table: Tabulated
    idempotents: list[int]
    classes: list[list[int]]
    class_of: dict[int, int]
    maxima: dict[int, Optional[int]] = field(default_factory=dict)

    def element(self, i: int):
        return self.table.element(i)

    def maximum_of(self, i: int) -> Optional[int]:
        return self.maxima[self.class_of[i]]


def sigma_related(t: Carrier, idempotents: Sequence, s, u) -> bool:
    """s sigma u iff s + e = u + e for some idempotent e."""
    return any(t.add(s, e) == t.add(u, e) for e in idempotents)


def sigma_partition(c: Carrier) -> SigmaData:
    if not c.is_finite:
        raise UnsupportedField("sigma classes need a finite carrier")
    t = c if isinstance(c, Tabulated) else Tabulated(c)
    idems = sorted({t.zero_of(i) for i in t.elements()})
    classes: list[list[int]] = []
    class_of: dict[int, int] = {}
    for s in t.elements():
        for k, cls in enumerate(classes):
            if sigma_related(t, idems, s, cls[0]):
                cls.append(s)
                class_of[s] = k
                break
        else:
            class_of[s] = len(classes)
            classes.append([s])
    maxima: dict[int, Optional[int]] = {}
    for k, cls in enumerate(classes):
        maxima[k] = next((m for m in cls if all(t.leq(u, m) for u in cls)), None)
    logger.info("%s: %d sigma classes over %d idempotents", c.name, len(classes), len(idems))
    return SigmaData(t, idems, classes, class_of, maxima)


def check_F_inverse(c: Carrier, sigma: Optional[SigmaData] = None) -> CheckReport:
    """Sigma-class maxima, the bracket identity through maxima and the maxima premorphism law."""
    sigma = sigma or sigma_partition(c)
    t = sigma.table
    mode = "exhaustive"
    verdicts = []

    missing = [k for k, m in sigma.maxima.items() if m is None]
    verdicts.append(
        AxiomVerdict(
            axiom="finverse.greatest",
            mode=mode,
            verdict="fail" if missing else "pass",
            instances=len(sigma.classes),
            counterexample={"class": [t.describe(u) for u in sigma.classes[missing[0]]]} if missing else None,
        )
    )
    if missing:
        return CheckReport(subject=c.name, mode=mode, verdicts=verdicts)

    def m(i: int) -> int:
        return sigma.maximum_of(i)

    def first_failure(axiom: str, slots: tuple, holds: Callable[..., bool], pools: list) -> AxiomVerdict:
        count = 0
        for args in itertools.product(*pools):
            count += 1
            if not holds(*args):
                return AxiomVerdict(
                    axiom=axiom,
                    mode=mode,
                    verdict="fail",
                    instances=count,
                    counterexample={n: t.describe(a) if k != SCALAR else c.field.to_str(a) for (n, k), a in zip(slots, args)},
                )
        return AxiomVerdict(axiom=axiom, mode=mode, verdict="pass", instances=count)

    elems = t.elements()
    reps = [sigma.maxima[k] for k in range(len(sigma.classes))]
    if t.has_mul:
        verdicts.append(
            first_failure(
                "finverse.bracket",
                _x("s", "t"),
                lambda s, u: t.mul(s, u) == t.add(m(t.mul(s, u)), t.zero_of(t.add(s, u))),
                [elems, elems],
            )
        )
    else:
        verdicts.append(AxiomVerdict(axiom="finverse.bracket", mode=mode, verdict="skipped", note="carrier has no product"))
    verdicts.append(
        first_failure(
            "finverse.maxima_premorphism",
            _x("m_s", "m_t"),
            lambda ms, mt: t.add(ms, mt) == t.add(t.zero_of(ms), m(t.add(ms, mt))) == t.add(t.zero_of(mt), m(t.add(ms, mt))),
            [reps, reps],
        )
    )
    verdicts.append(
        first_failure(
            "finverse.maxima_scale",
            (("alpha", SCALAR), ("m_s", ELEM)),
            lambda a, ms: m(t.smul(a, ms)) == t.smul(a, ms),
            [c.field.nonzero(), reps],
        )
    )
    return CheckReport(subject=c.name, mode=mode, verdicts=verdicts)
