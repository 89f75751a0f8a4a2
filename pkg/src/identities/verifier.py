"""
Verification engine: builds both sides of a registry entry, compares them
exactly and condenses the outcome into a VerifyReport.
"""

import logging
import time
from fractions import Fraction
from typing import Any, Dict, Iterable, List, Optional

from src.identities.registry import JET, SEQUENCE, IdentityCase, get_case, registry
from src.series.qseries import eq_upto, render_coefficient
from src.utils.config import get_config
from src.utils.errors import BeyondValidity, QSeriesError
from src.utils.pipeline import VerificationPool

logger = logging.getLogger("Verifier")

MAX_ATTEMPTS = 3


class Failure:
    """First point where the two sides disagree"""

    __slots__ = ("exponent", "z_order", "lhs", "rhs")

    def __init__(self, exponent: Fraction, lhs: str, rhs: str, z_order: Optional[int] = None):
        self.exponent = Fraction(exponent)
        self.lhs = lhs
        self.rhs = rhs
        self.z_order = z_order

    def to_dict(self) -> Dict[str, Any]:
        return {
            "exp_num": self.exponent.numerator,
            "exp_den": self.exponent.denominator,
            "z_order": self.z_order,
            "lhs": self.lhs,
            "rhs": self.rhs,
        }

    def __repr__(self) -> str:
        where = f"z^{self.z_order} " if self.z_order is not None else ""
        return f"Failure({where}q^{self.exponent}: {self.lhs} != {self.rhs})"


class VerifyReport:
    def __init__(self, name: str, kind: str, order: Fraction, passed: bool,
                 failure: Optional[Failure] = None, error: Optional[str] = None,
                 elapsed_ms: float = 0.0):
        self.name = name
        self.kind = kind
        self.order = Fraction(order)
        self.passed = passed
        self.failure = failure
        self.error = error
        self.elapsed_ms = elapsed_ms

    def to_dict(self) -> Dict[str, Any]:
        """Stable report schema; timing is left out so reports are reproducible"""
        return {
            "name": self.name,
            "order": {"num": self.order.numerator, "den": self.order.denominator},
            "pass": self.passed,
            "first_failure": self.failure.to_dict() if self.failure else None,
            "error": self.error,
        }

    def __repr__(self) -> str:
        status = "pass" if self.passed else f"FAIL {self.failure or self.error}"
        return f"VerifyReport({self.name} @ {self.order}: {status})"


def _compare_sequence(case: IdentityCase, order: Fraction) -> Optional[Failure]:
    for n, left, right, match in case.sequence.rows(int(order)):
        if not match:
            return Failure(Fraction(n), str(left), str(right))
    return None


def _build_until_valid(case: IdentityCase, order: Fraction, z_order: Optional[int]):
    """Build both sides, widening the working order until they are valid below q^order"""
    margin = Fraction(get_config("engine.margin", 2))
    for attempt in range(MAX_ATTEMPTS):
        ctx = case.context(order + margin)
        lhs, rhs = case.build(ctx, z_order) if case.kind == JET else case.build(ctx)
        reached = min(lhs.valid_to, rhs.valid_to)
        if reached >= order:
            return lhs, rhs
        logger.debug(f"{case.name}: valid below q^{reached} only at margin {margin}, widening")
        margin = 2 * margin + (order - reached)
    raise BeyondValidity(f"{case.name}: sides stay below the requested order q^{order}")


def _compare_series(case: IdentityCase, order: Fraction) -> Optional[Failure]:
    lhs, rhs = _build_until_valid(case, order, None)
    divergence = eq_upto(lhs, rhs, order)
    if divergence is None:
        return None
    return Failure(divergence.exponent,
                   render_coefficient(divergence.lhs, divergence.lhs_pi),
                   render_coefficient(divergence.rhs, divergence.rhs_pi))


def _compare_jets(case: IdentityCase, order: Fraction, z_order: int) -> Optional[Failure]:
    lhs, rhs = _build_until_valid(case, order, z_order)
    top = min(lhs.max_order, rhs.max_order)
    for m in range(top + 1):
        divergence = eq_upto(lhs[m], rhs[m], order)
        if divergence is not None:
            return Failure(divergence.exponent,
                           render_coefficient(divergence.lhs, divergence.lhs_pi),
                           render_coefficient(divergence.rhs, divergence.rhs_pi), z_order=m)
    return None


def verify_case(case: IdentityCase, order=None, z_order: Optional[int] = None) -> VerifyReport:
    """Check one case at exactly the given order (its default when omitted)"""
    order = Fraction(order) if order is not None else case.default_order()
    start = time.perf_counter()
    failure, error = None, None
    try:
        if case.kind == SEQUENCE:
            failure = _compare_sequence(case, order)
        elif case.kind == JET:
            failure = _compare_jets(case, order, case.default_z_order() if z_order is None else z_order)
        else:
            failure = _compare_series(case, order)
    except QSeriesError as e:
        error = f"{type(e).__name__}: {e}"
        logger.error(f"{case.name} could not be built: {error}")
    elapsed = (time.perf_counter() - start) * 1000
    passed = failure is None and error is None
    logger.info(f"Verified {case.name} ({'pass' if passed else 'FAIL'}) in {elapsed:.1f}ms")
    return VerifyReport(case.name, case.kind, order, passed, failure, error, elapsed)


def verify(name: str, order=None) -> VerifyReport:
    """Check a registry entry at max(order, default order)"""
    case = get_case(name)
    default = case.default_order()
    target = default if order is None else max(Fraction(order), default)
    return verify_case(case, target)


def _verify_task(task) -> VerifyReport:
    name, order = task
    try:
        return verify(name, order)
    except Exception as e:
        logger.exception(f"Worker failed on {name}")
        return VerifyReport(name, "unknown", Fraction(order or 0), False, error=f"{type(e).__name__}: {e}")


def verify_all(order=None, jobs: Optional[int] = None, names: Optional[Iterable[str]] = None) -> List[VerifyReport]:
    """Reports in registry order (or the order of `names`) regardless of scheduling"""
    if names is None:
        names = [case.name for case in registry()]
    else:
        names = list(names)
        for name in names:
            get_case(name)
    tasks = [(name, order) for name in names]
    with VerificationPool(jobs) as pool:
        return pool.map_ordered(_verify_task, tasks, desc="verify")
