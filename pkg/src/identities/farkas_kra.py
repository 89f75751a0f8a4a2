"""
The odd-prime cusp expression

    d/dtau log(eta(k tau)/eta(tau))
        + 1/(2 pi i (k-2)) * sum_{l=0}^{(k-3)/2} (theta'/theta[1, (1+2l)/k])^2

which vanishes identically for k = 3, 5, 7, 11, 13. For k = 11 the theorem only
places it in S_2(Gamma_0(11)); its q-expansion is zero there too.
"""

import logging
import math
from fractions import Fraction
from typing import Optional, Tuple

from sympy import isprime

from src.algebra.cyclotomic import CycloNum
from src.dsl.evaluator import EvalContext
from src.series.qseries import AnalyticSeries
from src.utils.config import get_config
from src.utils.errors import UnsupportedK

logger = logging.getLogger("FarkasKra")

FK_GRID = 24
MAX_K = 13
FK_VANISHING = [3, 5, 7, 11, 13]


def check_k(k: int) -> int:
    if not isinstance(k, int) or isinstance(k, bool):
        raise UnsupportedK(f"k must be an integer, got {k!r}")
    if k == 2 or not isprime(k) or k > MAX_K:
        raise UnsupportedK(f"k must be an odd prime up to {MAX_K}, got {k}")
    return k


def fk_ring_order(k: int) -> int:
    """lcm(4k, 24): holds i, and every phase of the [1, j/k] characteristics"""
    return math.lcm(4 * check_k(k), 24)


def fk_cusp_expression(k: int, ctx: EvalContext) -> AnalyticSeries:
    """The expression built inside an existing evaluation context"""
    check_k(k)
    dlog = ctx.eta((k, 1), (1, -1)).tau_dlog()
    total = None
    for l in range((k - 3) // 2 + 1):
        log_deriv = ctx.log_deriv(1, Fraction(1 + 2 * l, k))
        square = log_deriv * log_deriv
        total = square if total is None else total + square
    # 1/(2 pi i (k-2)) = -i/(2(k-2)) * pi^-1
    factor = -ctx.i / (2 * (k - 2))
    return dlog + total.scale(factor, -1)


def fk_cusp_series(k: int, order=None, margin=None) -> AnalyticSeries:
    """The expression valid below q^order, on the 1/24 grid over Q(zeta_lcm(4k,24))"""
    check_k(k)
    order = Fraction(order if order is not None else get_config("engine.orders.fk", 20))
    margin = Fraction(margin if margin is not None else get_config("engine.margin", 2))
    ctx = EvalContext(order + margin, FK_GRID, fk_ring_order(k))
    series = fk_cusp_expression(k, ctx)
    logger.debug(f"k={k}: expression valid below q^{series.valid_to}")
    return series.truncate(order)


def first_nonzero(series: AnalyticSeries) -> Optional[Tuple[Fraction, CycloNum]]:
    if series.is_zero():
        return None
    n, c = series.body.leading()
    return Fraction(n, series.grid), c
