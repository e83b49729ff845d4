"""Certified total variation distances between the finite-rank and limit measures.

Two independent routes are provided.  :func:`tv_proposition` sums the
closed-form series over partition sizes ``m`` (weights are the aggregated
``sum_{|lam|=m} 1/|Aut_*(lam)|``); :func:`tv_direct` goes partition by
partition through the definition ``1/2 sum |P - Lambda|``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Optional

from .exactnum import ProductKind, RationalInterval, euler_coefficient, euler_partial_sum, infinite_product
from .measures import Family, aut_order_formula, check_q, lambda_measure
from .partitions import enumerate_partitions

TRUNCATION_CAP = 512
DEFAULT_TRUNCATION = 64

HALF = Fraction(1, 2)
QUARTER = Fraction(1, 4)


@dataclass(frozen=True)
class TvResult:
    family: Family
    n: int
    q: int
    interval: RationalInterval
    method: str
    truncation: dict = field(default_factory=dict)


@dataclass(frozen=True)
class BoundCheck:
    family: Family
    n: int
    q: int
    lower_bound: Fraction
    upper_bound: Fraction
    verdict: str
    tv: Optional[TvResult] = None


def limit_product(family: Family, q: int, truncation: int) -> RationalInterval:
    """Enclosure of the infinite product normalizing ``P_*`` at ``u = 1`` (before any 1/2)."""
    return infinite_product(family.product_kind, q, 1, truncation)


# ---------------------------------------------------------------------------
# closed-form route


@lru_cache(maxsize=None)
def _size_weight(family: Family, q: int, m: int) -> Fraction:
    """``c * sum_{|lam| = m} 1/|Aut_*(lam)|`` with ``c`` the family's 1/2 or 1/4 prefactor.

    SP and O_EVEN index by half-size ``m`` (``|lam| = 2m``).
    """
    if family is Family.GL:
        return HALF * euler_coefficient(ProductKind.GL, q, m, reciprocal=True)
    if family is Family.U:
        return HALF * euler_coefficient(ProductKind.U, q, m, reciprocal=True)
    sp = lambda j: euler_coefficient(ProductKind.ODD_EXP, q, j, reciprocal=True)  # noqa: E731
    if family is Family.SP:
        return HALF * sp(m)
    if family is Family.O_ODD:
        return QUARTER * sp(m // 2)
    return QUARTER * (sp(m) + (sp(m - 1) if m >= 1 else 0))


def _partial_index(family: Family, n: int, m: int) -> int:
    return (n - m) // 2 if family is Family.O_ODD else n - m


def _tail_bound(family: Family, q: int, cut: int) -> Fraction:
    """Upper bound for the neglected ``sum_{m > cut}`` of ``weight_m * product``.

    Uses the per-term bounds weight_m * product <= c q^-m (GL, U, SP),
    c q^-floor(m/2) (O_ODD) and c (q^-m + q^-(m-1)) (O_EVEN).
    """
    q = Fraction(q)
    geo = 1 / (q**cut * (q - 1))  # sum_{m > cut} q^-m
    if family in (Family.GL, Family.U, Family.SP):
        return HALF * geo
    if family is Family.O_EVEN:
        return QUARTER * (1 + q) * geo
    # sum over m > cut of q^-floor(m/2)
    total = Fraction(0)
    m = cut + 1
    if m % 2:
        total += q ** -(m // 2)
        m += 1
    # m even from here: pairs (m, m+1) share floor(m/2)
    total += 2 * q ** -(m // 2) / (1 - 1 / q)
    return QUARTER * total


def tv_proposition(
    family: Family,
    n: int,
    q: int,
    tail_cut: int = DEFAULT_TRUNCATION,
    product_trunc: int = DEFAULT_TRUNCATION,
) -> TvResult:
    """Evaluate the closed-form TV expression as a certified interval.

    TV = sum_{m > n} w_m * Pi + sum_{m <= n} w_m * |Pi - S_{k(m)}|, where Pi
    is the infinite product, S_k the k-th partial Euler sum and w_m the
    size weights of :func:`_size_weight`.  Terms with ``m > tail_cut`` are
    replaced by ``[0, tail bound]``.
    """
    q = check_q(family, q)
    if n < 1:
        raise ValueError("n must be positive")
    if tail_cut <= n:
        raise ValueError("tail_cut must exceed n")
    prod = limit_product(family, q, product_trunc)
    kind = family.product_kind

    above = Fraction(0)
    for m in range(n + 1, tail_cut + 1):
        above += _size_weight(family, q, m)
    total = prod * above + RationalInterval(0, _tail_bound(family, q, tail_cut))

    for m in range(n + 1):
        w = _size_weight(family, q, m)
        if w:
            diff = prod - euler_partial_sum(kind, q, _partial_index(family, n, m))
            total = total + abs(diff) * w
    interval = total.clamp(0, 1)
    return TvResult(family, n, q, interval, "proposition", {"tail_cut": tail_cut, "product_trunc": product_trunc})


# ---------------------------------------------------------------------------
# direct route


def tv_direct(
    family: Family,
    n: int,
    q: int,
    support_cut: Optional[int] = None,
    product_trunc: int = DEFAULT_TRUNCATION,
) -> TvResult:
    """``1/2 sum_lam |P(lam) - Lambda(lam)|`` partition by partition.

    Partitions up to ``support_cut`` (default: the largest size Lambda can
    charge) are summed individually; the remaining P-mass is
    ``1 - sum_{|lam| <= cut} P(lam)`` and Lambda vanishes there.
    """
    q = check_q(family, q)
    bound = family.size_bound(n)
    cut = bound if support_cut is None else support_cut
    if cut < bound:
        raise ValueError(f"support_cut must be at least {bound}")
    norm = limit_product(family, q, product_trunc)
    if family in (Family.O_ODD, Family.O_EVEN):
        norm = norm * HALF

    diff_sum = RationalInterval.point(0)
    weight_sum = Fraction(0)
    for lam in enumerate_partitions(family.support, cut):
        w = 1 / aut_order_formula(family, lam, q)
        weight_sum += w
        p = norm * w
        diff_sum = diff_sum + abs(p - lambda_measure(family, n, q, lam))
    rest = (1 - norm * weight_sum).clamp(0, 1)
    interval = ((diff_sum + rest) * HALF).clamp(0, 1)
    return TvResult(family, n, q, interval, "direct", {"support_cut": cut, "product_trunc": product_trunc})


# ---------------------------------------------------------------------------
# proved bounds


def theorem_bounds(family: Family, n: int, q: int) -> tuple[Fraction, Fraction]:
    """Lower and upper TV bounds proved for ``family`` at ``(n, q)``."""
    q = check_q(family, q)
    if n < 1:
        raise ValueError("bounds are stated for n >= 1")
    Q = Fraction(q)
    if family is Family.GL:
        lo, hi, scale = Fraction(38, 100), Fraction(14), Q ** -(n + 1)
    elif family is Family.U:
        lo, hi, scale = Fraction(1, 6), Fraction(3), Q ** -(n + 1)
    elif family is Family.SP:
        lo, hi, scale = Fraction(2, 10), Fraction(25, 10), Q ** -(n + 1)
    elif family is Family.O_ODD:
        if n % 2 == 0:
            lo, hi, scale = Fraction(1, 10), Fraction(13, 10), Q ** -(n // 2)
        else:
            lo, hi, scale = Fraction(1, 10), Fraction(2), Q ** -((n + 1) // 2)
    else:
        lo, hi, scale = Fraction(1, 10), Fraction(26, 10), Q**-n
    return lo * scale, hi * scale


def classify(interval: RationalInterval, lower: Fraction, upper: Fraction) -> str:
    if lower <= interval.lo and interval.hi <= upper:
        return "contained"
    if interval.hi < lower or interval.lo > upper:
        return "violated"
    return "undecided"


def verify_theorem_bounds(
    family: Family,
    n: int,
    q: int,
    start: int = 32,
    cap: int = TRUNCATION_CAP,
) -> BoundCheck:
    """Refine ``tv_proposition`` (doubling both truncations) until the verdict is decided."""
    lower, upper = theorem_bounds(family, n, q)
    trunc = max(start, n + 1)
    best: Optional[RationalInterval] = None
    while True:
        res = tv_proposition(family, n, q, tail_cut=max(trunc, n + 1), product_trunc=trunc)
        best = res.interval if best is None else best.intersection(res.interval)
        res = TvResult(family, n, q, best, res.method, res.truncation)
        verdict = classify(best, lower, upper)
        if verdict != "undecided" or trunc >= cap:
            return BoundCheck(family, n, q, lower, upper, verdict, res)
        trunc = min(2 * trunc, cap)
