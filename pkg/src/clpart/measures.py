"""Cohen-Lenstra type measures for the finite classical groups.

Five families are covered.  For each there is an automorphism-order
weight ``|Aut_*(lam)|``, a limit measure ``P_*`` on partitions (optionally
deformed by a parameter ``u``), and the exact finite-rank distribution of
the partition attached to ``z - 1`` for a uniform group element.
"""

from __future__ import annotations

import bisect
import enum
import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Optional

from .exactnum import (
    ProductKind,
    Rational,
    RationalInterval,
    as_fraction,
    euler_partial_sum,
    infinite_product,
)
from .partitions import EMPTY, Partition, SupportConstraint, enumerate_partitions, partitions_of_size, stats


class Family(enum.Enum):
    GL = "gl"
    U = "u"
    SP = "sp"
    O_ODD = "o-odd"
    O_EVEN = "o-even"

    @classmethod
    def parse(cls, name: str) -> "Family":
        key = name.strip().lower().replace("_", "-")
        for fam in cls:
            if fam.value == key:
                return fam
        raise ValueError(f"unknown family {name!r}; expected one of {[f.value for f in cls]}")

    @property
    def support(self) -> SupportConstraint:
        if self in (Family.SP, Family.O_EVEN):
            return SupportConstraint.ODD_PARTS_EVEN_MULT
        if self is Family.O_ODD:
            return SupportConstraint.EVEN_PARTS_EVEN_MULT
        return SupportConstraint.ALL

    def size_bound(self, n: int) -> int:
        """Largest partition size occurring at rank parameter ``n``."""
        return 2 * n if self in (Family.SP, Family.O_EVEN) else n

    @property
    def product_kind(self) -> ProductKind:
        return {Family.GL: ProductKind.GL, Family.U: ProductKind.U}.get(self, ProductKind.ODD_EXP)


def is_prime_power(q: int) -> bool:
    if q < 2:
        return False
    p = next(d for d in range(2, q + 1) if q % d == 0)
    while q % p == 0:
        q //= p
    return q == 1


def check_q(family: Family, q) -> int:
    """Validate ``q`` for ``family``; returns it as an int."""
    if isinstance(q, Fraction):
        if q.denominator != 1:
            raise ValueError(f"q must be an integer prime power, got {q}")
        q = q.numerator
    if not isinstance(q, int) or not is_prime_power(q):
        raise ValueError(f"q must be a prime power >= 2, got {q!r}")
    if family is Family.O_ODD and q % 2 == 0:
        raise ValueError(f"family o-odd needs odd q, got {q}")
    if family is Family.O_EVEN and q % 2 == 1:
        raise ValueError(f"family o-even needs even q, got {q}")
    return q


# ---------------------------------------------------------------------------
# automorphism orders


def _exact(q: Fraction):
    return q.numerator if q.denominator == 1 else q


@lru_cache(maxsize=None)
def _multiplicity_product(kind: str, q, m: int):
    """prod_{k<=m} (q^k - 1) for "gl", (q^k - (-1)^k) for "u", (q^2k - 1) for "sym"."""
    prod = 1
    for k in range(1, m + 1):
        if kind == "gl":
            prod *= q**k - 1
        elif kind == "u":
            prod *= q**k - (-1) ** k
        else:
            prod *= q ** (2 * k) - 1
    return prod


def aut_exponent_and_product(family: Family, lam: Partition, q: Rational) -> tuple[int, Fraction]:
    """Split ``|Aut_*(lam)|`` as ``q**e * P`` with ``P`` a product of ``q^k -+ 1`` terms."""
    q = _exact(as_fraction(q))
    st = lam.stats
    prod = 1
    if family in (Family.GL, Family.U):
        kind = "u" if family is Family.U else "gl"
        exponent = st.dual_square_sum
        for m in st.multiplicities.values():
            exponent -= m * (m + 1) // 2
            prod *= _multiplicity_product(kind, q, m)
        return exponent, prod
    exponent = st.n_lambda
    if family is Family.SP:
        exponent += (st.size + st.odd_parts) // 2
    elif family is Family.O_ODD:
        exponent += (st.size - st.odd_parts) // 2
    else:
        exponent += (st.size + st.odd_parts) // 2 - st.length
    for m in st.multiplicities.values():
        f = m // 2
        exponent -= f * (f + 1)
        prod *= _multiplicity_product("sym", q, f)
    return exponent, prod


def aut_order_formula(family: Family, lam: Partition, q: Rational) -> Fraction:
    """``|Aut_*(lam)|`` from the closed formula, with no support or parity checks."""
    e, prod = aut_exponent_and_product(family, lam, q)
    return as_fraction(q) ** e * prod


def aut_order(family: Family, lam: Partition, q: int) -> Fraction:
    """Order of the automorphism-type weight attached to ``lam``.

    GL: q^(sum lam'_i^2) prod_i (1/q)_{m_i}; U uses (-1/q)_{m_i}.  SP and both
    orthogonal families use q^(n(lam) + |lam|/2 +- o(lam)/2 [- l(lam)]) times
    prod_i prod_{k <= m_i/2} (1 - q^-2k).  O_EVEN values need not be integers.
    """
    q = check_q(family, q)
    if not family.support.admits(lam):
        raise ValueError(f"{lam} is outside the support of family {family.value}")
    return aut_order_formula(family, lam, q)


# ---------------------------------------------------------------------------
# limit measures


@dataclass(frozen=True)
class MeasureParams:
    family: Family
    q: int
    u: Fraction = Fraction(1)

    def __post_init__(self):
        object.__setattr__(self, "q", check_q(self.family, self.q))
        u = as_fraction(self.u)
        if not 0 <= u <= 1:
            raise ValueError(f"u must lie in [0, 1], got {u}")
        object.__setattr__(self, "u", u)


def normalizer(params: MeasureParams, truncation: int = 60) -> RationalInterval:
    """The factor multiplying ``u^|lam| / |Aut_*(lam)|`` in the limit measure."""
    fam, q, u = params.family, params.q, params.u
    prod = infinite_product(fam.product_kind, q, u, truncation)
    if fam is Family.O_ODD:
        return prod / (1 + u)
    if fam is Family.O_EVEN:
        return prod / (1 + u * u)
    return prod


def limit_measure(params: MeasureParams, lam: Partition, truncation: int = 60) -> RationalInterval:
    """Certified interval for ``P_*(lam)`` (u-deformed when ``params.u != 1``)."""
    if not params.family.support.admits(lam):
        raise ValueError(f"{lam} is outside the support of family {params.family.value}")
    weight = params.u ** lam.size / aut_order_formula(params.family, lam, params.q)
    if weight == 0:
        return RationalInterval.point(0)
    return normalizer(params, truncation) * weight


# ---------------------------------------------------------------------------
# finite-rank distributions


@lru_cache(maxsize=4096)
def _partial(kind: ProductKind, q: int, k: int) -> Fraction:
    return euler_partial_sum(kind, q, k)


def lambda_measure(family: Family, n: int, q: int, lam: Partition) -> Fraction:
    """Exact probability that a uniform element of the rank-``n`` group has ``lam_{z-1} = lam``.

    GL(n,q), U(n,q), Sp(2n,q), the O^+/O^- mixture in dimension n (odd q) or
    2n (even q).
    """
    q = check_q(family, q)
    if n < 1:
        raise ValueError("n must be positive")
    size = lam.size
    if size > family.size_bound(n) or not family.support.admits(lam):
        return Fraction(0)
    aut = aut_order_formula(family, lam, q)
    kind = family.product_kind
    if family in (Family.GL, Family.U):
        return _partial(kind, q, n - size) / aut
    if family is Family.SP:
        if size % 2:
            return Fraction(0)
        return _partial(kind, q, n - size // 2) / aut
    if family is Family.O_ODD:
        return _partial(kind, q, (n - size) // 2) / (2 * aut)
    if size % 2:
        return Fraction(0)
    return _partial(kind, q, n - size // 2) / (2 * aut)


@dataclass
class DistributionTable:
    family: Family
    n: int
    q: int
    entries: dict = field(default_factory=dict)

    @property
    def mass(self) -> Fraction:
        return sum(self.entries.values(), Fraction(0))

    def nonzero(self) -> dict:
        return {lam: p for lam, p in self.entries.items() if p}

    def __getitem__(self, lam: Partition) -> Fraction:
        return self.entries.get(lam, Fraction(0))


def distribution_table(family: Family, n: int, q: int) -> DistributionTable:
    q = check_q(family, q)
    table = DistributionTable(family, n, q)
    for lam in enumerate_partitions(family.support, family.size_bound(n)):
        if family in (Family.SP, Family.O_EVEN) and lam.size % 2:
            continue
        table.entries[lam] = lambda_measure(family, n, q, lam)
    return table


def normalization_check(family: Family, n: int, q: int) -> bool:
    table = distribution_table(family, n, q)
    return table.mass == 1 and all(p >= 0 for p in table.entries.values())


# ---------------------------------------------------------------------------
# sampling


class SampleSizeCapExceeded(RuntimeError):
    pass


@dataclass
class SampleResult:
    """Draws from a limit measure; ``None`` marks the overflow outcome."""

    draws: list
    overflow_mass: Fraction
    max_size: int

    @property
    def overflow_count(self) -> int:
        return sum(1 for d in self.draws if d is None)


def sample(
    params: MeasureParams,
    count: int,
    seed: int = 0,
    tail_epsilon: Rational = Fraction(1, 10**9),
    size_cap: int = 60,
    truncation: int = 60,
) -> SampleResult:
    """Inverse-CDF sampling from the limit measure.

    Partitions are enumerated by size until the accumulated lower-bound mass
    reaches ``1 - tail_epsilon``; whatever mass remains beyond that is the
    overflow outcome, returned as ``None`` in ``draws``.
    """
    eps = as_fraction(tail_epsilon)
    if eps <= 0:
        raise ValueError("tail_epsilon must be positive")
    fam = params.family
    # a coarser lower bound keeps the cumulative sums small
    norm_lo = normalizer(params, truncation).lo
    norm_lo = Fraction(math.floor(norm_lo * 2**128), 2**128)
    outcomes: list[Partition] = []
    cumulative: list[Fraction] = []
    acc = Fraction(0)
    size = 0
    while acc < 1 - eps:
        if size > size_cap:
            raise SampleSizeCapExceeded(f"mass {float(acc)} after size {size_cap}; raise size_cap or tail_epsilon")
        for lam in partitions_of_size(size, fam.support):
            w = params.u**size / aut_order_formula(fam, lam, params.q)
            if w:
                acc += norm_lo * w
                outcomes.append(lam)
                cumulative.append(acc)
        size += 1
    rng = random.Random(seed)
    draws: list[Optional[Partition]] = []
    for _ in range(count):
        x = Fraction(rng.getrandbits(64), 1 << 64)
        i = bisect.bisect_right(cumulative, x)
        draws.append(outcomes[i] if i < len(outcomes) else None)
    return SampleResult(draws, max(Fraction(0), 1 - acc), size - 1)


__all__ = [
    "EMPTY",
    "DistributionTable",
    "Family",
    "MeasureParams",
    "SampleResult",
    "aut_order",
    "distribution_table",
    "lambda_measure",
    "limit_measure",
    "normalization_check",
    "sample",
]
