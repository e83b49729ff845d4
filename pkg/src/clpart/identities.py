"""Coefficient-wise verification of the Euler and partition-sum product identities."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .exactnum import (
    ProductKind,
    Rational,
    TruncatedSeries,
    as_fraction,
    compare_series,
    product_enclosure,
    product_series,
    sum_series,
)
from .measures import Family, aut_exponent_and_product
from .partitions import partitions_of_size

IDENTITY_TAGS = (
    "eul-1",
    "eul-2",
    "eulU-1",
    "eulU-2",
    "eulSp-1",
    "eulSp-2",
    "sto-gl",
    "sto-u",
    "sto-sp",
    "sto-o-odd",
    "sto-o-even",
)

_EULER = {
    "eul": ProductKind.GL,
    "eulU": ProductKind.U,
    "eulSp": ProductKind.ODD_EXP,
}

_STO = {
    "sto-gl": (Family.GL, ProductKind.GL),
    "sto-u": (Family.U, ProductKind.U),
    "sto-sp": (Family.SP, ProductKind.ODD_EXP),
    "sto-o-odd": (Family.O_ODD, ProductKind.ODD_EXP),
    "sto-o-even": (Family.O_EVEN, ProductKind.ODD_EXP),
}


@dataclass(frozen=True)
class IdentityReport:
    tag: str
    q: Fraction
    degree: int
    mismatches: tuple[int, ...]
    enclosure_misses: tuple[int, ...] = ()

    @property
    def passed(self) -> bool:
        return not self.mismatches and not self.enclosure_misses

    def line(self) -> str:
        if self.passed:
            verdict = "pass"
        else:
            verdict = f"FAIL exact u^{list(self.mismatches)} enclosure u^{list(self.enclosure_misses)}"
        return f"{self.tag:<11} q={self.q} D={self.degree}: {verdict}"


def aut_sum_series(family: Family, q: Rational, degree: int) -> TruncatedSeries:
    """sum over supported lam with |lam| <= degree of u^|lam| / |Aut_*(lam)|."""
    q = as_fraction(q)
    coeffs = []
    for m in range(degree + 1):
        # accumulate over a common power of q to keep the big-int gcds few
        terms = [aut_exponent_and_product(family, lam, q) for lam in partitions_of_size(m, family.support)]
        if not terms:
            coeffs.append(Fraction(0))
            continue
        top = max(e for e, _ in terms)
        if q.denominator == 1 and all(isinstance(p, int) for _, p in terms):
            qi = q.numerator
            common = math.lcm(*(p for _, p in terms))
            total = Fraction(sum(qi ** (top - e) * (common // p) for e, p in terms), common)
        else:
            total = sum((Fraction(q ** (top - e)) / p for e, p in terms), Fraction(0))
        coeffs.append(total / q**top)
    return TruncatedSeries(coeffs, degree)


def _product_side(which: str) -> tuple[ProductKind, bool, int]:
    """(kind, reciprocal, side index) of the infinite-product side of ``which``."""
    if which in _STO:
        return _STO[which][1], True, 1
    base, _, part = which.partition("-")
    return _EULER[base], part == "2", 0


def identity_sides(which: str, q: Rational, degree: int = 30) -> tuple[TruncatedSeries, TruncatedSeries]:
    """Both sides of identity ``which`` as series exact through ``u^degree``."""
    q = as_fraction(q)
    if q < 2:
        raise ValueError(f"q must be at least 2, got {q}")
    if degree < 1:
        raise ValueError("degree must be at least 1")
    if which in _STO:
        family, kind = _STO[which]
        lhs = aut_sum_series(family, q, degree)
        rhs = product_series(kind, q, degree, reciprocal=True)
        if family is Family.O_ODD:
            rhs = rhs * TruncatedSeries([1, 1], degree)
        elif family is Family.O_EVEN:
            rhs = rhs * TruncatedSeries([1, 0, 1], degree)
        return lhs, rhs
    base, _, part = which.partition("-")
    if base not in _EULER or part not in ("1", "2"):
        raise ValueError(f"unknown identity {which!r}; expected one of {IDENTITY_TAGS}")
    kind = _EULER[base]
    reciprocal = part == "2"
    return product_series(kind, q, degree, reciprocal), sum_series(kind, q, degree, reciprocal)


def identity_check(which: str, q: Rational, degree: int = 30, factors: int | None = None) -> IdentityReport:
    """Exact coefficient comparison of both sides of ``which`` through ``u^degree``.

    As a second route, the closed-form or partition-sum side must also lie
    inside the certified enclosures built from ``factors`` explicit factors
    of the product side (default ``degree + 1``).
    """
    lhs, rhs = identity_sides(which, q, degree)
    return _report(which, q, degree, lhs, rhs, factors)


def _report(which, q, degree, lhs, rhs, factors=None) -> IdentityReport:
    kind, reciprocal, side = _product_side(which)
    other = rhs if side == 0 else lhs
    boxes = product_enclosure(kind, q, degree, factors or degree + 1, reciprocal)
    if which == "sto-o-odd":
        boxes = [b + (boxes[k - 1] if k else 0) for k, b in enumerate(boxes)]
    elif which == "sto-o-even":
        boxes = [b + (boxes[k - 2] if k >= 2 else 0) for k, b in enumerate(boxes)]
    misses = tuple(k for k, box in enumerate(boxes) if other[k] not in box)
    return IdentityReport(which, as_fraction(q), degree, tuple(compare_series(lhs, rhs)), misses)


def check_sides(which: str, q: Rational, lhs: TruncatedSeries, rhs: TruncatedSeries) -> IdentityReport:
    """Report for externally supplied (e.g. deliberately perturbed) sides."""
    return _report(which, q, lhs.degree_bound, lhs, rhs)
