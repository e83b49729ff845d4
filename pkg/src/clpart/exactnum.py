"""Exact rational scalars, certified intervals and truncated power series.

Everything here is exact: scalars are :class:`fractions.Fraction`, real
numbers that are only known as limits (infinite products) are carried as
:class:`RationalInterval` values guaranteed to contain them.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from decimal import Decimal, localcontext
from fractions import Fraction
from typing import Iterable, Sequence, Union

Rational = Union[int, Fraction]


def as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    raise TypeError(f"expected an exact rational, got {type(x).__name__}")


def format_fraction(x: Fraction) -> str:
    """Render as ``"num/den"`` in lowest terms (integers get ``/1``)."""
    x = as_fraction(x)
    return f"{x.numerator}/{x.denominator}"


def decimal_hint(x: Fraction, digits: int = 12) -> str:
    with localcontext() as ctx:
        ctx.prec = digits
        d = Decimal(x.numerator) / Decimal(x.denominator)
    return format(d, "g") if d != 0 else "0"


# ---------------------------------------------------------------------------
# intervals


@dataclass(frozen=True)
class RationalInterval:
    """Closed interval ``[lo, hi]`` with exact rational endpoints."""

    lo: Fraction
    hi: Fraction

    def __post_init__(self):
        object.__setattr__(self, "lo", as_fraction(self.lo))
        object.__setattr__(self, "hi", as_fraction(self.hi))
        if self.lo > self.hi:
            raise ValueError(f"empty interval [{self.lo}, {self.hi}]")

    @classmethod
    def point(cls, x: Rational) -> "RationalInterval":
        x = as_fraction(x)
        return cls(x, x)

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    @property
    def mid(self) -> Fraction:
        return (self.lo + self.hi) / 2

    def contains(self, x) -> bool:
        if isinstance(x, RationalInterval):
            return self.lo <= x.lo and x.hi <= self.hi
        x = as_fraction(x)
        return self.lo <= x <= self.hi

    def __contains__(self, x) -> bool:
        return self.contains(x)

    def intersects(self, other: "RationalInterval") -> bool:
        return self.lo <= other.hi and other.lo <= self.hi

    def intersection(self, other: "RationalInterval") -> "RationalInterval":
        return RationalInterval(max(self.lo, other.lo), min(self.hi, other.hi))

    def _coerce(self, other) -> "RationalInterval":
        if isinstance(other, RationalInterval):
            return other
        return RationalInterval.point(other)

    def __add__(self, other):
        other = self._coerce(other)
        return RationalInterval(self.lo + other.lo, self.hi + other.hi)

    __radd__ = __add__

    def __neg__(self):
        return RationalInterval(-self.hi, -self.lo)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        other = self._coerce(other)
        ends = (self.lo * other.lo, self.lo * other.hi, self.hi * other.lo, self.hi * other.hi)
        return RationalInterval(min(ends), max(ends))

    __rmul__ = __mul__

    def reciprocal(self) -> "RationalInterval":
        if self.lo <= 0 <= self.hi:
            raise ZeroDivisionError("interval contains zero")
        return RationalInterval(1 / self.hi, 1 / self.lo)

    def __truediv__(self, other):
        return self * self._coerce(other).reciprocal()

    def __rtruediv__(self, other):
        return self._coerce(other) * self.reciprocal()

    def __abs__(self):
        if self.lo >= 0:
            return self
        if self.hi <= 0:
            return -self
        return RationalInterval(Fraction(0), max(-self.lo, self.hi))

    def clamp(self, lo: Rational, hi: Rational) -> "RationalInterval":
        """Intersect with ``[lo, hi]``; the caller knows the value lies there."""
        return RationalInterval(min(max(self.lo, lo), hi), max(min(self.hi, hi), lo))

    def __repr__(self):
        return f"RationalInterval(~{decimal_hint(self.mid)}, width~{decimal_hint(self.width, 3)})"


# ---------------------------------------------------------------------------
# q-Pochhammer symbols and the infinite products


def _check_q(q) -> Fraction:
    q = as_fraction(q)
    if q <= 1:
        raise ValueError(f"q must exceed 1, got {q}")
    return q


def pochhammer(q: Rational, j: int, variant: str = "plain") -> Fraction:
    """``(1/q)_j`` (``plain``) or ``(-1/q)_j`` (``signed``).

    plain:  prod_{k=1..j} (1 - q^-k)
    signed: prod_{k=1..j} (1 - (-1)^k q^-k)
    """
    q = _check_q(q)
    if j < 0:
        raise ValueError("j must be non-negative")
    if variant not in ("plain", "signed"):
        raise ValueError(f"unknown variant {variant!r}")
    out = Fraction(1)
    for k in range(1, j + 1):
        sign = -1 if (variant == "signed" and k % 2) else 1
        out *= 1 - sign / q**k
    return out


class ProductKind(enum.Enum):
    """Factor sequences of the infinite products.

    GL       prod_i (1 - u/q^i)
    U        prod_i (1 + u/(-q)^i)
    ODD_EXP  prod_i (1 - u^2/q^(2i-1))
    EVEN_EXP prod_i (1 - u/q^(2i))
    """

    GL = "gl"
    U = "u"
    ODD_EXP = "odd_exp"
    EVEN_EXP = "even_exp"

    def factor(self, i: int, q: Fraction, u: Fraction) -> Fraction:
        """The i-th factor (i >= 1) is ``1 + eps_i``; returns ``eps_i``."""
        if self is ProductKind.GL:
            return -u / q**i
        if self is ProductKind.U:
            return u / (-q) ** i
        if self is ProductKind.ODD_EXP:
            return -(u * u) / q ** (2 * i - 1)
        return -u / q ** (2 * i)

    def abs_tail(self, n: int, q: Fraction, u: Fraction) -> Fraction:
        """Exact value of sum_{i>n} |eps_i|."""
        a = abs(u)
        if self in (ProductKind.GL, ProductKind.U):
            return a / (q**n * (q - 1))
        if self is ProductKind.ODD_EXP:
            return (a * a) / (q ** (2 * n + 1) * (1 - 1 / q**2))
        return a / (q ** (2 * n) * (q**2 - 1))


GL_PROD = ProductKind.GL
U_PROD = ProductKind.U
ODD_EXP_PROD = ProductKind.ODD_EXP
EVEN_EXP_PROD = ProductKind.EVEN_EXP


def _tail_all_nonpositive(kind: ProductKind, u: Fraction) -> bool:
    if kind is ProductKind.ODD_EXP:
        return True
    if kind is ProductKind.U:
        return False
    return u >= 0


def infinite_product(
    kind: ProductKind,
    q: Rational,
    u: Rational = 1,
    truncation: int = 60,
    *,
    reciprocal: bool = False,
    start: int = 1,
) -> RationalInterval:
    """Certified enclosure of ``prod_{i >= start}`` of the factors of ``kind``.

    The first ``truncation`` factors (indices ``start .. truncation``) are
    multiplied exactly.  With ``s = sum_{i>N} |eps_i|`` the tail lies in
    ``[1 - s, 1]`` when every remaining factor is at most one, and in
    ``[1 - s, 1/(1 - s)]`` otherwise.  For ``U`` with ``u >= 0`` the factors
    are consumed in (odd, even) pairs, each pair lying in (0, 1].
    """
    q = as_fraction(q)
    u = as_fraction(u)
    if q < 2:
        raise ValueError(f"q must be at least 2, got {q}")
    if abs(u) > 1:
        raise ValueError(f"|u| must be at most 1, got {u}")
    if truncation < 1 or start < 1:
        raise ValueError("truncation and start must be positive")

    n = max(truncation, start - 1)
    if kind is ProductKind.U and u >= 0 and n % 2:
        n += 1
    partial = Fraction(1)
    for i in range(start, n + 1):
        partial *= 1 + kind.factor(i, q, u)
    if partial <= 0:
        raise ValueError("non-positive partial product; tail bound not valid")

    s = kind.abs_tail(n, q, u)
    if s >= 1:
        raise ValueError("tail sum >= 1; increase truncation")
    if kind is ProductKind.U and u >= 0:
        # pairs (1 - u/q^(2k-1)) (1 + u/q^(2k)) lie in (0, 1]
        hi_factor = Fraction(1)
    elif _tail_all_nonpositive(kind, u):
        hi_factor = Fraction(1)
    else:
        hi_factor = 1 / (1 - s)
    out = RationalInterval(partial * (1 - s), partial * hi_factor)
    return out.reciprocal() if reciprocal else out


# ---------------------------------------------------------------------------
# Euler-type coefficients


def euler_coefficient(kind: ProductKind, q: Rational, j: int, reciprocal: bool = False) -> Fraction:
    """Closed-form series coefficient of the products at ``u = 1`` scaling.

    For ``GL``/``U``/``EVEN_EXP`` this is the coefficient of ``u^j``; for
    ``ODD_EXP`` it is the coefficient of ``u^(2j)`` (odd powers vanish).
    """
    q = as_fraction(q)
    den = Fraction(1)
    if kind is ProductKind.GL:
        for i in range(1, j + 1):
            den *= q**i - 1
        return (q ** (j * (j - 1) // 2) if reciprocal else Fraction((-1) ** j)) / den
    if kind is ProductKind.U:
        for i in range(1, j + 1):
            den *= q**i - (-1) ** i
        if reciprocal:
            return q ** (j * (j - 1) // 2) / den
        return Fraction((-1) ** (j * (j + 1) // 2)) / den
    if kind is ProductKind.ODD_EXP:
        for i in range(1, j + 1):
            den *= q ** (2 * i) - 1
        return (q ** (j * j) if reciprocal else (-1) ** j * q**j) / den
    for i in range(1, j + 1):
        den *= q ** (2 * i) - 1
    return (q ** (j * (j - 1)) if reciprocal else Fraction((-1) ** j)) / den


def euler_partial_sum(kind: ProductKind, q: Rational, k: int) -> Fraction:
    """sum_{j=0..k} of the (non-reciprocal) Euler coefficients; 0 if k < 0."""
    return sum((euler_coefficient(kind, q, j) for j in range(k + 1)), Fraction(0))


# ---------------------------------------------------------------------------
# truncated series


class TruncatedSeries:
    """Power series in ``u`` known modulo ``u^(D+1)``."""

    __slots__ = ("degree_bound", "coefficients")

    def __init__(self, coefficients: Iterable[Rational], degree_bound: int | None = None):
        coeffs = [as_fraction(c) for c in coefficients]
        if degree_bound is None:
            degree_bound = len(coeffs) - 1
        if degree_bound < 0:
            raise ValueError("degree bound must be non-negative")
        coeffs = coeffs[: degree_bound + 1]
        coeffs += [Fraction(0)] * (degree_bound + 1 - len(coeffs))
        self.degree_bound = degree_bound
        self.coefficients = tuple(coeffs)

    @classmethod
    def one(cls, degree_bound: int) -> "TruncatedSeries":
        return cls([1], degree_bound)

    @classmethod
    def monomial(cls, coeff: Rational, power: int, degree_bound: int) -> "TruncatedSeries":
        c = [Fraction(0)] * (degree_bound + 1)
        if power <= degree_bound:
            c[power] = as_fraction(coeff)
        return cls(c, degree_bound)

    def _check(self, other: "TruncatedSeries"):
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        if other.degree_bound != self.degree_bound:
            raise ValueError("degree bounds differ")
        return None

    def __add__(self, other):
        if self._check(other) is NotImplemented:
            return NotImplemented
        return TruncatedSeries([a + b for a, b in zip(self.coefficients, other.coefficients)], self.degree_bound)

    def __sub__(self, other):
        if self._check(other) is NotImplemented:
            return NotImplemented
        return TruncatedSeries([a - b for a, b in zip(self.coefficients, other.coefficients)], self.degree_bound)

    def __neg__(self):
        return TruncatedSeries([-a for a in self.coefficients], self.degree_bound)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return TruncatedSeries([a * other for a in self.coefficients], self.degree_bound)
        if self._check(other) is NotImplemented:
            return NotImplemented
        d = self.degree_bound
        a, b = self.coefficients, other.coefficients
        out = [Fraction(0)] * (d + 1)
        for i, ai in enumerate(a):
            if ai:
                for j in range(d + 1 - i):
                    if b[j]:
                        out[i + j] += ai * b[j]
        return TruncatedSeries(out, d)

    __rmul__ = __mul__

    def inverse(self) -> "TruncatedSeries":
        a = self.coefficients
        if a[0] == 0:
            raise ZeroDivisionError("series with zero constant term has no inverse")
        d = self.degree_bound
        inv0 = 1 / a[0]
        out = [inv0] + [Fraction(0)] * d
        for k in range(1, d + 1):
            acc = sum((a[i] * out[k - i] for i in range(1, k + 1) if a[i]), Fraction(0))
            out[k] = -acc * inv0
        return TruncatedSeries(out, d)

    def __eq__(self, other):
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        return self.degree_bound == other.degree_bound and self.coefficients == other.coefficients

    def __hash__(self):
        return hash((self.degree_bound, self.coefficients))

    def __getitem__(self, k: int) -> Fraction:
        return self.coefficients[k]

    def __repr__(self):
        terms = [f"{c}*u^{k}" for k, c in enumerate(self.coefficients) if c]
        return f"TruncatedSeries({' + '.join(terms) or '0'} + O(u^{self.degree_bound + 1}))"


def series_arith(a: TruncatedSeries, b: TruncatedSeries | None = None, op: str = "mul") -> TruncatedSeries:
    if op == "add":
        return a + b
    if op == "mul":
        return a * b
    if op == "invert":
        return a.inverse()
    raise ValueError(f"unknown op {op!r}")


def _shift_data(kind: ProductKind, q: Fraction) -> tuple[Fraction, Fraction, int]:
    """``(a, r, e)`` with ``F(u) = (1 + a u^e) F(r u)`` for the product ``F`` of ``kind``."""
    if kind is ProductKind.GL:
        return -1 / q, 1 / q, 1
    if kind is ProductKind.U:
        return -1 / q, -1 / q, 1
    if kind is ProductKind.ODD_EXP:
        return -1 / q, 1 / q, 2
    return -1 / q**2, 1 / q**2, 1


def product_series(kind: ProductKind, q: Rational, degree: int, reciprocal: bool = False) -> TruncatedSeries:
    """The infinite product of ``kind`` (u = variable) as an exact series through ``u^degree``.

    Every factor touches low-order coefficients, so no finite truncation of
    the product is exact.  Instead the coefficients come from the shift
    equation ``F(u) = (1 + a u^e) F(r u)``, which the product satisfies and
    which has a unique power-series solution with ``F(0) = 1``:
    ``c_m (1 - r^m) = a r^(m-e) c_(m-e)``.
    """
    q = as_fraction(q)
    a, r, e = _shift_data(kind, q)
    coeffs = [Fraction(1)] + [Fraction(0)] * degree
    for m in range(1, degree + 1):
        if m >= e:
            coeffs[m] = a * r ** (m - e) * coeffs[m - e] / (1 - r**m)
    out = TruncatedSeries(coeffs, degree)
    return out.inverse() if reciprocal else out


def product_enclosure(
    kind: ProductKind, q: Rational, degree: int, factors: int, reciprocal: bool = False
) -> list[RationalInterval]:
    """Certified per-coefficient enclosures of the infinite product from ``factors`` explicit factors.

    With ``P`` the exact product (or reciprocal product) of the first
    ``factors`` factors and ``s = sum_{i>factors} |eps_i|``, every
    coefficient of the remaining tail has modulus at most ``s^k`` at
    ``u^(e k)``, so ``|c_m - p_m| <= sum_{k>=1} |p_(m-e k)| s^k``.
    """
    q = as_fraction(q)
    _, _, e = _shift_data(kind, q)
    partial = TruncatedSeries.one(degree)
    for i in range(1, factors + 1):
        f = TruncatedSeries.one(degree) + TruncatedSeries.monomial(kind.factor(i, q, Fraction(1)), e, degree)
        partial = partial * (f.inverse() if reciprocal else f)
    s = kind.abs_tail(factors, q, Fraction(1))
    out = []
    for m in range(degree + 1):
        err = sum((abs(partial[m - e * k]) * s**k for k in range(1, m // e + 1)), Fraction(0))
        out.append(RationalInterval(partial[m] - err, partial[m] + err))
    return out


def sum_series(kind: ProductKind, q: Rational, degree: int, reciprocal: bool = False) -> TruncatedSeries:
    """The Euler-type sum side of the product expansions, through ``u^degree``."""
    coeffs = [Fraction(0)] * (degree + 1)
    if kind is ProductKind.ODD_EXP:
        for j in range(degree // 2 + 1):
            coeffs[2 * j] = euler_coefficient(kind, q, j, reciprocal)
    else:
        for j in range(degree + 1):
            coeffs[j] = euler_coefficient(kind, q, j, reciprocal)
    return TruncatedSeries(coeffs, degree)


def compare_series(lhs: TruncatedSeries, rhs: TruncatedSeries) -> list[int]:
    """Indices of coefficients where the two series differ."""
    if lhs.degree_bound != rhs.degree_bound:
        raise ValueError("degree bounds differ")
    return [k for k, (a, b) in enumerate(zip(lhs.coefficients, rhs.coefficients)) if a != b]


def interval_sum(items: Sequence[RationalInterval]) -> RationalInterval:
    total = RationalInterval.point(0)
    for it in items:
        total = total + it
    return total
