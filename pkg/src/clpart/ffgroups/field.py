"""Small finite fields GF(p^k) as lookup tables.

Elements are encoded as integers ``0 .. q-1``: the polynomial
``c_0 + c_1 t + ... + c_{k-1} t^{k-1}`` is the integer ``sum c_i p^i``.
"""

from __future__ import annotations

import itertools
from functools import lru_cache

import numpy as np

MAX_FIELD_SIZE = 256


def is_prime(p: int) -> bool:
    return p >= 2 and all(p % d for d in range(2, int(p**0.5) + 1))


def _poly_mod(a: list[int], m: list[int], p: int) -> list[int]:
    """Remainder of ``a`` modulo monic ``m`` (coefficient lists, low degree first)."""
    a = list(a)
    dm = len(m) - 1
    for i in range(len(a) - 1, dm - 1, -1):
        c = a[i] % p
        if c:
            for j in range(dm + 1):
                a[i - dm + j] = (a[i - dm + j] - c * m[j]) % p
    return [x % p for x in a[:dm]] + [0] * max(0, dm - len(a))


def _is_irreducible(m: list[int], p: int) -> bool:
    k = len(m) - 1
    for d in range(1, k // 2 + 1):
        for low in itertools.product(range(p), repeat=d):
            if not any(_poly_mod(m, list(low) + [1], p)):
                return False
    return True


def default_modulus(p: int, k: int) -> tuple[int, ...]:
    """Monic irreducible of degree ``k`` whose low coefficients are least as ``sum c_i p^i``."""
    for code in range(p**k):
        low = [(code // p**i) % p for i in range(k)]
        m = low + [1]
        if _is_irreducible(m, p):
            return tuple(m)
    raise ValueError(f"no irreducible polynomial of degree {k} over GF({p})")


class GF:
    """The field GF(p^k) with full addition and multiplication tables."""

    def __init__(self, p: int, k: int = 1):
        if not is_prime(p):
            raise ValueError(f"{p} is not prime")
        if k < 1:
            raise ValueError("extension degree must be positive")
        q = p**k
        if q > MAX_FIELD_SIZE:
            raise ValueError(f"GF({q}) exceeds the supported size {MAX_FIELD_SIZE}")
        self.p, self.k, self.q = p, k, q
        self.modulus = default_modulus(p, k) if k > 1 else (0, 1)

        digits = [[(x // p**i) % p for i in range(k)] for x in range(q)]
        encode = lambda cs: sum(c * p**i for i, c in enumerate(cs))  # noqa: E731
        add = [[encode([(a + b) % p for a, b in zip(digits[x], digits[y])]) for y in range(q)] for x in range(q)]
        mul = [[0] * q for _ in range(q)]
        for x in range(q):
            for y in range(q):
                prod = [0] * (2 * k - 1)
                for i, a in enumerate(digits[x]):
                    if a:
                        for j, b in enumerate(digits[y]):
                            prod[i + j] += a * b
                mul[x][y] = encode(_poly_mod(prod, list(self.modulus), p)) if k > 1 else prod[0] % p
        self.add = add
        self.mul = mul
        self.neg = [next(y for y in range(q) if add[x][y] == 0) for x in range(q)]
        self.sub = [[add[x][self.neg[y]] for y in range(q)] for x in range(q)]
        self.inv = [0] + [next(y for y in range(1, q) if mul[x][y] == 1) for x in range(1, q)]
        self.add_np = np.array(add, dtype=np.int16)
        self.mul_np = np.array(mul, dtype=np.int16)

    def __repr__(self):
        return f"GF({self.q})"

    def __eq__(self, other):
        return isinstance(other, GF) and (self.p, self.k, self.modulus) == (other.p, other.k, other.modulus)

    def __hash__(self):
        return hash((self.p, self.k, self.modulus))

    @property
    def elements(self) -> range:
        return range(self.q)

    def power(self, x: int, e: int) -> int:
        out = 1
        for _ in range(e):
            out = self.mul[out][x]
        return out

    def frobenius(self, x: int, e: int | None = None) -> int:
        """``x -> x^e``; the default ``e = sqrt(q)`` is the involution of GF(q^2) over GF(q)."""
        if e is None:
            if self.k % 2:
                raise ValueError("default conjugation needs an even extension degree")
            e = self.p ** (self.k // 2)
        return self.power(x, e)

    def squares(self) -> set[int]:
        return {self.mul[x][x] for x in range(self.q)}

    def least_nonsquare(self) -> int:
        sq = self.squares()
        return next(x for x in range(1, self.q) if x not in sq)


@lru_cache(maxsize=None)
def field_make(p: int, k: int = 1) -> GF:
    return GF(p, k)


def field_of_order(q: int) -> GF:
    for p in range(2, q + 1):
        if q % p == 0:
            k = 0
            r = q
            while r % p == 0:
                r //= p
                k += 1
            if r != 1:
                raise ValueError(f"{q} is not a prime power")
            return field_make(p, k)
    raise ValueError(f"{q} is not a prime power")
