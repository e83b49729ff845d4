"""Standard sesquilinear, alternating and quadratic forms and group membership."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from ..measures import Family, is_prime_power
from .field import GF, field_of_order
from .linalg import Matrix, matmul, rank, transpose


@dataclass(frozen=True)
class FormSpec:
    """A form fixing one classical group.

    ``gram`` is the bilinear (or Hermitian) Gram matrix; for O_EVEN it is the
    polar form of ``quad``, the upper-triangular coefficients of ``Q``.
    GL carries no form.
    """

    family: Family
    dimension: int
    q: int
    type: Optional[str]
    field: GF
    gram: Optional[tuple] = None
    quad: Optional[tuple] = None

    @property
    def conjugation(self) -> Optional[int]:
        """Frobenius exponent applied to the left argument (U only)."""
        return self.q if self.family is Family.U else None

    def quad_value(self, v) -> int:
        F = self.field
        acc = 0
        for i, row in enumerate(self.quad):
            if v[i]:
                for j in range(i, self.dimension):
                    if row[j] and v[j]:
                        acc = F.add[acc][F.mul[row[j]][F.mul[v[i]][v[j]]]]
        return acc

    def pair(self, v, w) -> int:
        """B(v, w) = conj(v)^T J w."""
        F = self.field
        if self.conjugation is not None:
            v = [F.frobenius(x, self.conjugation) for x in v]
        acc = 0
        for i, x in enumerate(v):
            if x:
                for j, y in enumerate(w):
                    if y and self.gram[i][j]:
                        acc = F.add[acc][F.mul[x][F.mul[self.gram[i][j]][y]]]
        return acc


def _hyperbolic(n: int) -> list[list[int]]:
    return [[int(i + j == n - 1) for j in range(n)] for i in range(n)]


def _as_tuple(m) -> tuple:
    return tuple(tuple(r) for r in m)


def least_irreducible_constant(F: GF) -> int:
    """Least encoded ``a`` with ``t^2 + t + a`` irreducible over ``F``."""
    image = {F.add[F.mul[x][x]][x] for x in range(F.q)}
    return next(a for a in range(F.q) if a not in image)


def standard_form(family: Family, dimension: int, q: int, type: Optional[str] = None) -> FormSpec:
    """The fixed representative form for ``family`` in ``dimension`` over GF(q)."""
    if not is_prime_power(q):
        raise ValueError(f"q must be a prime power, got {q}")
    if dimension < 1:
        raise ValueError("dimension must be positive")
    if family in (Family.O_ODD, Family.O_EVEN):
        if type not in ("+", "-"):
            raise ValueError("orthogonal forms need type '+' or '-'")
    elif type not in (None, "none"):
        raise ValueError(f"family {family.value} takes no type")
    else:
        type = None

    if family is Family.GL:
        return FormSpec(family, dimension, q, None, field_of_order(q))
    if family is Family.U:
        F = field_of_order(q * q)
        return FormSpec(family, dimension, q, None, F, _as_tuple(_identity(dimension)))
    F = field_of_order(q)
    if family is Family.SP:
        if dimension % 2:
            raise ValueError("symplectic forms need even dimension")
        m = dimension // 2
        minus_one = F.neg[1]
        gram = [[0] * dimension for _ in range(dimension)]
        for i in range(m):
            gram[i][m + i] = 1
            gram[m + i][i] = minus_one
        return FormSpec(family, dimension, q, None, F, _as_tuple(gram))
    if family is Family.O_ODD:
        if q % 2 == 0:
            raise ValueError("family o-odd needs odd q")
        delta = F.least_nonsquare()
        if dimension % 2:
            gram = _identity(dimension)
            if type == "-":
                gram[-1][-1] = delta
        elif type == "+":
            gram = _hyperbolic(dimension)
        else:
            gram = [[0] * dimension for _ in range(dimension)]
            k = dimension - 2
            for i, row in enumerate(_hyperbolic(k)):
                gram[i][:k] = row
            gram[k][k] = 1
            gram[k + 1][k + 1] = F.neg[delta]
        return FormSpec(family, dimension, q, type, F, _as_tuple(gram))
    # O_EVEN
    if q % 2:
        raise ValueError("family o-even needs even q")
    if dimension % 2:
        raise ValueError("quadratic forms in characteristic 2 need even dimension")
    quad = [[0] * dimension for _ in range(dimension)]
    for i in range(0, dimension, 2):
        quad[i][i + 1] = 1
    if type == "-":
        quad[dimension - 2][dimension - 2] = 1
        quad[dimension - 1][dimension - 1] = least_irreducible_constant(F)
    gram = [[F.add[quad[i][j]][quad[j][i]] for j in range(dimension)] for i in range(dimension)]
    return FormSpec(family, dimension, q, type, F, _as_tuple(gram), _as_tuple(quad))


def _identity(n: int) -> list[list[int]]:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def is_member(g: Matrix, form: FormSpec) -> bool:
    """Whether ``g`` lies in the group preserving ``form``."""
    F = form.field
    if g.field != F or g.n != form.dimension:
        raise ValueError("matrix and form disagree on field or dimension")
    n = g.n
    if form.family is Family.GL:
        return rank(F, g.rows) == n
    if form.family is Family.O_EVEN:
        cols = [g.column(j) for j in range(n)]
        basis = [tuple(int(i == j) for i in range(n)) for j in range(n)]
        if any(form.quad_value(c) != form.quad_value(e) for c, e in zip(cols, basis)):
            return False
        return all(form.pair(cols[i], cols[j]) == form.gram[i][j] for i in range(n) for j in range(i + 1, n))
    left = transpose(g.rows)
    if form.conjugation is not None:
        left = tuple(tuple(F.frobenius(x, form.conjugation) for x in r) for r in left)
    return matmul(F, matmul(F, left, form.gram), g.rows) == form.gram
