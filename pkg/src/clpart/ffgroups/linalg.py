"""Matrices over small finite fields and the unipotent Jordan type at eigenvalue 1."""

from __future__ import annotations

from dataclasses import dataclass

from ..partitions import Partition, conjugate
from .field import GF


@dataclass(frozen=True)
class Matrix:
    """Square matrix over ``field``; ``rows[i][j]`` is the entry in row i, column j."""

    field: GF
    rows: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        rows = tuple(tuple(int(x) for x in r) for r in self.rows)
        n = len(rows)
        if any(len(r) != n for r in rows):
            raise ValueError("matrix must be square")
        if any(not 0 <= x < self.field.q for r in rows for x in r):
            raise ValueError(f"entries must be encoded elements of {self.field}")
        object.__setattr__(self, "rows", rows)

    @classmethod
    def identity(cls, field: GF, n: int) -> "Matrix":
        return cls(field, tuple(tuple(int(i == j) for j in range(n)) for i in range(n)))

    @classmethod
    def from_columns(cls, field: GF, columns) -> "Matrix":
        cols = [tuple(c) for c in columns]
        return cls(field, tuple(zip(*cols)) if cols else ())

    @property
    def n(self) -> int:
        return len(self.rows)

    def column(self, j: int) -> tuple[int, ...]:
        return tuple(r[j] for r in self.rows)

    def __matmul__(self, other: "Matrix") -> "Matrix":
        if self.field != other.field or self.n != other.n:
            raise ValueError("dimension or field mismatch")
        return Matrix(self.field, matmul(self.field, self.rows, other.rows))

    def __str__(self):
        return "\n".join(" ".join(map(str, r)) for r in self.rows)


def matmul(F: GF, a, b) -> tuple[tuple[int, ...], ...]:
    add, mul = F.add, F.mul
    n, m = len(a), len(b[0]) if b else 0
    out = []
    for i in range(n):
        row = a[i]
        new = []
        for j in range(m):
            acc = 0
            for k, x in enumerate(row):
                if x:
                    acc = add[acc][mul[x][b[k][j]]]
            new.append(acc)
        out.append(tuple(new))
    return tuple(out)


def transpose(a) -> tuple[tuple[int, ...], ...]:
    return tuple(zip(*a))


def rank(F: GF, a) -> int:
    """Rank by Gaussian elimination."""
    rows = [list(r) for r in a]
    if not rows:
        return 0
    mul, sub, inv = F.mul, F.sub, F.inv
    r = 0
    ncols = len(rows[0])
    for c in range(ncols):
        pivot = next((i for i in range(r, len(rows)) if rows[i][c]), None)
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        prow = rows[r]
        pinv = inv[prow[c]]
        for i in range(r + 1, len(rows)):
            f = rows[i][c]
            if f:
                f = mul[f][pinv]
                row = rows[i]
                for k in range(c, ncols):
                    if prow[k]:
                        row[k] = sub[row[k]][mul[f][prow[k]]]
        r += 1
        if r == len(rows):
            break
    return r


def _minus_identity(F: GF, a) -> tuple[tuple[int, ...], ...]:
    one = F.neg[1]
    return tuple(tuple(F.add[x][one] if i == j else x for j, x in enumerate(r)) for i, r in enumerate(a))


def nullity_sequence(g: Matrix) -> list[int]:
    """``d_k = dim ker (g - I)^k`` for k = 1, 2, ... until it stops growing."""
    return _nullities(g.field, g.rows)


def _nullities(F: GF, rows) -> list[int]:
    n = len(rows)
    h = _minus_identity(F, rows)
    power = h
    seq = [n - rank(F, power)]
    while seq[-1] < n and (len(seq) < 2 or seq[-1] != seq[-2]):
        power = matmul(F, power, h)
        d = n - rank(F, power)
        if d == seq[-1]:
            break
        seq.append(d)
    return seq


def _partition_from_nullities(seq: list[int]) -> Partition:
    dual = [b - a for a, b in zip([0] + seq, seq)]
    dual = [d for d in dual if d]
    return conjugate(Partition(tuple(dual)))


def jordan_partition_at_1(g: Matrix) -> Partition:
    """Partition of the Jordan block sizes of ``g`` at eigenvalue 1 (empty if 1 is not an eigenvalue)."""
    return _partition_from_nullities(nullity_sequence(g))


def jordan_type_of_rows(F: GF, rows) -> Partition:
    return _partition_from_nullities(_nullities(F, rows))
