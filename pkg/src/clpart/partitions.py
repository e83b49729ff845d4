"""Integer partitions, their statistics and constrained enumeration."""

from __future__ import annotations

import enum
from collections import Counter
from dataclasses import dataclass
from functools import cached_property, lru_cache
from typing import Iterator


@dataclass(frozen=True, order=False)
class Partition:
    """Weakly decreasing tuple of positive parts; ``Partition(())`` is the empty partition."""

    parts: tuple[int, ...] = ()

    def __post_init__(self):
        parts = tuple(int(p) for p in self.parts)
        if any(p < 1 for p in parts):
            raise ValueError(f"parts must be positive: {parts}")
        if any(a < b for a, b in zip(parts, parts[1:])):
            raise ValueError(f"parts must be non-increasing: {parts}")
        object.__setattr__(self, "parts", parts)

    @classmethod
    def of(cls, *parts: int) -> "Partition":
        """Build from parts in any order."""
        return cls(tuple(sorted(parts, reverse=True)))

    @classmethod
    def parse(cls, text: str) -> "Partition":
        """Parse ``"3,1,1"``; ``"-"`` (or an empty string) is the empty partition."""
        text = text.strip()
        if text in ("-", "", "()", "[]"):
            return cls(())
        try:
            parts = tuple(int(t) for t in text.split(","))
        except ValueError:
            raise ValueError(f"malformed partition {text!r}") from None
        return cls(parts)

    def __str__(self) -> str:
        return ",".join(map(str, self.parts)) if self.parts else "-"

    def __repr__(self) -> str:
        return f"Partition({self})"

    def __iter__(self) -> Iterator[int]:
        return iter(self.parts)

    def __len__(self) -> int:
        return len(self.parts)

    def __bool__(self) -> bool:
        return bool(self.parts)

    @property
    def size(self) -> int:
        return sum(self.parts)

    @cached_property
    def multiplicities(self) -> dict[int, int]:
        return dict(sorted(Counter(self.parts).items()))

    def conjugate(self) -> "Partition":
        return conjugate(self)

    @cached_property
    def stats(self) -> "PartitionStats":
        return stats(self)

    def sort_key(self) -> tuple:
        """Size first, then lexicographically descending parts."""
        return (self.size, tuple(-p for p in self.parts))


EMPTY = Partition(())


def conjugate(lam: Partition) -> Partition:
    parts = lam.parts
    if not parts:
        return EMPTY
    return Partition(tuple(sum(1 for p in parts if p >= i) for i in range(1, parts[0] + 1)))


@dataclass(frozen=True)
class PartitionStats:
    size: int
    multiplicities: dict
    odd_parts: int
    length: int
    n_lambda: int
    dual_square_sum: int


def stats(lam: Partition) -> PartitionStats:
    parts = lam.parts
    dual = [sum(1 for p in parts if p >= i) for i in range(1, parts[0] + 1)] if parts else []
    return PartitionStats(
        size=lam.size,
        multiplicities=dict(lam.multiplicities),
        odd_parts=sum(1 for p in lam.parts if p % 2),
        length=len(lam.parts),
        n_lambda=sum(d * (d - 1) // 2 for d in dual),
        dual_square_sum=sum(d * d for d in dual),
    )


class SupportConstraint(enum.Enum):
    ALL = "all"
    ODD_PARTS_EVEN_MULT = "odd_parts_even_mult"
    EVEN_PARTS_EVEN_MULT = "even_parts_even_mult"

    def admits(self, lam: Partition) -> bool:
        if self is SupportConstraint.ALL:
            return True
        parity = 1 if self is SupportConstraint.ODD_PARTS_EVEN_MULT else 0
        return all(m % 2 == 0 for i, m in lam.multiplicities.items() if i % 2 == parity)


def _partitions_of(n: int, largest: int) -> Iterator[tuple[int, ...]]:
    # lexicographically descending
    if n == 0:
        yield ()
        return
    for first in range(min(n, largest), 0, -1):
        for rest in _partitions_of(n - first, first):
            yield (first,) + rest


@lru_cache(maxsize=None)
def partitions_of_size(n: int, constraint: SupportConstraint = SupportConstraint.ALL) -> tuple[Partition, ...]:
    out = (Partition(p) for p in _partitions_of(n, n))
    return tuple(lam for lam in out if constraint.admits(lam))


def enumerate_partitions(constraint: SupportConstraint = SupportConstraint.ALL, max_size: int = 0) -> list[Partition]:
    """All partitions of size 0..max_size satisfying ``constraint``.

    Ordered by size, then lexicographically descending parts.
    """
    if max_size < 0:
        raise ValueError("max_size must be non-negative")
    out: list[Partition] = []
    for n in range(max_size + 1):
        out.extend(partitions_of_size(n, constraint))
    return out
