"""Exhaustive enumeration of small classical groups and exact Jordan-type statistics.

Elements are found column by column.  Column ``j`` of a group element is a
vector whose form values against itself and against the columns already
chosen are forced, so each level of the search is a boolean mask over all
``Q^d`` vectors.  For GL the mask is the complement of the current span.
"""

from __future__ import annotations

import os
import random
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from multiprocessing import get_context
from typing import Iterator, Optional

import numpy as np

from ..measures import Family, check_q, distribution_table
from ..partitions import Partition
from .forms import FormSpec, is_member, standard_form
from .linalg import Matrix, jordan_type_of_rows

DEFAULT_MAX_CANDIDATES = 2**32


class BudgetExceeded(RuntimeError):
    pass


def max_candidates() -> int:
    raw = os.environ.get("CLP_MAX_CANDIDATES")
    if raw is None:
        return DEFAULT_MAX_CANDIDATES
    try:
        value = int(raw)
    except ValueError:
        raise ValueError(f"CLP_MAX_CANDIDATES must be an integer, got {raw!r}") from None
    if value < 1:
        raise ValueError("CLP_MAX_CANDIDATES must be positive")
    return value


def raw_candidates(form: FormSpec) -> int:
    """Size of the unpruned search space: all d x d matrices over the working field."""
    return form.field.q ** (form.dimension**2)


def classical_order(family: Family, dimension: int, q: int, type: Optional[str] = None) -> int:
    """Order of the group fixed by :func:`standard_form` (GL: all invertible matrices)."""
    d = dimension
    if family is Family.GL:
        out = 1
        for i in range(d):
            out *= q**d - q**i
        return out
    if family is Family.U:
        out = q ** (d * (d - 1) // 2)
        for i in range(1, d + 1):
            out *= q**i - (-1) ** i
        return out
    m = d // 2
    sym = 1
    for i in range(1, m + 1):
        sym *= q ** (2 * i) - 1
    if family is Family.SP:
        return q ** (m * m) * sym
    if d % 2:
        return 2 * q ** (m * m) * sym
    sign = 1 if type == "+" else -1
    return 2 * q ** (m * (m - 1)) * (q**m - sign) * (sym // (q ** (2 * m) - 1))


# ---------------------------------------------------------------------------
# search space


class _Space:
    def __init__(self, form: FormSpec):
        F = form.field
        self.form = form
        self.field = F
        Q, d = F.q, form.dimension
        self.d = d
        V = Q**d
        idx = np.arange(V)
        self.digits = np.stack([(idx // Q**i) % Q for i in range(d)], axis=1).astype(np.int64)
        self.vectors = [tuple(int(x) for x in row) for row in self.digits]
        add, mul = F.add_np.astype(np.int64), F.mul_np.astype(np.int64)
        powers = Q ** np.arange(d)

        if form.family is Family.GL:
            # index arithmetic for span tracking
            summed = add[self.digits[:, None, :], self.digits[None, :, :]]
            self.vadd = summed @ powers
            self.scale = np.stack([mul[c, self.digits] @ powers for c in range(Q)])
            return

        left = self.digits
        if form.conjugation is not None:
            conj = np.array([F.frobenius(x, form.conjugation) for x in range(Q)])
            left = conj[left]
        gram = form.gram
        lin = np.zeros((V, d), dtype=np.int64)
        for j in range(d):
            for i in range(d):
                if gram[i][j]:
                    lin[:, j] = add[lin[:, j], mul[left[:, i], gram[i][j]]]
        table = np.zeros((V, V), dtype=np.int64)
        for j in range(d):
            table = add[table, mul[lin[:, j][:, None], self.digits[None, :, j]]]
        self.table = table

        if form.family is Family.O_EVEN:
            selfval = np.zeros(V, dtype=np.int64)
            for i in range(d):
                for j in range(i, d):
                    c = form.quad[i][j]
                    if c:
                        term = mul[c, mul[self.digits[:, i], self.digits[:, j]]]
                        selfval = add[selfval, term]
            targets = [form.quad[j][j] for j in range(d)]
        else:
            selfval = np.diagonal(table).copy()
            targets = [gram[j][j] for j in range(d)]
        self.self_masks = [selfval == t for t in targets]
        self._eq: dict[int, np.ndarray] = {}

    def eq(self, value: int) -> np.ndarray:
        if value not in self._eq:
            self._eq[value] = self.table == value
        return self._eq[value]

    def first_candidates(self) -> list[int]:
        if self.form.family is Family.GL:
            return list(range(1, len(self.vectors)))
        return [int(v) for v in np.flatnonzero(self.self_masks[0])]

    def columns(self, first: Optional[list[int]] = None) -> Iterator[tuple[int, ...]]:
        """Every admissible column tuple (vector indices), depth first."""
        starts = self.first_candidates() if first is None else first
        if self.form.family is Family.GL:
            yield from self._gl(starts)
        else:
            yield from self._forms(starts)

    def _forms(self, starts):
        d, gram = self.d, self.form.gram
        cols: list[int] = []

        def rec(j):
            if j == d:
                yield tuple(cols)
                return
            mask = self.self_masks[j].copy()
            for k, c in enumerate(cols):
                mask &= self.eq(gram[k][j])[c]
            for v in np.flatnonzero(mask):
                cols.append(int(v))
                yield from rec(j + 1)
                cols.pop()

        for v in starts:
            cols.append(v)
            yield from rec(1)
            cols.pop()

    def _gl(self, starts):
        d, Q = self.d, self.field.q
        V = len(self.vectors)
        cols: list[int] = []

        def extend(span: np.ndarray, v: int) -> np.ndarray:
            parts = [span] + [self.vadd[span, self.scale[c, v]] for c in range(1, Q)]
            return np.concatenate(parts)

        def rec(j, span):
            if j == d:
                yield tuple(cols)
                return
            inside = np.zeros(V, dtype=bool)
            inside[span] = True
            for v in np.flatnonzero(~inside):
                cols.append(int(v))
                yield from rec(j + 1, extend(span, int(v)))
                cols.pop()

        zero = np.zeros(1, dtype=np.int64)
        for v in starts:
            cols.append(v)
            yield from rec(1, extend(zero, v))
            cols.pop()

    def rows(self, cols: tuple[int, ...]) -> tuple[tuple[int, ...], ...]:
        return tuple(zip(*(self.vectors[c] for c in cols)))


def _space(family: Family, dimension: int, q: int, type: Optional[str]) -> _Space:
    form = standard_form(family, dimension, q, type)
    budget = max_candidates()
    if raw_candidates(form) > budget:
        raise BudgetExceeded(
            f"{family.value} dimension {dimension} over q={q}: {raw_candidates(form)} raw candidates exceed {budget}"
        )
    return _cached_space(form)


@lru_cache(maxsize=32)
def _cached_space(form: FormSpec) -> _Space:
    return _Space(form)


def enumerate_group(family: Family, dimension: int, q: int, type: Optional[str] = None) -> Iterator[Matrix]:
    """Yield every element of the group once."""
    space = _space(family, dimension, check_q(Family.GL, q), _norm_type(family, type))
    F = space.field
    for cols in space.columns():
        yield Matrix(F, space.rows(cols))


def _norm_type(family: Family, type: Optional[str]) -> Optional[str]:
    if family in (Family.O_ODD, Family.O_EVEN):
        return type
    return None


# ---------------------------------------------------------------------------
# empirical statistics


@dataclass
class EmpiricalTable:
    """Counts of the Jordan type at 1 over all elements of one group."""

    family: Family
    dimension: int
    q: int
    type: Optional[str]
    order: int
    counts: dict = field(default_factory=dict)

    def probabilities(self) -> dict:
        return {lam: Fraction(c, self.order) for lam, c in self.counts.items()}


@dataclass
class EmpiricalDistribution:
    """Exact distribution for one family at rank parameter ``n`` (orthogonal: the +/- mixture)."""

    family: Family
    n: int
    q: int
    tables: list
    probabilities: dict


def group_dimension(family: Family, n: int) -> int:
    return 2 * n if family in (Family.SP, Family.O_EVEN) else n


def _count_chunk(args) -> tuple[int, dict]:
    family_value, dimension, q, type, starts = args
    space = _space(Family(family_value), dimension, q, type)
    F = space.field
    counts: Counter = Counter()
    total = 0
    for cols in space.columns(starts):
        counts[jordan_type_of_rows(F, space.rows(cols))] += 1
        total += 1
    return total, dict(counts)


def empirical_table(
    family: Family, dimension: int, q: int, type: Optional[str] = None, workers: int = 1
) -> EmpiricalTable:
    """Enumerate one group and count Jordan types; the search is split by first column."""
    type = _norm_type(family, type)
    space = _space(family, dimension, q, type)
    starts = space.first_candidates()
    workers = max(1, min(workers, len(starts)))
    chunks = [starts[i::workers] for i in range(workers)]
    jobs = [(family.value, dimension, q, type, chunk) for chunk in chunks]
    if workers == 1:
        results = [_count_chunk(job) for job in jobs]
    else:
        with ProcessPoolExecutor(max_workers=workers, mp_context=get_context("fork")) as pool:
            results = list(pool.map(_count_chunk, jobs))
    counts: Counter = Counter()
    order = 0
    for total, part in results:
        order += total
        counts.update(part)
    ordered = dict(sorted(counts.items(), key=lambda kv: kv[0].sort_key()))
    return EmpiricalTable(family, dimension, q, type, order, ordered)


def empirical_distribution(family: Family, n: int, q: int, workers: int = 1) -> EmpiricalDistribution:
    q = check_q(family, q)
    dim = group_dimension(family, n)
    if family in (Family.O_ODD, Family.O_EVEN):
        tables = [empirical_table(family, dim, q, t, workers) for t in ("+", "-")]
        weight = Fraction(1, 2)
    else:
        tables = [empirical_table(family, dim, q, None, workers)]
        weight = Fraction(1)
    probs: dict = {}
    for table in tables:
        for lam, p in table.probabilities().items():
            probs[lam] = probs.get(lam, Fraction(0)) + weight * p
    probs = dict(sorted(probs.items(), key=lambda kv: kv[0].sort_key()))
    return EmpiricalDistribution(family, n, q, tables, probs)


@dataclass
class OracleReport:
    family: Family
    n: int
    q: int
    mismatches: list
    order_mismatches: list
    partitions: int
    empirical: Optional[EmpiricalDistribution] = None

    @property
    def passed(self) -> bool:
        return not self.mismatches and not self.order_mismatches

    def line(self) -> str:
        head = f"{self.family.value} n={self.n} q={self.q}"
        if self.passed:
            return f"{head}: equal on {self.partitions} partitions"
        bits = [f"{lam}: empirical {e} formula {f}" for lam, e, f in self.mismatches]
        bits += [f"order {t}: enumerated {got} expected {want}" for t, got, want in self.order_mismatches]
        return f"{head}: MISMATCH " + "; ".join(bits)


def oracle_compare(family: Family, n: int, q: int, workers: int = 1) -> OracleReport:
    """Compare enumeration against the closed-form finite-rank distribution, exactly."""
    emp = empirical_distribution(family, n, q, workers)
    formula = distribution_table(family, n, q)
    keys = sorted(set(emp.probabilities) | set(formula.entries), key=Partition.sort_key)
    mismatches = []
    for lam in keys:
        e, f = emp.probabilities.get(lam, Fraction(0)), formula[lam]
        if e != f:
            mismatches.append((lam, e, f))
    orders = []
    for t in emp.tables:
        want = classical_order(family, t.dimension, q, t.type)
        if t.order != want:
            orders.append((t.type or "none", t.order, want))
    return OracleReport(family, n, q, mismatches, orders, len(keys), emp)


def closure_check(
    family: Family, dimension: int, q: int, type: Optional[str] = None, pairs: int = 1000, seed: int = 0
) -> int:
    """Multiply ``pairs`` seeded random pairs of elements; returns how many products fall outside."""
    type = _norm_type(family, type)
    elements = list(enumerate_group(family, dimension, q, type))
    form = _space(family, dimension, q, type).form
    rng = random.Random(seed)
    bad = 0
    for _ in range(pairs):
        g, h = rng.choice(elements), rng.choice(elements)
        if not is_member(g @ h, form):
            bad += 1
    return bad


def support_violations(dist: EmpiricalDistribution) -> list:
    """Partitions with positive mass that break the family's multiplicity or parity rule."""
    bad = []
    for lam, p in dist.probabilities.items():
        if not p:
            continue
        if not dist.family.support.admits(lam):
            bad.append(lam)
        elif dist.family in (Family.SP, Family.O_EVEN) and lam.size % 2:
            bad.append(lam)
    return bad
