import math
from collections import Counter
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from clpart.measures import (
    Family,
    MeasureParams,
    SampleSizeCapExceeded,
    aut_order,
    distribution_table,
    lambda_measure,
    limit_measure,
    normalizer,
    normalization_check,
    sample,
)
from clpart.partitions import EMPTY, Partition, enumerate_partitions

P = Partition.parse
VALID_Q = {
    Family.GL: [2, 3, 4, 5],
    Family.U: [2, 3, 4, 5],
    Family.SP: [2, 3, 4, 5],
    Family.O_ODD: [3, 5, 7],
    Family.O_EVEN: [2, 4, 8],
}
family_q = st.sampled_from([(f, q) for f, qs in VALID_Q.items() for q in qs])


def test_family_parse():
    assert Family.parse("O_odd") is Family.O_ODD
    with pytest.raises(ValueError):
        Family.parse("so")


@pytest.mark.parametrize(
    "family,lam,q,expected",
    [
        (Family.GL, "1,1", 2, 6),  # |GL(2,2)|
        (Family.GL, "1", 2, 1),  # |GL(1,2)|
        (Family.GL, "2", 2, 2),
        (Family.U, "1", 2, 3),  # |U(1,2)|
        (Family.SP, "1,1", 2, 6),  # |Sp(2,2)|
        (Family.SP, "1,1", 3, 24),  # |Sp(2,3)|
        (Family.O_EVEN, "1,1", 2, Fraction(3, 2)),
        (Family.O_ODD, "1", 3, 1),
    ],
)
def test_aut_order_examples(family, lam, q, expected):
    assert aut_order(family, P(lam), q) == expected


def test_aut_order_rejects_bad_input():
    with pytest.raises(ValueError):
        aut_order(Family.SP, P("1"), 2)
    with pytest.raises(ValueError):
        aut_order(Family.O_ODD, EMPTY, 2)
    with pytest.raises(ValueError):
        aut_order(Family.GL, EMPTY, 6)


@pytest.mark.parametrize(
    "family,n,q,expected",
    [
        (Family.GL, 2, 2, {"-": Fraction(1, 3), "2": Fraction(1, 2), "1,1": Fraction(1, 6)}),
        (Family.U, 1, 2, {"-": Fraction(2, 3), "1": Fraction(1, 3)}),
        (Family.O_EVEN, 1, 2, {"-": Fraction(1, 6), "2": Fraction(1, 2), "1,1": Fraction(1, 3)}),
        (Family.O_ODD, 1, 3, {"-": Fraction(1, 2), "1": Fraction(1, 2)}),
        (Family.SP, 1, 2, {"-": Fraction(1, 3), "2": Fraction(1, 2), "1,1": Fraction(1, 6)}),
        # O^+(2,3) has 4 elements, O^-(2,3) has 8; hand count of fixed spaces
        (Family.O_ODD, 2, 3, {"-": Fraction(5, 16), "1": Fraction(1, 2), "1,1": Fraction(3, 16)}),
    ],
)
def test_distribution_spot_values(family, n, q, expected):
    table = distribution_table(family, n, q)
    assert {str(k): v for k, v in table.nonzero().items()} == expected


def test_zero_entries_are_kept():
    table = distribution_table(Family.GL, 2, 2)
    assert table[P("1")] == 0 and P("1") in table.entries


@settings(max_examples=30, deadline=None)
@given(family_q, st.integers(1, 6))
def test_normalization_property(fq, n):
    family, q = fq
    assert normalization_check(family, n, q)


@settings(max_examples=30, deadline=None)
@given(family_q, st.integers(1, 5))
def test_lambda_outside_support_is_zero(fq, n):
    family, q = fq
    for lam in (P("1"), P("2"), P("3,2"), P("2,1,1")):
        if not family.support.admits(lam):
            assert lambda_measure(family, n, q, lam) == 0
    assert lambda_measure(family, n, q, Partition((n + 1,) * 3)) == 0


@pytest.mark.parametrize("family", list(Family))
def test_lambda_converges_to_limit(family):
    q = VALID_Q[family][0]
    lam = EMPTY
    limit = limit_measure(MeasureParams(family, q), lam)
    gaps = [abs(lambda_measure(family, n, q, lam) - limit.mid) for n in (4, 8, 16)]
    assert gaps[0] > gaps[1] > gaps[2]


def test_limit_measure_gl_empty():
    iv = limit_measure(MeasureParams(Family.GL, 2), EMPTY)
    assert math.isclose(float(iv.mid), 0.288788095086602, rel_tol=1e-13)


def test_limit_measure_o_even_two():
    iv = limit_measure(MeasureParams(Family.O_EVEN, 2), P("2"))
    assert math.isclose(float(iv.mid), 0.2097112, rel_tol=1e-6)


@settings(max_examples=15, deadline=None)
@given(family_q, st.fractions(0, 1, max_denominator=8))
def test_limit_masses_sum_to_one(fq, u):
    family, q = fq
    params = MeasureParams(family, q, u)
    weights = sum((u**lam.size / aut_order(family, lam, q) for lam in enumerate_partitions(family.support, 24)), Fraction(0))
    total_lo = normalizer(params, 40).lo * weights
    assert total_lo <= 1
    assert total_lo > 1 - Fraction(1, 1000)


def test_u_zero_is_point_mass():
    params = MeasureParams(Family.GL, 3, 0)
    assert limit_measure(params, EMPTY).contains(1)
    assert limit_measure(params, P("1")).hi == 0


def test_sample_is_deterministic():
    params = MeasureParams(Family.U, 3)
    a = sample(params, 200, seed=5)
    b = sample(params, 200, seed=5)
    assert a.draws == b.draws
    assert sample(params, 200, seed=6).draws != a.draws


def test_sample_frequencies_match_measure():
    params = MeasureParams(Family.GL, 2)
    draws = sample(params, 20000, seed=1).draws
    counts = Counter(draws)
    for lam in (EMPTY, P("1"), P("2"), P("1,1")):
        p = float(limit_measure(params, lam).mid)
        sigma = math.sqrt(p * (1 - p) / 20000)
        assert abs(counts[lam] / 20000 - p) < 5 * sigma


def test_sample_overflow_and_cap():
    params = MeasureParams(Family.GL, 2)
    res = sample(params, 10, tail_epsilon=Fraction(1, 4))
    assert 0 < res.overflow_mass <= Fraction(1, 4)
    with pytest.raises(SampleSizeCapExceeded):
        sample(params, 1, tail_epsilon=Fraction(1, 10**12), size_cap=2)
