import math
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from clpart.exactnum import RationalInterval
from clpart.measures import Family, aut_order, distribution_table
from clpart.partitions import enumerate_partitions
from clpart.tvdist import classify, theorem_bounds, tv_direct, tv_proposition, verify_theorem_bounds

PAIRS = [(f, q) for f in Family for q in (2, 3, 4, 5) if not (f is Family.O_ODD and q % 2 == 0) and not (f is Family.O_EVEN and q % 2)]


def gl_limit_float(q):
    prod = 1.0
    for i in range(1, 300):
        prod *= 1 - q**-i
    return prod


def test_gl_n1_q2_value():
    # TV at n=1 equals 1 - prod (1 - 2^-i); float evaluation as independent check
    expected = 1 - gl_limit_float(2)
    for res in (tv_proposition(Family.GL, 1, 2), tv_direct(Family.GL, 1, 2)):
        assert res.interval.width < Fraction(1, 10**10)
        assert math.isclose(float(res.interval.mid), expected, rel_tol=1e-12)


@settings(max_examples=25, deadline=None)
@given(st.sampled_from(PAIRS), st.integers(1, 4))
def test_methods_agree(fq, n):
    family, q = fq
    a = tv_proposition(family, n, q)
    b = tv_direct(family, n, q)
    assert a.interval.intersects(b.interval)
    assert a.interval.width < Fraction(1, 10**9) and b.interval.width < Fraction(1, 10**9)


def test_tv_direct_against_float_sum():
    # independent float computation from the exact finite table and a float limit measure
    table = distribution_table(Family.GL, 2, 3)
    prod = gl_limit_float(3)
    total = 0.0
    covered = 0.0
    for lam in enumerate_partitions(max_size=14):
        p = prod / float(aut_order(Family.GL, lam, 3))
        covered += p
        total += abs(p - float(table[lam]))
    total += 1 - covered
    assert math.isclose(float(tv_direct(Family.GL, 2, 3).interval.mid), total / 2, rel_tol=1e-9)


def test_tv_decreases_in_n():
    vals = [tv_proposition(Family.SP, n, 3).interval for n in range(1, 6)]
    assert all(a.lo > b.hi for a, b in zip(vals, vals[1:]))


def test_theorem_bounds_values():
    assert theorem_bounds(Family.GL, 1, 2) == (Fraction(38, 400), Fraction(14, 4))
    assert theorem_bounds(Family.O_ODD, 4, 3) == (Fraction(1, 90), Fraction(13, 90))
    assert theorem_bounds(Family.O_ODD, 3, 3) == (Fraction(1, 90), Fraction(2, 9))
    assert theorem_bounds(Family.O_EVEN, 2, 2) == (Fraction(1, 40), Fraction(26, 40))


def test_classify():
    lo, hi = Fraction(1), Fraction(2)
    assert classify(RationalInterval(Fraction(3, 2), Fraction(7, 4)), lo, hi) == "contained"
    assert classify(RationalInterval(3, 4), lo, hi) == "violated"
    assert classify(RationalInterval(Fraction(1, 2), Fraction(3, 2)), lo, hi) == "undecided"


@pytest.mark.parametrize("family,q", [(Family.GL, 2), (Family.U, 3), (Family.SP, 2), (Family.O_ODD, 3), (Family.O_EVEN, 2)])
def test_verify_bounds_small(family, q):
    chk = verify_theorem_bounds(family, 3, q)
    assert chk.verdict == "contained"


def test_bad_arguments():
    with pytest.raises(ValueError):
        tv_proposition(Family.O_ODD, 1, 2)
    with pytest.raises(ValueError):
        tv_proposition(Family.GL, 5, 2, tail_cut=5)
    with pytest.raises(ValueError):
        tv_direct(Family.GL, 5, 2, support_cut=3)
