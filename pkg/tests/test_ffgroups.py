import itertools
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from clpart.ffgroups import (
    BudgetExceeded,
    Matrix,
    classical_order,
    closure_check,
    empirical_distribution,
    empirical_table,
    enumerate_group,
    field_make,
    is_member,
    jordan_partition_at_1,
    nullity_sequence,
    oracle_compare,
    standard_form,
)
from clpart.ffgroups.forms import least_irreducible_constant
from clpart.ffgroups.linalg import transpose
from clpart.measures import Family
from clpart.partitions import Partition

P = Partition.parse
FIELDS = [(2, 1), (3, 1), (5, 1), (2, 2), (3, 2), (2, 3)]


def test_field_moduli():
    assert field_make(2, 2).modulus == (1, 1, 1)  # t^2 + t + 1
    assert field_make(3, 2).modulus == (1, 0, 1)  # t^2 + 1
    assert field_make(2, 3).modulus == (1, 1, 0, 1)  # t^3 + t + 1
    with pytest.raises(ValueError):
        field_make(4, 1)


@settings(max_examples=60)
@given(st.sampled_from(FIELDS), st.data())
def test_field_axioms(pk, data):
    F = field_make(*pk)
    x, y, z = (data.draw(st.integers(0, F.q - 1)) for _ in range(3))
    assert F.add[x][F.add[y][z]] == F.add[F.add[x][y]][z]
    assert F.mul[x][F.mul[y][z]] == F.mul[F.mul[x][y]][z]
    assert F.mul[x][F.add[y][z]] == F.add[F.mul[x][y]][F.mul[x][z]]
    assert F.add[x][F.neg[x]] == 0
    if x:
        assert F.mul[x][F.inv[x]] == 1
    p = F.p
    assert F.frobenius(F.add[x][y], p) == F.add[F.frobenius(x, p)][F.frobenius(y, p)]
    assert F.frobenius(F.mul[x][y], p) == F.mul[F.frobenius(x, p)][F.frobenius(y, p)]


def test_unitary_conjugation_is_an_involution():
    F = field_make(3, 2)
    assert all(F.frobenius(F.frobenius(x)) == x for x in F.elements)
    fixed = [x for x in F.elements if F.frobenius(x) == x]
    assert len(fixed) == 3


def test_nullity_examples():
    F2 = field_make(2)
    assert nullity_sequence(Matrix.identity(field_make(3), 3)) == [3]
    transvection = Matrix(F2, ((1, 1), (0, 1)))
    assert nullity_sequence(transvection) == [1, 2]
    order3 = Matrix(F2, ((0, 1), (1, 1)))
    assert nullity_sequence(order3) == [0]
    assert jordan_partition_at_1(Matrix.identity(field_make(3), 3)) == P("1,1,1")
    assert jordan_partition_at_1(transvection) == P("2")
    assert jordan_partition_at_1(order3) == P("-")


@settings(max_examples=80)
@given(st.sampled_from(FIELDS[:4]), st.integers(1, 4), st.data())
def test_nullity_sequence_shape(pk, n, data):
    F = field_make(*pk)
    rows = tuple(tuple(data.draw(st.integers(0, F.q - 1)) for _ in range(n)) for _ in range(n))
    g = Matrix(F, rows)
    d = nullity_sequence(g)
    steps = [b - a for a, b in zip([0] + d, d)]
    assert all(a >= b for a, b in zip(steps, steps[1:]))
    lam = jordan_partition_at_1(g)
    assert lam.size == d[-1]
    # a matrix is similar to its transpose
    assert jordan_partition_at_1(Matrix(F, transpose(rows))) == lam


def test_standard_form_examples():
    sp = standard_form(Family.SP, 2, 3)
    assert sp.gram == ((0, 1), (2, 0))
    o = standard_form(Family.O_EVEN, 2, 2, "+")
    assert o.quad == ((0, 1), (0, 0))
    minus = standard_form(Family.O_ODD, 2, 3, "-")
    assert minus.gram == ((1, 0), (0, 1))  # x^2 + y^2 is anisotropic mod 3
    assert least_irreducible_constant(field_make(2, 2)) == 2
    with pytest.raises(ValueError):
        standard_form(Family.SP, 3, 3)
    with pytest.raises(ValueError):
        standard_form(Family.O_EVEN, 2, 3, "+")
    with pytest.raises(ValueError):
        standard_form(Family.O_ODD, 3, 3)


def test_minus_forms_are_anisotropic_in_dimension_two():
    for family, q in ((Family.O_ODD, 3), (Family.O_ODD, 5), (Family.O_EVEN, 2), (Family.O_EVEN, 4)):
        form = standard_form(family, 2, q, "-")
        F = form.field
        for v in itertools.product(range(F.q), repeat=2):
            if any(v):
                val = form.quad_value(v) if form.quad else form.pair(v, v)
                assert val != 0


def test_membership_examples():
    F2, F3 = field_make(2), field_make(3)
    o = standard_form(Family.O_EVEN, 2, 2, "+")
    assert is_member(Matrix(F2, ((0, 1), (1, 0))), o)
    sp = standard_form(Family.SP, 2, 3)
    assert not is_member(Matrix(F3, ((1, 0), (0, 2))), sp)
    for family, dim, q, t in [(Family.U, 2, 3, None), (Family.SP, 4, 2, None), (Family.O_ODD, 3, 5, "-")]:
        form = standard_form(family, dim, q, t)
        assert is_member(Matrix.identity(form.field, dim), form)


@pytest.mark.parametrize(
    "family,dim,q,t,order",
    [
        (Family.GL, 2, 2, None, 6),
        (Family.O_EVEN, 2, 2, "+", 2),
        (Family.O_EVEN, 2, 2, "-", 6),
        (Family.SP, 2, 3, None, 24),
        (Family.U, 1, 2, None, 3),
        (Family.U, 2, 2, None, 18),
        (Family.O_ODD, 3, 3, "+", 48),
        (Family.O_ODD, 2, 5, "-", 12),
    ],
)
def test_group_orders(family, dim, q, t, order):
    elements = list(enumerate_group(family, dim, q, t))
    assert len(elements) == order == classical_order(family, dim, q, t)
    assert len(set(elements)) == order
    form = standard_form(family, dim, q, t)
    assert all(is_member(g, form) for g in elements)


def test_enumeration_is_exhaustive_for_small_group():
    # every 2x2 matrix over GF(3) checked directly against the symplectic form
    form = standard_form(Family.SP, 2, 3)
    F = form.field
    brute = {Matrix(F, (r[:2], r[2:])) for r in itertools.product(range(3), repeat=4) if is_member(Matrix(F, (r[:2], r[2:])), form)}
    assert brute == set(enumerate_group(Family.SP, 2, 3))


@pytest.mark.parametrize(
    "family,dim,q,t",
    [(Family.GL, 3, 3, None), (Family.U, 2, 3, None), (Family.SP, 4, 2, None), (Family.O_ODD, 4, 3, "-"), (Family.O_EVEN, 4, 2, "-")],
)
def test_closure(family, dim, q, t):
    assert closure_check(family, dim, q, t, pairs=1000, seed=7) == 0


@pytest.mark.parametrize(
    "family,n,q,expected",
    [
        (Family.GL, 2, 2, {"-": Fraction(2, 6), "2": Fraction(3, 6), "1,1": Fraction(1, 6)}),
        (Family.U, 1, 2, {"-": Fraction(2, 3), "1": Fraction(1, 3)}),
        (Family.O_EVEN, 1, 2, {"-": Fraction(1, 6), "1,1": Fraction(1, 3), "2": Fraction(1, 2)}),
    ],
)
def test_empirical_examples(family, n, q, expected):
    dist = empirical_distribution(family, n, q)
    assert {str(k): v for k, v in dist.probabilities.items()} == expected


@pytest.mark.parametrize("family,n,q", [(Family.GL, 2, 2), (Family.SP, 1, 2), (Family.O_ODD, 1, 3), (Family.U, 2, 2), (Family.O_ODD, 3, 3)])
def test_oracle_compare_small(family, n, q):
    rep = oracle_compare(family, n, q)
    assert rep.passed, rep.line()


def test_worker_count_does_not_change_counts():
    a = empirical_table(Family.SP, 4, 2, None, workers=1)
    b = empirical_table(Family.SP, 4, 2, None, workers=3)
    assert list(a.counts.items()) == list(b.counts.items())
    assert a.order == b.order == 720


def test_budget(monkeypatch):
    monkeypatch.setenv("CLP_MAX_CANDIDATES", "100")
    with pytest.raises(BudgetExceeded):
        next(enumerate_group(Family.GL, 3, 2))
    monkeypatch.setenv("CLP_MAX_CANDIDATES", "1000")
    assert sum(1 for _ in enumerate_group(Family.GL, 3, 2)) == 168


def test_random_products_preserve_jordan_type_under_conjugation():
    F = field_make(3)
    elements = list(enumerate_group(Family.GL, 2, 3))
    rng = random.Random(3)
    members = set(elements)
    identity = Matrix.identity(F, 2)
    for _ in range(200):
        g, h = rng.choice(elements), rng.choice(elements)
        h_inv = next(x for x in elements if h @ x == identity)
        assert h @ g @ h_inv in members
        assert jordan_partition_at_1(h @ g @ h_inv) == jordan_partition_at_1(g)
