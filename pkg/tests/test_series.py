from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from mcfcalc.errors import InsufficientPrecision, NotInvertible, PositiveValuationRequired
from mcfcalc.series import (
    INF,
    BiSeries,
    QLaurent,
    coeff,
    dq,
    exp_series,
    from_json,
    rat,
    series_add,
    series_invert,
    series_mul,
    substitute_power,
)

small = st.fractions(min_value=-5, max_value=5, max_denominator=4)


@st.composite
def laurent(draw, exact=False):
    val = draw(st.integers(-3, 3))
    cs = draw(st.lists(small, min_size=0, max_size=6))
    prec = INF if exact else val + len(cs) + draw(st.integers(0, 3))
    return QLaurent(cs, val, prec)


@st.composite
def bi(draw):
    zval = draw(st.integers(-2, 2))
    qval = draw(st.integers(-1, 1))
    rows = draw(st.lists(st.lists(small, max_size=4), min_size=1, max_size=4))
    q_prec = qval + 5
    z_prec = zval + len(rows) + draw(st.integers(0, 2))
    d = {(zval + i, qval + j): c for i, row in enumerate(rows) for j, c in enumerate(row)}
    return BiSeries.from_dict(d, z_prec, q_prec)


def test_geometric_series():
    inv = QLaurent([1, -1]).invert(prec=4)
    assert inv == QLaurent([1, 1, 1, 1], prec=4)
    assert QLaurent([1, -1]) * inv == QLaurent.constant(1, prec=4)


def test_exp_examples():
    assert QLaurent.monomial(1).exp(prec=4) == QLaurent([1, 1, Fraction(1, 2), Fraction(1, 6)], prec=4)
    ez = exp_series(QLaurent.monomial(2), prec=5)
    assert [ez.coeff(n) for n in range(5)] == [1, 0, 1, 0, Fraction(1, 2)]


def test_euler_operator():
    assert dq(QLaurent([1, 3, 5])) == QLaurent([0, 3, 10])


def test_substitute_power_example():
    s = QLaurent.from_dict({-1: 1, 1: 1})
    assert substitute_power(s, 3) == QLaurent.from_dict({-3: 1, 3: 1})


def test_substitute_power_precision():
    s = QLaurent([1, 2], val=-1, prec=2)
    t = s.substitute_power(3)
    assert t.prec == 3 * 2 - 2 * 1


def test_coeff_beyond_precision_raises():
    s = QLaurent([1, 2, 3], prec=3)
    assert s.coeff(2) == 3
    assert s.coeff(-5) == 0
    with pytest.raises(InsufficientPrecision):
        s.coeff(3)


def test_module_coeff_helper():
    b = BiSeries.from_dict({(1, 0): 2, (-1, 2): 3}, 4, 4)
    assert coeff(b, 2, -1) == 3
    assert coeff(QLaurent([0, 7]), 1) == 7


def test_invert_zero_raises():
    with pytest.raises(NotInvertible):
        QLaurent.zero(5).invert()


def test_exp_needs_positive_valuation():
    with pytest.raises(PositiveValuationRequired):
        QLaurent([1, 1]).exp(prec=3)


def test_rat_rejects_floats():
    assert rat("3/4") == Fraction(3, 4)
    with pytest.raises(TypeError):
        rat(0.5)


def test_bivariate_q_coefficient():
    b = BiSeries.from_dict({(0, 1): 2, (2, 1): 5, (1, 0): 1}, 4, 3)
    assert b.q_coefficient(1) == QLaurent.from_dict({0: 2, 2: 5}, prec=4)
    assert b.z_coefficient(2) == QLaurent.from_dict({1: 5}, prec=3)


@given(laurent(), laurent(), laurent())
def test_ring_axioms(a, b, c):
    assert a + b == b + a
    assert a * b == b * a
    assert (a + b) + c == a + (b + c)
    assert ((a * b) * c).agrees_with(a * (b * c))
    assert (a * (b + c)).agrees_with(a * b + a * c)


@given(laurent())
def test_inverse(a):
    if a.is_zero():
        return
    inv = a.invert()
    one = a * inv
    assert one.agrees_with(QLaurent.constant(1))
    if a.prec != INF:
        assert inv.prec == a.prec - 2 * a.valuation
        assert one.prec == a.prec - a.valuation


@given(laurent(), laurent())
def test_euler_is_derivation(a, b):
    assert dq(a * b).agrees_with(dq(a) * b + a * dq(b))


@given(laurent(), st.integers(1, 4), st.integers(1, 4))
def test_substitute_power_composes(a, j, k):
    lhs = a.substitute_power(j).substitute_power(k)
    rhs = a.substitute_power(j * k)
    assert lhs.agrees_with(rhs)


@given(laurent(), laurent())
def test_substitute_power_is_multiplicative(a, b):
    assert (a * b).substitute_power(2).agrees_with(a.substitute_power(2) * b.substitute_power(2))


@given(laurent())
def test_json_round_trip(a):
    assert from_json(a.to_json()) == a
    assert from_json(a.to_json()).prec == a.prec


@settings(max_examples=40)
@given(bi(), bi())
def test_bivariate_ring(a, b):
    assert series_add(a, b) == series_add(b, a)
    assert series_mul(a, b).agrees_with(series_mul(b, a))
    assert from_json(a.to_json()) == a


@settings(max_examples=40)
@given(bi())
def test_bivariate_inverse(a):
    if a.is_zero() or a.z_coefficient(a.valuation).is_zero():
        return
    try:
        inv = series_invert(a)
    except NotInvertible:
        return
    assert (a * inv).agrees_with(BiSeries.constant(1))


@settings(max_examples=40)
@given(bi(), bi())
def test_bivariate_derivations(a, b):
    assert (a * b).dq().agrees_with(a.dq() * b + a * b.dq())
    assert (a * b).dz().agrees_with(a.dz() * b + a * b.dz())
