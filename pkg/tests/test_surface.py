from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from mcfcalc.errors import NonIntegralExponent
from mcfcalc.surface import (
    FIBER,
    POINT,
    SECTION,
    AbelianClass,
    CohDegree,
    CurveClass,
    K3Class,
    SurfaceKind,
    WeightedPart,
    WeightedPartition,
    divisors,
    format_k3_class,
    is_effective_primitive_image,
    mcf_exponent,
    nu_exponent,
    parse_k3_class,
    parse_weight,
    parse_weighted_partition,
    partition_degree,
    phi_mr_k3,
    phi_r_abelian,
)

coef = st.fractions(min_value=-4, max_value=4, max_denominator=3)
monomials = st.lists(st.integers(0, 3), unique=True, max_size=4).map(lambda xs: tuple(sorted(xs)))
abelian = st.dictionaries(monomials, coef, max_size=5).map(AbelianClass)


def test_divisors():
    assert divisors(12) == [1, 2, 3, 4, 6, 12]
    assert divisors(1) == [1]
    with pytest.raises(ValueError):
        divisors(0)


def test_effectiveness_cases():
    assert is_effective_primitive_image("k3", -2, 1)
    assert not is_effective_primitive_image("k3", -2, 2)
    assert not is_effective_primitive_image("abelian", -2, 1)
    assert is_effective_primitive_image("abelian", 0, 3)
    with pytest.raises(ValueError):
        is_effective_primitive_image("k3", 3, 1)


def test_curve_class():
    b = CurveClass(SurfaceKind.K3, 4, 3)
    assert b.self_intersection() == 36
    k3 = b.as_k3_class()
    assert k3.pair(k3) == 36
    with pytest.raises(ValueError):
        CurveClass(SurfaceKind.K3, 1, 1)


def test_k3_lattice_pairing():
    assert SECTION.pair(SECTION) == -2
    assert SECTION.pair(FIBER) == 1
    assert FIBER.pair(FIBER) == 0


def test_phi_mr_k3_rules():
    for m, r in [(0, 1), (2, 2), (-2, 3), (10, 5)]:
        beta = CurveClass(SurfaceKind.K3, m, r).as_k3_class()
        assert phi_mr_k3(FIBER, m, r) == FIBER * r
        assert phi_mr_k3(beta, m, r) == SECTION + FIBER * Fraction(r * r * m, 2) + FIBER
        v = K3Class(transcendental={"t": 1})
        assert phi_mr_k3(v, m, r) == v


@given(st.integers(-1, 20).map(lambda x: 2 * x), st.integers(1, 7), coef, coef)
def test_phi_mr_k3_is_isometry(m, r, a, b):
    u = K3Class(a, b)
    w = K3Class(b - 1, a + 2)
    assert phi_mr_k3(u, m, r).pair(phi_mr_k3(w, m, r)) == u.pair(w)


def test_phi_r_abelian_examples():
    f1 = AbelianClass.fiber(1)
    assert phi_r_abelian(f1, 3) == f1 * Fraction(1, 3)
    assert phi_r_abelian(AbelianClass.fiber(2), 3) == AbelianClass.fiber(2) * 3
    assert phi_r_abelian(AbelianClass.point(), 7) == AbelianClass.point()


@given(abelian, abelian, st.sampled_from([1, 2, 3, 5]))
def test_phi_r_abelian_multiplicative(a, b, r):
    assert phi_r_abelian(a ^ b, r) == phi_r_abelian(a, r) ^ phi_r_abelian(b, r)


@given(abelian, abelian, abelian)
def test_exterior_algebra_associative(a, b, c):
    assert (a ^ b) ^ c == a ^ (b ^ c)


def test_exterior_signs():
    dx1, dy1 = AbelianClass.generator("dx1"), AbelianClass.generator("dy1")
    assert dy1 ^ dx1 == -(dx1 ^ dy1)
    assert (dx1 ^ dx1) == AbelianClass()
    assert AbelianClass.fiber(1) ^ AbelianClass.fiber(2) == AbelianClass.point()
    assert AbelianClass.point().degree() == POINT


def test_coh_degree():
    assert CohDegree.of("1/2").doubled == 1
    assert not CohDegree(1).is_integral()
    assert CohDegree(4).complex == 2
    with pytest.raises(ValueError):
        CohDegree(5)


def test_weighted_partition_parsing_and_degree():
    lam = parse_weighted_partition("(1:1)(2:p)")
    assert [p.size for p in lam.parts] == [2, 1]
    assert lam.n == 3
    # n - l + sum deg = 3 - 2 + 2
    assert partition_degree(lam) == 3
    assert partition_degree(parse_weighted_partition("(1:dx1)")) == Fraction(1, 2)
    assert parse_weighted_partition("") == WeightedPartition()
    with pytest.raises(ValueError):
        parse_weighted_partition("(2:p) junk")


def test_weighted_partition_concat():
    a = WeightedPartition((WeightedPart(1, POINT),))
    b = WeightedPartition((WeightedPart(3, CohDegree(0)),))
    assert partition_degree(a.concat(b)) == partition_degree(a) + partition_degree(b)


def test_parse_weight():
    assert parse_weight("p") == POINT
    assert parse_weight("d=3/2").doubled == 3
    with pytest.raises(ValueError):
        parse_weight("q")


def test_exponents():
    assert mcf_exponent(0, []) == -3
    assert mcf_exponent(2, [POINT, POINT]) == 5
    assert mcf_exponent(1, [CohDegree(1)]) == Fraction(-1, 2)
    assert nu_exponent(3, [(2, POINT)], 1) == 3 - 2 - 1 + 2
    with pytest.raises(NonIntegralExponent):
        nu_exponent(Fraction(1, 2), [], 1)
    with pytest.raises(ValueError):
        nu_exponent(1, [(1, POINT)], 1)


def test_k3_class_text_round_trip():
    c = parse_k3_class("2s - 1/2 f + t1")
    assert (c.s, c.f, dict(c.transcendental)) == (2, Fraction(-1, 2), {"t1": 1})
    assert parse_k3_class(format_k3_class(c)) == c
    assert format_k3_class(K3Class()) == "0"
