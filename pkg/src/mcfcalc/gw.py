"""Reduced point/Hodge invariants of K3 and abelian surfaces.

Primitive classes ``beta_{2h-2,1}`` come from closed generating series::

    K3:       sum <tau_0(p)^m lambda_{g-m}> z^{2g-2} q^{h-1} = S^m / (Theta^2 Delta)
    abelian:  sum <tau_0(p)^m lambda_{g-m}> z^{2g-2} q^{h-1} = m S^{m-1}

Imprimitive classes follow from the multiple cover formula, a divisor sum
over ``k | r`` with weights ``k^(2g-3+sum deg)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Mapping

from .errors import InsufficientPrecision, MissingPrimitiveValue, NonIntegralExponent, NonIntegralSquare
from .forms import FormRequest, delta, s_series, theta
from .series import BiSeries
from .surface import (
    POINT,
    CohDegree,
    SurfaceKind,
    divisors,
    is_effective_primitive_image,
    mcf_exponent,
)


@dataclass(frozen=True)
class PointHodgeQuery:
    """``<tau_0(p)^m_points lambda_{g-m_points}>`` in the class ``beta_{2h-2, r}``."""

    kind: SurfaceKind
    g: int
    m_points: int
    h: int
    r: int = 1

    def __post_init__(self):
        object.__setattr__(self, "kind", SurfaceKind.parse(self.kind))
        if self.g < 0 or self.m_points < 0:
            raise ValueError("genus and number of points must be non-negative")
        if self.r < 1:
            raise ValueError("divisibility must be positive")

    @property
    def z_exp(self) -> int:
        return 2 * self.g - 2

    @property
    def q_exp(self) -> int:
        return self.h - 1


@lru_cache(maxsize=None)
def k3_point_hodge_series(m_points: int, req: FormRequest) -> BiSeries:
    """``S^m / (Theta^2 Delta)`` truncated to ``req``."""
    wide = FormRequest(req.q_order + 2, req.z_order + 3)
    th_inv = theta(wide).invert()
    delta_inv = BiSeries.constant(delta(wide).invert())
    s = s_series(FormRequest(wide.q_order, req.z_order + 2))
    series = (s**m_points) * th_inv * th_inv * delta_inv
    if series.z_prec < req.z_order or series.q_prec < req.q_order:
        raise InsufficientPrecision(f"K3 series m={m_points} fell short of {req}")
    return series.truncate(req.z_order, req.q_order)


@lru_cache(maxsize=None)
def abelian_point_hodge_series(m_points: int, req: FormRequest) -> BiSeries:
    """``m S^{m-1}`` truncated to ``req``."""
    if m_points == 0:
        return BiSeries.zero(req.z_order, req.q_order)
    s = s_series(req)
    return (s ** (m_points - 1) * m_points).truncate(req.z_order, req.q_order)


def point_hodge_series(kind, m_points: int, req: FormRequest) -> BiSeries:
    kind = SurfaceKind.parse(kind)
    if kind is SurfaceKind.K3:
        return k3_point_hodge_series(m_points, req)
    return abelian_point_hodge_series(m_points, req)


def primitive_point_hodge(query: PointHodgeQuery) -> Fraction:
    """Coefficient of ``z^{2g-2} q^{h-1}`` in the primitive generating series."""
    if query.r != 1:
        raise ValueError("primitive_point_hodge needs r = 1; use mcf_point_hodge")
    if query.m_points > query.g:
        return Fraction(0)  # lambda_{g-m} with g - m < 0
    req = FormRequest(max(query.h, 0) + 2, 2 * query.g + 2)
    try:
        return point_hodge_series(query.kind, query.m_points, req).coeff(query.z_exp, query.q_exp)
    except InsufficientPrecision:
        req = FormRequest(2 * req.q_order, 2 * req.z_order)
        return point_hodge_series(query.kind, query.m_points, req).coeff(query.z_exp, query.q_exp)


@dataclass(frozen=True)
class McfSummand:
    k: int
    exponent: Fraction
    effective: bool
    primitive_h: int | None
    primitive_value: Fraction
    contribution: Fraction


def _k_power(k: int, e: Fraction) -> Fraction:
    if e.denominator != 1:
        raise NonIntegralExponent(f"exponent {e} is not an integer")
    return Fraction(k) ** int(e)


def mcf_point_hodge_terms(query: PointHodgeQuery) -> list[McfSummand]:
    """The divisor-sum decomposition of an imprimitive point/Hodge invariant."""
    e = mcf_exponent(query.g, [POINT] * query.m_points)
    m = 2 * query.h - 2
    out = []
    for k in divisors(query.r):
        k_ratio = query.r // k
        if not is_effective_primitive_image(query.kind, m, k_ratio):
            out.append(McfSummand(k, e, False, None, Fraction(0), Fraction(0)))
            continue
        big_m = k_ratio**2 * m
        if big_m % 2:
            raise NonIntegralSquare(f"(r/k)^2 (2h-2) = {big_m} is odd")
        h_prim = big_m // 2 + 1
        value = primitive_point_hodge(
            PointHodgeQuery(query.kind, query.g, query.m_points, h_prim, 1)
        )
        out.append(McfSummand(k, e, True, h_prim, value, _k_power(k, e) * value))
    return out


def mcf_point_hodge(query: PointHodgeQuery) -> Fraction:
    """Point/Hodge invariant in ``beta_{2h-2, r}`` via the multiple cover formula."""
    return sum((t.contribution for t in mcf_point_hodge_terms(query)), Fraction(0))


def general_mcf_transform(
    g: int,
    degrees: Iterable[CohDegree],
    r: int,
    primitive_values: Mapping[int, object],
    kind=None,
    m: int | None = None,
) -> Fraction:
    """Apply the multiple cover formula to caller-supplied primitive values.

    ``primitive_values[k]`` is the invariant at the primitive image of
    ``beta/k``.  When ``kind`` and ``m`` (with ``beta = beta_{m,r}``) are given,
    summands with non-effective images are forced to zero.
    """
    e = mcf_exponent(g, list(degrees))
    total = Fraction(0)
    for k in divisors(r):
        if kind is not None and m is not None:
            if not is_effective_primitive_image(kind, m, r // k):
                continue
        if k not in primitive_values:
            raise MissingPrimitiveValue(f"no primitive value supplied for k = {k}")
        total += _k_power(k, e) * Fraction(primitive_values[k])
    return total
