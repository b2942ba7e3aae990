"""Conjectural evaluator for K3 rubber (double ramification) invariants.

Given legs ``(a_i, gamma_i)`` with ``sum a_i = 0`` and a primitive class
``beta`` with ``beta^2 = 2h - 2``, the right-hand side is::

    1/prod a_i^deg(gamma_i) * Coeff_{q^{h-1}} sum_P 1/(Theta^2 Delta)
        * prod_{singletons j} (gamma_j, beta) phi_{a_j}
        * prod_{pairs (j,k)} (gamma_j, gamma_k) phi_{a_j, a_k}

summed over set partitions ``P`` of the leg indices into blocks of size 1
or 2.  The result is a Laurent polynomial in ``z`` whose coefficient of
``z^{2g-2+n}`` is ``(-1)^{g+n}`` times the genus ``g`` invariant.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterator, Sequence

from .errors import InsufficientPrecision, NonIntegralPrefactor
from .forms import X_SMALL, FormRequest, delta, phi, phi2, theta
from .series import BiSeries, QLaurent, rat
from .surface import CohDegree, K3Class

SCHEMA_VERSION = 1


@dataclass(frozen=True)
class MukaiVector:
    """``(rank, D, n)`` in ``H^0 + H^2 + H^4``."""

    rank: Fraction = Fraction(0)
    divisor: K3Class = field(default_factory=K3Class)
    degree: Fraction = Fraction(0)

    def __post_init__(self):
        object.__setattr__(self, "rank", rat(self.rank))
        object.__setattr__(self, "degree", rat(self.degree))

    def __add__(self, other: MukaiVector) -> MukaiVector:
        return MukaiVector(self.rank + other.rank, self.divisor + other.divisor, self.degree + other.degree)

    def __mul__(self, c) -> MukaiVector:
        c = rat(c)
        return MukaiVector(c * self.rank, self.divisor * c, c * self.degree)

    __rmul__ = __mul__


def mukai_pairing(v: MukaiVector, w: MukaiVector) -> Fraction:
    """``r1 n2 + r2 n1 - D1.D2``."""
    return v.rank * w.degree + w.rank * v.degree - v.divisor.pair(w.divisor)


def embed_curve_class(beta: K3Class) -> MukaiVector:
    return MukaiVector(0, beta, 0)


@dataclass(frozen=True)
class MarkedLeg:
    a: int
    gamma: MukaiVector
    gamma_degree: CohDegree

    def __post_init__(self):
        if self.a == 0:
            raise ValueError("leg weights a_i must be nonzero")


@dataclass(frozen=True)
class DRQuery:
    legs: tuple[MarkedLeg, ...]
    beta: K3Class
    z_order: int

    def __post_init__(self):
        object.__setattr__(self, "legs", tuple(self.legs))
        if not self.legs:
            raise ValueError("a DR query needs at least one leg")
        if sum(leg.a for leg in self.legs) != 0:
            raise ValueError("leg weights must sum to zero")
        if self.z_order < 1:
            raise ValueError("z_order must be >= 1")
        if self.beta_squared % 2:
            raise ValueError("beta^2 must be even")

    @property
    def beta_squared(self) -> int:
        b2 = self.beta.pair(self.beta)
        if b2.denominator != 1:
            raise ValueError(f"beta^2 = {b2} is not an integer")
        return int(b2)

    @property
    def h(self) -> int:
        return self.beta_squared // 2 + 1


def partitions_le2(n: int) -> list[tuple[tuple[int, ...], ...]]:
    """Set partitions of ``{1..n}`` into blocks of size 1 or 2 (involutions)."""
    if n < 0:
        raise ValueError("n must be non-negative")

    def rec(items: tuple[int, ...]) -> Iterator[tuple[tuple[int, ...], ...]]:
        if not items:
            yield ()
            return
        first, rest = items[0], items[1:]
        for p in rec(rest):
            yield ((first,),) + p
        for i, other in enumerate(rest):
            for p in rec(rest[:i] + rest[i + 1 :]):
                yield ((first, other),) + p

    return list(rec(tuple(range(1, n + 1))))


def involution_number(n: int) -> int:
    a, b = 1, 1  # I(0), I(1)
    if n == 0:
        return 1
    for k in range(2, n + 1):
        a, b = b, b + (k - 1) * a
    return b


def prefactor(legs: Sequence[MarkedLeg]) -> Fraction:
    """``1 / prod a_i^deg(gamma_i)``."""
    total = Fraction(1)
    for leg in legs:
        if not leg.gamma_degree.is_integral():
            raise NonIntegralPrefactor(f"deg(gamma) = {leg.gamma_degree.complex} is not an integer")
        total *= Fraction(leg.a) ** (leg.gamma_degree.doubled // 2)
    return 1 / total


@dataclass(frozen=True)
class DRTerm:
    partition: tuple[tuple[int, ...], ...]
    weight: Fraction
    series: BiSeries


@dataclass
class DRResult:
    """Output of :func:`dr_rhs`: the raw z-series plus its genus decoding."""

    z_series: QLaurent
    n_legs: int
    metadata: dict

    def decode(self) -> dict[int, Fraction]:
        """``{g: invariant}`` from ``coeff(z^{2g-2+n}) = (-1)^{g+n} * invariant``."""
        out = {}
        n = self.n_legs
        g = 0
        while 2 * g - 2 + n < self.z_series.prec:
            out[g] = (-1) ** (g + n) * self.z_series.coeff(2 * g - 2 + n)
            g += 1
        return out

    def to_json(self) -> dict:
        return {
            "metadata": self.metadata,
            "series": self.z_series.to_json("z"),
            "invariants": {str(g): str(v) for g, v in sorted(self.decode().items())},
        }


def _forms_request(query: DRQuery) -> FormRequest:
    return FormRequest(max(query.h, 0) + 2, query.z_order + 2)


def dr_terms(query: DRQuery, convention: str = X_SMALL) -> list[DRTerm]:
    """Per-partition contributions before the q-coefficient extraction and prefactor."""
    req = _forms_request(query)
    beta = embed_curve_class(query.beta)
    legs = query.legs
    out = []
    for part in partitions_le2(len(legs)):
        weight = Fraction(1)
        series = None
        for block in part:
            if len(block) == 1:
                leg = legs[block[0] - 1]
                weight *= mukai_pairing(leg.gamma, beta)
                factor = phi(leg.a, req, convention)
            else:
                l1, l2 = legs[block[0] - 1], legs[block[1] - 1]
                weight *= mukai_pairing(l1.gamma, l2.gamma)
                factor = phi2(l1.a, l2.a, req, convention)
            series = factor if series is None else series * factor
        out.append(DRTerm(part, weight, series))
    return out


def _theta2_delta_inverse(req: FormRequest) -> BiSeries:
    th_inv = theta(FormRequest(req.q_order, req.z_order + 1)).invert()
    return th_inv * th_inv * BiSeries.constant(delta(req).invert())


def dr_rhs(query: DRQuery, convention: str = X_SMALL) -> DRResult:
    """Evaluate the conjectural right-hand side; see the module docstring."""
    req = _forms_request(query)
    total = None
    for term in dr_terms(query, convention):
        if term.weight == 0:
            continue
        t = term.series * term.weight
        total = t if total is None else total + t
    if total is None:
        zs = QLaurent.zero(query.z_order)
    else:
        full = total * _theta2_delta_inverse(req)
        if full.z_prec < query.z_order:
            raise InsufficientPrecision(f"DR series reached z precision {full.z_prec}")
        zs = full.q_coefficient(query.h - 1).truncate(query.z_order)
    zs = zs * prefactor(query.legs)
    meta = {
        "schema_version": SCHEMA_VERSION,
        "status": "conjectural",
        "partition_convention": "set partitions of leg indices, no symmetry factors",
        "phi_convention": convention,
        "beta_squared": query.beta_squared,
        "n_legs": len(query.legs),
    }
    return DRResult(zs, len(query.legs), meta)
