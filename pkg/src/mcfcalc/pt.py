"""Multiple cover transform for stable-pairs (PT) partition functions.

Internally a :class:`PLaurent` stores the plain invariants ``<...>_{ch3}``
on a window ``[lo, hi)`` of ``ch3`` values.  The partition function is
``Z(p) = sum (-p)^{ch3} <...>_{ch3}``; that sign convention is only applied
when converting to or from series-level data.

Two routes to the imprimitive invariants are provided and must agree:

* coefficient level:
  ``<>_{ch3} = sum_{k | (r, ch3)} (-1)^{(k-1) ch3/k} k^nu <>^{(k)}_{ch3/k}``
* series level: ``Z(p) = sum_{k | r} k^e Z^{(k)}(p^k)``.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import Mapping

from .errors import MissingPrimitiveValue, WindowMismatch
from .series import rat
from .surface import divisors

COEFFICIENT_LEVEL = "coefficient"
SERIES_LEVEL = "series"


def _sign(n: int) -> int:
    return -1 if n % 2 else 1


@dataclass(frozen=True)
class PLaurent:
    """Invariants indexed by ``ch3`` on the window ``[lo, hi)``; unknown outside."""

    lo: int
    coeffs: tuple[Fraction, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "coeffs", tuple(rat(c) for c in self.coeffs))

    @property
    def hi(self) -> int:
        return self.lo + len(self.coeffs)

    @classmethod
    def from_dict(cls, d: Mapping[int, object], lo: int, hi: int) -> PLaurent:
        return cls(lo, tuple(d.get(n, 0) for n in range(lo, hi)))

    def __contains__(self, ch3: int) -> bool:
        return self.lo <= ch3 < self.hi

    def coefficient(self, ch3: int) -> Fraction:
        if ch3 not in self:
            raise MissingPrimitiveValue(f"ch3 = {ch3} outside window [{self.lo}, {self.hi})")
        return self.coeffs[ch3 - self.lo]

    def to_series_coeffs(self) -> tuple[Fraction, ...]:
        """Coefficients of ``p^j`` in ``Z(p) = sum (-p)^j c_j``."""
        return tuple(_sign(self.lo + i) * c for i, c in enumerate(self.coeffs))

    @classmethod
    def from_series_coeffs(cls, lo: int, coeffs) -> PLaurent:
        return cls(lo, tuple(_sign(lo + i) * rat(c) for i, c in enumerate(coeffs)))

    def to_json(self, convention: str = COEFFICIENT_LEVEL) -> dict:
        cs = self.coeffs if convention == COEFFICIENT_LEVEL else self.to_series_coeffs()
        return {"lo": self.lo, "hi": self.hi, "coeffs": [str(c) for c in cs]}

    @classmethod
    def from_json(cls, obj: dict, convention: str = COEFFICIENT_LEVEL) -> PLaurent:
        lo, hi = int(obj["lo"]), int(obj["hi"])
        cs = obj["coeffs"]
        if len(cs) != hi - lo:
            raise ValueError(f"window [{lo}, {hi}) needs {hi - lo} coefficients, got {len(cs)}")
        if convention == SERIES_LEVEL:
            return cls.from_series_coeffs(lo, cs)
        if convention != COEFFICIENT_LEVEL:
            raise ValueError(f"unknown convention {convention!r}")
        return cls(lo, tuple(cs))


@dataclass(frozen=True)
class PTContext:
    r: int
    nu_of: Mapping[int, int] = field(default_factory=dict)
    sign_convention: str = COEFFICIENT_LEVEL

    def __post_init__(self):
        if self.r < 1:
            raise ValueError("divisibility must be positive")
        object.__setattr__(self, "nu_of", dict(self.nu_of))

    @classmethod
    def fixed(cls, r: int, nu: int, sign_convention: str = COEFFICIENT_LEVEL) -> PTContext:
        return cls(r, {k: nu for k in divisors(r)}, sign_convention)

    def nu(self, k: int) -> int:
        if k not in self.nu_of:
            raise MissingPrimitiveValue(f"no nu exponent for k = {k}")
        return self.nu_of[k]


def contributing_divisors(r: int, ch3: int) -> list[int]:
    """``k | gcd(r, ch3)``, with ``gcd(r, 0) = r``."""
    return divisors(gcd(r, ch3))


def pt_mcf_terms(ch3: int, ctx: PTContext) -> list[tuple[int, Fraction]]:
    """``(k, signed weight)`` pairs of the coefficient-level decomposition."""
    out = []
    for k in contributing_divisors(ctx.r, ch3):
        sign = _sign((k - 1) * (ch3 // k))
        out.append((k, sign * Fraction(k) ** ctx.nu(k)))
    return out


def pt_mcf_coefficient(ch3: int, ctx: PTContext, primitive: Mapping[int, PLaurent]) -> Fraction:
    total = Fraction(0)
    for k, w in pt_mcf_terms(ch3, ctx):
        if k not in primitive:
            raise MissingPrimitiveValue(f"no primitive partition function for k = {k}")
        total += w * primitive[k].coefficient(ch3 // k)
    return total


def output_window(r: int, primitive: Mapping[int, PLaurent]) -> tuple[int, int]:
    """Intersection of the k-scaled windows ``[k lo_k, k hi_k)``."""
    lo, hi = None, None
    for k in divisors(r):
        if k not in primitive:
            raise MissingPrimitiveValue(f"no primitive partition function for k = {k}")
        w = primitive[k]
        lo = k * w.lo if lo is None else max(lo, k * w.lo)
        hi = k * w.hi if hi is None else min(hi, k * w.hi)
    if lo >= hi:
        raise WindowMismatch(f"scaled windows do not overlap (lo={lo}, hi={hi})")
    return lo, hi


def pt_mcf_series(ctx: PTContext, primitive: Mapping[int, PLaurent]) -> PLaurent:
    """``Z(p) = sum_k k^e Z_k(p^k)``, decoded back to plain invariants."""
    exps = {ctx.nu(k) for k in divisors(ctx.r)}
    if len(exps) != 1:
        raise ValueError(f"series form needs one exponent for all k, got {sorted(exps)}")
    e = exps.pop()
    lo, hi = output_window(ctx.r, primitive)
    z = [Fraction(0)] * (hi - lo)
    for k in divisors(ctx.r):
        w = Fraction(k) ** e
        prim = primitive[k]
        for j, c in zip(range(prim.lo, prim.hi), prim.to_series_coeffs()):
            if lo <= k * j < hi:
                z[k * j - lo] += w * c
    return PLaurent.from_series_coeffs(lo, z)


def to_csv(result: PLaurent) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["ch3", "invariant"])
    for i, c in enumerate(result.coeffs):
        writer.writerow([result.lo + i, str(c)])
    return buf.getvalue()
