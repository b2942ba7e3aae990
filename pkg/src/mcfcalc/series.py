"""Exact truncated Laurent series in one and two variables.

Every series carries an explicit precision ``prec``: coefficients of all
exponents ``< prec`` are known exactly, nothing is known beyond.  Exact
(non-truncated) series, e.g. polynomials, have ``prec = INF``.

Two concrete types are provided:

* :class:`QLaurent` -- univariate series with :class:`~fractions.Fraction`
  coefficients (used for series in ``q``, and occasionally in ``z``).
* :class:`BiSeries` -- a Laurent series in ``z`` whose coefficients are
  :class:`QLaurent` series in ``q`` sharing one common ``q_prec``.

All values are immutable; operations return new objects.

>>> one_minus_q = QLaurent([1, -1])
>>> one_minus_q.invert(prec=4)
QLaurent(1 + q + q^2 + q^3 + O(q^4))
"""

from __future__ import annotations

import math
from fractions import Fraction

from .errors import InsufficientPrecision, NotInvertible, PositiveValuationRequired

Rat = Fraction
INF = math.inf


def rat(x) -> Fraction:
    """Coerce ints, Fractions and ``"num/den"`` strings to a Fraction."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x.strip())
    raise TypeError(f"cannot convert {type(x).__name__} to an exact rational")


def rat_str(x: Fraction) -> str:
    return str(x)


class _Series:
    """Shared machinery for truncated Laurent series over a coefficient ring.

    Canonical form: ``_coeffs`` has no leading or trailing zeros and ``_val``
    is the exponent of ``_coeffs[0]``.  The zero series stores no coefficients.
    """

    __slots__ = ("_val", "_coeffs", "_prec")

    # -- hooks -----------------------------------------------------------
    def _czero(self):
        raise NotImplementedError

    @staticmethod
    def _ciszero(c) -> bool:
        raise NotImplementedError

    def _cinv(self, c):
        raise NotImplementedError

    def _make(self, val, coeffs, prec, inner=INF):
        raise NotImplementedError

    # -- basic accessors ---------------------------------------------------
    @property
    def prec(self):
        return self._prec

    @property
    def coeffs(self) -> tuple:
        return self._coeffs

    @property
    def valuation(self):
        """Lowest exponent with a nonzero coefficient; ``prec`` for zero."""
        return self._val if self._coeffs else self._prec

    def is_zero(self) -> bool:
        return not self._coeffs

    def is_exact(self) -> bool:
        return self._prec == INF

    def __bool__(self):
        return bool(self._coeffs)

    def _c(self, n):
        i = n - self._val
        if 0 <= i < len(self._coeffs):
            return self._coeffs[i]
        return None

    def terms(self):
        """Iterate over ``(exponent, coefficient)`` for stored coefficients."""
        for i, c in enumerate(self._coeffs):
            if not self._ciszero(c):
                yield self._val + i, c

    # -- ring operations -----------------------------------------------------
    def _coerce(self, other):
        raise NotImplementedError

    def __neg__(self):
        return self._make(self._val, [-c for c in self._coeffs], self._prec, self._inner_prec())

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        prec = min(self._prec, other._prec)
        if self.is_zero() and other.is_zero():
            return self._make(0, [], prec, min(self._inner_prec(), other._inner_prec()))
        lo = min(s._val for s in (self, other) if s._coeffs)
        hi = max(s._val + len(s._coeffs) for s in (self, other) if s._coeffs)
        if prec != INF:
            hi = min(hi, prec)
        out = []
        for n in range(lo, hi):
            a, b = self._c(n), other._c(n)
            if a is None:
                out.append(b if b is not None else self._czero())
            elif b is None:
                out.append(a)
            else:
                out.append(a + b)
        return self._make(lo, out, prec, min(self._inner_prec(), other._inner_prec()))

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if self._is_scalar(other):
            return self._scale(other)
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        prec = min(self._prec + other.valuation, other._prec + self.valuation)
        inner = self._mul_inner(other)
        if self.is_zero() or other.is_zero():
            return self._make(0, [], prec, inner)
        val = self._val + other._val
        n_out = len(self._coeffs) + len(other._coeffs) - 1
        if prec != INF:
            n_out = max(0, min(n_out, prec - val))
        acc = [None] * n_out
        for i, a in enumerate(self._coeffs):
            if i >= n_out:
                break
            if self._ciszero(a):
                continue
            for j, b in enumerate(other._coeffs):
                k = i + j
                if k >= n_out:
                    break
                t = a * b
                acc[k] = t if acc[k] is None else acc[k] + t
        out = [self._czero() if c is None else c for c in acc]
        return self._make(val, out, prec, inner)

    def __rmul__(self, other):
        if self._is_scalar(other):
            return self._scale(other)
        return NotImplemented

    def __truediv__(self, other):
        if self._is_scalar(other):
            return self._scale(self._scalar_inverse(other))
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self * other.invert()

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        base = self
        if n < 0:
            base = self.invert()
            n = -n
        result = self._one_like()
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def _scale(self, c):
        raise NotImplementedError

    def _is_scalar(self, other) -> bool:
        raise NotImplementedError

    @staticmethod
    def _scalar_inverse(c):
        return 1 / rat(c) if isinstance(c, (int, str)) else 1 / c

    def _inner_prec(self):
        return INF

    def _mul_inner(self, other):
        return INF

    def _one_like(self):
        raise NotImplementedError

    # -- structure -----------------------------------------------------------
    def shift(self, k: int):
        """Multiply by ``var**k``."""
        if self.is_zero():
            return self._make(0, [], self._prec + k, self._inner_prec())
        return self._make(self._val + k, list(self._coeffs), self._prec + k, self._inner_prec())

    def truncate(self, prec):
        """Forget everything at exponents ``>= prec`` (precision may only drop)."""
        prec = min(prec, self._prec)
        return self._make(self._val, list(self._coeffs), prec, self._inner_prec())

    def reflect(self):
        """Substitute ``var -> -var``."""
        out = [c if (self._val + i) % 2 == 0 else -c for i, c in enumerate(self._coeffs)]
        return self._make(self._val, out, self._prec, self._inner_prec())

    def is_even(self) -> bool:
        return all(n % 2 == 0 for n, _ in self.terms())

    def is_odd(self) -> bool:
        return all(n % 2 == 1 for n, _ in self.terms())

    def derivative(self):
        """Formal derivative in the outer variable; precision drops by one."""
        out = [(self._val + i) * c for i, c in enumerate(self._coeffs)]
        if self.is_zero():
            return self._make(0, [], self._prec - 1, self._inner_prec())
        return self._make(self._val - 1, out, self._prec - 1, self._inner_prec())

    def invert(self, prec=None):
        """Multiplicative inverse by the coefficient recurrence.

        For an exact input that is not a monomial the inverse is an infinite
        series; ``prec`` then fixes the precision of the result.
        """
        if self.is_zero():
            raise NotInvertible("zero series has no inverse")
        v = self._val
        lead = self._coeffs[0]
        try:
            lead_inv = self._cinv(lead)
        except (NotInvertible, ZeroDivisionError) as exc:
            raise NotInvertible(f"leading coefficient {lead!r} is not a unit") from exc
        if len(self._coeffs) == 1 and self._prec == INF:
            return self._make(-v, [lead_inv], INF, self._inner_prec())
        out_prec = self._prec - 2 * v
        if prec is not None:
            out_prec = min(out_prec, prec)
        if out_prec == INF:
            raise NotInvertible("inverse of an exact non-monomial series needs an explicit prec")
        n_terms = out_prec + v  # number of coefficients of the inverted unit
        a = self._coeffs
        b = []
        for n in range(n_terms):
            if n == 0:
                b.append(lead_inv)
                continue
            acc = None
            for j in range(1, min(n, len(a) - 1) + 1):
                if self._ciszero(a[j]):
                    continue
                t = a[j] * b[n - j]
                acc = t if acc is None else acc + t
            b.append(self._czero() if acc is None else -(lead_inv * acc))
        return self._make(-v, b, out_prec, INF)

    def exp(self, prec=None):
        """``sum a**n / n!`` via the recurrence ``n b_n = sum_k k a_k b_{n-k}``."""
        if self.is_zero():
            return self._one_like().truncate(self._prec)
        if self._val < 1:
            raise PositiveValuationRequired(
                f"exp needs strictly positive valuation, got {self._val}"
            )
        out_prec = self._prec if prec is None else min(self._prec, prec)
        if out_prec == INF:
            raise PositiveValuationRequired("exp of an exact series needs an explicit prec")
        a = [self._c(k) for k in range(out_prec)]
        b = [self._one_coeff()]
        for n in range(1, out_prec):
            acc = None
            for k in range(1, n + 1):
                ak = a[k]
                if ak is None or self._ciszero(ak):
                    continue
                t = (ak * b[n - k]) * k
                acc = t if acc is None else acc + t
            b.append(self._czero() if acc is None else acc * Fraction(1, n))
        return self._make(0, b, out_prec, INF)

    def _one_coeff(self):
        raise NotImplementedError

    # -- comparison ----------------------------------------------------------
    def __eq__(self, other):
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            if other == 0:
                return self.is_zero()
            return self == self._coerce(other)
        if not isinstance(other, type(self)):
            return NotImplemented
        if self.is_zero() and other.is_zero():
            return True
        return (self._val, self._coeffs, self._prec) == (other._val, other._coeffs, other._prec)

    def __hash__(self):
        if self.is_zero():
            return hash((type(self).__name__, "zero"))
        return hash((type(self).__name__, self._val, self._coeffs, self._prec))


class QLaurent(_Series):
    """Truncated Laurent series with exact rational coefficients."""

    __slots__ = ()

    def __init__(self, coeffs=(), val: int = 0, prec=INF):
        cs = [rat(c) for c in coeffs]
        if prec != INF:
            cs = cs[: max(0, prec - val)]
        while cs and cs[0] == 0:
            cs.pop(0)
            val += 1
        while cs and cs[-1] == 0:
            cs.pop()
        self._val = val if cs else 0
        self._coeffs = tuple(cs)
        self._prec = prec

    @classmethod
    def zero(cls, prec=INF) -> QLaurent:
        return cls((), 0, prec)

    @classmethod
    def constant(cls, c, prec=INF) -> QLaurent:
        return cls([c], 0, prec)

    @classmethod
    def monomial(cls, n: int, c=1, prec=INF) -> QLaurent:
        return cls([c], n, prec)

    @classmethod
    def from_dict(cls, d: dict, prec=INF) -> QLaurent:
        if not d:
            return cls.zero(prec)
        lo, hi = min(d), max(d)
        return cls([d.get(n, 0) for n in range(lo, hi + 1)], lo, prec)

    def _czero(self):
        return Fraction(0)

    @staticmethod
    def _ciszero(c):
        return c == 0

    def _cinv(self, c):
        return 1 / c

    def _one_coeff(self):
        return Fraction(1)

    def _one_like(self):
        return QLaurent.constant(1)

    def _make(self, val, coeffs, prec, inner=INF):
        return QLaurent(coeffs, val, prec)

    def _is_scalar(self, other):
        return isinstance(other, (int, Fraction)) and not isinstance(other, bool)

    def _scale(self, c):
        c = rat(c)
        return QLaurent([c * a for a in self._coeffs], self._val, self._prec)

    def _coerce(self, other):
        if isinstance(other, QLaurent):
            return other
        if self._is_scalar(other):
            return QLaurent.constant(other)
        return NotImplemented

    def coeff(self, n: int) -> Fraction:
        """Exact coefficient of ``var**n``; zero below the valuation."""
        if n >= self._prec:
            raise InsufficientPrecision(f"exponent {n} requested, precision is {self._prec}")
        c = self._c(n)
        return Fraction(0) if c is None else c

    def agrees_with(self, other: QLaurent) -> bool:
        """Coefficientwise equality below both precisions."""
        p = min(self._prec, other._prec)
        return (self.truncate(p) - other.truncate(p)).is_zero()

    def euler(self) -> QLaurent:
        """``var * d/dvar``: multiplies the coefficient of ``var**n`` by ``n``."""
        return QLaurent([(self._val + i) * c for i, c in enumerate(self._coeffs)], self._val, self._prec)

    def substitute_power(self, k: int) -> QLaurent:
        """``var -> var**k``.

        The precision is the conservative ``k*prec - (k-1)*max(0, -val)``.
        """
        if k < 1:
            raise ValueError("substitute_power needs k >= 1")
        if k == 1:
            return self
        v = self.valuation
        prec = self._prec if self._prec == INF else k * self._prec - (k - 1) * max(0, -v)
        d = {n * k: c for n, c in self.terms()}
        return QLaurent.from_dict(d, prec).truncate(prec)

    def __repr__(self):
        return f"QLaurent({self.format()})"

    def format(self, var: str = "q") -> str:
        parts = []
        for n, c in self.terms():
            mon = "" if n == 0 else (var if n == 1 else f"{var}^{n}")
            if mon and c == 1:
                s = mon
            elif mon and c == -1:
                s = "-" + mon
            else:
                s = str(c) if not mon else f"{c}*{mon}"
            parts.append(s)
        if self._prec != INF:
            parts.append(f"O({var}^{self._prec})")
        if not parts:
            return "0"
        out = parts[0]
        for p in parts[1:]:
            out += " - " + p[1:] if p.startswith("-") else " + " + p
        return out

    # -- serialization -------------------------------------------------------
    def to_json(self, variable: str = "q") -> dict:
        return {
            "type": "QLaurent",
            "variables": [variable],
            "valuation": self._val,
            "precision": None if self._prec == INF else self._prec,
            "coefficients": [rat_str(c) for c in self._coeffs],
        }

    @classmethod
    def from_json(cls, obj: dict) -> QLaurent:
        prec = obj.get("precision")
        return cls([rat(c) for c in obj["coefficients"]], obj["valuation"], INF if prec is None else prec)


def _as_q(c, q_prec=INF) -> QLaurent:
    if isinstance(c, QLaurent):
        return c
    return QLaurent.constant(c, q_prec)


class BiSeries(_Series):
    """Laurent series in ``z`` with :class:`QLaurent` coefficients in ``q``.

    ``prec`` is the z-precision; all coefficients share ``q_prec``.
    """

    __slots__ = ("_q_prec",)

    def __init__(self, coeffs=(), val: int = 0, prec=INF, q_prec=INF):
        cs = [_as_q(c) for c in coeffs]
        if prec != INF:
            cs = cs[: max(0, prec - val)]
        for c in cs:
            q_prec = min(q_prec, c.prec)
        cs = [c.truncate(q_prec) for c in cs]
        while cs and cs[0].is_zero():
            cs.pop(0)
            val += 1
        while cs and cs[-1].is_zero():
            cs.pop()
        self._val = val if cs else 0
        self._coeffs = tuple(cs)
        self._prec = prec
        self._q_prec = q_prec

    @property
    def q_prec(self):
        return self._q_prec

    @property
    def z_prec(self):
        return self._prec

    @classmethod
    def zero(cls, z_prec=INF, q_prec=INF) -> BiSeries:
        return cls((), 0, z_prec, q_prec)

    @classmethod
    def constant(cls, c, z_prec=INF, q_prec=INF) -> BiSeries:
        """A series independent of ``z``; ``c`` is a QLaurent or a rational."""
        c = _as_q(c, q_prec)
        return cls([c], 0, z_prec, min(q_prec, c.prec))

    @classmethod
    def from_dict(cls, d: dict, z_prec=INF, q_prec=INF) -> BiSeries:
        """Build from ``{(z_exp, q_exp): coefficient}``."""
        rows: dict[int, dict[int, Fraction]] = {}
        for (zn, qn), c in d.items():
            rows.setdefault(zn, {})[qn] = rat(c)
        if not rows:
            return cls.zero(z_prec, q_prec)
        lo, hi = min(rows), max(rows)
        cs = [QLaurent.from_dict(rows.get(n, {}), q_prec) for n in range(lo, hi + 1)]
        return cls(cs, lo, z_prec, q_prec)

    def _czero(self):
        return QLaurent.zero(self._q_prec)

    @staticmethod
    def _ciszero(c):
        return c.is_zero()

    def _cinv(self, c):
        if c.is_zero():
            raise NotInvertible("zero leading coefficient")
        if c.prec == INF and len(c.coeffs) > 1:
            if self._q_prec == INF:
                raise NotInvertible("leading coefficient needs a finite q precision to invert")
            c = c.truncate(self._q_prec)
        return c.invert()

    def _one_coeff(self):
        return QLaurent.constant(1, self._q_prec)

    def _one_like(self):
        return BiSeries.constant(1, INF, self._q_prec)

    def _make(self, val, coeffs, prec, inner=INF):
        return BiSeries(coeffs, val, prec, inner)

    def _inner_prec(self):
        return self._q_prec

    def _q_order(self):
        if not self._coeffs:
            return self._q_prec
        return min(c.valuation for c in self._coeffs)

    def _mul_inner(self, other):
        return min(self._q_prec + other._q_order(), other._q_prec + self._q_order())

    def _is_scalar(self, other):
        return isinstance(other, (int, Fraction, QLaurent)) and not isinstance(other, bool)

    def _scale(self, c):
        if isinstance(c, QLaurent):
            inner = min(self._q_prec + c.valuation, c.prec + self._q_order())
            return BiSeries([a * c for a in self._coeffs], self._val, self._prec, inner)
        c = rat(c)
        return BiSeries([a * c for a in self._coeffs], self._val, self._prec, self._q_prec)

    @staticmethod
    def _scalar_inverse(c):
        if isinstance(c, QLaurent):
            return c.invert()
        return 1 / rat(c)

    def _coerce(self, other):
        if isinstance(other, BiSeries):
            return other
        if isinstance(other, (int, Fraction, QLaurent)) and not isinstance(other, bool):
            return BiSeries.constant(other)
        return NotImplemented

    # -- accessors -----------------------------------------------------------
    def z_coefficient(self, n: int) -> QLaurent:
        """The q-series multiplying ``z**n``."""
        if n >= self._prec:
            raise InsufficientPrecision(f"z exponent {n} requested, z precision is {self._prec}")
        c = self._c(n)
        return QLaurent.zero(self._q_prec) if c is None else c

    def q_coefficient(self, k: int) -> QLaurent:
        """The z-series multiplying ``q**k`` (returned as a univariate series in z)."""
        if k >= self._q_prec:
            raise InsufficientPrecision(f"q exponent {k} requested, q precision is {self._q_prec}")
        return QLaurent([c.coeff(k) for c in self._coeffs], self._val, self._prec)

    def coeff(self, z_exp: int, q_exp: int) -> Fraction:
        if z_exp >= self._prec:
            raise InsufficientPrecision(f"z exponent {z_exp} requested, z precision is {self._prec}")
        if q_exp >= self._q_prec:
            raise InsufficientPrecision(f"q exponent {q_exp} requested, q precision is {self._q_prec}")
        c = self._c(z_exp)
        return Fraction(0) if c is None else c.coeff(q_exp)

    def dq(self) -> BiSeries:
        return BiSeries([c.euler() for c in self._coeffs], self._val, self._prec, self._q_prec)

    def dz(self) -> BiSeries:
        return self.derivative()

    def truncate(self, z_prec, q_prec=INF):
        q_prec = min(q_prec, self._q_prec)
        z_prec = min(z_prec, self._prec)
        return BiSeries(list(self._coeffs), self._val, z_prec, q_prec)

    def map_coefficients(self, f) -> BiSeries:
        """Apply ``f`` to every q-series coefficient (z-structure unchanged)."""
        cs = [f(c) for c in self._coeffs]
        q_prec = min([c.prec for c in cs], default=self._q_prec)
        return BiSeries(cs, self._val, self._prec, q_prec)

    def agrees_with(self, other: BiSeries) -> bool:
        """Coefficientwise equality below both z- and q-precisions."""
        zp = min(self._prec, other._prec)
        qp = min(self._q_prec, other._q_prec)
        return (self.truncate(zp, qp) - other.truncate(zp, qp)).is_zero()

    def __repr__(self):
        return f"BiSeries({self.format()})"

    def format(self) -> str:
        parts = []
        for n, c in self.terms():
            zm = "1" if n == 0 else ("z" if n == 1 else f"z^{n}")
            parts.append(f"({c.format('q')})*{zm}")
        if self._prec != INF:
            parts.append(f"O(z^{self._prec})")
        return " + ".join(parts) if parts else "0"

    def to_json(self, variables=("z", "q")) -> dict:
        return {
            "type": "BiSeries",
            "variables": list(variables),
            "valuation": self._val,
            "precision": None if self._prec == INF else self._prec,
            "q_precision": None if self._q_prec == INF else self._q_prec,
            "coefficients": [
                {"valuation": c._val, "coefficients": [rat_str(x) for x in c.coeffs]}
                for c in self._coeffs
            ],
        }

    @classmethod
    def from_json(cls, obj: dict) -> BiSeries:
        zp = INF if obj.get("precision") is None else obj["precision"]
        qp = INF if obj.get("q_precision") is None else obj["q_precision"]
        cs = [QLaurent([rat(x) for x in c["coefficients"]], c["valuation"], qp) for c in obj["coefficients"]]
        return cls(cs, obj["valuation"], zp, qp)


# -- functional interface -----------------------------------------------------

def series_add(a, b):
    return a + b


def series_mul(a, b):
    return a * b


def series_invert(a, prec=None):
    return a.invert(prec)


def dq(a):
    """``q d/dq`` on a QLaurent or on the q-part of a BiSeries."""
    return a.euler() if isinstance(a, QLaurent) else a.dq()


def dz(a: BiSeries) -> BiSeries:
    return a.dz()


def substitute_power(a: QLaurent, k: int) -> QLaurent:
    return a.substitute_power(k)


def exp_series(a, prec=None):
    return a.exp(prec)


def coeff(a, q_exp: int, z_exp: int | None = None) -> Fraction:
    if isinstance(a, BiSeries):
        if z_exp is None:
            raise TypeError("BiSeries coefficients need z_exp")
        return a.coeff(z_exp, q_exp)
    return a.coeff(q_exp)


def from_json(obj: dict):
    kind = obj.get("type")
    if kind == "QLaurent":
        return QLaurent.from_json(obj)
    if kind == "BiSeries":
        return BiSeries.from_json(obj)
    raise ValueError(f"unknown series type {kind!r}")
