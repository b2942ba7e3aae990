"""Modular and quasi-Jacobi forms as exact truncated q- and (z, q)-expansions.

All constructors take a :class:`FormRequest` fixing the truncation: the
result knows every coefficient of ``z**a q**b`` with ``a < z_order`` and
``b < q_order``.  Results are memoized and shared (they are immutable).

Conventions:

* ``G_{2k} = -B_{2k}/(4k) + sum_n sigma_{2k-1}(n) q^n``
* ``Delta = q prod (1 - q^n)^24``
* ``Theta = z exp(-2 sum_k G_{2k} z^{2k} / (2k)!)``
* ``S = -q d/dq log Theta``
* ``phi_m = Res_{x=0} (Theta(x+z)/Theta(x))^m``
* ``phi_{m,n}``: the ``O(q)`` solution of
  ``D phi_{m,n} = mn phi_m phi_n (D^2 Theta)/Theta + (D phi_m)(D phi_n)``,
  ``D = q d/dq``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb, factorial

from .errors import InconsistentODE, InsufficientPrecision
from .series import INF, BiSeries, QLaurent

LOG_DERIVATIVE = "log_derivative"
DIVISOR_SUM = "divisor_sum"

# Residue expansion regions for phi_m.  "x_small" expands Theta(x+z) in x
# around x = 0 (only the pole at x = 0 is seen); "z_small" expands in z first,
# which also picks up the pole at x = -z when m < 0.  Both agree for m > 0.
X_SMALL = "x_small"
Z_SMALL = "z_small"
PHI_CONVENTIONS = (X_SMALL, Z_SMALL)


@dataclass(frozen=True)
class FormRequest:
    q_order: int
    z_order: int = 1

    def __post_init__(self):
        if self.q_order < 1 or self.z_order < 1:
            raise ValueError(f"orders must be >= 1, got {self}")

    def widen(self, dq: int = 0, dz: int = 0) -> FormRequest:
        return FormRequest(self.q_order + dq, self.z_order + dz)


def _req(req, z_order=None) -> FormRequest:
    if isinstance(req, FormRequest):
        return req
    return FormRequest(req, 1 if z_order is None else z_order)


# -- arithmetic helpers -------------------------------------------------------

@lru_cache(maxsize=None)
def bernoulli(n: int) -> Fraction:
    """Bernoulli number ``B_n`` from ``sum_{j<=m} C(m+1, j) B_j = 0`` (``B_1 = -1/2``)."""
    if n < 0:
        raise ValueError("n must be non-negative")
    if n == 0:
        return Fraction(1)
    return -sum(comb(n + 1, j) * bernoulli(j) for j in range(n)) / (n + 1)


def divisor_sigma(k: int, n: int) -> int:
    return sum(d**k for d in range(1, n + 1) if n % d == 0)


def _bi_truncated(s: BiSeries, req: FormRequest, what: str) -> BiSeries:
    if s.z_prec < req.z_order or s.q_prec < req.q_order:
        raise InsufficientPrecision(
            f"{what}: reached (z {s.z_prec}, q {s.q_prec}), need ({req.z_order}, {req.q_order})"
        )
    return s.truncate(req.z_order, req.q_order)


# -- modular forms ------------------------------------------------------------

@lru_cache(maxsize=None)
def _eisenstein(k2: int, q_order: int) -> QLaurent:
    const = -bernoulli(k2) / (2 * k2)
    return QLaurent([const] + [divisor_sigma(k2 - 1, n) for n in range(1, q_order)], 0, q_order)


def eisenstein(k2: int, req) -> QLaurent:
    """Eisenstein series ``G_{k2}`` for even ``k2 >= 2``."""
    if k2 < 2 or k2 % 2:
        raise ValueError(f"weight must be even and >= 2, got {k2}")
    return _eisenstein(k2, _req(req).q_order)


@lru_cache(maxsize=None)
def _delta(q_order: int) -> QLaurent:
    euler = QLaurent.constant(1, q_order - 1)
    for n in range(1, q_order - 1):
        euler = euler * QLaurent.from_dict({0: 1, n: -1})
    return (euler**24).shift(1)


def delta(req) -> QLaurent:
    """The discriminant ``q prod (1-q^n)^24``."""
    return _delta(_req(req).q_order)


# -- theta and S --------------------------------------------------------------

@lru_cache(maxsize=None)
def theta(req: FormRequest) -> BiSeries:
    """Normalized odd Jacobi theta function, odd in ``z`` with leading term ``z``."""
    Z, Q = req.z_order, req.q_order
    arg = {}
    for k in range(1, (Z - 1) // 2 + 1):
        if 2 * k >= Z - 1:
            break
        g = eisenstein(2 * k, Q) * Fraction(-2, factorial(2 * k))
        for n, c in g.terms():
            arg[(2 * k, n)] = c
    a = BiSeries.from_dict(arg, Z - 1, Q)
    return a.exp().shift(1)


@lru_cache(maxsize=None)
def s_series(req: FormRequest, method: str = LOG_DERIVATIVE) -> BiSeries:
    """``S(z, q)`` either as ``-D(Theta)/Theta`` or by the divisor-sum formula."""
    if method == LOG_DERIVATIVE:
        th = theta(req.widen(dz=1))
        return _bi_truncated(-(th.dq() * th.invert()), req, "S")
    if method == DIVISOR_SUM:
        Z, Q = req.z_order, req.q_order
        d = {}
        for n in range(1, Q):
            for dv in range(1, n + 1):
                if n % dv:
                    continue
                for j in range(2, Z, 2):
                    key = (j, n)
                    d[key] = d.get(key, 0) + Fraction(2 * (n // dv) * dv**j, factorial(j))
        return BiSeries.from_dict(d, Z, Q)
    raise ValueError(f"unknown method {method!r}")


@lru_cache(maxsize=None)
def theta_dq2_ratio(req: FormRequest) -> BiSeries:
    """``(D_q^2 Theta) / Theta``; its q^0 part vanishes identically."""
    th = theta(req.widen(dz=2))
    return _bi_truncated(th.dq().dq() * th.invert(), req, "D^2 Theta / Theta")


# -- phi_m ----------------------------------------------------------------------

def _ps_mul(a, b, n):
    out = []
    for k in range(n):
        acc = None
        for i in range(k + 1):
            t = a[i] * b[k - i]
            acc = t if acc is None else acc + t
        out.append(acc)
    return out


def _ps_inv(a, n):
    b0 = a[0].invert()
    b = [b0]
    for k in range(1, n):
        acc = None
        for j in range(1, k + 1):
            t = a[j] * b[k - j]
            acc = t if acc is None else acc + t
        b.append(-(b0 * acc))
    return b


def _ps_pow(a, e, n):
    result = None
    base = a
    while e:
        if e & 1:
            result = base if result is None else _ps_mul(result, base, n)
        e >>= 1
        if e:
            base = _ps_mul(base, base, n)
    return result


def _phi_x_small(m: int, req: FormRequest) -> BiSeries:
    Z, Q = req.z_order, req.q_order
    if m <= 0:
        # (Theta(x)/Theta(x+z))^|m| is regular at x = 0; only check the unit.
        theta(FormRequest(Q, Z + 1)).invert()
        return BiSeries.zero(Z, Q)
    th = theta(FormRequest(Q, Z + m))
    shifted = []  # Taylor coefficients of Theta(x + z) in x
    cur = th
    for k in range(m):
        shifted.append(cur * Fraction(1, factorial(k)))
        cur = cur.dz()
    unit = [BiSeries.constant(th.z_coefficient(j + 1)) for j in range(m)]
    ratio = _ps_mul(shifted, _ps_inv(unit, m), m)
    return _bi_truncated(_ps_pow(ratio, m, m)[m - 1], req, f"phi_{m}")


def _phi_z_small(m: int, req: FormRequest) -> BiSeries:
    Z, Q = req.z_order, req.q_order
    if m == 0:
        return BiSeries.zero(Z, Q)
    f = theta(FormRequest(Q, Z + 2)) ** m  # here z plays the role of x
    f_inv = f.invert()
    rows = []
    cur = f
    for k in range(Z):
        rows.append((cur * f_inv).z_coefficient(-1) * Fraction(1, factorial(k)))
        cur = cur.dz()
    return _bi_truncated(BiSeries(rows, 0, Z, Q), req, f"phi_{m}")


@lru_cache(maxsize=None)
def phi(m: int, req: FormRequest, convention: str = X_SMALL) -> BiSeries:
    """Quasi-Jacobi form ``phi_m`` as the ``1/x`` coefficient of ``(Theta(x+z)/Theta(x))^m``."""
    if convention == X_SMALL:
        return _phi_x_small(m, req)
    if convention == Z_SMALL:
        return _phi_z_small(m, req)
    raise ValueError(f"unknown phi convention {convention!r}")


# -- phi_{m,n} --------------------------------------------------------------------

def ode_rhs(m: int, n: int, req: FormRequest, convention: str = X_SMALL) -> BiSeries:
    """Right-hand side of the defining equation of ``phi_{m,n}``."""
    wide = req.widen(dz=2)
    pm, pn = phi(m, wide, convention), phi(n, wide, convention)
    rhs = pm * pn * theta_dq2_ratio(wide) * (m * n) + pm.dq() * pn.dq()
    return _bi_truncated(rhs, req, f"ODE rhs ({m},{n})")


def _integrate_dq(c: QLaurent) -> QLaurent:
    d = {}
    for k, a in c.terms():
        if k <= 0:
            raise InconsistentODE(f"right-hand side has a q^{k} term {a}")
        d[k] = a / k
    return QLaurent.from_dict(d, c.prec)


@lru_cache(maxsize=None)
def phi2(m: int, n: int, req: FormRequest, convention: str = X_SMALL) -> BiSeries:
    """Quasi-Jacobi form ``phi_{m,n}`` by termwise integration of its q-equation."""
    if (m, n) != tuple(sorted((m, n))):
        return phi2(n, m, req, convention)
    rhs = ode_rhs(m, n, req, convention)
    const = rhs.q_coefficient(0)
    if not const.is_zero():
        raise InconsistentODE(f"q^0 part of the ({m},{n}) right-hand side is {const}")
    return rhs.map_coefficients(_integrate_dq).truncate(req.z_order, req.q_order)


def ode_residual(m: int, n: int, req: FormRequest, convention: str = X_SMALL) -> BiSeries:
    """``D phi_{m,n} - rhs``; identically zero when everything is consistent."""
    return phi2(m, n, req, convention).dq() - ode_rhs(m, n, req, convention)
