"""Built-in identity suite run by ``mcfcalc verify``."""

from __future__ import annotations

import random
from fractions import Fraction

from .forms import DIVISOR_SUM, LOG_DERIVATIVE, FormRequest, ode_residual, phi, phi2, s_series, theta
from .gw import PointHodgeQuery, mcf_point_hodge, primitive_point_hodge
from .pt import PLaurent, PTContext, pt_mcf_coefficient, pt_mcf_series
from .surface import divisors


def check_s_two_formulas() -> bool:
    req = FormRequest(8, 9)
    return s_series(req, LOG_DERIVATIVE).agrees_with(s_series(req, DIVISOR_SUM))


def check_phi_one_is_theta() -> bool:
    req = FormRequest(6, 7)
    return phi(1, req).agrees_with(theta(req)) and all(phi(m, req).is_zero() for m in (0, -1, -2))


def check_ode_residuals() -> bool:
    req = FormRequest(6, 7)
    return all(
        ode_residual(m, n, req).is_zero() and phi2(m, n, req).q_coefficient(0).is_zero()
        for m in (1, 2)
        for n in (1, 2)
    )


def check_mcf_identity() -> bool:
    rng = random.Random(0)
    for _ in range(20):
        kind = rng.choice(["k3", "abelian"])
        g = rng.randint(0, 3)
        q = PointHodgeQuery(kind, g, rng.randint(0, g), rng.randint(0, 3), 1)
        if mcf_point_hodge(q) != primitive_point_hodge(q):
            return False
    return mcf_point_hodge(PointHodgeQuery("k3", 0, 0, 0, 2)) == Fraction(1, 8)


def check_pt_coherence() -> bool:
    rng = random.Random(0)
    for _ in range(30):
        r = rng.choice([1, 2, 3, 4, 6])
        ctx = PTContext.fixed(r, rng.randint(-2, 4))
        prim = {
            k: PLaurent(rng.randint(-3, 0), [Fraction(rng.randint(-9, 9), rng.randint(1, 5)) for _ in range(8)])
            for k in divisors(r)
        }
        series = pt_mcf_series(ctx, prim)
        if any(series.coefficient(c) != pt_mcf_coefficient(c, ctx, prim) for c in range(series.lo, series.hi)):
            return False
    return True


CHECKS = {
    "S log-derivative == divisor sum": check_s_two_formulas,
    "phi_1 == Theta, phi_m == 0 for m <= 0": check_phi_one_is_theta,
    "phi_{m,n} ODE residuals vanish": check_ode_residuals,
    "MCF r=1 identities and 1/8 example": check_mcf_identity,
    "PT series/coefficient coherence": check_pt_coherence,
}


def run_all() -> dict[str, bool]:
    return {name: bool(fn()) for name, fn in CHECKS.items()}
