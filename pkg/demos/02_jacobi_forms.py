"""Eisenstein series, the discriminant, theta, S and the residue forms phi."""

from mcfcalc.forms import (
    DIVISOR_SUM,
    LOG_DERIVATIVE,
    Z_SMALL,
    FormRequest,
    bernoulli,
    delta,
    eisenstein,
    ode_residual,
    phi,
    phi2,
    s_series,
    theta,
)

print("B_2 .. B_12:", [str(bernoulli(n)) for n in range(2, 13, 2)])
print("G_2   =", eisenstein(2, FormRequest(6)).format())
print("G_4   =", eisenstein(4, FormRequest(4)).format())
print("Delta =", delta(FormRequest(7)).format())

req = FormRequest(q_order=3, z_order=6)
print("\nTheta(z,q):")
print(theta(req).format())

# S has two descriptions; they agree coefficient by coefficient
big = FormRequest(8, 9)
print("\nS via -D log Theta equals S via divisor sums:",
      s_series(big, LOG_DERIVATIVE) == s_series(big, DIVISOR_SUM))
print(s_series(req, DIVISOR_SUM).format())

# phi_m is a residue in an auxiliary variable x
print("\nphi_1 == Theta:", phi(1, req) == theta(req))
print("phi_0, phi_-1 vanish:", phi(0, req).is_zero(), phi(-1, req).is_zero())
print("phi_2 =", phi(2, req).format())

# with the z-first expansion the negative-m forms are nonzero
print("phi_-1 (z-first) =", phi(-1, req, Z_SMALL).format())

# phi_{m,n} solves a first-order q-equation with no constant term
wide = FormRequest(5, 7)
print("\nphi_{1,1} =", phi2(1, 1, wide).format())
print("residual vanishes:", ode_residual(1, 1, wide).is_zero())
