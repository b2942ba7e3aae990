"""Truncated Laurent series with exact rational coefficients.

Every series remembers how far it is known.  Multiplying, inverting and
exponentiating shrink that horizon in a predictable way, and asking for a
coefficient past it is an error rather than a silent zero.
"""

from mcfcalc.errors import InsufficientPrecision
from mcfcalc.series import BiSeries, QLaurent

# 1 - q is exact (infinite precision); ask for its inverse up to q^4
one_minus_q = QLaurent([1, -1])
geom = one_minus_q.invert(prec=4)
print("1/(1-q)       =", geom.format())
print("(1-q)/(1-q)   =", (one_minus_q * geom).format())

# exp of a series with positive valuation
print("exp(q)        =", QLaurent.monomial(1).exp(prec=5).format())

# the Euler operator q d/dq and the substitution q -> q^k
s = QLaurent.from_dict({-1: 1, 1: 1})
print("q d/dq(1+3q+5q^2) =", QLaurent([1, 3, 5]).euler().format())
print("(q^-1 + q)(q^3)   =", s.substitute_power(3).format())

# precision is tracked through Laurent tails
a = QLaurent([2, 1], val=-1, prec=2)
print("a =", a.format(), "  1/a =", a.invert().format())
try:
    a.invert().coeff(5)
except InsufficientPrecision as exc:
    print("asking past the horizon:", exc)

# bivariate series: z-Laurent in the outer variable, q-Laurent coefficients
b = BiSeries.from_dict({(-1, 0): 1, (1, 1): 3, (1, 2): -1}, z_prec=4, q_prec=4)
print("b        =", b.format())
print("z d/dz b =", b.dz().format())
print("b^2      =", (b * b).format())
