"""Multiple cover transform for stable-pairs partition functions.

Two routes, one coefficient at a time and one on whole generating series
Z(p) = sum (-p)^ch3 <...>, give the same numbers.
"""

from mcfcalc.pt import PLaurent, PTContext, pt_mcf_coefficient, pt_mcf_series, pt_mcf_terms, to_csv

ctx = PTContext.fixed(r=2, nu=3)
primitive = {
    1: PLaurent(-1, (1, 4, -2, 5, 3)),
    2: PLaurent(-1, (2, 7, 1)),
}

for ch3 in range(-2, 4):
    print("ch3 =", ch3, "weights", pt_mcf_terms(ch3, ctx))

by_series = pt_mcf_series(ctx, primitive)
print("window", (by_series.lo, by_series.hi))
for ch3 in range(by_series.lo, by_series.hi):
    print(ch3, by_series.coefficient(ch3), pt_mcf_coefficient(ch3, ctx, primitive))
print(to_csv(by_series))
