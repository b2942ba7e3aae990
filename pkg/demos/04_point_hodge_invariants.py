"""Point/Hodge invariants in primitive classes and their multiple cover formula."""

from mcfcalc.forms import FormRequest
from mcfcalc.gw import (
    PointHodgeQuery,
    general_mcf_transform,
    k3_point_hodge_series,
    mcf_point_hodge,
    mcf_point_hodge_terms,
    primitive_point_hodge,
)
from mcfcalc.surface import POINT

# genus-0 counts of rational curves on K3: the z^-2 row of 1/(Theta^2 Delta)
s = k3_point_hodge_series(0, FormRequest(6, 1))
print("K3 genus 0, h = 0..5:", [str(s.coeff(-2, h - 1)) for h in range(6)])

for kind, g, m, h in [("k3", 0, 0, 1), ("k3", 1, 1, 2), ("k3", 2, 2, 3), ("abelian", 1, 1, 1), ("abelian", 2, 2, 3)]:
    q = PointHodgeQuery(kind, g, m, h)
    print(f"{kind:8s} g={g} points={m} h={h}: {primitive_point_hodge(q)}")

# imprimitive classes: a divisor sum over k | r
q = PointHodgeQuery("k3", 0, 0, 0, 2)
for t in mcf_point_hodge_terms(q):
    print(f"  k={t.k} effective={t.effective} h'={t.primitive_h} contribution={t.contribution}")
print("K3 g=0 h=0 r=2 ->", mcf_point_hodge(q))

q = PointHodgeQuery("abelian", 2, 2, 2, 2)
print("abelian g=2 two points h=2 r=2 ->", mcf_point_hodge(q))

# the same formula on values supplied from elsewhere
print("general transform:", general_mcf_transform(2, [POINT, POINT], 2, {1: 5, 2: 7}))
