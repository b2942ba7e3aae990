"""Curve classes, the maps phi_{m,r} and phi_r, and weighted partitions."""

from mcfcalc.surface import (
    FIBER,
    POINT,
    AbelianClass,
    CurveClass,
    SurfaceKind,
    is_effective_primitive_image,
    mcf_exponent,
    parse_k3_class,
    parse_weighted_partition,
    partition_degree,
    phi_mr_k3,
    phi_r_abelian,
)

# beta_{m,r} on a K3 surface: self-intersection r^2 m, divisibility r
beta = CurveClass(SurfaceKind.K3, 2, 3)
b = beta.as_k3_class()
print("beta_{2,3} =", b, " beta^2 =", b.pair(b))
img = phi_mr_k3(b, 2, 3)
print("phi_{2,3}(beta) =", img, " square =", img.pair(img))
print("phi_{2,3}(f) =", phi_mr_k3(FIBER, 2, 3))

# which primitive images of beta_{m,r/k} are effective
for kind in ("k3", "abelian"):
    print(kind, [(m, k, is_effective_primitive_image(kind, m, k)) for m in (-2, 0) for k in (1, 2)])

# the abelian map scales dy1 by 1/r and dy2 by r; it fixes the point class
f1 = AbelianClass.fiber(1)
f2 = AbelianClass.fiber(2)
print("f1 ^ f2 =", f1 ^ f2)
print("phi_3(f1) =", phi_r_abelian(f1, 3), " phi_3(p) =", phi_r_abelian(AbelianClass.point(), 3))

# weighted partitions and the cover-formula exponent
lam = parse_weighted_partition("(2:p)(1:1)(1:dx1)")
print("partition", [(p.size, p.label) for p in lam.parts], "degree", partition_degree(lam))
print("exponent 2g-3+sum deg for g=2 with two points:", mcf_exponent(2, [POINT, POINT]))
print(parse_k3_class("2s - 1/2 f + t"))
