"""The conjectural evaluator for K3 rubber invariants.

With the default residue convention phi_m vanishes for m <= 0, and since
the leg weights sum to zero some weight is negative, so every term drops
out.  The z-first convention keeps those terms alive.
"""

from mcfcalc.dr import DRQuery, MarkedLeg, MukaiVector, dr_rhs, involution_number, partitions_le2
from mcfcalc.forms import X_SMALL, Z_SMALL
from mcfcalc.surface import CohDegree, K3Class

print("blocks of size 1 or 2 on 3 legs:", partitions_le2(3))
print("involution numbers:", [involution_number(n) for n in range(1, 9)])

legs = [
    MarkedLeg(1, MukaiVector(0, K3Class(1, 2), 0), CohDegree.of(1)),
    MarkedLeg(-1, MukaiVector(1, K3Class(1, 0), 2), CohDegree.of(1)),
]
query = DRQuery(legs, beta=K3Class(1, 1), z_order=6)

for conv in (X_SMALL, Z_SMALL):
    res = dr_rhs(query, conv)
    print(conv, "z-series:", res.z_series.format("z"))
    print("   by genus:", {g: str(v) for g, v in res.decode().items()})
print("status:", res.metadata["status"])
