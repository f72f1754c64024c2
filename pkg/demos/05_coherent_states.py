"""
Coherent states and the resolution of the identity
==================================================

The ket is derived by applying 1 + ad xi - ad xi ad xi to the vacuum.  Moving
the Grassmann coefficients to the left of the kets needs a phase rule, and
the shipped conventions differ there.  The audit lists which printed
identities each convention reproduces.
"""

from tgrass.audit import audit
from tgrass.states import (
    apply_to_ket,
    coherent_bra,
    coherent_ket,
    coherent_operator,
    eigen_residual,
    identity_resolution,
    solve_weight,
)
from tgrass.scalars import render

# before choosing a convention: sum_n |n> G_n
print("operator level:", apply_to_ket(coherent_operator()))

for name in ("paper", "uniform-eq5"):
    print(f"{name:12s} ket:", coherent_ket(name))
print("bra:", coherent_bra())

# the eigen property holds before any convention is applied
print("a|xi> - xi|xi> =", eigen_residual())

w = solve_weight("paper", "eq20")
print("weight for the left-measure form:", w)
m = identity_resolution("paper", w, "eq20")
print("resolution:", [[render(v) for v in row] for row in m])
print("weight for the sandwiched form:", solve_weight("paper", "eq22"))

print()
print(audit(["paper", "uniform-eq5"]).table())
