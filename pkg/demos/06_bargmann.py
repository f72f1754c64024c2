"""
Grassmann representatives
=========================

A Fock vector maps to a polynomial in xb; the weighted double integral
recovers the Fock inner product.
"""

from tgrass.bargmann import adjoint_rep, bargmann_inner, from_rep, gram_matrix, to_rep
from tgrass.scalars import I, ONE, Q, ZERO, render
from tgrass.states import PAPER_WEIGHT, solve_weight

psi = (ONE, Q, ONE + I)
r = to_rep(psi)
print("psi        =", [str(c) for c in psi])
print("rep        =", r)
print("adjoint    =", adjoint_rep(psi))
print("round trip =", [str(c) for c in from_rep(r)])

e0, e1 = (ONE, ZERO, ZERO), (ZERO, ONE, ZERO)
print("<0|0> =", bargmann_inner(adjoint_rep(e0), to_rep(e0), PAPER_WEIGHT))
print("<0|1> =", bargmann_inner(adjoint_rep(e0), to_rep(e1), PAPER_WEIGHT))

# with the weight solved for this form the basis is orthonormal
print("weight:", solve_weight("paper", "eq22"))
for row in gram_matrix("paper"):
    print("   ", [render(v) for v in row])

# with the left-measure weight the diagonal picks up powers of q
print("Gram diagonal with (-q, 1, 1):", [render(gram_matrix("paper", PAPER_WEIGHT)[k, k]) for k in range(3)])
