"""
Integration
===========

Integrating over a variable picks out the terms where it appears squared.
The double integral is normalised so that xi^2 xb^2 integrates to one.
"""

from tgrass.berezin import DifferentialSym, differential_swap, double_integral, integrate
from tgrass.grassmann import GeneratorSym, xb, xi
from tgrass.states import PAPER_WEIGHT

X, B = GeneratorSym(False, 0), GeneratorSym(True, 0)
x, b = xi(0), xb(0)

print("int xi^2 dxi      =", integrate(x * x, X))
print("int (1 + xi) dxi  =", integrate(1 + x, X))
print("int xb xi^2 dxi   =", integrate(b * x * x, X))

print("double integral of (xb xi)^2 =", double_integral(b * x * b * x))

# only the top word survives, so w(xb xi) * xb integrates to zero
print("double integral of w * xb    =", double_integral(PAPER_WEIGHT.element() * b))

# differentials follow the grading; same-grade pairs have no relation
phase, moved = differential_swap(DifferentialSym(False, 0), B)
print("dxi xb  ->", phase, "* xb dxi")
try:
    differential_swap(DifferentialSym(False, 0), X)
except ValueError as exc:
    print("dxi xi  ->", exc)
