"""
Z3-graded Grassmann words
=========================

Products are rewritten to a canonical form: unbarred generators to the left,
length-3 blocks rotated to their least form, and cubes or longer blocks
dropped.
"""

from tgrass.grassmann import (
    CONSTRAINED,
    RELATIONAL,
    AlgebraSignature,
    GeneratorSym,
    dimension_formula,
    enumerate_basis,
    normalize,
    xb,
    xi,
)

R2 = AlgebraSignature(2, RELATIONAL)
x0, x1 = GeneratorSym(False, 0), GeneratorSym(False, 1)
b0 = GeneratorSym(True, 0)

# one swap of a barred and an unbarred symbol costs q^2
print("xb0 xi0         ->", normalize((b0, x0), R2))
# a ternary block is rotated, picking up a power of q
print("xi0 xi1 xi0     ->", normalize((x0, x1, x0), R2))
print("xi0^3           ->", normalize((x0, x0, x0), R2))
print("(xb0 xi0)^2     ->", normalize((b0, x0, b0, x0), R2))

# the constrained algebra keeps only a few shapes; its size follows a cubic
for n in (1, 2, 3):
    size = len(enumerate_basis(AlgebraSignature(n, CONSTRAINED)))
    print(f"N={n}: {size} basis words, formula {dimension_formula(n)}")

# the relational algebra used for integration keeps xi^2 xb^2
print("relational N=1 basis size:", len(enumerate_basis(AlgebraSignature(1, RELATIONAL))))
print("(1 + xi)(1 + xb) =", (1 + xi(0)) * (1 + xb(0)))
