"""
The k=3 oscillator
==================

Words in a, ad, N and q^{sN} are rewritten to normal order, and the same
algebra is represented by exact 3x3 matrices.  The two agree.
"""

import random

from tgrass.oscillator import A, AD, NUM, fock_matrices, matrices_equal, op_normalize, qN, rep, rep_word
from tgrass.scalars import render

print("a ad      ->", op_normalize((A, AD)))
print("a ad ad   ->", op_normalize((A, AD, AD)))
print("a^3       ->", op_normalize((A, A, A)))

a, ad, num = fock_matrices()
print("a matrix:")
for row in a:
    print("   ", [render(v) for v in row])

# ad a is diagonal with the brackets [0], [1], [2]
m = ad.dot(a)
print("diag(ad a) =", [render(m[k, k]) for k in range(3)])

# rewriting is a homomorphism onto the matrices
rng = random.Random(0)
pool = [A, AD, NUM, qN(1), qN(-1)]
ok = all(
    matrices_equal(rep(op_normalize(w)), rep_word(w))
    for w in (tuple(rng.choice(pool) for _ in range(rng.randint(0, 6))) for _ in range(200))
)
print("200 random words agree:", ok)
