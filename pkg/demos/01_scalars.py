"""
Exact scalars
=============

Everything lives in the 12th cyclotomic field, so q, i and the q-brackets
are exact values rather than floats.
"""

from tgrass.scalars import I, ONE, Q, conj, q_bracket, sqrt_bracket2

print("q^3        =", Q**3)
print("1 + q + q^2 =", ONE + Q + Q * Q)
print("1/q        =", ONE / Q)
print("conj(q)    =", conj(Q))

# the brackets repeat with period 3 and [2] is negative
print("[n], n = -3..5:", [str(q_bracket(n)) for n in range(-3, 6)])

# so sqrt([2]) needs i; the branch is fixed once
r = sqrt_bracket2()
print("sqrt([2]) =", r, " squared:", r * r)

# the numeric embedding is only a cross-check
print("complex(q) =", complex(Q))
