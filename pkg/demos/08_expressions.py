"""
The expression language
=======================

The same operations are available as text.  This is what the command line
and the REPL use.
"""

from tgrass.expr import Context, ParseError, evaluate, parse, render_value, to_text

for text in [
    "a*ad - q*ad*a - qN(-1)",
    "xi(0)^3",
    "integrate(xi(0)^2, xi(0))",
    "dxb(0)*dxi(0)*xb(0)*xi(0)*xb(0)*xi(0)",
    "(1 + ad*xi(0) - ad*xi(0)*ad*xi(0))*ket(0)",
    "a*(1 + ad*xi(0) - ad*xi(0)*ad*xi(0))*ket(0)",
    "bra(1)*q*xb(0)*ket(1)",
]:
    print(f"{text:45s} = {render_value(evaluate(text))}")

ctx = Context(convention="uniform-eq5")
print("uniform-eq5:", render_value(evaluate("(1 + ad*xi(0) - ad*xi(0)*ad*xi(0))*ket(0)", ctx)))

# canonical text reparses to the same tree
tree = parse("-(xi(0)+xb(0))^2 - q*(1/2)")
print("canonical:", to_text(tree), to_text(parse(to_text(tree))) == to_text(tree))

try:
    parse("xi(0)**")
except ParseError as exc:
    print("error:", exc)
