"""Exact arithmetic in the 12th cyclotomic field.

Every coefficient in the package is a :class:`CycScalar`, stored as
``c0 + c1*z + c2*z**2 + c3*z**3`` with ``z`` a primitive 12th root of unity
reduced by ``z**4 = z**2 - 1``.  The field contains the cube root of unity
``q = z**4``, the imaginary unit ``i = z**3`` and ``sqrt(3) = z + z**11``,
which is everything the k=3 oscillator needs.

Rendering prints a single term ``r * i^e * q^k`` when the value is one, and
otherwise expands in the basis ``{1, q, i, i*q}``.  Either way the text can
be read back by the expression parser.
"""

from __future__ import annotations

import cmath
from fractions import Fraction
from functools import lru_cache
from numbers import Rational

__all__ = [
    "CycScalar",
    "ZERO",
    "ONE",
    "Q",
    "I",
    "SQRT3",
    "as_scalar",
    "conj",
    "q_pow",
    "q_bracket",
    "sqrt_bracket2",
]

_ZETA = cmath.exp(1j * cmath.pi / 6)


def _reduce(p):
    # p: coefficients of a polynomial in z of degree <= 6
    p = list(p) + [Fraction(0)] * (7 - len(p))
    return (
        p[0] - p[4] - p[6],
        p[1] - p[5],
        p[2] + p[4],
        p[3] + p[5],
    )


class CycScalar:
    """Element of Q(z), z = exp(i*pi/6)."""

    __slots__ = ("coeffs", "_hash")

    def __init__(self, coeffs=(0, 0, 0, 0)):
        c = tuple(Fraction(x) for x in coeffs)
        if len(c) != 4:
            raise ValueError("CycScalar needs exactly 4 coefficients")
        self.coeffs = c
        self._hash = None

    # -- constructors -----------------------------------------------------

    @classmethod
    def from_qi(cls, a=0, b=0, c=0, d=0):
        """Build ``a + b*q + c*i + d*i*q``."""
        a, b, c, d = (Fraction(x) for x in (a, b, c, d))
        # q = z^2 - 1, i = z^3, i*q = -z
        return cls((a - b, -d, b, c))

    def to_qi(self):
        """Inverse of :meth:`from_qi`: coefficients on ``(1, q, i, i*q)``."""
        c0, c1, c2, c3 = self.coeffs
        return (c0 + c2, c2, c3, -c1)

    # -- arithmetic -------------------------------------------------------

    def __add__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return CycScalar(a + b for a, b in zip(self.coeffs, other.coeffs))

    __radd__ = __add__

    def __neg__(self):
        return CycScalar(-a for a in self.coeffs)

    def __pos__(self):
        return self

    def __sub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return CycScalar(a - b for a, b in zip(self.coeffs, other.coeffs))

    def __rsub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return other - self

    def __mul__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        a, b = self.coeffs, other.coeffs
        p = [Fraction(0)] * 7
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    if y:
                        p[i + j] += x * y
        return CycScalar(_reduce(p))

    __rmul__ = __mul__

    def inverse(self):
        if not self:
            raise ZeroDivisionError("division by zero in CycScalar")
        # product over the non-trivial Galois conjugates; x * that = norm(x)
        cof = self.galois(5) * self.galois(7) * self.galois(11)
        norm = self * cof
        n0, n1, n2, n3 = norm.coeffs
        assert n1 == n2 == n3 == 0, "norm must be rational"
        return cof * (1 / n0)

    def __truediv__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return other * self.inverse()

    def __pow__(self, n):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.inverse() ** (-n)
        result = ONE
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    # -- field automorphisms ----------------------------------------------

    def galois(self, k):
        """Apply the automorphism ``z -> z**k`` (k coprime to 12)."""
        if k % 12 not in (1, 5, 7, 11):
            raise ValueError(f"z -> z^{k} is not an automorphism")
        powers = _zeta_powers(k % 12)
        out = ZERO
        for c, zp in zip(self.coeffs, powers):
            if c:
                out = out + zp * c
        return out

    def conj(self):
        return self.galois(11)

    # -- comparisons and conversion ---------------------------------------

    def __eq__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        if self._hash is None:
            c0, c1, c2, c3 = self.coeffs
            self._hash = hash(c0) if not (c1 or c2 or c3) else hash(self.coeffs)
        return self._hash

    def __bool__(self):
        return any(self.coeffs)

    def is_rational(self):
        return not any(self.coeffs[1:])

    def __complex__(self):
        return sum(complex(c) * _ZETA**k for k, c in enumerate(self.coeffs))

    def to_complex(self):
        return complex(self)

    def __repr__(self):
        return f"CycScalar({self})"

    def __str__(self):
        return render(self)

    def to_json(self):
        return [[str(c.numerator), str(c.denominator)] for c in self.coeffs]

    @classmethod
    def from_json(cls, data):
        return cls(Fraction(int(n), int(d)) for n, d in data)


def _coerce(x):
    if isinstance(x, CycScalar):
        return x
    if isinstance(x, (int, Rational)):
        return CycScalar((x, 0, 0, 0))
    return NotImplemented


def as_scalar(x) -> CycScalar:
    """Coerce ints, Fractions and CycScalars to :class:`CycScalar`."""
    c = _coerce(x)
    if c is NotImplemented:
        raise TypeError(f"cannot interpret {x!r} as an exact scalar")
    return c


ZERO = CycScalar()
ONE = CycScalar((1, 0, 0, 0))
_Z = CycScalar((0, 1, 0, 0))
Q = CycScalar((-1, 0, 1, 0))
I = CycScalar((0, 0, 0, 1))
SQRT3 = CycScalar((0, 2, 0, -1))  # z + z^11 = z + (z - z^3)


@lru_cache(maxsize=None)
def _zeta_powers(k):
    zk = _Z**k
    return (ONE, zk, zk * zk, zk * zk * zk)


def conj(x) -> CycScalar:
    """Complex conjugation, the automorphism ``z -> 1/z``."""
    return as_scalar(x).conj()


@lru_cache(maxsize=None)
def q_pow(n: int) -> CycScalar:
    """``q**n`` for any integer n."""
    return Q ** (n % 3)


@lru_cache(maxsize=None)
def q_bracket(n: int) -> CycScalar:
    """The q-number ``[n] = (q^n - q^-n) / (q - q^-1)``; period 3."""
    return (q_pow(n) - q_pow(-n)) / (Q - q_pow(-1))


def sqrt_bracket2() -> CycScalar:
    """Fixed square root of ``[2] = -1``.  The branch is ``+i``."""
    return I


def _fmt_rat(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def _monomial(x: CycScalar):
    # x == r * i^e * q^k with r rational?
    for e, unit in ((0, ONE), (1, I)):
        for k in range(3):
            r = x / (unit * q_pow(k))
            if r.is_rational():
                return r.coeffs[0], e, k
    return None


def render(x: CycScalar) -> str:
    """Text in the expression grammar, e.g. ``-i*q^2`` or ``1/2 + q - i*q``."""
    if not x:
        return "0"
    mono = _monomial(x)
    if mono is not None:
        r, e, k = mono
        factors = (["i"] if e else []) + ([f"q^{k}" if k > 1 else "q"] if k else [])
        mag = abs(r)
        sign = "-" if r < 0 else ""
        if not factors:
            return sign + _fmt_rat(mag)
        body = "*".join(factors)
        return sign + (body if mag == 1 else f"{_fmt_rat(mag)}*{body}")
    a, b, c, d = x.to_qi()
    parts = []
    for coef, name in ((a, ""), (b, "q"), (c, "i"), (d, "i*q")):
        if not coef:
            continue
        neg = coef < 0
        mag = -coef if neg else coef
        if not name:
            body = _fmt_rat(mag)
        elif mag == 1:
            body = name
        else:
            body = f"{_fmt_rat(mag)}*{name}"
        parts.append(("-" if neg else "+", body))
    if not parts:
        return "0"
    sign, body = parts[0]
    out = ("-" if sign == "-" else "") + body
    for sign, body in parts[1:]:
        out += f" {sign} {body}"
    return out
