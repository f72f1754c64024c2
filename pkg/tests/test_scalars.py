import cmath
import json
from fractions import Fraction

import pytest
from hypothesis import given

from tgrass.scalars import (
    I,
    ONE,
    Q,
    SQRT3,
    ZERO,
    CycScalar,
    as_scalar,
    conj,
    q_bracket,
    q_pow,
    render,
    sqrt_bracket2,
)

from conftest import nonzero_scalars, scalars

Q_NUM = cmath.exp(2j * cmath.pi / 3)


def test_root_of_unity():
    assert Q * Q * Q == ONE
    assert Q != ONE
    assert ONE + Q + Q * Q == ZERO
    assert I * I == -ONE


def test_inverse_of_q():
    assert ONE / Q == Q * Q
    assert Q**-1 == Q * Q


def test_division_by_zero():
    with pytest.raises(ZeroDivisionError):
        ONE / ZERO


def test_conj_examples():
    assert conj(Q) == Q * Q
    assert conj(I) == -I
    assert conj(as_scalar(Fraction(3, 2))) == as_scalar(Fraction(3, 2))


def test_brackets():
    assert q_bracket(1) == ONE
    assert q_bracket(2) == -ONE
    assert q_bracket(3) == ZERO
    for n in range(-9, 10):
        assert q_bracket(n + 3) == q_bracket(n)
        assert conj(q_bracket(n)) == q_bracket(n)


def test_brackets_against_numeric_definition():
    for n in range(-6, 7):
        want = (Q_NUM**n - Q_NUM**-n) / (Q_NUM - Q_NUM**-1)
        assert abs(complex(q_bracket(n)) - want) < 1e-12


def test_sqrt_bracket2():
    r = sqrt_bracket2()
    assert r == I
    assert r * r == q_bracket(2)
    assert conj(r) == -I


def test_sqrt3():
    assert SQRT3 * SQRT3 == as_scalar(3)
    assert abs(complex(SQRT3) - 3**0.5) < 1e-12


def test_numeric_constants():
    assert abs(complex(Q) - Q_NUM) < 1e-12
    assert abs(complex(I) - 1j) < 1e-12


@given(scalars, scalars, scalars)
def test_ring_axioms(x, y, z):
    assert (x + y) + z == x + (y + z)
    assert (x * y) * z == x * (y * z)
    assert x * (y + z) == x * y + x * z
    assert x * y == y * x
    assert x + ZERO == x and x * ONE == x
    assert x - x == ZERO


@given(nonzero_scalars)
def test_inverses(x):
    assert x * x.inverse() == ONE
    assert x / x == ONE


@given(scalars, scalars)
def test_conj_automorphism(x, y):
    assert conj(x * y) == conj(x) * conj(y)
    assert conj(x + y) == conj(x) + conj(y)
    assert conj(conj(x)) == x


@given(scalars, scalars)
def test_numeric_embedding(x, y):
    assert abs(complex(x * y) - complex(x) * complex(y)) <= 1e-12 * (1 + abs(complex(x)) * abs(complex(y)))
    assert abs(complex(x + y) - complex(x) - complex(y)) <= 1e-12
    assert abs(complex(conj(x)) - complex(x).conjugate()) <= 1e-12


@given(scalars)
def test_unique_representation(x):
    # reduction keeps four coefficients; equal values compare equal and hash equal
    y = CycScalar(x.coeffs)
    assert x == y and hash(x) == hash(y)


@given(scalars)
def test_json_round_trip(x):
    data = json.loads(json.dumps(x.to_json()))
    assert CycScalar.from_json(data) == x
    assert all(isinstance(p, str) for pair in data for p in pair)


def test_galois_maps_fix_rationals_and_permute_roots():
    for k in (1, 5, 7, 11):
        assert as_scalar(7).galois(k) == as_scalar(7)
        assert Q.galois(k) ** 3 == ONE


def test_rendering():
    assert render(ZERO) == "0"
    assert render(Q * Q) == "q^2"
    assert render(-I * Q * Q) == "-i*q^2"
    assert render(as_scalar(Fraction(1, 2)) + Q) == "1/2 + q"
    assert str(q_pow(4)) == "q"
