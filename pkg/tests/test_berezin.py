import pytest
from hypothesis import given, strategies as st

from tgrass.berezin import (
    DifferentialSym,
    UndefinedTransposition,
    differential_swap,
    double_integral,
    integrate,
    iterated_integral,
)
from tgrass.grassmann import CONSTRAINED, RELATIONAL, AlgebraSignature, GElement, GeneratorSym, enumerate_basis, grade
from tgrass.scalars import ONE, ZERO, Q

from conftest import scalars

R1 = AlgebraSignature(1, RELATIONAL)
X, B = GeneratorSym(False, 0), GeneratorSym(True, 0)
DX, DB = DifferentialSym(False, 0), DifferentialSym(True, 0)
x = GElement.word((X,), R1)
b = GElement.word((B,), R1)
one = GElement.scalar(ONE, R1)
BASIS = enumerate_basis(R1)


def test_integration_rules():
    for var, v in ((X, x), (B, b)):
        assert not integrate(one, var)
        assert not integrate(v, var)
        assert integrate(v * v, var) == one


def test_integral_of_one_plus_xi():
    assert not integrate(one + x, X)


def test_integral_with_reordering():
    # xb xi^2 = q xi^2 xb, then delete xi^2
    assert integrate(b * x * x, X) == b * Q


def test_double_integral_examples():
    assert double_integral(x * x * b * b) == ONE
    assert double_integral(b * x * b * x) == ONE
    w = one * (-Q) + b * x + b * x * b * x
    assert double_integral(w * b) == ZERO


def test_double_integral_selects_top_word():
    for w in BASIS:
        want = ONE if w == (X, X, B, B) else ZERO
        assert double_integral(GElement.word(w, R1)) == want


def test_iterated_equals_double():
    for w in BASIS:
        e = GElement.word(w, R1)
        assert iterated_integral(e) == double_integral(e)


def test_integration_grade():
    for w in BASIS:
        e = GElement.word(w, R1)
        for var in (X, B):
            out = integrate(e, var)
            for ow in out.terms:
                assert grade(ow) == (grade(w) - 2 * var.grade) % 3


@given(scalars, scalars, st.sampled_from(BASIS), st.sampled_from(BASIS))
def test_linearity(alpha, beta, w1, w2):
    e1, e2 = GElement.word(w1, R1), GElement.word(w2, R1)
    for var in (X, B):
        assert integrate(e1 * alpha + e2 * beta, var) == integrate(e1, var) * alpha + integrate(e2, var) * beta
    assert double_integral(e1 * alpha + e2 * beta) == double_integral(e1) * alpha + double_integral(e2) * beta


def test_constrained_mode_rejected():
    e = GElement.word((X, X), AlgebraSignature(1, CONSTRAINED))
    with pytest.raises(ValueError):
        integrate(e, X)


def test_differential_grades():
    assert DX.grade == 1 and DB.grade == 2


def test_differential_swap_relations():
    # dxi xb = q xb dxi
    assert differential_swap(DX, B) == (Q, (B, DX))
    # xi dxb = q dxb xi
    assert differential_swap(X, DB) == (Q, (DB, X))
    # dxi dxb = q dxb dxi
    assert differential_swap(DX, DB) == (Q, (DB, DX))
    # the reverse order carries the inverse phase
    phase, _ = differential_swap(DB, X)
    assert phase == Q * Q and phase * Q == ONE


def test_differential_swap_same_grade():
    with pytest.raises(UndefinedTransposition):
        differential_swap(DX, X)
    with pytest.raises(UndefinedTransposition):
        differential_swap(DB, DB)
