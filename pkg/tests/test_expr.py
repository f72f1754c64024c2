import random
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from tgrass.berezin import UndefinedTransposition
from tgrass.expr import (
    Bra,
    Call,
    Const,
    Context,
    Diff,
    EvalTypeError,
    Gen,
    Ket,
    Neg,
    Num,
    Op,
    ParseError,
    Pow,
    Prod,
    Sum,
    evaluate,
    parse,
    render_value,
    to_text,
    value_to_json,
)
from tgrass.grassmann import CONSTRAINED, GElement
from tgrass.scalars import ONE, Q, ZERO, I, as_scalar
from tgrass.states import coherent_ket

# -- random ASTs -------------------------------------------------------------------

atoms = st.one_of(
    st.fractions(min_value=0, max_value=20, max_denominator=7).map(Num),
    st.sampled_from([Const("q"), Const("i"), Op("a"), Op("ad"), Op("N")]),
    st.builds(Gen, st.booleans(), st.integers(0, 3)),
    st.builds(Diff, st.booleans(), st.integers(0, 3)),
    st.integers(-4, 4).map(lambda s: Op("qN", s)),
    st.integers(0, 2).map(Ket),
    st.integers(0, 2).map(Bra),
)


def _extend(children):
    return st.one_of(
        st.lists(children, min_size=2, max_size=4).map(lambda xs: Sum(tuple(xs))),
        st.lists(children, min_size=2, max_size=4).map(lambda xs: Prod(tuple(xs))),
        children.map(Neg),
        st.builds(Pow, children, st.integers(-3, 4)),
        st.builds(lambda e, g: Call("integrate", (e, g)), children, st.builds(Gen, st.booleans(), st.integers(0, 1))),
        children.map(lambda e: Call("conj", (e,))),
    )


asts = st.recursive(atoms, _extend, max_leaves=12)


@given(asts)
def test_print_parse_round_trip(node):
    text = to_text(node)
    assert parse(text) == node
    assert to_text(parse(text)) == text


def _random_ast(rng, depth=0):
    if depth > 3 or rng.random() < 0.3:
        return rng.choice(
            [Num(Fraction(rng.randint(0, 9), rng.randint(1, 4))), Const("q"), Const("i"), Op("a"), Op("ad"),
             Gen(rng.random() < 0.5, rng.randint(0, 2)), Op("qN", rng.randint(-2, 2)), Ket(rng.randint(0, 2))]
        )
    kind = rng.randrange(4)
    kids = tuple(_random_ast(rng, depth + 1) for _ in range(rng.randint(2, 3)))
    if kind == 0:
        return Sum(kids)
    if kind == 1:
        return Prod(kids)
    if kind == 2:
        return Neg(kids[0])
    return Pow(kids[0], rng.randint(0, 3))


def test_corpus_of_100_canonical_expressions():
    rng = random.Random(2024)
    corpus = {to_text(_random_ast(rng)) for _ in range(300)}
    corpus = sorted(corpus)[:100]
    assert len(corpus) == 100
    for text in corpus:
        assert to_text(parse(text)) == text


# -- parser ---------------------------------------------------------------------------


def test_parse_examples():
    assert parse("xi(0)*xb(0)") == Prod((Gen(False, 0), Gen(True, 0)))
    assert parse("1 + q^2*xi(0)") == Sum((Num(Fraction(1)), Prod((Pow(Const("q"), 2), Gen(False, 0)))))
    assert parse("3/4") == Num(Fraction(3, 4))
    assert parse("qN(-1)") == Op("qN", -1)
    assert parse("Nop") == Op("N")


def test_syntax_error_column():
    with pytest.raises(ParseError) as exc:
        parse("xi(0)**")
    assert (exc.value.line, exc.value.column) == (1, 7)


def test_syntax_error_second_line():
    with pytest.raises(ParseError) as exc:
        parse("xi(0)\n + )")
    assert (exc.value.line, exc.value.column) == (2, 4)


@pytest.mark.parametrize("text", ["foo", "xi(0) xb(0)", "(1 + q", "", "1/0", "xi(-1)", "integrate(xi(0))", "q^"])
def test_syntax_errors(text):
    with pytest.raises(ParseError):
        parse(text)


def test_unknown_identifier_message():
    with pytest.raises(ParseError, match="unknown identifier 'foo'"):
        parse("1 + foo")


# -- evaluation -------------------------------------------------------------------------


def test_eval_examples():
    assert evaluate("a*ad - q*ad*a - qN(-1)") == ZERO
    assert evaluate("xi(0)^3") == ZERO
    assert evaluate("integrate(xi(0)^2, xi(0))") == ONE


def test_eval_scalars():
    assert evaluate("1/2*q^-1 + i") == as_scalar(Fraction(1, 2)) * Q * Q + I
    assert evaluate("conj(q)") == Q * Q
    assert evaluate("q^3") == ONE


def test_eval_grassmann():
    ctx = Context(n_generators=2)
    assert evaluate("xi(0)*xi(1)*xi(0)", ctx) == evaluate("q^2*xi(0)^2*xi(1)", ctx)
    assert evaluate("dint(xb(0)*xi(0)*xb(0)*xi(0))") == ONE
    assert evaluate("dxb(0)*dxi(0)*xi(0)^2*xb(0)^2") == ONE


def test_eval_constrained_mode():
    ctx = Context(mode=CONSTRAINED, n_generators=2)
    assert evaluate("xi(0)*xi(1)*xb(0)", ctx) == ZERO
    with pytest.raises(ValueError):
        evaluate("integrate(xi(0)^2, xi(0))", ctx)


def test_eval_coherent_state():
    v = evaluate("(1 + ad*xi(0) - ad*xi(0)*ad*xi(0))*ket(0)")
    assert v == coherent_ket("paper")
    u = evaluate("(1 + ad*xi(0) - ad*xi(0)*ad*xi(0))*ket(0)", Context(convention="uniform-eq5"))
    assert u == coherent_ket("uniform-eq5")


def test_eval_eigen_property():
    lhs = evaluate("a*(1 + ad*xi(0) - ad*xi(0)*ad*xi(0))*ket(0)")
    rhs = evaluate("xi(0)*(1 + ad*xi(0) - ad*xi(0)*ad*xi(0))*ket(0)")
    assert lhs == rhs
    # parenthesised, the ket is laid out before xi multiplies it
    split = evaluate("xi(0)*((1 + ad*xi(0) - ad*xi(0)*ad*xi(0))*ket(0))")
    assert split != lhs


def test_eval_bra_ket():
    assert evaluate("bra(1)*ket(1)") == ONE
    assert evaluate("bra(1)*ket(2)") == ZERO
    assert evaluate("bra(1)*xb(0)*ket(1)") == evaluate("xb(0)")


def test_eval_type_errors():
    for text in ("ket(0)*ket(1)", "xi(0)*bra(0)", "ket(0) + xi(0)", "xi(0)^-1", "xi(1)", "ket(3)", "conj(xi(0))"):
        with pytest.raises(EvalTypeError):
            evaluate(text)


def test_eval_undefined_transposition():
    with pytest.raises(UndefinedTransposition):
        evaluate("xi(0)*a*ket(1)")
    with pytest.raises(UndefinedTransposition):
        evaluate("ket(1)*xi(0)^2", Context(convention="uniform-eq5"))


def test_rendered_values_reparse():
    for text in ("(1 + q*xi(0))^2", "xb(0)*xi(0)", "a*ad", "q + i"):
        v = evaluate(text)
        assert evaluate(render_value(v)) == v


def test_json_value():
    data = value_to_json(evaluate("1 + xi(0)"))
    assert data["kind"] == "grassmann" and data["text"] == "1 + xi(0)"
    assert value_to_json(evaluate("q"))["kind"] == "scalar"
    assert value_to_json(evaluate("xi(0)*a"))["kind"] == "mixed"
