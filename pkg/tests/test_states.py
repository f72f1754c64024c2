import pytest
from hypothesis import given

from tgrass.berezin import UndefinedTransposition
from tgrass.grassmann import RELATIONAL, AlgebraSignature, GElement, GeneratorSym
from tgrass.oscillator import A, AD, NUM, identity3, matrices_equal, qN, zeros3
from tgrass.scalars import I, ONE, Q, ZERO
from tgrass.states import (
    CONVENTIONS,
    PAPER_WEIGHT,
    BraVec,
    ConventionConfig,
    MixedElement,
    StateVec,
    WeightFunction,
    WeightSolveError,
    annihilate,
    apply_to_ket,
    coherent_bra,
    coherent_ket,
    coherent_operator,
    default_convention,
    eigen_residual,
    get_convention,
    identity_resolution,
    overlap,
    solve_linear,
    solve_weight,
    to_state_vec,
)

from conftest import scalars

R1 = AlgebraSignature(1, RELATIONAL)
R2 = AlgebraSignature(2, RELATIONAL)
X, B = GeneratorSym(False, 0), GeneratorSym(True, 0)
x = GElement.word((X,), R1)
b = GElement.word((B,), R1)
one = GElement.scalar(ONE, R1)
NAMES = sorted(CONVENTIONS)
SHIPPED = ("paper", "uniform-eq5")


# -- conventions --------------------------------------------------------------------


def test_convention_invariants():
    for conv in CONVENTIONS.values():
        assert [conv.ket_grade(n) for n in range(3)] == [0, 2, 1]
        for g in range(3):
            assert conv.ket_swap_phase(0, g) == ONE
            assert conv.ket_swap_phase(g, 0) == ONE
        for (gk, gx), e in conv.swap_table.items():
            assert conv.ket_swap_phase(gk, gx) ** 3 == ONE


def test_uniform_same_grade_is_undefined():
    conv = get_convention("uniform-eq5")
    with pytest.raises(UndefinedTransposition):
        conv.ket_swap_phase(1, 1)


def test_default_convention_env(monkeypatch):
    assert default_convention().name == "paper"
    monkeypatch.setenv("TG_DEFAULT_CONVENTION", "uniform-eq5")
    assert default_convention().name == "uniform-eq5"
    monkeypatch.setenv("TG_DEFAULT_CONVENTION", "nope")
    with pytest.raises(ValueError):
        default_convention()


def test_measure_factor():
    assert get_convention("paper").measure_factor() == ONE
    assert get_convention("paper-transported").measure_factor() == Q * Q


# -- mixed rewriting --------------------------------------------------------------------


def test_operator_level_coherent_state():
    # ad xi ad xi |0> = q ad ad xi xi |0> = q sqrt[2] |2> xi^2 with sqrt[2] = i
    st = apply_to_ket(coherent_operator())
    assert st.component(0) == one
    assert st.component(1) == x
    assert st.component(2) == x * x * (-Q * I)


def test_coherent_ket_components():
    # |n> X = q^e X |n>: paper uses e = 2 throughout, uniform-eq5 uses e = 1 for (grade-1 ket, grade-2 X)
    k = coherent_ket("paper")
    assert [k.component(n) for n in range(3)] == [one, x * (Q * Q), x * x * (-I)]
    u = coherent_ket("uniform-eq5")
    assert [u.component(n) for n in range(3)] == [one, x * (Q * Q), x * x * (-I * Q * Q)]


def test_coherent_bra_components():
    for name in NAMES:
        br = coherent_bra(name)
        assert [br.component(n) for n in range(3)] == [one, b * Q, b * b * (-I)]


def test_forbidden_transpositions():
    with pytest.raises(UndefinedTransposition):
        apply_to_ket(MixedElement.word(X, A))
    with pytest.raises(UndefinedTransposition):
        apply_to_ket(MixedElement.word(B, AD))


def test_allowed_transpositions():
    # xb a |1> = q^2 a xb |1> and |1> xb = q^2 xb |1> under the paper convention
    st = apply_to_ket(MixedElement.word(B, A), n0=1, conv=get_convention("paper"))
    assert st.component(0) == b and not st.component(1)
    # grade-0 monomials are transparent
    for op in (NUM, qN(1), qN(-2)):
        got = apply_to_ket(MixedElement.word(X, op, AD))
        want = apply_to_ket(MixedElement.word(op, X, AD))
        assert got == want


def test_crossing_a_ket_needs_a_convention():
    with pytest.raises(UndefinedTransposition):
        apply_to_ket(MixedElement.word(X), n0=1)


def test_annihilation_operator_level():
    # a f|0> = xi|0> + xi ad xi|0> = xi|0> + q|1> xi^2
    st = apply_to_ket(MixedElement.word(A) * coherent_operator())
    assert st.component(0) == x
    assert st.component(1) == x * x * Q
    assert not st.component(2)


@pytest.mark.parametrize("name", NAMES)
def test_eigen_residual_every_convention(name):
    assert eigen_residual().is_zero()
    if name.startswith("uniform"):
        # laying out a|xi> needs |1> xi^2, a same-grade move this convention lacks
        with pytest.raises(UndefinedTransposition):
            annihilate(name)
    else:
        assert annihilate(name).component(0) == x


def test_grade_zero_block_passes_xi():
    # xi a ad = xi (q ad a + q^-N): both monomials have grade 0
    assert apply_to_ket(MixedElement.word(X, A, AD)) == apply_to_ket(MixedElement.word(A, AD, X))


def test_eigen_residual_two_generators():
    assert eigen_residual(1, R2).is_zero()


# -- overlaps ------------------------------------------------------------------------------


@pytest.mark.parametrize("name", NAMES)
def test_overlap_vacuum_term(name):
    g = overlap(coherent_bra(name), coherent_ket(name))
    assert g.scalar_part() == ONE
    g2 = overlap(coherent_bra(name, 0, R2), coherent_ket(name, 1, R2))
    assert g2.scalar_part() == ONE


def test_overlap_two_variables():
    x1 = GElement.word((GeneratorSym(False, 1),), R2)
    b0 = GElement.word((GeneratorSym(True, 0),), R2)
    p = overlap(coherent_bra("paper", 0, R2), coherent_ket("paper", 1, R2))
    # q xb0 * q^2 xi1 = q^3 * q^2 xi1 xb0;  (-i xb0^2)(-i xi1^2) = -q^4 xi1^2 xb0^2
    assert p == GElement.scalar(ONE, R2) + x1 * b0 * (Q * Q) - x1 * x1 * b0 * b0 * (Q * Q)
    u = overlap(coherent_bra("uniform-eq5", 0, R2), coherent_ket("uniform-eq5", 1, R2))
    assert u.degree_part(2, 2) == x1 * x1 * b0 * b0 * (-Q)


def test_overlap_mismatched_algebras():
    with pytest.raises(ValueError):
        overlap(coherent_bra("paper", 0, R1), coherent_ket("paper", 1, R2))


# -- resolution of the identity ----------------------------------------------------------


def _defined(name, form):
    try:
        return identity_resolution(name, PAPER_WEIGHT, form)
    except UndefinedTransposition:
        return None


@pytest.mark.parametrize("name", NAMES)
@pytest.mark.parametrize("form", ["eq20", "eq22"])
def test_off_diagonal_zero_and_zero_weight(name, form):
    m = _defined(name, form)
    if m is None:
        assert name.startswith("uniform") and form == "eq20"
        return
    assert all(not m[j, k] for j in range(3) for k in range(3) if j != k)
    assert matrices_equal(identity_resolution(name, WeightFunction(), form), zeros3())


@given(scalars, scalars, scalars, scalars)
def test_linear_in_weight(c0, c1, c2, t):
    w1 = WeightFunction(c0, c1, c2)
    w2 = WeightFunction(t, c0, ONE)
    wsum = WeightFunction(c0 + t, c1 + c0, c2 + ONE)
    for form in ("eq20", "eq22"):
        lhs = identity_resolution("paper", wsum, form)
        rhs = identity_resolution("paper", w1, form) + identity_resolution("paper", w2, form)
        assert matrices_equal(lhs, rhs)


def test_paper_resolution():
    assert matrices_equal(identity_resolution("paper", PAPER_WEIGHT, "eq20"), identity3())
    assert solve_weight("paper", "eq20") == PAPER_WEIGHT


def test_solved_weights():
    assert solve_weight("paper", "eq22") == WeightFunction(-ONE, Q, ONE)
    assert solve_weight("uniform-eq5", "eq22") == WeightFunction(-Q, Q, ONE)
    assert solve_weight("paper-transported", "eq20") == WeightFunction(-Q * Q, Q, Q)
    with pytest.raises(UndefinedTransposition):
        solve_weight("uniform-eq5", "eq20")


@pytest.mark.parametrize("name", NAMES)
@pytest.mark.parametrize("form", ["eq20", "eq22"])
def test_solve_then_resolve(name, form):
    try:
        w = solve_weight(name, form)
    except UndefinedTransposition:
        assert name.startswith("uniform") and form == "eq20"
        return
    assert matrices_equal(identity_resolution(name, w, form), identity3())


def test_vacuum_consistency():
    # constant terms of f, g and the weight's (0,0) entry compose to 1
    w = solve_weight("paper", "eq20")
    ket, bra = coherent_ket("paper"), coherent_bra("paper")
    assert ket.component(0).scalar_part() * bra.component(0).scalar_part() == ONE
    assert identity_resolution("paper", w, "eq20")[0, 0] == ONE


def test_singular_system():
    with pytest.raises(WeightSolveError):
        solve_linear([[ZERO] * 3] * 3, [ONE] * 3)


def test_bad_form():
    with pytest.raises(ValueError):
        identity_resolution("paper", PAPER_WEIGHT, "eq99")


def test_state_vec_json():
    data = coherent_ket("paper").to_json()
    assert set(data) == {"0", "1", "2"}
