"""Coherent states of the k=3 parafermion with Z3-Grassmann eigenvalues.

Mixed words over Grassmann generators and oscillator symbols are evaluated
on a Fock ket by pushing every Grassmann symbol to the right:

* ``xi ad -> q ad xi`` and ``xb a -> q^2 a xb``;
* grade-0 operator monomials (``ad^p ... a^p``, ``N``, ``qN(s)``) are
  transparent to Grassmann symbols;
* ``xi`` never moves past ``a`` and ``xb`` never moves past ``ad``.  A word
  that would need such a move raises :class:`UndefinedTransposition`.

Once the Grassmann factors reach the vacuum (grade 0, so transparent) the
operators act on it, giving ``sum_n |n> G_n`` with coefficients to the right
of the kets.  That operator-level form needs no phase convention.  Moving the
coefficients to the left of the kets does, and that choice is what
:class:`ConventionConfig` records.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field, replace
from typing import Mapping

import numpy as np

from .berezin import UndefinedTransposition, double_integral
from .grassmann import (
    RELATIONAL,
    AlgebraSignature,
    GElement,
    GeneratorSym,
    grade,
    render_gword,
)
from .oscillator import A, AD, OpElement, OpSym, op_normalize, rep_word, zeros3
from .scalars import ONE, ZERO, CycScalar, Q, as_scalar, q_pow, sqrt_bracket2

__all__ = [
    "ConventionConfig",
    "CONVENTIONS",
    "DEFAULT_CONVENTION_ENV",
    "default_convention",
    "get_convention",
    "MixedElement",
    "OpLevelState",
    "StateVec",
    "BraVec",
    "WeightFunction",
    "PAPER_WEIGHT",
    "WeightSolveError",
    "coherent_operator",
    "apply_to_ket",
    "to_state_vec",
    "coherent_ket",
    "coherent_bra",
    "annihilate",
    "eigen_residual",
    "overlap",
    "identity_resolution",
    "solve_weight",
    "solve_linear",
    "FORMS",
]

NOTATIONAL = "notational"
TRANSPORTED = "transported"
FORMS = ("eq20", "eq22")
DEFAULT_CONVENTION_ENV = "TG_DEFAULT_CONVENTION"

R1 = AlgebraSignature(1, RELATIONAL)
R2 = AlgebraSignature(2, RELATIONAL)


# -- conventions -------------------------------------------------------------


@dataclass(frozen=True)
class ConventionConfig:
    """Phase choices left open by the construction.

    ``ket_swap`` maps ``(ket grade, Grassmann grade)`` to the exponent ``e``
    in ``|n> X = q^e X |n>``.  Pairs missing from the table have no defined
    reordering.  Either grade being 0 always gives phase 1.
    """

    name: str
    ket_swap: tuple = ()
    ket_grades: tuple = (0, 2, 1)
    measure_phase_mode: str = NOTATIONAL

    def __post_init__(self):
        if self.measure_phase_mode not in (NOTATIONAL, TRANSPORTED):
            raise ValueError(f"unknown measure mode {self.measure_phase_mode!r}")

    @property
    def swap_table(self) -> Mapping[tuple[int, int], int]:
        return dict(self.ket_swap)

    def ket_grade(self, n: int) -> int:
        return self.ket_grades[n]

    def ket_swap_phase(self, ket_grade: int, x_grade: int) -> CycScalar:
        ket_grade %= 3
        x_grade %= 3
        if ket_grade == 0 or x_grade == 0:
            return ONE
        try:
            return q_pow(self.swap_table[(ket_grade, x_grade)])
        except KeyError:
            raise UndefinedTransposition(
                f"convention {self.name!r} has no rule for moving a grade-{x_grade} "
                f"Grassmann factor across a grade-{ket_grade} ket"
            ) from None

    def measure_factor(self) -> CycScalar:
        # transported: dxb dxi = q^2 dxi dxb before the coefficient is read off
        return q_pow(2) if self.measure_phase_mode == TRANSPORTED else ONE

    def with_measure(self, mode: str) -> "ConventionConfig":
        suffix = "" if mode == NOTATIONAL else "-transported"
        base = self.name.removesuffix("-transported")
        return replace(self, name=base + suffix, measure_phase_mode=mode)

    def to_json(self):
        return {
            "name": self.name,
            "ket_swap": {f"{k[0]},{k[1]}": e for k, e in sorted(self.ket_swap)},
            "ket_grades": list(self.ket_grades),
            "measure_phase_mode": self.measure_phase_mode,
        }


# every non-zero grade pair costs q^2; reproduces the printed ket and weight
_PAPER = ConventionConfig(
    "paper", ket_swap=(((1, 1), 2), ((1, 2), 2), ((2, 1), 2), ((2, 2), 2))
)
# a ket of grade g is treated as a generator of grade g: only opposite grades
_UNIFORM = ConventionConfig("uniform-eq5", ket_swap=(((1, 2), 1), ((2, 1), 2)))

CONVENTIONS = {
    c.name: c
    for c in (
        _PAPER,
        _UNIFORM,
        _PAPER.with_measure(TRANSPORTED),
        _UNIFORM.with_measure(TRANSPORTED),
    )
}


def get_convention(conv) -> ConventionConfig:
    if isinstance(conv, ConventionConfig):
        return conv
    try:
        return CONVENTIONS[conv]
    except KeyError:
        raise ValueError(
            f"unknown convention {conv!r}; choose from {sorted(CONVENTIONS)}"
        ) from None


def default_convention() -> ConventionConfig:
    return get_convention(os.environ.get(DEFAULT_CONVENTION_ENV, "paper"))


# -- mixed words ------------------------------------------------------------


def _is_grassmann(sym) -> bool:
    return isinstance(sym, GeneratorSym)


class MixedElement:
    """Linear combination of words over Grassmann and oscillator symbols.

    Products concatenate words; nothing is reordered until the element is
    applied to a ket.
    """

    __slots__ = ("terms", "sig")

    def __init__(self, terms=None, sig: AlgebraSignature = R1):
        self.sig = sig
        self.terms: dict[tuple, CycScalar] = {}
        for w, c in dict(terms or {}).items():
            self._add(tuple(w), as_scalar(c))

    def _add(self, w, c):
        if not c:
            return
        v = self.terms.get(w, ZERO) + c
        if v:
            self.terms[w] = v
        else:
            self.terms.pop(w, None)

    @classmethod
    def lift(cls, x, sig: AlgebraSignature = R1):
        if isinstance(x, MixedElement):
            return x
        if isinstance(x, GElement):
            return cls(x.terms, x.sig)
        if isinstance(x, OpElement):
            return cls(x.terms, sig)
        if isinstance(x, (GeneratorSym, OpSym)):
            return cls({(x,): ONE}, sig)
        return cls({(): as_scalar(x)}, sig)

    @classmethod
    def word(cls, *syms, sig: AlgebraSignature = R1, coeff=ONE):
        return cls({tuple(syms): coeff}, sig)

    def __add__(self, other):
        other = MixedElement.lift(other, self.sig)
        out = MixedElement(self.terms, self.sig)
        for w, c in other.terms.items():
            out._add(w, c)
        return out

    __radd__ = __add__

    def __neg__(self):
        return MixedElement({w: -c for w, c in self.terms.items()}, self.sig)

    def __sub__(self, other):
        return self + (-MixedElement.lift(other, self.sig))

    def __rsub__(self, other):
        return MixedElement.lift(other, self.sig) - self

    def __mul__(self, other):
        other = MixedElement.lift(other, self.sig)
        out = MixedElement(sig=self.sig)
        for w1, c1 in self.terms.items():
            for w2, c2 in other.terms.items():
                out._add(w1 + w2, c1 * c2)
        return out

    def __rmul__(self, other):
        return MixedElement.lift(other, self.sig) * self

    def __str__(self):
        from .grassmann import render_element

        return render_element(self.terms, lambda w: "*".join(str(s) for s in w))


def _pass_phase(x: GeneratorSym, mono) -> CycScalar:
    """Phase for moving ``x`` rightward across a normal-ordered monomial."""
    p = sum(1 for s in mono if s.tag == "ad")
    r = sum(1 for s in mono if s.tag == "a")
    if not x.barred and p >= r:
        # leading ad^(p-r) via xi ad = q ad xi, then a grade-0 block
        return q_pow(p - r)
    if x.barred and r >= p:
        # grade-0 block, then trailing a^(r-p) via xb a = q^2 a xb
        return q_pow(2 * (r - p))
    raise UndefinedTransposition(
        f"cannot move {x} across {'*'.join(map(str, mono))}: "
        "no relation links xi with a or xb with ad"
    )


def _push_grassmann_right(word, coeff):
    """Rewrite one word to ``[(coeff, ops, grassmann), ...]``."""
    done = []
    todo = [(coeff, tuple(word))]
    while todo:
        c, w = todo.pop()
        ops_idx = [k for k, s in enumerate(w) if not _is_grassmann(s)]
        if not ops_idx:
            done.append((c, (), w))
            continue
        last_op = ops_idx[-1]
        g_before = [k for k in range(last_op) if _is_grassmann(w[k])]
        if not g_before:
            done.append((c, w[: last_op + 1], w[last_op + 1 :]))
            continue
        i = g_before[-1]
        k = i + 1
        while k < len(w) and not _is_grassmann(w[k]):
            k += 1
        x, run = w[i], w[i + 1 : k]
        for mono, mc in op_normalize(run).terms.items():
            todo.append((c * mc * _pass_phase(x, mono), w[:i] + mono + (x,) + w[k:]))
    return done


@dataclass
class OpLevelState:
    """``sum_n |n> G_n``: Grassmann coefficients to the right of the kets."""

    components: dict = field(default_factory=dict)
    sig: AlgebraSignature = R1

    def component(self, n) -> GElement:
        return self.components.get(n, GElement(sig=self.sig))

    def is_zero(self) -> bool:
        return not any(self.components.values())

    def __sub__(self, other):
        keys = set(self.components) | set(other.components)
        return OpLevelState(
            {n: self.component(n) - other.component(n) for n in keys}, self.sig
        )

    def __eq__(self, other):
        return isinstance(other, OpLevelState) and (self - other).is_zero()

    def __str__(self):
        parts = [f"ket({n})*({g})" for n, g in sorted(self.components.items()) if g]
        return " + ".join(parts) or "0"


def apply_to_ket(op, n0: int = 0, conv: ConventionConfig | None = None) -> OpLevelState:
    """Evaluate ``op |n0>`` in operator-level form.

    For ``n0 != 0`` the Grassmann factors have to cross ``|n0>``, which uses
    ``conv``.
    """
    op = MixedElement.lift(op)
    sig = op.sig
    out: dict[int, GElement] = {}
    for word, c in op.terms.items():
        for c2, ops, grass in _push_grassmann_right(word, c):
            gel = GElement.word(grass, sig, c2)
            if not gel:
                continue
            if n0 != 0 and grass:
                if conv is None:
                    raise UndefinedTransposition(
                        f"moving Grassmann factors across |{n0}> needs a convention"
                    )
                # X|n> = q^-e |n> X when |n> X = q^e X |n>
                gel = gel * conv.ket_swap_phase(conv.ket_grade(n0), grade(grass)).inverse()
            column = rep_word(ops)[:, n0]
            for n in range(3):
                if column[n]:
                    out[n] = out.get(n, GElement(sig=sig)) + gel * column[n]
    return OpLevelState({n: g for n, g in out.items() if g}, sig)


# -- state vectors ----------------------------------------------------------


class _Vec:
    """Shared plumbing for kets and bras with Grassmann coefficients."""

    kind = "ket"

    def __init__(self, components=None, sig: AlgebraSignature = R1):
        self.sig = sig
        self.components = {n: g for n, g in dict(components or {}).items() if g}

    def component(self, n) -> GElement:
        return self.components.get(n, GElement(sig=self.sig))

    def __sub__(self, other):
        keys = set(self.components) | set(other.components)
        return type(self)({n: self.component(n) - other.component(n) for n in keys}, self.sig)

    def __add__(self, other):
        keys = set(self.components) | set(other.components)
        return type(self)({n: self.component(n) + other.component(n) for n in keys}, self.sig)

    def __eq__(self, other):
        return type(self) is type(other) and self.components == other.components

    def to_json(self):
        return {str(n): g.to_json() for n, g in sorted(self.components.items())}


class StateVec(_Vec):
    """``sum_n G_n |n>`` with Grassmann coefficients left of the kets."""

    def __str__(self):
        parts = []
        for n, g in sorted(self.components.items()):
            parts.append(f"({g})*ket({n})")
        return " + ".join(parts) or "0"


class BraVec(_Vec):
    """``sum_n <n| G_n`` with Grassmann coefficients right of the bras."""

    kind = "bra"

    def __str__(self):
        parts = []
        for n, g in sorted(self.components.items()):
            parts.append(f"bra({n})*({g})")
        return " + ".join(parts) or "0"


def _split_by_grade(g: GElement):
    by = {}
    for w, c in g.terms.items():
        by.setdefault(grade(w), {})[w] = c
    return {k: GElement(v, g.sig) for k, v in by.items()}


def to_state_vec(state: OpLevelState, conv: ConventionConfig) -> StateVec:
    """Move every coefficient from the right of its ket to the left."""
    comps = {}
    for n, g in state.components.items():
        total = GElement(sig=state.sig)
        for gx, part in _split_by_grade(g).items():
            total = total + part * conv.ket_swap_phase(conv.ket_grade(n), gx)
        comps[n] = total
    return StateVec(comps, state.sig)


def coherent_operator(index: int = 0, sig: AlgebraSignature = R1) -> MixedElement:
    """``f(ad xi) = 1 + ad xi - ad xi ad xi``."""
    x = GeneratorSym(False, index)
    one = MixedElement.word(sig=sig)
    t = MixedElement.word(AD, x, sig=sig)
    return one + t - t * t


def coherent_ket(conv=None, index: int = 0, sig: AlgebraSignature = R1) -> StateVec:
    """``|xi> = f(ad xi)|0>`` derived by rewriting, then laid out per ``conv``."""
    conv = get_convention(conv) if conv is not None else default_convention()
    return to_state_vec(apply_to_ket(coherent_operator(index, sig)), conv)


def coherent_bra(conv=None, index: int = 0, sig: AlgebraSignature = R1) -> BraVec:
    """``<xb| = <0| + q <1| xb - sqrt[2] <2| xb^2``, taken as the definition.

    ``conv`` is accepted for symmetry with :func:`coherent_ket`; the bra is
    not obtained by conjugation so it does not depend on it.
    """
    b = GElement.word((GeneratorSym(True, index),), sig)
    return BraVec(
        {0: GElement.scalar(ONE, sig), 1: b * Q, 2: (b * b) * (-sqrt_bracket2())},
        sig,
    )


def annihilate(conv=None, index: int = 0, sig: AlgebraSignature = R1, op=None) -> StateVec:
    """``a |xi>`` computed as ``a f(ad xi)|0>`` at operator level."""
    conv = get_convention(conv) if conv is not None else default_convention()
    op = coherent_operator(index, sig) if op is None else MixedElement.lift(op, sig)
    return to_state_vec(apply_to_ket(MixedElement.word(A, sig=sig) * op), conv)


def eigen_residual(index: int = 0, sig: AlgebraSignature = R1) -> OpLevelState:
    """``a f|0> - xi f|0>`` in operator-level form; zero when the eigen property holds."""
    f = coherent_operator(index, sig)
    x = MixedElement.word(GeneratorSym(False, index), sig=sig)
    lhs = MixedElement.word(A, sig=sig) * f
    return apply_to_ket(lhs - x * f)


def overlap(bra: BraVec, ket: StateVec) -> GElement:
    """``sum_n B_n K_n`` using ``<n|m> = delta_nm``."""
    if bra.sig != ket.sig:
        raise ValueError("bra and ket live in different algebras")
    out = GElement(sig=ket.sig)
    for n in range(3):
        out = out + bra.component(n) * ket.component(n)
    return out


# -- resolution of the identity ----------------------------------------------


@dataclass(frozen=True)
class WeightFunction:
    """``c0 + c1 xb xi + c2 (xb xi)^2``."""

    c0: CycScalar = ZERO
    c1: CycScalar = ZERO
    c2: CycScalar = ZERO

    def __post_init__(self):
        for name in ("c0", "c1", "c2"):
            object.__setattr__(self, name, as_scalar(getattr(self, name)))

    @property
    def coeffs(self):
        return (self.c0, self.c1, self.c2)

    def element(self, index: int = 0, sig: AlgebraSignature = R1) -> GElement:
        bx = GElement.word((GeneratorSym(True, index), GeneratorSym(False, index)), sig)
        return GElement.scalar(self.c0, sig) + bx * self.c1 + (bx * bx) * self.c2

    def __str__(self):
        return f"({self.c0}, {self.c1}, {self.c2})"

    def to_json(self):
        return [c.to_json() for c in self.coeffs]


PAPER_WEIGHT = WeightFunction(-Q, ONE, ONE)


class WeightSolveError(ValueError):
    """No weight function makes the resolution equal to the identity."""


def _grade_of(g: GElement) -> int:
    grades = g.grades()
    if len(grades) != 1:
        raise ValueError("expected a homogeneous Grassmann coefficient")
    return grades.pop()


def identity_resolution(conv=None, w: WeightFunction = PAPER_WEIGHT, form: str = "eq20"):
    """Matrix ``<n| I_w |m>`` of the weighted coherent-state resolution.

    ``eq20``: ``int dxb dxi w |xi><xb|`` applied to ``|m>``; the bra
    coefficient must cross ``|n>``, which uses the convention.
    ``eq22``: ``int |xi> dxb dxi w <xb|`` sandwiched; the integrand is
    ``K_n w B_m`` and no ket is crossed.
    """
    conv = get_convention(conv) if conv is not None else default_convention()
    if form not in FORMS:
        raise ValueError(f"form must be one of {FORMS}")
    ket, bra = coherent_ket(conv), coherent_bra(conv)
    wel = w.element()
    out = zeros3()
    for n in range(3):
        for m in range(3):
            kn, bm = ket.component(n), bra.component(m)
            integrand = wel * kn * bm if form == "eq20" else kn * wel * bm
            val = double_integral(integrand) * conv.measure_factor()
            if val and form == "eq20":
                val = val * conv.ket_swap_phase(conv.ket_grade(n), _grade_of(bm))
            out[n, m] = val
    return out


def solve_linear(mat, rhs):
    """Exact Gaussian elimination over :class:`CycScalar`."""
    n = len(rhs)
    aug = [[as_scalar(mat[r][c]) for c in range(n)] + [as_scalar(rhs[r])] for r in range(n)]
    for col in range(n):
        piv = next((r for r in range(col, n) if aug[r][col]), None)
        if piv is None:
            raise WeightSolveError("singular linear system")
        aug[col], aug[piv] = aug[piv], aug[col]
        inv = aug[col][col].inverse()
        aug[col] = [x * inv for x in aug[col]]
        for r in range(n):
            if r != col and aug[r][col]:
                f = aug[r][col]
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[col])]
    return [aug[r][n] for r in range(n)]


def solve_weight(conv=None, form: str = "eq20") -> WeightFunction:
    """Weight making :func:`identity_resolution` the exact identity."""
    conv = get_convention(conv) if conv is not None else default_convention()
    basis = [WeightFunction(*[ONE if k == j else ZERO for k in range(3)]) for j in range(3)]
    cols = [identity_resolution(conv, b, form) for b in basis]
    for mat in cols:
        for n in range(3):
            for m in range(3):
                if n != m and mat[n, m]:
                    raise WeightSolveError("off-diagonal entries cannot be cancelled")
    system = [[cols[j][n, n] for j in range(3)] for n in range(3)]
    try:
        coeffs = solve_linear(system, [ONE, ONE, ONE])
    except WeightSolveError as exc:
        raise WeightSolveError(f"no weight for convention {conv.name!r}, form {form}: {exc}") from None
    return WeightFunction(*coeffs)
