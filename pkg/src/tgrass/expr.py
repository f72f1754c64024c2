"""Expression language: parser, canonical printer and evaluator.

Grammar::

    sum    := term (("+" | "-") term)*
    term   := unary ("*" unary)*
    unary  := "-" unary | power
    power  := atom ("^" ["-"] INT)?
    atom   := INT ["/" INT] | "q" | "i" | "a" | "ad" | "Nop"
            | NAME "(" args ")" | "(" sum ")"

Indexed atoms are ``xi(a)``, ``xb(a)``, ``dxi(a)``, ``dxb(a)``, ``qN(s)``,
``ket(n)`` and ``bra(n)``.  Function calls are ``integrate(e, var)``,
``dint(e)`` (double integral over the pair of index 0), and ``conj(e)``.
Products need an explicit ``*``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction

from .berezin import DifferentialSym, double_integral, integrate
from .grassmann import RELATIONAL, AlgebraSignature, GElement, GeneratorSym, grade
from .oscillator import OpElement, OpSym
from .scalars import ONE, ZERO, CycScalar, I, Q, as_scalar, conj, render
from .states import (
    BraVec,
    MixedElement,
    StateVec,
    apply_to_ket,
    default_convention,
    get_convention,
    overlap,
    to_state_vec,
)

__all__ = [
    "ParseError",
    "EvalTypeError",
    "Num",
    "Const",
    "Gen",
    "Diff",
    "Op",
    "Ket",
    "Bra",
    "Sum",
    "Prod",
    "Neg",
    "Pow",
    "Call",
    "parse",
    "to_text",
    "Context",
    "evaluate",
    "render_value",
    "value_to_json",
]


class ParseError(ValueError):
    def __init__(self, message, line, column):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column


class EvalTypeError(TypeError):
    pass


# -- AST -----------------------------------------------------------------------


@dataclass(frozen=True)
class Num:
    value: Fraction


@dataclass(frozen=True)
class Const:
    name: str  # "q" or "i"


@dataclass(frozen=True)
class Gen:
    barred: bool
    index: int


@dataclass(frozen=True)
class Diff:
    barred: bool
    index: int


@dataclass(frozen=True)
class Op:
    tag: str  # "a", "ad", "N", "qN"
    s: int = 0


@dataclass(frozen=True)
class Ket:
    n: int


@dataclass(frozen=True)
class Bra:
    n: int


@dataclass(frozen=True)
class Sum:
    terms: tuple


@dataclass(frozen=True)
class Prod:
    factors: tuple


@dataclass(frozen=True)
class Neg:
    arg: object


@dataclass(frozen=True)
class Pow:
    base: object
    exp: int


@dataclass(frozen=True)
class Call:
    name: str
    args: tuple


_INDEXED = {
    "xi": lambda k: Gen(False, k),
    "xb": lambda k: Gen(True, k),
    "dxi": lambda k: Diff(False, k),
    "dxb": lambda k: Diff(True, k),
    "qN": lambda k: Op("qN", k),
    "ket": lambda k: Ket(k),
    "bra": lambda k: Bra(k),
}
_SIGNED_INDEX = {"qN"}
_BARE = {"q": Const("q"), "i": Const("i"), "a": Op("a"), "ad": Op("ad"), "Nop": Op("N")}
_CALLS = {"integrate": 2, "dint": 1, "conj": 1}


# -- tokenizer and parser ------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_]\w*)|(\S))")


@dataclass(frozen=True)
class _Tok:
    kind: str  # "int", "name", "sym", "end"
    text: str
    line: int
    col: int


def _tokenize(text: str):
    toks = []
    line_starts = [0] + [m.end() for m in re.finditer(r"\n", text)]

    def where(pos):
        ln = max(k for k, s in enumerate(line_starts) if s <= pos)
        return ln + 1, pos - line_starts[ln] + 1

    pos = 0
    while True:
        m = _TOKEN.match(text, pos)
        if not m:
            break
        start = m.start(m.lastindex)
        kind = {1: "int", 2: "name", 3: "sym"}[m.lastindex]
        toks.append(_Tok(kind, m.group(m.lastindex), *where(start)))
        pos = m.end()
    toks.append(_Tok("end", "", *where(len(text.rstrip()))))
    return toks


class _Parser:
    def __init__(self, text):
        self.toks = _tokenize(text)
        self.k = 0

    @property
    def cur(self) -> _Tok:
        return self.toks[self.k]

    def fail(self, msg, tok=None):
        tok = tok or self.cur
        raise ParseError(msg, tok.line, tok.col)

    def take(self, text=None, kind=None):
        tok = self.cur
        if (text is not None and tok.text != text) or (kind is not None and tok.kind != kind):
            want = repr(text) if text is not None else kind
            got = "end of input" if tok.kind == "end" else repr(tok.text)
            self.fail(f"expected {want}, found {got}")
        self.k += 1
        return tok

    def at(self, text):
        return self.cur.kind == "sym" and self.cur.text == text

    def parse(self):
        if self.cur.kind == "end":
            self.fail("empty expression")
        node = self.sum()
        if self.cur.kind != "end":
            self.fail(f"unexpected {self.cur.text!r}")
        return node

    def sum(self):
        terms = [self.term()]
        while self.at("+") or self.at("-"):
            neg = self.take().text == "-"
            t = self.term()
            terms.append(Neg(t) if neg else t)
        return terms[0] if len(terms) == 1 else Sum(tuple(terms))

    def term(self):
        factors = [self.unary()]
        while self.at("*"):
            self.take()
            factors.append(self.unary())
        return factors[0] if len(factors) == 1 else Prod(tuple(factors))

    def unary(self):
        if self.at("-"):
            self.take()
            return Neg(self.unary())
        return self.power()

    def power(self):
        base = self.atom()
        if self.at("^"):
            self.take()
            sign = 1
            if self.at("-"):
                self.take()
                sign = -1
            return Pow(base, sign * int(self.take(kind="int").text))
        return base

    def int_arg(self, signed):
        sign = 1
        if signed and self.at("-"):
            self.take()
            sign = -1
        return sign * int(self.take(kind="int").text)

    def atom(self):
        tok = self.cur
        if tok.kind == "int":
            self.take()
            if self.at("/"):
                self.take()
                den = self.take(kind="int")
                if int(den.text) == 0:
                    self.fail("zero denominator", den)
                return Num(Fraction(int(tok.text), int(den.text)))
            return Num(Fraction(int(tok.text)))
        if tok.kind == "name":
            self.take()
            name = tok.text
            if name in _INDEXED:
                self.take("(")
                k = self.int_arg(name in _SIGNED_INDEX)
                self.take(")")
                return _INDEXED[name](k)
            if name in _CALLS:
                self.take("(")
                args = [self.sum()]
                while self.at(","):
                    self.take()
                    args.append(self.sum())
                self.take(")")
                if len(args) != _CALLS[name]:
                    self.fail(f"{name} takes {_CALLS[name]} argument(s)", tok)
                return Call(name, tuple(args))
            if name in _BARE:
                return _BARE[name]
            self.fail(f"unknown identifier {name!r}", tok)
        if self.at("("):
            self.take()
            node = self.sum()
            self.take(")")
            return node
        if tok.kind == "end":
            self.fail("unexpected end of input")
        self.fail(f"unexpected {tok.text!r}")


def parse(text: str):
    """Parse ``text`` to an AST; raises :class:`ParseError` with line and column."""
    return _Parser(text).parse()


# -- canonical printer ---------------------------------------------------------

_SUM, _PROD, _UNARY, _POW, _ATOM = range(5)


def _prec(node):
    if isinstance(node, Sum):
        return _SUM
    if isinstance(node, Prod):
        return _PROD
    if isinstance(node, Neg):
        return _UNARY
    if isinstance(node, Pow):
        return _POW
    if isinstance(node, Num) and node.value.denominator != 1:
        # "1/2" is a single literal but "(1/2)^2" still needs the parentheses
        return _POW
    return _ATOM


def _wrap(node, min_prec):
    s = to_text(node)
    return f"({s})" if _prec(node) < min_prec else s


def to_text(node) -> str:
    """Canonical text; ``parse(to_text(n)) == n`` for every AST ``n``."""
    if isinstance(node, Num):
        v = node.value
        return str(v.numerator) if v.denominator == 1 else f"{v.numerator}/{v.denominator}"
    if isinstance(node, Const):
        return node.name
    if isinstance(node, Gen):
        return f"{'xb' if node.barred else 'xi'}({node.index})"
    if isinstance(node, Diff):
        return f"{'dxb' if node.barred else 'dxi'}({node.index})"
    if isinstance(node, Op):
        return str(OpSym(node.tag, node.s))
    if isinstance(node, Ket):
        return f"ket({node.n})"
    if isinstance(node, Bra):
        return f"bra({node.n})"
    if isinstance(node, Call):
        return f"{node.name}({', '.join(to_text(a) for a in node.args)})"
    if isinstance(node, Pow):
        return f"{_wrap(node.base, _ATOM)}^{node.exp}"
    if isinstance(node, Neg):
        return "-" + _wrap(node.arg, _UNARY)
    if isinstance(node, Prod):
        return "*".join(_wrap(f, _UNARY) for f in node.factors)
    if isinstance(node, Sum):
        out = _wrap(node.terms[0], _PROD)
        for t in node.terms[1:]:
            if isinstance(t, Neg):
                out += " - " + _wrap(t.arg, _PROD)
            else:
                out += " + " + _wrap(t, _PROD)
        return out
    raise TypeError(f"not an expression node: {node!r}")


# -- evaluation ----------------------------------------------------------------


@dataclass(frozen=True)
class Context:
    mode: str = RELATIONAL
    convention: object = None
    n_generators: int = 1

    @property
    def sig(self) -> AlgebraSignature:
        return AlgebraSignature(self.n_generators, self.mode)

    @property
    def conv(self):
        if self.convention is None:
            return default_convention()
        return get_convention(self.convention)


@dataclass(frozen=True)
class Measure:
    """Product of differentials; multiplying an element on the right integrates it."""

    syms: tuple
    coeff: CycScalar = ONE


_ALGEBRA = {"scalar", "grassmann", "operator", "mixed"}


def _kind(v):
    for t, name in (
        (CycScalar, "scalar"),
        (GElement, "grassmann"),
        (OpElement, "operator"),
        (MixedElement, "mixed"),
        (StateVec, "ket"),
        (BraVec, "bra"),
        (Measure, "measure"),
    ):
        if isinstance(v, t):
            return name
    raise EvalTypeError(f"unexpected value {v!r}")


def _scale_vec(v, c):
    return type(v)({n: g * c for n, g in v.components.items()}, v.sig)


def _add(x, y, ctx):
    kx, ky = _kind(x), _kind(y)
    if kx == "scalar" and ky == "scalar":
        return x + y
    if {kx, ky} <= {"scalar", "grassmann"}:
        return _as_g(x, ctx) + _as_g(y, ctx)
    if {kx, ky} <= {"scalar", "operator"}:
        return _as_op(x) + _as_op(y)
    if {kx, ky} <= {"scalar", "grassmann", "operator", "mixed"}:
        return MixedElement.lift(x, ctx.sig) + MixedElement.lift(y, ctx.sig)
    if kx == ky and kx in ("ket", "bra"):
        return x + y
    raise EvalTypeError(f"cannot add {kx} and {ky}")


def _as_g(x, ctx):
    return x if isinstance(x, GElement) else GElement.scalar(x, ctx.sig)


def _as_op(x):
    return x if isinstance(x, OpElement) else OpElement.scalar(x)


def _apply_op(op, ket: StateVec, ctx):
    """``op * sum_n G_n |n>`` as a ket with coefficients on the left."""
    conv = ctx.conv
    total = StateVec(sig=ket.sig)
    for n, g in ket.components.items():
        word = MixedElement.lift(op, ket.sig) * MixedElement.lift(g, ket.sig)
        total = total + to_state_vec(apply_to_ket(word, n, conv), conv)
    return total


def _ket_times_g(ket: StateVec, g: GElement, ctx):
    """``(sum_n K_n |n>) G``: move ``G`` across each ket."""
    conv = ctx.conv
    comps = {}
    for n, kn in ket.components.items():
        total = GElement(sig=ket.sig)
        for w, c in g.terms.items():
            phase = conv.ket_swap_phase(conv.ket_grade(n), grade(w))
            total = total + kn * GElement({w: c * phase}, ket.sig)
        comps[n] = total
    return StateVec(comps, ket.sig)


def _integrate_measure(m: Measure, g: GElement):
    out = g
    for sym in reversed(m.syms):
        out = integrate(out, GeneratorSym(sym.barred, sym.index))
    return out * m.coeff


def _mul(x, y, ctx):
    kx, ky = _kind(x), _kind(y)
    if kx == "scalar":
        if ky == "scalar":
            return x * y
        if ky in ("ket", "bra"):
            return _scale_vec(y, x)
        if ky == "measure":
            return Measure(y.syms, y.coeff * x)
        return y * x
    if ky == "scalar":
        if kx in ("ket", "bra"):
            return _scale_vec(x, y)
        if kx == "measure":
            return Measure(x.syms, x.coeff * y)
        return x * y
    if kx == "grassmann" and ky == "grassmann":
        return x * y
    if kx == "operator" and ky == "operator":
        return x * y
    if kx in ("grassmann", "operator", "mixed") and ky in ("grassmann", "operator", "mixed"):
        return MixedElement.lift(x, ctx.sig) * MixedElement.lift(y, ctx.sig)
    if ky == "ket":
        if kx == "grassmann":
            return StateVec({n: x * g for n, g in y.components.items()}, y.sig)
        if kx in ("operator", "mixed"):
            return _apply_op(x, y, ctx)
        if kx == "bra":
            return overlap(x, y)
    if kx == "ket" and ky == "grassmann":
        return _ket_times_g(x, y, ctx)
    if kx == "bra" and ky == "grassmann":
        return BraVec({n: g * y for n, g in x.components.items()}, x.sig)
    if kx == "measure" and ky == "measure":
        return Measure(x.syms + y.syms, x.coeff * y.coeff)
    if kx == "measure" and ky == "grassmann":
        return _integrate_measure(x, y)
    raise EvalTypeError(f"cannot multiply {kx} by {ky}")


def _eval(node, ctx):
    sig = ctx.sig
    if isinstance(node, Num):
        return as_scalar(node.value)
    if isinstance(node, Const):
        return Q if node.name == "q" else I
    if isinstance(node, Gen):
        if not 0 <= node.index < sig.n_generators:
            raise EvalTypeError(
                f"{to_text(node)} needs at least {node.index + 1} generators "
                f"(have {sig.n_generators})"
            )
        return GElement.word((GeneratorSym(node.barred, node.index),), sig)
    if isinstance(node, Diff):
        if not 0 <= node.index < sig.n_generators:
            raise EvalTypeError(f"{to_text(node)} refers to a missing generator")
        return Measure((DifferentialSym(node.barred, node.index),))
    if isinstance(node, Op):
        return OpElement.word((OpSym(node.tag, node.s),))
    if isinstance(node, (Ket, Bra)):
        if not 0 <= node.n <= 2:
            raise EvalTypeError(f"Fock index {node.n} out of range 0..2")
        one = {node.n: GElement.scalar(ONE, sig)}
        return StateVec(one, sig) if isinstance(node, Ket) else BraVec(one, sig)
    if isinstance(node, Neg):
        return _mul(-ONE, _eval(node.arg, ctx), ctx)
    if isinstance(node, Sum):
        out = _eval(node.terms[0], ctx)
        for t in node.terms[1:]:
            out = _add(out, _eval(t, ctx), ctx)
        return out
    if isinstance(node, Prod):
        # adjacent algebra factors multiply first, so a ket sees one operator word
        # (operator-level rewriting); then fold from the right so a
        # differential acts on everything after it
        vals = []
        for f in node.factors:
            v = _eval(f, ctx)
            if vals and _kind(v) in _ALGEBRA and _kind(vals[-1]) in _ALGEBRA:
                v = _mul(vals.pop(), v, ctx)
            vals.append(v)
        out = vals[-1]
        for v in reversed(vals[:-1]):
            out = _mul(v, out, ctx)
        return out
    if isinstance(node, Pow):
        base = _eval(node.base, ctx)
        if node.exp < 0:
            if not isinstance(base, CycScalar):
                raise EvalTypeError("negative powers are defined for scalars only")
            return base**node.exp
        out = ONE
        for _ in range(node.exp):
            out = _mul(out, base, ctx)
        return out
    if isinstance(node, Call):
        return _call(node, ctx)
    raise EvalTypeError(f"cannot evaluate {node!r}")


def _call(node, ctx):
    args = node.args
    if node.name == "conj":
        v = _eval(args[0], ctx)
        if not isinstance(v, CycScalar):
            raise EvalTypeError("conj applies to scalars")
        return conj(v)
    v = _as_g(_eval(args[0], ctx), ctx) if node.name in ("integrate", "dint") else None
    if not isinstance(v, GElement):
        raise EvalTypeError(f"{node.name} applies to Grassmann elements")
    if node.name == "dint":
        return double_integral(v)
    var = args[1]
    if not isinstance(var, Gen):
        raise EvalTypeError("integration variable must be xi(a) or xb(a)")
    return integrate(v, GeneratorSym(var.barred, var.index))


def _simplify(v):
    if isinstance(v, GElement) and set(v.terms) <= {()}:
        return v.scalar_part()
    if isinstance(v, OpElement) and set(v.terms) <= {()}:
        return v.terms.get((), ZERO)
    return v


def evaluate(expr, ctx: Context | None = None):
    """Evaluate an AST (or source text) to an exact value."""
    ctx = ctx or Context()
    if isinstance(expr, str):
        expr = parse(expr)
    return _simplify(_eval(expr, ctx))


def render_value(v) -> str:
    if isinstance(v, CycScalar):
        return render(v)
    if isinstance(v, Measure):
        body = "*".join(str(s) for s in v.syms)
        return body if v.coeff == ONE else f"{render(v.coeff)}*{body}"
    return str(v)


def value_to_json(v):
    kind = _kind(v)
    if kind == "scalar":
        data = v.to_json()
    elif kind == "mixed":
        data = [
            {"coeff": c.to_json(), "word": [str(s) for s in w]}
            for w, c in sorted(v.terms.items(), key=lambda t: [str(s) for s in t[0]])
        ]
    elif kind == "measure":
        data = {"coeff": v.coeff.to_json(), "differentials": [str(s) for s in v.syms]}
    else:
        data = v.to_json()
    return {"kind": kind, "text": render_value(v), "value": data}
