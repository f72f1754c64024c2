"""The k=3 parafermionic oscillator.

Two faces of the same algebra:

* words in ``a``, ``ad`` (a-dagger), ``N`` and ``qN(s)`` (= q^{sN}),
  rewritten to the normal order ``ad^p qN(s) N^m a^r``;
* exact 3x3 matrices on the Fock basis ``|0>, |1>, |2>``.

:func:`rep` maps the first onto the second and the test suite checks that it
is a homomorphism.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .scalars import ONE, ZERO, CycScalar, Q, as_scalar, q_bracket, q_pow, sqrt_bracket2

__all__ = [
    "OpSym",
    "A",
    "AD",
    "NUM",
    "qN",
    "OpElement",
    "op_normalize",
    "fock_matrices",
    "q_num_matrix",
    "rep",
    "rep_word",
    "sqrt_bracket",
    "identity3",
    "zeros3",
    "matrices_equal",
]

_RANK = {"ad": 0, "qN": 1, "N": 2, "a": 3}
_GRADE = {"ad": 2, "qN": 0, "N": 0, "a": 1}


@dataclass(frozen=True, order=True)
class OpSym:
    """Oscillator symbol: ``a``, ``ad``, ``N`` or ``qN`` with exponent ``s``."""

    tag: str
    s: int = 0

    def __post_init__(self):
        if self.tag not in _RANK:
            raise ValueError(f"unknown operator tag {self.tag!r}")

    @property
    def grade(self) -> int:
        return _GRADE[self.tag]

    def __str__(self):
        if self.tag == "qN":
            return f"qN({self.s})"
        return {"a": "a", "ad": "ad", "N": "Nop"}[self.tag]


A = OpSym("a")
AD = OpSym("ad")
NUM = OpSym("N")


def qN(s: int) -> OpSym:
    return OpSym("qN", s)


def _clean(word):
    return tuple(x for x in word if not (x.tag == "qN" and x.s == 0))


def _step(word):
    """One rewrite of the leftmost redex, or None when ``word`` is normal."""
    for k in range(len(word) - 2):
        x = word[k]
        if x.tag in ("a", "ad") and word[k + 1] == x and word[k + 2] == x:
            return []
    for k in range(len(word) - 1):
        x, y = word[k], word[k + 1]
        pre, post = word[:k], word[k + 2 :]
        if x.tag == "qN" and y.tag == "qN":
            return [(ONE, pre + _clean((qN(x.s + y.s),)) + post)]
        if _RANK[x.tag] <= _RANK[y.tag]:
            continue
        pair = (x.tag, y.tag)
        if pair == ("a", "ad"):
            # a ad = q ad a + q^{-N}
            return [(Q, pre + (AD, A) + post), (ONE, pre + (qN(-1),) + post)]
        if pair == ("a", "N"):
            # N a - a N = -a
            return [(ONE, pre + (NUM, A) + post), (ONE, pre + (A,) + post)]
        if pair == ("a", "qN"):
            # q^N a = a q^{N-1}  =>  a q^{sN} = q^s q^{sN} a
            return [(q_pow(y.s), pre + (y, A) + post)]
        if pair == ("N", "ad"):
            # N ad - ad N = ad
            return [(ONE, pre + (AD, NUM) + post), (ONE, pre + (AD,) + post)]
        if pair == ("qN", "ad"):
            # q^N ad = ad q^{N+1}
            return [(q_pow(x.s), pre + (AD, x) + post)]
        if pair == ("N", "qN"):
            return [(ONE, pre + (y, x) + post)]
        raise AssertionError(f"unhandled pair {pair}")  # pragma: no cover
    return None


@lru_cache(maxsize=4096)
def _normal_terms(word):
    out: dict[tuple, CycScalar] = {}
    todo = [(ONE, _clean(word))]
    while todo:
        c, w = todo.pop()
        nxt = _step(w)
        if nxt is None:
            v = out.get(w, ZERO) + c
            if v:
                out[w] = v
            else:
                out.pop(w, None)
            continue
        for c2, w2 in nxt:
            todo.append((c * c2, w2))
    return tuple(out.items())


class OpElement:
    """Linear combination of normal-ordered oscillator words."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        self.terms: dict[tuple, CycScalar] = {}
        for w, c in dict(terms or {}).items():
            self._accumulate(tuple(w), as_scalar(c))

    def _accumulate(self, word, coeff):
        if not coeff:
            return
        for w, c in _normal_terms(word):
            v = self.terms.get(w, ZERO) + coeff * c
            if v:
                self.terms[w] = v
            else:
                self.terms.pop(w, None)

    @classmethod
    def word(cls, word, coeff=ONE):
        return cls({tuple(word): coeff})

    @classmethod
    def scalar(cls, c):
        return cls({(): c})

    def _lift(self, other):
        if isinstance(other, OpElement):
            return other
        return OpElement.scalar(as_scalar(other))

    def __add__(self, other):
        other = self._lift(other)
        out = OpElement(self.terms)
        for w, c in other.terms.items():
            out._accumulate(w, c)
        return out

    __radd__ = __add__

    def __neg__(self):
        return OpElement({w: -c for w, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        if not isinstance(other, OpElement):
            c = as_scalar(other)
            return OpElement({w: v * c for w, v in self.terms.items()})
        out = OpElement()
        for w1, c1 in self.terms.items():
            for w2, c2 in other.terms.items():
                out._accumulate(w1 + w2, c1 * c2)
        return out

    def __rmul__(self, other):
        return self * other

    def __pow__(self, n):
        if not isinstance(n, int) or n < 0:
            return NotImplemented
        out = OpElement.scalar(ONE)
        for _ in range(n):
            out = out * self
        return out

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if isinstance(other, OpElement):
            return self.terms == other.terms
        try:
            return self == OpElement.scalar(as_scalar(other))
        except TypeError:
            return NotImplemented

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __str__(self):
        from .grassmann import render_element

        return render_element(self.terms, render_opword)

    def __repr__(self):
        return f"OpElement({self})"

    def to_json(self):
        return [
            {"coeff": c.to_json(), "word": [str(s) for s in w]}
            for w, c in sorted(self.terms.items())
        ]


def render_opword(word) -> str:
    import itertools

    parts = []
    for sym, grp in itertools.groupby(word):
        k = len(list(grp))
        parts.append(str(sym) + (f"^{k}" if k > 1 else ""))
    return "*".join(parts)


def op_normalize(word) -> OpElement:
    """Normal-ordered form of a word of :class:`OpSym`."""
    return OpElement.word(tuple(word))


# -- Fock representation ---------------------------------------------------


def sqrt_bracket(n: int) -> CycScalar:
    """The fixed branch of ``sqrt([n])`` for n = 0..3."""
    table = {0: ZERO, 1: ONE, 2: sqrt_bracket2(), 3: ZERO}
    if n not in table:
        raise ValueError("sqrt([n]) only needed for n in 0..3")
    assert table[n] * table[n] == q_bracket(n)
    return table[n]


def zeros3():
    return np.array([[ZERO] * 3 for _ in range(3)], dtype=object)


def identity3():
    m = zeros3()
    for k in range(3):
        m[k, k] = ONE
    return m


def _diag(values):
    m = zeros3()
    for k, v in enumerate(values):
        m[k, k] = as_scalar(v)
    return m


@lru_cache(maxsize=None)
def _fock():
    a, ad = zeros3(), zeros3()
    for n in range(1, 3):
        a[n - 1, n] = sqrt_bracket(n)  # a|n> = sqrt[n] |n-1>
    for n in range(0, 2):
        ad[n + 1, n] = sqrt_bracket(n + 1)  # ad|n> = sqrt[n+1] |n+1>
    num = _diag([0, 1, 2])
    return a, ad, num


def fock_matrices():
    """Exact ``(a, ad, N)`` on the basis ``|0>, |1>, |2>`` (fresh copies)."""
    return tuple(m.copy() for m in _fock())


def q_num_matrix(s: int):
    return _diag([q_pow(s * n) for n in range(3)])


def _sym_matrix(sym: OpSym):
    a, ad, num = _fock()
    if sym.tag == "a":
        return a
    if sym.tag == "ad":
        return ad
    if sym.tag == "N":
        return num
    return q_num_matrix(sym.s)


def rep_word(word):
    """Product of the factor matrices, no rewriting involved."""
    m = identity3()
    for sym in word:
        m = m.dot(_sym_matrix(sym))
    return m


def rep(e) -> np.ndarray:
    """Matrix of an :class:`OpElement` (or of a raw word)."""
    if not isinstance(e, OpElement):
        e = op_normalize(e)
    out = zeros3()
    for w, c in e.terms.items():
        out = out + rep_word(w) * c
    return out


def matrices_equal(x, y) -> bool:
    return bool(np.all(np.asarray(x, dtype=object) == np.asarray(y, dtype=object)))
