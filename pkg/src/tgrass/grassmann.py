"""Z3-graded Grassmann algebra on N pairs of generators (xi_a, xb_a).

Words are tuples of :class:`GeneratorSym`.  :func:`normalize` brings any
word to its canonical representative:

1. unbarred symbols are moved left of barred ones, one adjacent
   transposition at a time, each ``xb*xi -> q^2 * xi*xb``;
2. each same-kind block is reduced: length >= 4 vanishes, a cube of one
   symbol vanishes, a length-3 block is replaced by its least cyclic
   rotation with the ternary phase (q for unbarred, q^2 for barred per
   rotation step), blocks of length 1 and 2 are kept verbatim;
3. in ``constrained`` mode, words whose shape (#unbarred, #barred) is not in
   :data:`SURVIVING_SHAPES` vanish.

The ``relational`` mode keeps every shape that survives steps 1-2; it is the
mode used for coherent states and integration.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable

from .scalars import ONE, ZERO, CycScalar, as_scalar, q_pow

__all__ = [
    "GeneratorSym",
    "AlgebraSignature",
    "GElement",
    "SURVIVING_SHAPES",
    "CONSTRAINED",
    "RELATIONAL",
    "xi",
    "xb",
    "grade",
    "word_shape",
    "normalize_word",
    "normalize",
    "multiply",
    "enumerate_basis",
    "dimension_formula",
    "MAX_ENUM_GENERATORS",
]

CONSTRAINED = "constrained"
RELATIONAL = "relational"

SURVIVING_SHAPES = frozenset(
    {(0, 0), (1, 0), (0, 1), (2, 0), (0, 2), (1, 1), (3, 0), (0, 3)}
)

MAX_ENUM_GENERATORS = 6


@dataclass(frozen=True, order=True)
class GeneratorSym:
    """A generator ``xi_index`` (grade 1) or ``xb_index`` (grade 2).

    Field order (unbarred first, then by index) is the canonical symbol order.
    """

    barred: bool
    index: int

    @property
    def grade(self) -> int:
        return 2 if self.barred else 1

    def __str__(self):
        return f"{'xb' if self.barred else 'xi'}({self.index})"


@dataclass(frozen=True)
class AlgebraSignature:
    n_generators: int = 1
    mode: str = RELATIONAL

    def __post_init__(self):
        if self.n_generators < 1:
            raise ValueError("n_generators must be positive")
        if self.mode not in (CONSTRAINED, RELATIONAL):
            raise ValueError(f"unknown mode {self.mode!r}")


def grade(word: Iterable[GeneratorSym]) -> int:
    return sum(s.grade for s in word) % 3


def word_shape(word) -> tuple[int, int]:
    n_bar = sum(1 for s in word if s.barred)
    return len(word) - n_bar, n_bar


def _check_indices(word, sig):
    for s in word:
        if not 0 <= s.index < sig.n_generators:
            raise IndexError(
                f"generator index {s.index} out of range for N={sig.n_generators}"
            )


def _reduce_block(block, barred):
    """Return (phase exponent of q, canonical block) or None if it vanishes."""
    n = len(block)
    if n <= 2:
        return 0, block
    if n >= 4 or block[0] == block[1] == block[2]:
        return None
    # w = xyz = q*(yzx) = q^2*(zxy) for xi; q -> q^2 for xb
    step = 2 if barred else 1
    rotations = [(k, block[k:] + block[:k]) for k in range(3)]
    k, best = min(rotations, key=lambda kr: kr[1])
    return (step * k) % 3, best


def normalize_word(word, sig: AlgebraSignature):
    """Canonical form of a single word: ``(phase, word)`` or ``None`` for zero.

    ``phase`` is a :class:`CycScalar` power of q.
    """
    word = tuple(word)
    _check_indices(word, sig)
    # each (barred, unbarred) pair that is out of order costs one swap
    swaps = 0
    barred_seen = 0
    for s in word:
        if s.barred:
            barred_seen += 1
        else:
            swaps += barred_seen
    exp = 2 * swaps
    unb = tuple(s for s in word if not s.barred)
    bar = tuple(s for s in word if s.barred)
    ru = _reduce_block(unb, False)
    if ru is None:
        return None
    rb = _reduce_block(bar, True)
    if rb is None:
        return None
    exp += ru[0] + rb[0]
    canon = ru[1] + rb[1]
    if sig.mode == CONSTRAINED and word_shape(canon) not in SURVIVING_SHAPES:
        return None
    return q_pow(exp), canon


class GElement:
    """Finite linear combination of canonical words with exact coefficients."""

    __slots__ = ("terms", "sig")

    def __init__(self, terms=None, sig: AlgebraSignature = AlgebraSignature()):
        self.sig = sig
        self.terms: dict[tuple, CycScalar] = {}
        if terms:
            for w, c in dict(terms).items():
                self._accumulate(w, as_scalar(c))

    def _accumulate(self, word, coeff):
        if not coeff:
            return
        res = normalize_word(word, self.sig)
        if res is None:
            return
        phase, canon = res
        new = self.terms.get(canon, ZERO) + phase * coeff
        if new:
            self.terms[canon] = new
        else:
            self.terms.pop(canon, None)

    @classmethod
    def scalar(cls, c, sig=AlgebraSignature()):
        return cls({(): c}, sig)

    @classmethod
    def word(cls, word, sig=AlgebraSignature(), coeff=ONE):
        return cls({tuple(word): coeff}, sig)

    # -- arithmetic -------------------------------------------------------

    def _lift(self, other):
        if isinstance(other, GElement):
            if other.sig != self.sig:
                raise ValueError("elements live in different algebras")
            return other
        return GElement.scalar(as_scalar(other), self.sig)

    def __add__(self, other):
        other = self._lift(other)
        out = GElement(self.terms, self.sig)
        for w, c in other.terms.items():
            out._accumulate(w, c)
        return out

    __radd__ = __add__

    def __neg__(self):
        return GElement({w: -c for w, c in self.terms.items()}, self.sig)

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        if not isinstance(other, GElement):
            c = as_scalar(other)
            return GElement({w: v * c for w, v in self.terms.items()}, self.sig)
        other = self._lift(other)
        out = GElement(sig=self.sig)
        for w1, c1 in self.terms.items():
            for w2, c2 in other.terms.items():
                out._accumulate(w1 + w2, c1 * c2)
        return out

    def __rmul__(self, other):
        c = as_scalar(other)
        return GElement({w: c * v for w, v in self.terms.items()}, self.sig)

    def __pow__(self, n):
        if not isinstance(n, int) or n < 0:
            return NotImplemented
        out = GElement.scalar(ONE, self.sig)
        for _ in range(n):
            out = out * self
        return out

    # -- inspection -------------------------------------------------------

    def coeff(self, word) -> CycScalar:
        res = normalize_word(tuple(word), self.sig)
        if res is None:
            return ZERO
        phase, canon = res
        # coefficient of the *given* word: c*canon == (c/phase)*word
        return self.terms.get(canon, ZERO) / phase

    def scalar_part(self) -> CycScalar:
        return self.terms.get((), ZERO)

    def is_homogeneous(self):
        return len({grade(w) for w in self.terms}) <= 1

    def grades(self):
        return {grade(w) for w in self.terms}

    def degree_part(self, n_unbarred, n_barred):
        return GElement(
            {w: c for w, c in self.terms.items() if word_shape(w) == (n_unbarred, n_barred)},
            self.sig,
        )

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if isinstance(other, GElement):
            return self.sig == other.sig and self.terms == other.terms
        try:
            other = as_scalar(other)
        except TypeError:
            return NotImplemented
        return self.terms == ({(): other} if other else {})

    def __hash__(self):
        return hash((self.sig, frozenset(self.terms.items())))

    def __repr__(self):
        return f"GElement({self})"

    def __str__(self):
        return render_element(self.terms, render_gword)

    def to_json(self):
        return [
            {
                "coeff": c.to_json(),
                "word": [
                    {"kind": "barred" if s.barred else "unbarred", "index": s.index}
                    for s in w
                ],
            }
            for w, c in sorted(self.terms.items())
        ]

    @classmethod
    def from_json(cls, data, sig=AlgebraSignature()):
        terms = {}
        for item in data:
            w = tuple(GeneratorSym(d["kind"] == "barred", int(d["index"])) for d in item["word"])
            terms[w] = terms.get(w, ZERO) + CycScalar.from_json(item["coeff"])
        return cls(terms, sig)


def xi(index, sig=AlgebraSignature()) -> GElement:
    return GElement.word((GeneratorSym(False, index),), sig)


def xb(index, sig=AlgebraSignature()) -> GElement:
    return GElement.word((GeneratorSym(True, index),), sig)


def normalize(e, sig: AlgebraSignature) -> GElement:
    """Canonical form of a word (sequence of symbols) or of a GElement."""
    if isinstance(e, GElement):
        return GElement(e.terms, sig)
    return GElement.word(tuple(e), sig)


def multiply(x: GElement, y: GElement, sig=None) -> GElement:
    if sig is not None and (x.sig != sig or y.sig != sig):
        raise ValueError("operands not in the requested algebra")
    return x * y


def _canonical_blocks(n, barred):
    syms = [GeneratorSym(barred, a) for a in range(n)]
    blocks = [()]
    blocks += [(s,) for s in syms]
    blocks += list(itertools.product(syms, repeat=2))
    for w in itertools.product(syms, repeat=3):
        if w[0] == w[1] == w[2]:
            continue
        if min(w[k:] + w[:k] for k in range(3)) == w:
            blocks.append(w)
    return blocks


def enumerate_basis(sig: AlgebraSignature) -> list[tuple]:
    """All canonical words of the algebra, sorted by (length, word)."""
    if sig.n_generators > MAX_ENUM_GENERATORS:
        raise ValueError(
            f"basis enumeration is limited to N <= {MAX_ENUM_GENERATORS}"
        )
    out = []
    for u in _canonical_blocks(sig.n_generators, False):
        for b in _canonical_blocks(sig.n_generators, True):
            w = u + b
            if sig.mode == CONSTRAINED and word_shape(w) not in SURVIVING_SHAPES:
                continue
            out.append(w)
    out.sort(key=lambda w: (len(w), w))
    return out


def dimension_formula(n: int) -> int:
    num = 3 + 4 * n + 9 * n**2 + 2 * n**3
    assert num % 3 == 0
    return num // 3


# -- rendering --------------------------------------------------------------


def render_gword(word) -> str:
    if not word:
        return ""
    parts = []
    for sym, grp in itertools.groupby(word):
        k = len(list(grp))
        parts.append(str(sym) + (f"^{k}" if k > 1 else ""))
    return "*".join(parts)


def render_element(terms, word_renderer) -> str:
    if not terms:
        return "0"
    chunks = []
    for w, c in sorted(terms.items(), key=lambda kv: (len(kv[0]), kv[0])):
        ws = word_renderer(w)
        cs = str(c)
        if not ws:
            chunks.append(cs)
            continue
        if c == 1:
            chunks.append(ws)
        elif c == -1:
            chunks.append("-" + ws)
        elif " " in cs:
            chunks.append(f"({cs})*{ws}")
        else:
            chunks.append(f"{cs}*{ws}")
    out = chunks[0]
    for ch in chunks[1:]:
        out += f" - {ch[1:]}" if ch.startswith("-") else f" + {ch}"
    return out
