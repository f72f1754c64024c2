"""Majid-style integration over Z3-Grassmann variables.

The integral of a canonical word with respect to a generator picks out the
square of that generator: ``int xi^2 dxi = 1`` and ``int 1 dxi = int xi dxi =
0`` (likewise for ``xb``).  Measure placement is treated as notation, so the
square is deleted where it sits in the canonical word and no differential
is transported across generators.
"""

from __future__ import annotations

from dataclasses import dataclass

from .grassmann import RELATIONAL, AlgebraSignature, GElement, GeneratorSym
from .scalars import ZERO, CycScalar, Q

__all__ = [
    "DifferentialSym",
    "UndefinedTransposition",
    "integrate",
    "double_integral",
    "differential_swap",
    "top_word",
]


class UndefinedTransposition(ValueError):
    """Raised when a reordering is requested that no relation defines."""


@dataclass(frozen=True, order=True)
class DifferentialSym:
    """``dxi(index)`` (grade 1) or ``dxb(index)`` (grade 2)."""

    barred: bool
    index: int

    @property
    def grade(self) -> int:
        return 2 if self.barred else 1

    def __str__(self):
        return f"{'dxb' if self.barred else 'dxi'}({self.index})"


def _require_relational(e: GElement):
    if e.sig.mode != RELATIONAL:
        raise ValueError("integration is defined on the relational algebra only")


def integrate(e: GElement, var: GeneratorSym) -> GElement:
    """``int e d(var)``: keep terms with ``var`` squared, deleting the square."""
    _require_relational(e)
    out = GElement(sig=e.sig)
    for word, c in e.terms.items():
        hits = [k for k, s in enumerate(word) if s == var]
        if len(hits) != 2:
            continue
        rest = tuple(s for s in word if s != var)
        out = out + GElement({rest: c}, e.sig)
    return out


def top_word(index: int = 0) -> tuple:
    """The canonical word ``xi^2 xb^2`` extracted by the double integral."""
    x, b = GeneratorSym(False, index), GeneratorSym(True, index)
    return (x, x, b, b)


def double_integral(e: GElement, index: int = 0) -> CycScalar:
    """``int dxb dxi e`` normalised so that ``xi^2 xb^2`` integrates to 1."""
    _require_relational(e)
    return e.terms.get(top_word(index), ZERO)


def differential_swap(left, right) -> tuple[CycScalar, tuple]:
    """Reorder an adjacent pair involving at least one differential.

    Returns ``(phase, (right, left))`` with ``left*right == phase*right*left``.
    The defining relations pair a grade-1 object on the left with a grade-2
    object on the right: ``dxi xb = q xb dxi``, ``xi dxb = q dxb xi`` and
    ``dxi dxb = q dxb dxi``.  Same-grade pairs have no relation.
    """
    if not (isinstance(left, DifferentialSym) or isinstance(right, DifferentialSym)):
        raise TypeError("differential_swap needs at least one differential")
    if left.grade == right.grade:
        raise UndefinedTransposition(
            f"no relation given for {left} {right} (both of grade {left.grade})"
        )
    phase = Q if left.grade == 1 else Q * Q
    return phase, (right, left)


def iterated_integral(e: GElement, index: int = 0) -> CycScalar:
    """``int (int e dxi) dxb`` evaluated one variable at a time."""
    inner = integrate(e, GeneratorSym(False, index))
    return integrate(inner, GeneratorSym(True, index)).scalar_part()


def relational(n: int = 1) -> AlgebraSignature:
    return AlgebraSignature(n, RELATIONAL)
