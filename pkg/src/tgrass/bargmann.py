"""Grassmann representatives of Fock vectors and their weighted inner product."""

from __future__ import annotations

from dataclasses import dataclass

from .berezin import double_integral
from .grassmann import AlgebraSignature, GElement, GeneratorSym
from .oscillator import zeros3
from .scalars import ONE, ZERO, CycScalar, as_scalar, conj
from .states import (
    R1,
    WeightFunction,
    coherent_bra,
    coherent_ket,
    default_convention,
    get_convention,
    solve_weight,
)

__all__ = [
    "BargmannRep",
    "bra_coefficients",
    "ket_coefficients",
    "to_rep",
    "from_rep",
    "adjoint_rep",
    "bargmann_inner",
    "gram_matrix",
]


@dataclass(frozen=True)
class BargmannRep:
    """``r0 + r1 v + r2 v^2`` with ``v = xb`` (representative) or ``xi`` (adjoint)."""

    coeffs: tuple
    barred: bool = True
    index: int = 0

    def __post_init__(self):
        c = tuple(as_scalar(x) for x in self.coeffs)
        if len(c) != 3:
            raise ValueError("a representative has exactly three coefficients")
        object.__setattr__(self, "coeffs", c)

    def element(self, sig: AlgebraSignature = R1) -> GElement:
        v = GElement.word((GeneratorSym(self.barred, self.index),), sig)
        out = GElement(sig=sig)
        power = GElement.scalar(ONE, sig)
        for c in self.coeffs:
            out = out + power * c
            power = power * v
        return out

    def __str__(self):
        return str(self.element())

    def to_json(self):
        return {"barred": self.barred, "coeffs": [c.to_json() for c in self.coeffs]}


def _scalar_coeffs(vec):
    out = []
    for n in range(3):
        terms = vec.component(n).terms
        if len(terms) != 1:
            raise ValueError(f"component {n} is not a single monomial")
        (c,) = terms.values()
        out.append(c)
    return tuple(out)


def bra_coefficients(conv=None) -> tuple[CycScalar, ...]:
    """``c_n`` in ``<xb|n> = c_n xb^n``."""
    return _scalar_coeffs(coherent_bra(conv))


def ket_coefficients(conv=None) -> tuple[CycScalar, ...]:
    """``d_n`` in ``<n|xi> = d_n xi^n``, read from the derived coherent ket."""
    conv = get_convention(conv) if conv is not None else default_convention()
    return _scalar_coeffs(coherent_ket(conv))


def to_rep(psi, conv=None) -> BargmannRep:
    """``psi(xb) = <xb|psi>`` for a Fock vector ``(psi_0, psi_1, psi_2)``."""
    c = bra_coefficients(conv)
    return BargmannRep(tuple(cn * as_scalar(p) for cn, p in zip(c, psi)))


def from_rep(r: BargmannRep, conv=None) -> tuple[CycScalar, ...]:
    if not r.barred:
        raise ValueError("from_rep expects a representative in xb")
    c = bra_coefficients(conv)
    return tuple(rn / cn for rn, cn in zip(r.coeffs, c))


def adjoint_rep(psi, conv=None) -> BargmannRep:
    """``psi_bar(xi) = <psi|xi> = sum_n conj(psi_n) <n|xi>``."""
    d = ket_coefficients(conv)
    return BargmannRep(tuple(dn * conj(p) for dn, p in zip(d, psi)), barred=False)


def bargmann_inner(psi_bar: BargmannRep, phi: BargmannRep, w: WeightFunction, conv=None) -> CycScalar:
    """``int psi_bar(xi) dxb dxi w(xb xi) phi(xb)``."""
    conv = get_convention(conv) if conv is not None else default_convention()
    if psi_bar.barred or not phi.barred:
        raise ValueError("expected an adjoint (in xi) and a representative (in xb)")
    integrand = psi_bar.element() * w.element() * phi.element()
    return double_integral(integrand) * conv.measure_factor()


def gram_matrix(conv=None, w: WeightFunction | None = None):
    """Inner products of the basis vectors ``|0>, |1>, |2>``.

    ``w`` defaults to the weight solved for the sandwiched (eq22) form.
    """
    conv = get_convention(conv) if conv is not None else default_convention()
    if w is None:
        w = solve_weight(conv, "eq22")
    basis = [tuple(ONE if k == n else ZERO for k in range(3)) for n in range(3)]
    out = zeros3()
    for n, bn in enumerate(basis):
        for m, bm in enumerate(basis):
            out[n, m] = bargmann_inner(adjoint_rep(bn, conv), to_rep(bm, conv), w, conv)
    return out
