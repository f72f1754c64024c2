"""Boson x parafermion coherent states.

The bosonic factor lives in a truncated Fock space of dimension
``M_max + 1`` and is stored as a complex numpy array.  The parafermionic
factor stays exact.  Every boson result carries its truncation bounds.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.linalg import expm

from .grassmann import GElement, GeneratorSym
from .states import (
    R1,
    MixedElement,
    StateVec,
    annihilate,
    apply_to_ket,
    coherent_ket,
    coherent_operator,
    default_convention,
    get_convention,
    to_state_vec,
)
from .oscillator import AD

__all__ = [
    "DEFAULT_TRUNCATION",
    "boson_ops",
    "BosonCoherent",
    "coherent_boson",
    "tail_bound",
    "residual_bound",
    "SusyState",
    "susy_coherent",
    "displacement_vacuum",
]

DEFAULT_TRUNCATION = 16
_EPS = np.finfo(float).eps


def boson_ops(m_max: int = DEFAULT_TRUNCATION):
    """Truncated ``(b, b_dagger, M)``: ``b|m> = sqrt(m)|m-1>``.

    ``[b, b_dagger]`` is the identity except for the last diagonal entry,
    which is ``-m_max``.
    """
    if m_max < 1:
        raise ValueError("M_max must be at least 1")
    amps = np.sqrt(np.arange(1, m_max + 1, dtype=float))
    b = np.diag(amps, k=1).astype(complex)
    bd = b.conj().T.copy()
    num = np.diag(np.arange(m_max + 1, dtype=float)).astype(complex)
    return b, bd, num


def tail_bound(z: complex, m_max: int) -> float:
    """``sum_{m > m_max} |z|^(2m) / m!``: norm-squared lost to truncation."""
    x = abs(z) ** 2
    m = m_max + 1
    term = math.exp(m * math.log(x) - math.lgamma(m + 1)) if x > 0 else 0.0
    total = 0.0
    while term > 0.0:
        total += term
        m += 1
        term *= x / m
        if term < total * 1e-18 and x / m < 0.5:
            break
    return total


def residual_bound(z: complex, m_max: int) -> float:
    """Bound on ``||b v - z v||`` for the truncated coherent vector ``v``.

    The truncated vector misses the ``m_max + 1`` component, so the last
    entry of the residual is ``z * z^m_max / sqrt(m_max!)`` exactly; the rest
    is floating-point roundoff.
    """
    x = abs(z)
    exact = math.exp((m_max + 1) * math.log(x) - 0.5 * math.lgamma(m_max + 1)) if x > 0 else 0.0
    norm = math.exp(0.5 * x * x)
    return exact + 8 * _EPS * (1 + x) * norm * math.sqrt(m_max + 1)


@dataclass
class BosonCoherent:
    z: complex
    m_max: int
    vector: np.ndarray
    tail_bound: float
    residual_bound: float


def coherent_boson(z: complex, m_max: int = DEFAULT_TRUNCATION) -> BosonCoherent:
    """``|z> = sum_m z^m / sqrt(m!) |m>`` truncated at ``m_max``."""
    z = complex(z)
    vec = np.zeros(m_max + 1, dtype=complex)
    vec[0] = 1.0
    for m in range(1, m_max + 1):
        vec[m] = vec[m - 1] * z / math.sqrt(m)
    return BosonCoherent(z, m_max, vec, tail_bound(z, m_max), residual_bound(z, m_max))


@dataclass
class SusyState:
    """``boson (x) parafermion`` with the parafermion factor exact."""

    boson: BosonCoherent
    ket: StateVec
    convention: str

    @property
    def tail_bound(self) -> float:
        return self.boson.tail_bound

    @property
    def residual_bound(self) -> float:
        return self.boson.residual_bound

    def components(self):
        """``{(m, n): (amplitude, G_n)}`` for the tensor product basis."""
        out = {}
        for m, amp in enumerate(self.boson.vector):
            for n, g in self.ket.components.items():
                out[(m, n)] = (complex(amp), g)
        return out

    def apply_boson(self, mat: np.ndarray) -> np.ndarray:
        """Boson factor of ``(mat (x) 1)|z, xi>``; the parafermion factor is unchanged."""
        return mat @ self.boson.vector

    def b_residual(self) -> float:
        """``||(b (x) 1)|z,xi> - z|z,xi>||`` per unit parafermion factor."""
        b, _, _ = boson_ops(self.boson.m_max)
        return float(np.linalg.norm(self.apply_boson(b) - self.boson.z * self.boson.vector))

    def apply_a(self) -> StateVec:
        """Parafermion factor of ``(1 (x) a)|z, xi>``, exact."""
        return annihilate(self.convention)

    def xi_times(self, index: int = 0) -> StateVec:
        """Parafermion factor of ``xi |z, xi>`` (xi taken through the operator form)."""
        x = MixedElement.word(GeneratorSym(False, index), sig=R1)
        conv = get_convention(self.convention)
        return to_state_vec(apply_to_ket(x * coherent_operator(index)), conv)

    def to_json(self):
        return {
            "z": [self.boson.z.real, self.boson.z.imag],
            "truncation": self.boson.m_max,
            "convention": self.convention,
            "boson": [[float(v.real), float(v.imag)] for v in self.boson.vector],
            "parafermion": self.ket.to_json(),
            "tail_bound": self.tail_bound,
            "residual_bound": self.residual_bound,
        }


def susy_coherent(z: complex, conv=None, m_max: int = DEFAULT_TRUNCATION) -> SusyState:
    conv = get_convention(conv) if conv is not None else default_convention()
    return SusyState(coherent_boson(z, m_max), coherent_ket(conv), conv.name)


def displacement_vacuum(z: complex, conv=None, m_max: int = DEFAULT_TRUNCATION, ordering: str = "ad-xi") -> SusyState:
    """``exp(z b_dagger) f(...) |0> (x) |0>``.

    ``ordering="ad-xi"`` uses ``f(ad xi)`` as in the coherent ket;
    ``"xi-ad"`` uses ``f(xi ad) = 1 + xi ad - xi ad xi ad`` literally.
    """
    conv = get_convention(conv) if conv is not None else default_convention()
    _, bd, _ = boson_ops(m_max)
    vac = np.zeros(m_max + 1, dtype=complex)
    vac[0] = 1.0
    vec = expm(complex(z) * bd) @ vac
    if ordering == "ad-xi":
        op = coherent_operator()
    elif ordering == "xi-ad":
        t = MixedElement.word(GeneratorSym(False, 0), AD, sig=R1)
        op = MixedElement.word(sig=R1) + t - t * t
    else:
        raise ValueError("ordering must be 'ad-xi' or 'xi-ad'")
    ket = to_state_vec(apply_to_ket(op), conv)
    boson = BosonCoherent(complex(z), m_max, vec, tail_bound(z, m_max), residual_bound(z, m_max))
    return SusyState(boson, ket, conv.name)
