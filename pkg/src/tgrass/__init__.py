"""Exact Z3-graded Grassmann algebra and k=3 parafermion coherent states."""

from .audit import AuditEntry, AuditReport, audit
from .bargmann import BargmannRep, adjoint_rep, bargmann_inner, from_rep, gram_matrix, to_rep
from .berezin import (
    DifferentialSym,
    UndefinedTransposition,
    differential_swap,
    double_integral,
    integrate,
    iterated_integral,
)
from .expr import Context, EvalTypeError, ParseError, evaluate, parse, to_text
from .grassmann import (
    CONSTRAINED,
    RELATIONAL,
    AlgebraSignature,
    GElement,
    GeneratorSym,
    dimension_formula,
    enumerate_basis,
    normalize,
    normalize_word,
    xb,
    xi,
)
from .oscillator import A, AD, NUM, OpElement, OpSym, fock_matrices, op_normalize, qN, rep
from .scalars import I, ONE, Q, ZERO, CycScalar, conj, q_bracket, q_pow, sqrt_bracket2
from .states import (
    CONVENTIONS,
    PAPER_WEIGHT,
    ConventionConfig,
    StateVec,
    WeightFunction,
    WeightSolveError,
    annihilate,
    coherent_bra,
    coherent_ket,
    eigen_residual,
    get_convention,
    identity_resolution,
    overlap,
    solve_weight,
)
from .susy import coherent_boson, displacement_vacuum, susy_coherent, tail_bound
from .verify import verify

__version__ = "0.1.0"
