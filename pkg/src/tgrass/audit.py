"""Check each printed coherent-state identity under each phase convention.

Every entry records the engine value next to the printed value.  Status is
``PASS``, ``FAIL`` or ``UNDEFINED`` (the convention has no rule for a
reordering the identity needs).
"""

from __future__ import annotations

import json
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass

from .bargmann import adjoint_rep, bargmann_inner, gram_matrix, to_rep
from .berezin import UndefinedTransposition
from .grassmann import GElement, GeneratorSym
from .oscillator import identity3, matrices_equal
from .scalars import ONE, ZERO, Q, sqrt_bracket2
from .states import (
    CONVENTIONS,
    PAPER_WEIGHT,
    R1,
    R2,
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

__all__ = ["AuditEntry", "AuditReport", "audit", "PASS", "FAIL", "UNDEFINED"]

PASS, FAIL, UNDEFINED = "PASS", "FAIL", "UNDEFINED"


@dataclass(frozen=True)
class AuditEntry:
    identity: str
    convention: str
    status: str
    engine_value: str
    paper_value: str
    note: str = ""


@dataclass
class AuditReport:
    entries: list

    def failures(self):
        return [e for e in self.entries if e.status != PASS]

    def lookup(self, identity, convention) -> AuditEntry:
        for e in self.entries:
            if e.identity == identity and e.convention == convention:
                return e
        raise KeyError((identity, convention))

    def to_json(self, **kw):
        return json.dumps([asdict(e) for e in self.entries], **kw)

    def table(self) -> str:
        w1 = max(len(e.identity) for e in self.entries)
        w2 = max(len(e.convention) for e in self.entries)
        lines = []
        for e in self.entries:
            line = f"{e.identity:<{w1}}  {e.convention:<{w2}}  {e.status:<9}"
            if e.status != PASS:
                line += f"  engine: {e.engine_value}   printed: {e.paper_value}"
            lines.append(line.rstrip())
        return "\n".join(lines)


def _mat_str(m):
    return "[" + "; ".join(", ".join(str(x) for x in row) for row in m) + "]"


def _entry(identity, conv, ok, engine, printed, note=""):
    return AuditEntry(identity, conv.name, PASS if ok else FAIL, str(engine), str(printed), note)


def _guard(identity, conv, printed, fn):
    try:
        return fn()
    except (UndefinedTransposition, WeightSolveError) as exc:
        return AuditEntry(identity, conv.name, UNDEFINED, "-", str(printed), str(exc))


def _printed_ket(index=0, sig=R1):
    x = GElement.word((GeneratorSym(False, index),), sig)
    return {0: GElement.scalar(ONE, sig), 1: x * (Q * Q), 2: (x * x) * (-sqrt_bracket2())}


def _printed_overlap():
    b = GElement.word((GeneratorSym(True, 0),), R2)
    x = GElement.word((GeneratorSym(False, 1),), R2)
    bx = b * x
    return GElement.scalar(ONE, R2) + bx * (Q * Q) - (bx * bx) * Q


def _audit_one(conv):
    out = []
    printed = _printed_ket()

    def ket_row(n):
        def run():
            got = coherent_ket(conv).component(n)
            return _entry(f"eq14[n={n}]", conv, got == printed[n], got, printed[n])

        return _guard(f"eq14[n={n}]", conv, printed[n], run)

    out += [ket_row(n) for n in range(3)]

    resid = eigen_residual()
    out.append(
        _entry("eq15[operator]", conv, resid.is_zero(), resid, 0,
               "a f|0> - xi f|0> rewritten without any ket reordering")
    )

    def laid_out_eigen():
        lhs = annihilate(conv)
        ket = coherent_ket(conv)
        x = GElement.word((GeneratorSym(False, 0),), R1)
        rhs = type(ket)({n: x * g for n, g in ket.components.items()}, R1)
        return _entry("eq15[components]", conv, lhs == rhs, lhs, rhs,
                      "a|xi> laid out per convention vs xi times the laid-out ket")

    out.append(_guard("eq15[components]", conv, "xi|xi>", laid_out_eigen))

    printed_g = _printed_overlap()
    labels = {(0, 0): "eq16[constant]", (1, 1): "eq16[linear]", (2, 2): "eq16[quadratic]"}

    def overlap_row(shape):
        def run():
            got = overlap(coherent_bra(conv, 0, R2), coherent_ket(conv, 1, R2)).degree_part(*shape)
            want = printed_g.degree_part(*shape)
            return _entry(labels[shape], conv, got == want, got, want)

        return _guard(labels[shape], conv, printed_g.degree_part(*shape), run)

    out += [overlap_row(s) for s in labels]

    ident = identity3()
    for form, name in (("eq20", "eq20"), ("eq22", "eq22")):
        def run(form=form, name=name):
            m = identity_resolution(conv, PAPER_WEIGHT, form)
            return _entry(name, conv, matrices_equal(m, ident), _mat_str(m), _mat_str(ident),
                          f"weight {PAPER_WEIGHT}")

        out.append(_guard(name, conv, _mat_str(ident), run))

    def weight_row():
        w = solve_weight(conv, "eq20")
        return _entry("eq21", conv, w == PAPER_WEIGHT, w, PAPER_WEIGHT, "weight solved for eq20")

    out.append(_guard("eq21", conv, PAPER_WEIGHT, weight_row))

    def gram_row(label, weight_fn):
        def run():
            w = weight_fn()
            g = gram_matrix(conv, w)
            return _entry(label, conv, matrices_equal(g, ident), _mat_str(g), _mat_str(ident),
                          f"weight {w}")

        return _guard(label, conv, _mat_str(ident), run)

    out.append(gram_row("eq27[printed weight]", lambda: PAPER_WEIGHT))
    out.append(gram_row("eq27[solved weight]", lambda: solve_weight(conv, "eq22")))

    e0 = (ONE, ZERO, ZERO)
    e1 = (ZERO, ONE, ZERO)
    v00 = bargmann_inner(adjoint_rep(e0, conv), to_rep(e0, conv), PAPER_WEIGHT, conv)
    out.append(_entry("eq28", conv, v00 == 1, v00, 1, f"measure {conv.measure_phase_mode}"))
    v01 = bargmann_inner(adjoint_rep(e0, conv), to_rep(e1, conv), PAPER_WEIGHT, conv)
    out.append(_entry("eq29", conv, v01 == 0, v01, 0))
    return out


def audit(conventions=None, parallel: bool = True) -> AuditReport:
    """Run every identity check under each convention (names or configs)."""
    convs = [get_convention(c) for c in (conventions or list(CONVENTIONS))]
    if parallel and len(convs) > 1:
        with ThreadPoolExecutor() as pool:
            chunks = list(pool.map(_audit_one, convs))
    else:
        chunks = [_audit_one(c) for c in convs]
    return AuditReport([e for chunk in chunks for e in chunk])
