"""Invariant suites per module, with a JSON-ready report.

Each check is a zero-argument callable returning ``(ok, detail)``.  Checks
within a suite are independent, so they may run in a thread pool; the report
keeps the declared order either way.
"""

from __future__ import annotations

import itertools
import random
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

from .audit import FAIL, PASS, audit
from .bargmann import from_rep, gram_matrix, to_rep
from .berezin import double_integral, iterated_integral
from .grassmann import (
    CONSTRAINED,
    RELATIONAL,
    AlgebraSignature,
    GElement,
    GeneratorSym,
    dimension_formula,
    enumerate_basis,
    normalize_word,
)
from .oscillator import A, AD, NUM, fock_matrices, identity3, matrices_equal, op_normalize, qN, q_num_matrix, rep, rep_word, zeros3
from .scalars import ONE, ZERO, CycScalar, I, Q, q_bracket
from .states import (
    CONVENTIONS,
    PAPER_WEIGHT,
    coherent_ket,
    eigen_residual,
    identity_resolution,
    solve_weight,
)
from .susy import susy_coherent

__all__ = ["SUITES", "CheckResult", "SuiteReport", "verify"]

_SEED = 20240917


@dataclass
class CheckResult:
    name: str
    status: str
    detail: str = ""


@dataclass
class SuiteReport:
    suite: str
    checks: list
    extra: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return all(c.status == PASS for c in self.checks)

    def to_json(self):
        out = {
            "suite": self.suite,
            "status": PASS if self.ok else FAIL,
            "checks": [vars(c) for c in self.checks],
        }
        out.update(self.extra)
        return out


def _rand_scalar(rng):
    return CycScalar([rng.randint(-5, 5) for _ in range(4)])


# -- scalars -------------------------------------------------------------------


def _scalars():
    rng = random.Random(_SEED)
    samples = [_rand_scalar(rng) for _ in range(30)]

    def field_axioms():
        for x, y, z in zip(samples, samples[1:], samples[2:]):
            if (x * y) * z != x * (y * z) or x * (y + z) != x * y + x * z or x * y != y * x:
                return False, f"failed at {x}, {y}, {z}"
            if x and x * x.inverse() != ONE:
                return False, f"inverse failed at {x}"
        return True, f"{len(samples) - 2} triples"

    def root_of_unity():
        return Q**3 == ONE and ONE + Q + Q * Q == ZERO, "q^3 = 1, 1 + q + q^2 = 0"

    def brackets():
        ok = q_bracket(2) == -ONE and q_bracket(3) == ZERO
        ok &= all(q_bracket(n + 3) == q_bracket(n) for n in range(-9, 10))
        return ok, "[2] = -1, [3] = 0, period 3 on -9..9"

    def conj_automorphism():
        for x, y in zip(samples, samples[1:]):
            if (x * y).conj() != x.conj() * y.conj() or (x + y).conj() != x.conj() + y.conj():
                return False, f"failed at {x}, {y}"
        return Q.conj() == Q * Q and I.conj() == -I, "conj(q) = q^2, conj(i) = -i"

    def embedding():
        worst = 0.0
        for x, y in zip(samples, samples[1:]):
            worst = max(worst, abs(complex(x * y) - complex(x) * complex(y)))
            worst = max(worst, abs(complex(x + y) - complex(x) - complex(y)))
        return worst <= 1e-12, f"max error {worst:.2e}"

    return [
        ("field axioms", field_axioms),
        ("cube root of unity", root_of_unity),
        ("q-brackets", brackets),
        ("conjugation automorphism", conj_automorphism),
        ("numeric embedding", embedding),
    ]


# -- grassmann -----------------------------------------------------------------


def _grassmann():
    def counts():
        got = {n: len(enumerate_basis(AlgebraSignature(n, CONSTRAINED))) for n in (1, 2, 3)}
        want = {n: dimension_formula(n) for n in (1, 2, 3)}
        return got == want == {1: 6, 2: 21, 3: 50}, f"basis sizes {got}"

    def nilpotent():
        ok = True
        for mode in (CONSTRAINED, RELATIONAL):
            sig = AlgebraSignature(1, mode)
            for barred in (False, True):
                x = GElement.word((GeneratorSym(barred, 0),), sig)
                ok &= not (x * x * x)
        return ok, "xi^3 = xb^3 = 0 in both modes"

    def idempotent():
        sig = AlgebraSignature(2, RELATIONAL)
        syms = [GeneratorSym(b, k) for b in (False, True) for k in range(2)]
        n = 0
        for length in range(5):
            for w in itertools.product(syms, repeat=length):
                r = normalize_word(w, sig)
                if r is None:
                    continue
                phase, canon = r
                again = normalize_word(canon, sig)
                if again != (ONE, canon):
                    return False, f"not idempotent on {w}"
                n += 1
        return True, f"{n} words up to length 4"

    def rotation():
        sig = AlgebraSignature(3, RELATIONAL)
        for barred in (False, True):
            syms = [GeneratorSym(barred, k) for k in range(3)]
            for w in itertools.product(syms, repeat=3):
                r0 = normalize_word(w, sig)
                r1 = normalize_word(w[1:] + w[:1], sig)
                if (r0 is None) != (r1 is None):
                    return False, f"rotation changes vanishing of {w}"
                if r0 is not None:
                    step = r1[0] / r0[0]
                    if step**3 != ONE or r0[1] != r1[1]:
                        return False, f"rotation phase inconsistent on {w}"
        return True, "three rotations give phase 1"

    return [
        ("constrained basis size", counts),
        ("nilpotency", nilpotent),
        ("normal form idempotent", idempotent),
        ("ternary rotation consistency", rotation),
    ]


# -- oscillator ----------------------------------------------------------------


def _oscillator():
    a, ad, num = fock_matrices()

    def relations():
        checks = [
            a.dot(ad) - ad.dot(a) * Q - q_num_matrix(-1),
            num.dot(a) - a.dot(num) + a,
            num.dot(ad) - ad.dot(num) - ad,
            q_num_matrix(1).dot(ad) - ad.dot(q_num_matrix(1)) * Q,
            q_num_matrix(1).dot(a) - a.dot(q_num_matrix(1)) * Q.inverse(),
        ]
        bad = [k for k, m in enumerate(checks) if not matrices_equal(m, zeros3())]
        return not bad, "all five relations exact" if not bad else f"relations {bad} fail"

    def rewriting():
        lhs = op_normalize((A, AD)) - op_normalize((AD, A)) * Q - op_normalize((qN(-1),))
        return not lhs and not op_normalize((A,) * 3) and not op_normalize((AD,) * 3), (
            "a ad - q ad a - q^-N = 0, a^3 = ad^3 = 0"
        )

    def homomorphism():
        rng = random.Random(_SEED)
        pool = [A, AD, NUM, qN(1), qN(-1), qN(2)]
        for _ in range(200):
            w = tuple(rng.choice(pool) for _ in range(rng.randint(0, 6)))
            if not matrices_equal(rep(op_normalize(w)), rep_word(w)):
                return False, f"mismatch on {' '.join(map(str, w))}"
        return True, "200 random words"

    def spectrum():
        m = ad.dot(a)
        diag = [m[k, k] for k in range(3)]
        off = all(not m[j, k] for j in range(3) for k in range(3) if j != k)
        return off and diag == [q_bracket(0), q_bracket(1), q_bracket(2)], "ad a = diag(0, 1, -1)"

    return [
        ("matrix relations", relations),
        ("rewriting relations and nilpotency", rewriting),
        ("rep is a homomorphism", homomorphism),
        ("spectrum of ad a", spectrum),
    ]


# -- states --------------------------------------------------------------------

# (identity, convention) pairs the audit must flag; losing one is a regression
EXPECTED_FLAGS = (("eq14[n=2]", "uniform-eq5"), ("eq16[linear]", "uniform-eq5"))


def _states(report_extra):
    def eigen():
        r = eigen_residual()
        return r.is_zero(), "a|xi> - xi|xi> = 0 at operator level"

    def ket_default():
        k = coherent_ket("paper")
        x = GElement.word((GeneratorSym(False, 0),), k.sig)
        want = [GElement.scalar(ONE, k.sig), x * (Q * Q), x * x * (-I)]
        return [k.component(n) for n in range(3)] == want, str(k)

    def weight():
        w = solve_weight("paper", "eq20")
        ok = w == PAPER_WEIGHT and matrices_equal(identity_resolution("paper", w, "eq20"), identity3())
        return ok, f"solved weight {w}"

    def audit_flags():
        rep_ = audit()
        report_extra["audit"] = [vars(e) for e in rep_.entries]
        report_extra["audit_table"] = rep_.table()
        missing = [p for p in EXPECTED_FLAGS if rep_.lookup(*p).status == PASS]
        covered = {e.identity.split("[")[0] for e in rep_.entries}
        need = {"eq14", "eq15", "eq16", "eq20", "eq27", "eq28", "eq29"}
        ok = not missing and need <= covered
        return ok, "known discrepancies flagged" if ok else f"missing flags {missing}"

    return [
        ("eigenstate residual", eigen),
        ("coherent ket (paper convention)", ket_default),
        ("weight solve (paper, eq20)", weight),
        ("audit coverage", audit_flags),
    ]


# -- bargmann ------------------------------------------------------------------


def _bargmann():
    def gram():
        bad = [c for c in CONVENTIONS if not matrices_equal(gram_matrix(c), identity3())]
        return not bad, "Gram = identity with the solved weight" if not bad else f"fails for {bad}"

    def round_trip():
        rng = random.Random(_SEED)
        for _ in range(50):
            psi = tuple(_rand_scalar(rng) for _ in range(3))
            if from_rep(to_rep(psi, "paper"), "paper") != psi:
                return False, f"failed on {psi}"
        return True, "50 random vectors"

    def integrals():
        sig = AlgebraSignature(1, RELATIONAL)
        x = GElement.word((GeneratorSym(False, 0),), sig)
        b = GElement.word((GeneratorSym(True, 0),), sig)
        top = x * x * b * b
        ok = double_integral(top) == ONE and iterated_integral(top) == ONE
        ok &= all(double_integral(x**j * b**k) == ZERO for j in range(3) for k in range(3) if (j, k) != (2, 2))
        return ok, "only xi^2 xb^2 integrates to 1"

    return [
        ("Gram matrix", gram),
        ("representation round trip", round_trip),
        ("double integral selects the top word", integrals),
    ]


# -- susy ----------------------------------------------------------------------


def _susy(report_extra):
    state = susy_coherent(0.5, "paper", 16)

    def grassmann_factor():
        return state.apply_a() == state.xi_times(), "(1 x a)|z,xi> = xi|z,xi> exactly"

    def boson_factor():
        r = state.b_residual()
        report_extra["b_residual"] = r
        report_extra["tail_bound"] = state.tail_bound
        report_extra["residual_bound"] = state.residual_bound
        return r <= state.residual_bound, (
            f"residual {r:.3e} <= residual bound {state.residual_bound:.3e} "
            f"(norm-squared tail {state.tail_bound:.3e})"
        )

    return [
        ("parafermion eigen property", grassmann_factor),
        ("boson eigen residual", boson_factor),
    ]


SUITES = ("scalars", "grassmann", "oscillator", "states", "bargmann", "susy")


def _checks(suite, extra):
    if suite == "states":
        return _states(extra)
    if suite == "susy":
        return _susy(extra)
    return {"scalars": _scalars, "grassmann": _grassmann, "oscillator": _oscillator, "bargmann": _bargmann}[suite]()


def _run(check):
    name, fn = check
    try:
        ok, detail = fn()
    except Exception as exc:  # a crashing check is a failing check
        return CheckResult(name, FAIL, f"{type(exc).__name__}: {exc}")
    return CheckResult(name, PASS if ok else FAIL, detail)


def verify(suite: str = "all", parallel: bool = False) -> list[SuiteReport]:
    """Run one suite (or ``"all"``); returns a report per suite."""
    names = SUITES if suite == "all" else (suite,)
    unknown = [n for n in names if n not in SUITES]
    if unknown:
        raise ValueError(f"unknown suite {unknown[0]!r}; choose from {', '.join(SUITES)} or all")
    out = []
    for name in names:
        extra: dict = {}
        checks = _checks(name, extra)
        if parallel:
            with ThreadPoolExecutor() as pool:
                results = list(pool.map(_run, checks))
        else:
            results = [_run(c) for c in checks]
        out.append(SuiteReport(name, results, extra))
    return out
