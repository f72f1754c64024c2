"""Command-line front end: ``tgrass <subcommand> ...``.

Exit codes: 0 success, 1 verification failure, 2 usage, parse or
evaluation error.
"""

from __future__ import annotations

import argparse
import json
import sys

from .audit import PASS, audit
from .bargmann import adjoint_rep, gram_matrix, to_rep
from .berezin import UndefinedTransposition, integrate
from .expr import Context, EvalTypeError, Gen, ParseError, evaluate, parse, render_value, value_to_json
from .grassmann import CONSTRAINED, RELATIONAL, AlgebraSignature, GElement, GeneratorSym
from .scalars import as_scalar, render
from .states import (
    CONVENTIONS,
    FORMS,
    WeightSolveError,
    coherent_bra,
    coherent_ket,
    default_convention,
    get_convention,
    overlap,
    solve_weight,
)
from .susy import DEFAULT_TRUNCATION, susy_coherent
from .verify import SUITES, verify

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class _Usage(Exception):
    pass


def _common() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--mode", choices=(CONSTRAINED, RELATIONAL), default=RELATIONAL)
    p.add_argument("--convention", choices=sorted(CONVENTIONS), default=None,
                   help="phase convention (default: $TG_DEFAULT_CONVENTION or paper)")
    p.add_argument("--n-generators", type=int, default=None, metavar="N")
    p.add_argument("--json", action="store_true", help="machine-readable output")
    return p


def _conv(args):
    if args.convention is not None:
        return get_convention(args.convention)
    try:
        return default_convention()
    except KeyError as exc:
        raise _Usage(str(exc)) from exc


def _ctx(args, n_default=1):
    return Context(args.mode, _conv(args), args.n_generators or n_default)


def _emit(args, text, data):
    if args.json:
        print(json.dumps(data, indent=2))
    else:
        print(text)


def _mat_json(m):
    return [[render(x) for x in row] for row in m]


def _mat_text(m):
    cells = [[render(x) for x in row] for row in m]
    w = max(len(c) for row in cells for c in row)
    return "\n".join("  ".join(c.rjust(w) for c in row) for row in cells)


# -- subcommands ---------------------------------------------------------------


def cmd_normalize(args):
    v = evaluate(args.expr, _ctx(args))
    _emit(args, render_value(v), value_to_json(v))
    return EXIT_OK


def cmd_integrate(args):
    var = parse(args.var)
    if not isinstance(var, Gen):
        raise _Usage("--var must be xi(a) or xb(a)")
    ctx = _ctx(args, n_default=var.index + 1)
    v = evaluate(args.expr, ctx)
    if not isinstance(v, GElement):
        v = GElement.scalar(as_scalar(v), ctx.sig)
    out = integrate(v, GeneratorSym(var.barred, var.index))
    _emit(args, str(out), {"kind": "grassmann", "text": str(out), "value": out.to_json()})
    return EXIT_OK


def cmd_coherent(args):
    conv = _conv(args)
    ket = coherent_ket(conv, args.index, AlgebraSignature(max(args.index + 1, args.n_generators or 1)))
    bra = coherent_bra(conv, args.index, ket.sig)
    text = f"ket: {ket}\nbra: {bra}"
    _emit(args, text, {"convention": conv.name, "ket": ket.to_json(), "bra": bra.to_json(),
                       "ket_text": str(ket), "bra_text": str(bra)})
    return EXIT_OK


def cmd_overlap(args):
    conv = _conv(args)
    n = max(args.bra_index, args.ket_index) + 1
    sig = AlgebraSignature(max(n, args.n_generators or 1))
    g = overlap(coherent_bra(conv, args.bra_index, sig), coherent_ket(conv, args.ket_index, sig))
    _emit(args, str(g), {"convention": conv.name, "text": str(g), "value": g.to_json()})
    return EXIT_OK


def cmd_weight_solve(args):
    conv = _conv(args)
    w = solve_weight(conv, args.form)
    _emit(args, str(w), {"convention": conv.name, "form": args.form, "weight": w.to_json(), "text": str(w)})
    return EXIT_OK


def _parse_state(text):
    body = text.strip()
    if body.startswith("(") and body.endswith(")"):
        body = body[1:-1]
    parts = [p for p in body.split(",")]
    if len(parts) != 3:
        raise _Usage("--state needs three components, e.g. \"(1,0,0)\"")
    vals = []
    for p in parts:
        v = evaluate(p)
        if not hasattr(v, "galois"):
            raise _Usage(f"state component {p.strip()!r} is not a scalar")
        vals.append(v)
    return tuple(vals)


def cmd_bargmann(args):
    conv = _conv(args)
    if args.action == "rep":
        if args.state is None:
            raise _Usage("bargmann rep needs --state")
        psi = _parse_state(args.state)
        r, adj = to_rep(psi, conv), adjoint_rep(psi, conv)
        _emit(args, f"rep:     {r}\nadjoint: {adj}",
              {"convention": conv.name, "state": [render(x) for x in psi],
               "rep": r.to_json(), "rep_text": str(r), "adjoint": adj.to_json(), "adjoint_text": str(adj)})
    else:
        g = gram_matrix(conv)
        _emit(args, _mat_text(g), {"convention": conv.name, "gram": _mat_json(g)})
    return EXIT_OK


def _parse_complex(text):
    try:
        return complex(text.replace("i", "j").replace(" ", ""))
    except ValueError as exc:
        raise _Usage(f"cannot read {text!r} as a complex number") from exc


def cmd_susy(args):
    conv = _conv(args)
    st = susy_coherent(_parse_complex(args.z), conv, args.trunc)
    data = st.to_json()
    data["b_residual"] = st.b_residual()
    data["parafermion_text"] = str(st.ket)
    text = (
        f"boson: truncated at {args.trunc}, tail bound {st.tail_bound:.3e}, "
        f"residual {data['b_residual']:.3e} (bound {st.residual_bound:.3e})\n"
        f"parafermion: {st.ket}"
    )
    _emit(args, text, data)
    return EXIT_OK


def cmd_audit(args):
    convs = [args.convention] if args.convention else None
    rep = audit(convs)
    if args.json:
        print(rep.to_json(indent=2))
    else:
        print(rep.table())
    return EXIT_OK


def cmd_verify(args):
    reports = verify(args.suite, parallel=True)
    ok = all(r.ok for r in reports)
    if args.json:
        data = [r.to_json() for r in reports]
        print(json.dumps(data[0] if len(data) == 1 else {"status": PASS if ok else "FAIL", "suites": data}, indent=2))
    else:
        for r in reports:
            print(f"[{'PASS' if r.ok else 'FAIL'}] {r.suite}")
            for c in r.checks:
                print(f"    {c.status:<4}  {c.name}: {c.detail}")
            if "audit_table" in r.extra:
                print(r.extra["audit_table"])
    return EXIT_OK if ok else EXIT_FAIL


_REPL_HELP = """\
Enter an expression, or one of:
  :mode constrained|relational   :convention NAME   :n N   :json   :quit"""


def cmd_repl(args, stdin=None, stdout=None):
    stdin = stdin or sys.stdin
    stdout = stdout or sys.stdout
    ctx = _ctx(args)
    as_json = args.json
    interactive = stdin.isatty()
    if interactive:
        print(_REPL_HELP, file=stdout)
    while True:
        if interactive:
            print("> ", end="", file=stdout, flush=True)
        line = stdin.readline()
        if not line:
            break
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        if line.startswith(":"):
            cmd, _, rest = line[1:].partition(" ")
            rest = rest.strip()
            try:
                if cmd in ("q", "quit", "exit"):
                    break
                if cmd == "mode":
                    if rest not in (CONSTRAINED, RELATIONAL):
                        raise ValueError(f"unknown mode {rest!r}")
                    ctx = Context(rest, ctx.convention, ctx.n_generators)
                elif cmd == "convention":
                    ctx = Context(ctx.mode, get_convention(rest), ctx.n_generators)
                elif cmd == "n":
                    ctx = Context(ctx.mode, ctx.convention, int(rest))
                elif cmd == "json":
                    as_json = not as_json
                else:
                    print(_REPL_HELP, file=stdout)
            except (ValueError, KeyError) as exc:
                print(f"error: {exc}", file=stdout)
            continue
        try:
            v = evaluate(line, ctx)
        except (ParseError, EvalTypeError, UndefinedTransposition, ValueError) as exc:
            print(f"error: {exc}", file=stdout)
            continue
        print(json.dumps(value_to_json(v)) if as_json else render_value(v), file=stdout)
    return EXIT_OK


# -- entry point ---------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = _common()
    p = argparse.ArgumentParser(prog="tgrass", description="Exact Z3-graded Grassmann and parafermion algebra.")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("normalize", parents=[common], help="evaluate an expression to normal form")
    s.add_argument("expr")
    s.set_defaults(func=cmd_normalize)

    s = sub.add_parser("integrate", parents=[common], help="integrate over one generator")
    s.add_argument("--var", required=True)
    s.add_argument("--expr", required=True)
    s.set_defaults(func=cmd_integrate)

    s = sub.add_parser("coherent", parents=[common], help="coherent ket and bra")
    s.add_argument("--index", type=int, default=0)
    s.set_defaults(func=cmd_coherent)

    s = sub.add_parser("overlap", parents=[common], help="overlap of a coherent bra and ket")
    s.add_argument("--bra-index", type=int, default=0)
    s.add_argument("--ket-index", type=int, default=1)
    s.set_defaults(func=cmd_overlap)

    s = sub.add_parser("weight-solve", parents=[common], help="solve for the identity-resolving weight")
    s.add_argument("--form", choices=FORMS, default="eq20")
    s.set_defaults(func=cmd_weight_solve)

    s = sub.add_parser("bargmann", parents=[common], help="Grassmann representatives and Gram matrix")
    s.add_argument("action", choices=("rep", "gram"))
    s.add_argument("--state", default=None, help='Fock components, e.g. "(1,0,0)"')
    s.set_defaults(func=cmd_bargmann)

    s = sub.add_parser("susy", parents=[common], help="boson x parafermion coherent state")
    s.add_argument("action", choices=("coherent",))
    s.add_argument("--z", default="0.5")
    s.add_argument("--trunc", type=int, default=DEFAULT_TRUNCATION)
    s.set_defaults(func=cmd_susy)

    s = sub.add_parser("audit", parents=[common], help="check printed identities under each convention")
    s.set_defaults(func=cmd_audit)

    s = sub.add_parser("verify", parents=[common], help="run invariant suites")
    s.add_argument("--suite", choices=SUITES + ("all",), default="all")
    s.set_defaults(func=cmd_verify)

    s = sub.add_parser("repl", parents=[common], help="interactive expression evaluator")
    s.set_defaults(func=cmd_repl)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_USAGE
    try:
        return args.func(args)
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
    except (EvalTypeError, _Usage) as exc:
        print(f"error: {exc}", file=sys.stderr)
    except (UndefinedTransposition, WeightSolveError) as exc:
        print(f"undefined: {exc}", file=sys.stderr)
    except (ValueError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
    return EXIT_USAGE


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
