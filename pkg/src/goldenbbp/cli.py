"""Command-line front end.

Exit codes: 0 success / all checks pass, 1 usage error, 2 verification
failure, 3 numeric boundary failure.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction

from .bbp import bbp_eval, bbp_digits, digit_eligibility
from .bigfixed import FixedReal, fx_log, fx_pi, fx_sqrt
from .catalog import catalog_list, get_record, verify_all, verify_exact_args, verify_infinite, verify_numeric
from .errors import DigitBoundaryRisk, IneligibleFormula, OutOfDomain, PrecisionTooLow
from .expr import eval_expr
from .formulas import formula_catalog, formula_names, get_formula
from .golden import QPhi, fib, lucas, phi_pow
from .phinary import to_golden_base, to_golden_base_exact

PREC_ENV = "GOLDENBBP_PREC"
FIB_BOUND = 10**7

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_VERIFY = 2
EXIT_BOUNDARY = 3


def _emit(args, plain: str, row: dict) -> None:
    if args.output == "structured":
        print(json.dumps(row, sort_keys=True))
    else:
        print(plain)


def _decimal_digits(prec: int) -> int:
    return prec * 30103 // 100000  # floor(prec * log10(2))


def _usage_error(msg: str) -> int:
    print(f"error: {msg}", file=sys.stderr)
    return EXIT_USAGE


def cmd_eval(args) -> int:
    try:
        f = get_formula(args.name)
    except KeyError:
        return _usage_error(
            f"unknown formula {args.name!r}; known names: {', '.join(formula_names())}")
    v = bbp_eval(f, args.prec)
    nd = _decimal_digits(args.prec)
    text = v.decimal(nd)
    _emit(args, f"{args.name} = {text} (truncated; |error| <= 2^-{args.prec})",
          {"cmd": "eval", "name": args.name, "value": text,
           "hex": v.hex_str(), "prec": args.prec, "bound_log2": -args.prec})
    return EXIT_OK


def cmd_digits(args) -> int:
    try:
        f = get_formula(args.name)
    except KeyError:
        return _usage_error(
            f"unknown formula {args.name!r}; known names: {', '.join(formula_names())}")
    ok, reason = digit_eligibility(f)
    if not ok:
        return _usage_error(f"{args.name} is not digit-extraction eligible: {reason}")
    try:
        win = bbp_digits(f, args.pos, args.count)
    except DigitBoundaryRisk as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BOUNDARY
    base = win.base
    if base <= 36:
        rendered = "".join("0123456789abcdefghijklmnopqrstuvwxyz"[d] for d in win.digits)
    else:
        rendered = " ".join(str(d) for d in win.digits)
    _emit(args, f"{args.name} base-{base} digits at position {args.pos}: {rendered}",
          {"cmd": "digits", "name": args.name, "base": base, "position": args.pos,
           "digits": list(win.digits), "boundary_risk": win.boundary_risk})
    return EXIT_OK


def _print_result(args, r) -> None:
    if args.output == "structured":
        print(json.dumps(r.row(), sort_keys=True))
    else:
        res = r.residual.hex_str() if r.residual is not None else "-"
        params = " ".join(f"{k}={v}" for k, v in r.params.items()) or "-"
        status = "PASS" if r.passed else "FAIL"
        extra = f"  [{r.detail}]" if r.detail else ""
        print(f"{status}  {r.id:<24} {params:<10} {r.mode:<8} residual={res}{extra}")


def cmd_verify(args) -> int:
    if args.all:
        results = verify_all(bound=args.bound, p=args.prec, n_terms=args.terms)
    else:
        if args.id is None:
            return _usage_error("verify needs an identity id or --all")
        try:
            rec = get_record(args.id)
        except KeyError:
            known = ", ".join(r.id for r in catalog_list())
            return _usage_error(f"unknown identity {args.id!r}; known ids: {known}")
        params = {}
        for pname in ("k", "n", "p"):
            v = getattr(args, f"param_{pname}")
            if v is not None:
                params[pname] = v
        try:
            if rec.kind == "infinite-sum":
                results = [verify_infinite(rec.id, args.terms, min(args.prec, 64), params)]
            elif args.exact:
                results = [verify_exact_args(rec.id, params)]
            else:
                results = [verify_numeric(rec.id, params, args.prec)]
        except OutOfDomain as exc:
            _emit(args, f"SKIP  {rec.id}: {exc} (documented exclusion)",
                  {"cmd": "verify", "id": rec.id, "skip": str(exc)})
            return EXIT_OK
    for r in results:
        _print_result(args, r)
    failures = sum(1 for r in results if not r.passed)
    if args.output == "plain":
        print(f"{len(results)} checks, {failures} failures")
    return EXIT_OK if failures == 0 else EXIT_VERIFY


_BUILTIN_CONSTANTS = {
    "pi": lambda p: fx_pi(p),
    "phi": lambda p: phi_pow(1).embed(p),
    "log2": lambda p: fx_log(FixedReal.from_int(2, p), p),
    "logphi": lambda p: fx_log(phi_pow(1).embed(p), p),
    "sqrt2": lambda p: fx_sqrt(FixedReal.from_int(2, p), p),
    "sqrt3": lambda p: fx_sqrt(FixedReal.from_int(3, p), p),
    "sqrt5": lambda p: fx_sqrt(FixedReal.from_int(5, p), p),
}


def cmd_phinary(args) -> int:
    n_frac = args.digits
    p = max(args.prec, n_frac * 7 // 10 + 80)
    if args.value in _BUILTIN_CONSTANTS:
        v = _BUILTIN_CONSTANTS[args.value](p)
    else:
        try:
            fr = Fraction(args.value)
            if fr < 0:
                return _usage_error("golden-base expansion needs a non-negative value")
            try:
                # exact inputs get the terminating expansion when one exists
                d = to_golden_base_exact(QPhi(fr), max_frac=n_frac)
                _emit(args, d.render(args.group),
                      {"cmd": "phinary", "value": args.value, "digits": d.render(),
                       "uncertain": d.uncertain})
                return EXIT_OK
            except PrecisionTooLow:
                pass
            v = FixedReal.from_fraction(fr, p)
        except ValueError:
            try:
                f = get_formula(args.value)
            except KeyError:
                return _usage_error(
                    f"{args.value!r} is not a literal, builtin constant, or formula name")
            v = eval_expr(f.lhs, {}, p)
    if v.sign < 0:
        return _usage_error("golden-base expansion needs a non-negative value")
    try:
        d = to_golden_base(v, n_frac)
    except PrecisionTooLow as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BOUNDARY
    _emit(args, d.render(args.group),
          {"cmd": "phinary", "value": args.value, "digits": d.render(),
           "uncertain": d.uncertain})
    return EXIT_OK


def _cmd_sequence(args, fn, label: str) -> int:
    if abs(args.n) > FIB_BOUND:
        return _usage_error(f"|n| must be at most {FIB_BOUND}")
    v = fn(args.n)
    _emit(args, str(v), {"cmd": label, "n": args.n, "value": str(v)})
    return EXIT_OK


def cmd_catalog(args) -> int:
    rows = []
    for name, f in formula_catalog().items():
        rows.append({"kind": "formula", "name": name, "s": f.s, "base": str(f.base),
                     "length": f.l, "anchor": f.anchor})
    for rec in catalog_list():
        rows.append({"kind": "identity", "name": rec.id, "aliases": list(rec.aliases),
                     "param": rec.param, "class": rec.kind, "source": rec.source,
                     "anchor": rec.anchor})
    if args.output == "structured":
        for row in rows:
            print(json.dumps(row, sort_keys=True))
    else:
        for row in rows:
            tag = row.get("class", f"s={row.get('s')} base={row.get('base')}")
            print(f"{row['kind']:<9} {row['name']:<28} {tag:<14} {row['anchor']}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    default_prec = int(os.environ.get(PREC_ENV, "128"))
    # SUPPRESS so the subparser pass cannot clobber flags given before
    # the subcommand; defaults resolve in main()
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--prec", type=int, default=argparse.SUPPRESS,
                        help=f"working precision in bits (default {default_prec}, "
                             f"env {PREC_ENV})")
    common.add_argument("--output", choices=("plain", "structured"),
                        default=argparse.SUPPRESS)
    ap = argparse.ArgumentParser(prog="goldenbbp", parents=[common],
                                 description="Golden-ratio arctangent identities and "
                                             "BBP-type formulas.")
    sub = ap.add_subparsers(dest="command", required=True)

    def add_parser(name, **kw):
        return sub.add_parser(name, parents=[common], **kw)

    p = add_parser("eval", help="evaluate a catalog formula")
    p.add_argument("name")
    p.set_defaults(fn=cmd_eval)

    p = add_parser("digits", help="extract digits without earlier ones")
    p.add_argument("name")
    p.add_argument("--pos", type=int, default=0)
    p.add_argument("--count", type=int, default=8)
    p.set_defaults(fn=cmd_digits)

    p = add_parser("verify", help="verify catalog identities")
    p.add_argument("id", nargs="?")
    p.add_argument("--all", action="store_true")
    p.add_argument("--bound", type=int, default=50)
    p.add_argument("--terms", type=int, default=64)
    p.add_argument("--exact", action="store_true",
                   help="run the exact argument-algebra steps instead")
    p.add_argument("--k", dest="param_k", type=int)
    p.add_argument("--n", dest="param_n", type=int)
    p.add_argument("--p", dest="param_p", type=int)
    p.set_defaults(fn=cmd_verify)

    p = add_parser("phinary", help="golden-base digit expansion")
    p.add_argument("value", help="literal, builtin constant, or formula name")
    p.add_argument("--digits", type=int, default=40)
    p.add_argument("--group", type=int, default=0)
    p.set_defaults(fn=cmd_phinary)

    p = add_parser("fib", help="Fibonacci number")
    p.add_argument("n", type=int)
    p.set_defaults(fn=lambda a: _cmd_sequence(a, fib, "fib"))

    p = add_parser("lucas", help="Lucas number")
    p.add_argument("n", type=int)
    p.set_defaults(fn=lambda a: _cmd_sequence(a, lucas, "lucas"))

    p = add_parser("catalog", help="list formulas and identities")
    p.set_defaults(fn=cmd_catalog)

    return ap


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code not in (0, None) else EXIT_OK
    if not hasattr(args, "prec"):
        args.prec = int(os.environ.get(PREC_ENV, "128"))
    if not hasattr(args, "output"):
        args.output = "plain"
    if args.prec < 16:
        return _usage_error("--prec must be at least 16 bits")
    try:
        return args.fn(args)
    except IneligibleFormula as exc:
        return _usage_error(str(exc))
    except DigitBoundaryRisk as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BOUNDARY


if __name__ == "__main__":
    sys.exit(main())
