"""Command-line front end: ``qeuler <command> [flags]``.

Records go to standard output as JSON lines or CSV; diagnostics go to
standard error as a single JSON object. Exit codes: 0 pass, 1 suite
failure, 2 usage error, 3 runtime error.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from fractions import Fraction
from typing import Iterable, Optional, Sequence

from .characters import parse_character
from .errors import QEulerError
from .families import FamilySpec, closed_form, series_value
from .padic import PAdicContext, QPAdic, family_integral
from .qcore import ApproxScalar, QContext
from .verify import SUITES, Grid, run_suite
from .zeta import ZetaRequest, interpolation_check, l_multiple, mellin_check, zeta_multiple

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_RUNTIME = 0, 1, 2, 3

FAMILIES = ("plain", "order-r", "extended-hr", "barnes", "barnes-twisted", "chi", "chi-order-r",
            "chi-barnes-twisted")
METHODS = ("closed_form", "series", "padic_integral")
FIELDS = ("family", "n", "x", "q", "method", "value", "error_bound")


class UsageError(Exception):
    pass


# -- parsing helpers --------------------------------------------------------

def parse_rational(text: str) -> Fraction:
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError):
        raise UsageError(f"not a rational: {text!r}") from None


def parse_rational_list(text: str) -> list:
    return [parse_rational(t) for t in text.split(",") if t.strip()]


def parse_int_list(text: str) -> list:
    """``"0..3"`` (inclusive), ``"1,4,5"`` or a single integer."""
    out = []
    for part in text.split(","):
        part = part.strip()
        try:
            if ".." in part:
                lo, hi = part.split("..")
                out.extend(range(int(lo), int(hi) + 1))
            elif part:
                out.append(int(part))
        except ValueError:
            raise UsageError(f"not an integer range: {text!r}") from None
    if not out:
        raise UsageError(f"empty integer list: {text!r}")
    return out


def parse_complex(text: str) -> complex:
    parts = [p.strip() for p in text.split(",")]
    try:
        if len(parts) == 1:
            return complex(float(parts[0]), 0.0)
        if len(parts) == 2:
            return complex(float(parts[0]), float(parts[1]))
    except ValueError:
        pass
    raise UsageError(f"expected 're' or 're,im', got {text!r}")


def format_rational(v: Fraction) -> str:
    return f"{v.numerator}/{v.denominator}"


def _value_json(v):
    if isinstance(v, Fraction):
        return format_rational(v)
    if isinstance(v, ApproxScalar):
        return {"re": v.real, "im": v.imag}
    if isinstance(v, complex):
        return {"re": v.real, "im": v.imag}
    return v


def _value_csv(v) -> str:
    if isinstance(v, dict):
        return f"{v['re']!r}" if v["im"] == 0 else f"{v['re']!r}{v['im']:+}j"
    return str(v)


# -- output -------------------------------------------------------------------

class Emitter:
    def __init__(self, fmt: str, stream=None, fields: Sequence[str] = FIELDS):
        self.fmt = fmt
        self.stream = stream or sys.stdout
        self.fields = list(fields)
        self._header = False

    def emit(self, record: dict) -> None:
        if self.fmt == "json":
            self.stream.write(json.dumps(record) + "\n")
            return
        if not self._header:
            self.fields = self.fields or list(record)
            self._write_row(self.fields)
            self._header = True
        self._write_row([_value_csv(record.get(k, "")) for k in self.fields])

    def _write_row(self, row) -> None:
        buf = io.StringIO()
        csv.writer(buf, lineterminator="\n").writerow(row)
        self.stream.write(buf.getvalue())


def diagnostic(kind: str, message: str) -> None:
    sys.stderr.write(json.dumps({"error": kind, "message": message}) + "\n")


# -- family and context construction ------------------------------------------

def build_family(args) -> FamilySpec:
    fam = args.family
    need = {"order-r": ["r"], "extended-hr": ["h", "r"], "barnes": ["w"], "barnes-twisted": ["w", "a"],
            "chi": ["char"], "chi-order-r": ["char", "r"], "chi-barnes-twisted": ["char", "w", "a"]}
    for flag in need.get(fam, []):
        if getattr(args, flag) is None:
            raise UsageError(f"--family {fam} needs --{flag}")
    try:
        chi = parse_character(args.char) if args.char else None
        w = [parse_rational(t) for t in args.w.split(",")] if args.w else None
        a = [parse_rational(t) for t in args.a.split(",")] if args.a else None
        if fam == "plain":
            return FamilySpec.plain()
        if fam == "order-r":
            return FamilySpec.order_r(args.r)
        if fam == "extended-hr":
            return FamilySpec.extended_hr(args.h, args.r)
        if fam == "barnes":
            return FamilySpec.barnes(w)
        if fam == "barnes-twisted":
            return FamilySpec.barnes_twisted(w, a)
        if fam == "chi":
            return FamilySpec.chi(chi)
        if fam == "chi-order-r":
            return FamilySpec.chi_order_r(chi, args.r)
        return FamilySpec.chi_barnes_twisted(chi, w, a)
    except (ValueError, TypeError) as exc:
        raise UsageError(str(exc)) from None


def _context(q: Fraction, mode: str) -> QContext:
    if mode == "exact" and q == 1:
        raise UsageError("q=1 invalid in exact mode")
    try:
        return QContext.exact(q) if mode == "exact" else QContext.float(float(q))
    except (ValueError, ArithmeticError) as exc:
        raise UsageError(str(exc)) from None


# -- commands -----------------------------------------------------------------

def cmd_compute(args, out: Emitter) -> int:
    spec = build_family(args)
    ns = parse_int_list(args.n)
    xs = parse_rational_list(args.x)
    qs = parse_rational_list(args.q)
    method = args.method
    mode = "float" if method == "series" else args.mode
    if method == "padic_integral" and (args.p is None or args.prec_M is None):
        raise UsageError("padic_integral needs --p and --prec-M")
    if method == "padic_integral":
        try:
            pctx = PAdicContext(args.p, args.prec_M)
            for q in qs:
                QPAdic(q).check(pctx)
        except ValueError as exc:
            raise UsageError(str(exc)) from None
    ctxs = {q: _context(q, mode) for q in qs} if method != "padic_integral" else {}
    if mode == "exact" and any(x.denominator != 1 for x in xs):
        raise UsageError("exact mode needs integer --x values")
    records = []
    for n in ns:
        for x in xs:
            for q in qs:
                xv = int(x) if x.denominator == 1 else float(x)
                if method == "padic_integral":
                    v = family_integral(spec, n, int(x), QPAdic(q), pctx)
                    value, bound = {"residue": v.residue, "modulus": f"{pctx.p}^{pctx.precision_M}"}, 0.0
                else:
                    ev = (series_value(spec, n, xv, ctxs[q], args.tol) if method == "series"
                          else closed_form(spec, n, xv, ctxs[q]))
                    value, bound = _value_json(ev.value), float(ev.error_bound)
                    method_name = ev.method
                records.append({"family": spec.descriptor(), "n": n, "x": format_rational(x),
                                "q": format_rational(q),
                                "method": method_name if method != "padic_integral" else method,
                                "value": value, "error_bound": bound})
    for r in records:
        out.emit(r)
    return EXIT_OK


def _grid(args) -> Grid:
    return Grid(ns=parse_int_list(args.n) if args.n else None,
                xs=[int(x) for x in parse_rational_list(args.x)] if args.x else None,
                qs=parse_rational_list(args.q) if args.q else None,
                tol=args.tol)


def cmd_verify(args, out: Emitter) -> int:
    if args.suite not in SUITES:
        raise UsageError(f"unknown suite {args.suite!r}; choose from {', '.join(SUITES)}")
    res = run_suite(args.suite, _grid(args))
    out.fields = ["suite", "case", "status", "residual", "detail"]
    for c in res.cases:
        out.emit({"suite": res.name, "case": c.label, "status": "pass" if c.passed else "fail",
                  "residual": c.residual, "detail": c.detail})
    for line in res.info:
        out.emit({"suite": res.name, "case": "info", "status": "info", "residual": 0.0, "detail": line})
    out.emit({"suite": res.name, "case": "summary", "status": "pass" if res.passed else "fail",
              "residual": res.max_residual,
              "detail": f"{len(res.cases) - len(res.failures)}/{len(res.cases)} passed"})
    return EXIT_OK if res.passed else EXIT_FAIL


def _zeta_request(args, s: complex, with_char: bool) -> ZetaRequest:
    if args.w is None or args.a is None:
        raise UsageError("--w and --a are required")
    w = [parse_rational(t) for t in args.w.split(",")]
    a = [parse_rational(t) for t in args.a.split(",")]
    xs = parse_rational_list(args.x)
    qs = parse_rational_list(args.q)
    if len(xs) != 1 or len(qs) != 1:
        raise UsageError("zeta commands take a single --x and --q")
    chi = None
    if with_char:
        if not args.char:
            raise UsageError("--char is required")
        try:
            chi = parse_character(args.char)
        except ValueError as exc:
            raise UsageError(str(exc)) from None
    if args.r is not None and args.r != len(w):
        raise UsageError("--r disagrees with the number of weights")
    try:
        return ZetaRequest(s, xs[0], qs[0], len(w), tuple(w), tuple(a), chi,
                           args.tol if args.tol is not None else 1e-10)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def cmd_zeta(args, out: Emitter, with_char: bool) -> int:
    s = parse_complex(args.s or "2")
    req = _zeta_request(args, s, with_char)
    v = l_multiple(req) if with_char else zeta_multiple(req)
    out.fields = ["function", "s", "x", "q", "w", "a", "char", "value", "error_bound"]
    out.emit({"function": "l" if with_char else "zeta", "s": {"re": s.real, "im": s.imag},
              "x": format_rational(Fraction(req.x)), "q": format_rational(Fraction(req.q)),
              "w": args.w, "a": args.a, "char": args.char or "", "value": _value_json(v),
              "error_bound": v.abs_error})
    return EXIT_OK


def cmd_interp(args, out: Emitter) -> int:
    req = _zeta_request(args, 0, bool(args.char))
    tol = args.tol if args.tol is not None else 1e-8
    ok = True
    out.fields = ["n", "L", "R", "ratio", "residual_derived", "residual_stated", "passed"]
    for n in parse_int_list(args.n or "0..4"):
        rep = interpolation_check(n, ZetaRequest(0, req.x, req.q, req.r, req.weights, req.twists,
                                                 req.character), tol)
        ok &= rep.passed
        out.emit({"n": n, "L": _value_json(rep.L), "R": format_rational(Fraction(rep.R)),
                  "ratio": _value_json(rep.ratio), "residual_derived": rep.residual_derived,
                  "residual_stated": rep.residual_stated, "passed": rep.passed})
    return EXIT_OK if ok else EXIT_FAIL


def cmd_mellin(args, out: Emitter) -> int:
    s = parse_complex(args.s or "2")
    req = _zeta_request(args, s, bool(args.char))
    tol = args.tol if args.tol is not None and args.tol >= 1e-9 else 1e-6
    rep = mellin_check(s, req, tol)
    out.fields = ["s", "quadrature", "quadrature_error", "zeta_scaled", "difference", "passed"]
    out.emit({"s": {"re": s.real, "im": s.imag}, "quadrature": _value_json(rep.quadrature),
              "quadrature_error": rep.quadrature_error, "zeta_scaled": _value_json(rep.zeta_scaled),
              "difference": rep.difference, "passed": rep.passed})
    return EXIT_OK if rep.passed else EXIT_FAIL


def cmd_padic(args, out: Emitter) -> int:
    if args.p is None or args.prec_M is None:
        raise UsageError("padic-check needs --p and --prec-M")
    spec = build_family(args)
    try:
        ctx = PAdicContext(args.p, args.prec_M)
        qs = parse_rational_list(args.q)
        for q in qs:
            QPAdic(q).check(ctx)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    ok = True
    out.fields = ["family", "n", "x", "q", "integral", "closed_form", "match"]
    for n in parse_int_list(args.n):
        for x in parse_rational_list(args.x):
            if x.denominator != 1:
                raise UsageError("padic-check needs integer --x")
            for q in qs:
                integral = family_integral(spec, n, int(x), QPAdic(q), ctx)
                ref = ctx.number(closed_form(spec, n, int(x), QContext.exact(q)).value)
                match = integral == ref
                ok &= match
                out.emit({"family": spec.descriptor(), "n": n, "x": format_rational(x), "q": format_rational(q),
                          "integral": integral.residue, "closed_form": ref.residue, "match": match})
    return EXIT_OK if ok else EXIT_FAIL


# -- entry point ----------------------------------------------------------------

class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _add_family_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--family", choices=FAMILIES, default="plain")
    p.add_argument("--r", type=int)
    p.add_argument("--h", type=int)
    p.add_argument("--w")
    p.add_argument("--a")
    p.add_argument("--char")


def _add_common(p: argparse.ArgumentParser, n="0..3", x="0", q="1/2") -> None:
    p.add_argument("--n", default=n)
    p.add_argument("--x", default=x)
    p.add_argument("--q", default=q)
    p.add_argument("--tol", type=float)
    p.add_argument("--output", choices=("json", "csv"), default="json")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="qeuler", description="q-Euler families, multiple q-zeta values and their identities")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("compute", help="tabulate a family over an (n, x, q) grid")
    _add_family_flags(p)
    _add_common(p)
    p.add_argument("--mode", choices=("exact", "float"), default="exact")
    p.add_argument("--method", choices=METHODS, default="closed_form")
    p.add_argument("--p", type=int)
    p.add_argument("--prec-M", dest="prec_M", type=int)

    p = sub.add_parser("verify", help="run a named identity suite")
    p.add_argument("suite")
    p.add_argument("--n")
    p.add_argument("--x")
    p.add_argument("--q")
    p.add_argument("--tol", type=float)
    p.add_argument("--output", choices=("json", "csv"), default="json")

    for name, help_ in (("zeta", "multiple q-zeta value"), ("lfun", "multiple q-l value"),
                        ("interp-check", "series at s = -n against the family"),
                        ("mellin-check", "quadrature of the generating function")):
        p = sub.add_parser(name, help=help_)
        p.add_argument("--w", default="1")
        p.add_argument("--a", default="1")
        p.add_argument("--r", type=int)
        p.add_argument("--char")
        p.add_argument("--s")
        _add_common(p, n="0..4", x="1")

    p = sub.add_parser("padic-check", help="iterated fermionic integrals against closed forms")
    _add_family_flags(p)
    _add_common(p, q="4")
    p.add_argument("--p", type=int, default=3)
    p.add_argument("--prec-M", dest="prec_M", type=int, default=6)
    return parser


def main(argv: Optional[Iterable[str]] = None, stdout=None) -> int:
    stdout = stdout or sys.stdout
    try:
        args = build_parser().parse_args(list(argv) if argv is not None else None)
        if args.tol is not None and not args.tol > 0:
            raise UsageError("--tol must be positive")
        out = Emitter(args.output, stdout)
        # buffer so a late failure never leaves half a table behind
        buf = io.StringIO()
        out.stream = buf
        cmd = args.command
        if cmd == "compute":
            code = cmd_compute(args, out)
        elif cmd == "verify":
            code = cmd_verify(args, out)
        elif cmd in ("zeta", "lfun"):
            code = cmd_zeta(args, out, cmd == "lfun")
        elif cmd == "interp-check":
            code = cmd_interp(args, out)
        elif cmd == "mellin-check":
            code = cmd_mellin(args, out)
        else:
            code = cmd_padic(args, out)
        stdout.write(buf.getvalue())
        return code
    except UsageError as exc:
        diagnostic("UsageError", str(exc))
        return EXIT_USAGE
    except (QEulerError, ArithmeticError, ValueError) as exc:
        diagnostic(type(exc).__name__, str(exc))
        return EXIT_RUNTIME


def entry() -> None:
    sys.exit(main())
