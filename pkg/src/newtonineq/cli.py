"""Command-line entry point: ``newtonineq <subcommand> ...``.

Exit status: 0 on success, 1 on usage or input errors, 2 when a proven
claim fails to verify (which would indicate a defect).
"""
from __future__ import annotations

import argparse
import json
import math
import sys
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction

from . import __version__
from .esf import FormalValueError, HypothesisError, SelfConjugateList, WedgeSpec, elem_sym_all, mean_E, norm_P
from .scalar import binomial, format_decimal, format_rational, parse_rational

EXIT_OK, EXIT_USAGE, EXIT_FAIL = 0, 1, 2

SVG_SIZE = 480
SVG_RADIUS = 1.0
SVG_PALETTE = ("#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b", "#17becf")


class UsageError(Exception):
    pass


# --- helpers -----------------------------------------------------------------------

def _fmt(value, decimal):
    return format_rational(value) if decimal is None else format_decimal(value, decimal)


def _load_list(args) -> SelfConjugateList:
    if getattr(args, "input", None):
        try:
            with open(args.input, encoding="utf-8") as fh:
                text = fh.read()
        except OSError as exc:
            raise UsageError(f"cannot read {args.input}: {exc}") from None
        where = args.input
    elif getattr(args, "list", None):
        text, where = args.list, "<inline>"
    else:
        raise UsageError("give a list file with --input or an inline JSON list")
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise UsageError(f"{where}: parse error at line {exc.lineno}, column {exc.colno}: {exc.msg}") from None
    try:
        return SelfConjugateList.from_json_dict(doc)
    except HypothesisError as exc:
        raise UsageError(f"{where}: hypothesis violated: {exc}") from None
    except (ValueError, TypeError, ZeroDivisionError) as exc:
        raise UsageError(f"{where}: {exc}") from None


def _int_list(text: str) -> list[int]:
    try:
        return [int(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise UsageError(f"expected comma-separated integers, got {text!r}") from None


def _rational_list(text: str) -> list[Fraction]:
    try:
        return [parse_rational(t.strip()) for t in text.split(",") if t.strip()]
    except (ValueError, ZeroDivisionError):
        raise UsageError(f"expected comma-separated rationals, got {text!r}") from None


def _write(path, text: str) -> None:
    if path in (None, "-"):
        sys.stdout.write(text)
        return
    try:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    except OSError as exc:
        raise UsageError(f"cannot write {path}: {exc}") from None


# --- esf ---------------------------------------------------------------------------

def cmd_esf(args) -> int:
    X = _load_list(args)
    seq = elem_sym_all(X)
    d = args.decimal

    def cell(k, value):
        if seq.odd_formal and k % 2:
            return f"{_fmt(value, d)}*t"
        return _fmt(value, d)

    e_row = [cell(k, seq.coeff(k)) for k in range(seq.n + 1)]
    E_row = [cell(k, Fraction(seq.coeff(k), binomial(seq.n, k))) for k in range(seq.n + 1)]
    P_row = [cell(k, norm_P(seq, k)) for k in range(seq.n + 1)]
    out = [f"n {seq.n}"]
    if seq.odd_formal:
        out.append(f"tau {_fmt(seq.tau, d)}")
    out += ["e " + " ".join(e_row), "E " + " ".join(E_row), "P " + " ".join(P_row)]
    print("\n".join(out))
    return EXIT_OK


# --- check -------------------------------------------------------------------------

def _check_family(payload):
    from .inequalities import run_checks

    X, family, wedge = payload
    return run_checks(X, [family], wedge)


def _proven(report, X: SelfConjugateList) -> bool:
    from .inequalities import T14

    if report.family in T14:
        return True
    if report.family in ("lambda-newton", "gen-lambda-newton"):
        return bool(report.wedge_member)
    # Newton families are proven for lists of nonnegative reals only
    return all(b == 0 for _, b in X.pairs) and all(b2 == 0 for _, b2 in X.sq_pairs) and not X.formal


def cmd_check(args) -> int:
    from .inequalities import T14, family_name, reports_to_csv

    X = _load_list(args)
    try:
        families = [family_name(f.strip()) for f in args.families.split(",") if f.strip()] if args.families else list(T14)
        wedge = WedgeSpec(parse_rational(args.lam)) if args.lam is not None else None
    except (ValueError, ZeroDivisionError) as exc:
        raise UsageError(str(exc)) from None
    for fam in families:
        if fam in ("lambda-newton", "gen-lambda-newton") and wedge is None:
            raise UsageError(f"{fam} needs --lambda")
    if "t14-v" in families and not X.reals_even_multiplicity():
        print("t14-v: skipped, needs every real entry at even multiplicity", file=sys.stderr)
        families = [f for f in families if f != "t14-v"]
    payloads = [(X, fam, wedge) for fam in families]
    try:
        if args.jobs > 1 and len(payloads) > 1:
            with ProcessPoolExecutor(max_workers=args.jobs) as pool:
                results = list(pool.map(_check_family, payloads))
        else:
            results = [_check_family(p) for p in payloads]
    except FormalValueError as exc:
        raise UsageError(f"formal list: {exc}") from None
    reports = [r for rs, _ in results for r in rs]
    for _, vac in results:
        for fam in vac:
            print(f"{fam}: vacuous, no in-range indices at n={X.n}", file=sys.stderr)
    if args.k is not None:
        reports = [r for r in reports if r.k == args.k]
    if args.l is not None:
        reports = [r for r in reports if r.l == args.l]
    _write(args.csv, reports_to_csv(reports, args.decimal))
    failed = [r for r in reports if not r.holds and _proven(r, X)]
    for r in failed:
        print(f"FAILED proven claim: {r.family} k={r.k} l={r.l}", file=sys.stderr)
    return EXIT_FAIL if failed else EXIT_OK


# --- positivity ----------------------------------------------------------------------

def cmd_positivity(args) -> int:
    from . import symbolic

    which = args.which
    if which in ("f", "g", "p-gap") and args.l is None:
        raise UsageError(f"{which} needs --l")
    try:
        if which == "f":
            poly = symbolic.build_f(args.m, args.s, args.k, args.l)
        elif which == "g":
            poly = symbolic.build_g(args.m, args.s, args.k, args.l)
        elif which == "p-gap":
            poly = symbolic.build_p_gap(args.m, args.s, args.k, args.l)
        else:
            if args.s:
                raise UsageError("theta-gap is stated for pairs only (--s 0)")
            poly = symbolic.gap_polynomial(args.m, args.k)
    except symbolic.SizeBoundError as exc:
        raise UsageError(str(exc)) from None
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    mode = "nonneg" if which == "theta-gap" else "strict"
    verdict = symbolic.positivity_check(poly, mode)
    names = poly.variables
    doc = {
        "which": which, "m": args.m, "s": args.s, "k": args.k, "l": args.l,
        "mode": mode, "passed": verdict.passed, "n_terms": verdict.n_terms,
        "offenders": [_term_text(e, c, names) for e, c in verdict.offenders],
    }
    if verdict.n_terms <= args.list_terms:
        doc["terms"] = poly.to_text().splitlines()
    print(json.dumps(doc, indent=2))
    if args.dump:
        _write(args.dump, poly.to_text())
    # the P-normalised gap is not claimed positive; its verdict is informational
    return EXIT_FAIL if (not verdict.passed and which != "p-gap") else EXIT_OK


def _term_text(exps, coef, names) -> str:
    mono = " ".join(f"{v}^{e}" if e > 1 else v for v, e in zip(names, exps) if e)
    return f"{format_rational(coef)} * {mono}" if mono else format_rational(coef)


# --- lemma23 -----------------------------------------------------------------------

def _lemma23_one(X):
    from .realroots import verify_lemma23

    return verify_lemma23(X).to_json_dict()


def cmd_lemma23(args) -> int:
    from .extremal import corpus

    if args.random:
        count, seed = args.random
        lists = corpus(count, args.n_max, seed)
    else:
        lists = [_load_list(args)]
    if args.jobs > 1 and len(lists) > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            verdicts = list(pool.map(_lemma23_one, lists, chunksize=16))
    else:
        verdicts = [_lemma23_one(X) for X in lists]
    passed = sum(v["all_real_even"] and v["all_real_odd"] and v["interlace"] for v in verdicts)
    if args.random:
        flags: dict = {}
        for v in verdicts:
            for f in v["degenerate_flags"]:
                flags[f] = flags.get(f, 0) + 1
        print(json.dumps({"count": len(verdicts), "passed": passed, "failed": len(verdicts) - passed,
                          "flags": dict(sorted(flags.items()))}))
        if args.verbose:
            for v in verdicts:
                print(json.dumps(v))
    else:
        print(json.dumps(verdicts[0]))
    return EXIT_OK if passed == len(verdicts) else EXIT_FAIL


# --- wedge -------------------------------------------------------------------------

def wedge_csv(rows) -> str:
    lines = ["lambda,theta_radians,x,y"]
    for lam, theta, x, y in rows:
        lines.append(f"{format_rational(lam)},{theta:.12f},{x:.12f},{y:.12f}")
    return "\n".join(lines) + "\n"


def wedge_svg(lambdas, samples: int) -> str:
    from .inequalities import wedge_figure_data

    half = SVG_SIZE / 2
    scale = half * 0.8 / SVG_RADIUS

    def pt(x, y):
        return f"{half + x * scale:.3f},{half - y * scale:.3f}"

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{SVG_SIZE}" height="{SVG_SIZE}" '
        f'viewBox="0 0 {SVG_SIZE} {SVG_SIZE}">',
        f'<rect width="{SVG_SIZE}" height="{SVG_SIZE}" fill="white"/>',
    ]
    for i, lam in enumerate(lambdas):
        rows = wedge_figure_data([lam], SVG_RADIUS, samples)
        color = SVG_PALETTE[i % len(SVG_PALETTE)]
        path = " ".join(pt(x, y) for _, _, x, y in rows)
        parts.append(f'<polygon points="{path}" fill="{color}" fill-opacity="0.25" stroke="{color}" stroke-width="1.5"/>')
        parts.append(f'<text x="{SVG_SIZE - 150}" y="{24 + 18 * i}" font-size="13" fill="{color}">'
                     f'&#955; = {format_rational(lam)}</text>')
    parts += [
        f'<line x1="10" y1="{half}" x2="{SVG_SIZE - 10}" y2="{half}" stroke="black"/>',
        f'<line x1="{half}" y1="10" x2="{half}" y2="{SVG_SIZE - 10}" stroke="black"/>',
        f'<text x="{SVG_SIZE - 50}" y="{half + 18}" font-size="14">Re(z)</text>',
        f'<text x="{half + 8}" y="22" font-size="14">Im(z)</text>',
        "</svg>",
    ]
    return "\n".join(parts) + "\n"


def cmd_wedge(args) -> int:
    from .inequalities import wedge_figure_data

    lambdas = _rational_list(args.lambdas)
    if not lambdas:
        raise UsageError("give at least one lambda")
    try:
        lambdas = [WedgeSpec(lam).lam for lam in lambdas]
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    rows = wedge_figure_data(lambdas, args.radius, args.samples)
    _write(args.csv, wedge_csv(rows))
    if args.svg:
        _write(args.svg, wedge_svg(lambdas, args.samples))
    for lam in lambdas:
        theta = math.acos(math.sqrt(float(lam)))
        print(f"lambda {format_rational(lam)}: half-angle {theta:.12f} rad", file=sys.stderr)
    return EXIT_OK


# --- search ------------------------------------------------------------------------

def cmd_search(args) -> int:
    from .inequalities import IndexRangeError
    from .search import SoundnessError, estimate_optimal_constant, witness_corpus_update, CorpusError

    k, l, h = args.k, args.l, args.h
    if args.indices:
        idx = _int_list(args.indices)
        if len(idx) not in (2, 3):
            raise UsageError("--indices takes k,l or k,l,h")
        k, l = idx[0], idx[1]
        h = idx[2] if len(idx) == 3 else h
    if k is None or l is None:
        raise UsageError("search needs k and l (--indices or --k/--l)")
    try:
        result = estimate_optimal_constant(args.family, args.n, k, l, h, args.budget, args.seed, args.jobs)
    except SoundnessError as exc:
        print(f"FAILED proven claim: {exc}", file=sys.stderr)
        return EXIT_FAIL
    except (IndexRangeError, ValueError) as exc:
        raise UsageError(str(exc)) from None
    doc = result.to_json_dict()
    if args.decimal is not None:
        doc["best_ratio"] = format_decimal(Fraction(result.best_ratio), args.decimal)
    step = max(1, len(result.history) // 20)
    doc["history"] = result.history[::step]
    if args.corpus:
        try:
            doc["corpus"] = witness_corpus_update(result, args.corpus)
        except CorpusError as exc:
            raise UsageError(str(exc)) from None
    print(json.dumps(doc, indent=2))
    return EXIT_OK


# --- example -----------------------------------------------------------------------

def cmd_example(args) -> int:
    from . import extremal

    try:
        if args.id == "21":
            X = extremal.gen_example_21(args.m)
        elif args.id == "25":
            X = extremal.gen_example_25(args.m, parse_rational(args.eps))
        elif args.id == "31":
            X = extremal.gen_example_31(args.m)
        else:
            X = extremal.gen_example_32(args.m, parse_rational(args.tau))
    except (ValueError, ZeroDivisionError) as exc:
        raise UsageError(str(exc)) from None
    doc = X.to_json_dict()
    params = {"m": args.m}
    if args.id == "25":
        params["eps"] = format_rational(parse_rational(args.eps))
    if args.id == "32":
        params["tau"] = format_rational(parse_rational(args.tau))
    doc["provenance"] = {"example": f"example_{args.id}", "parameters": params}
    print(json.dumps(doc))
    return EXIT_OK


# --- parser ------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="newtonineq", description="Exact Newton-like inequality verification.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def with_list(p):
        p.add_argument("list", nargs="?", help="inline JSON list document")
        p.add_argument("--input", metavar="FILE", help="JSON list file")

    def with_decimal(p):
        p.add_argument("--decimal", type=int, metavar="N", help="show values rounded to N decimal places")

    p = sub.add_parser("esf", help="print e_k, E_k and P_k of a list")
    with_list(p)
    with_decimal(p)
    p.set_defaults(func=cmd_esf)

    p = sub.add_parser("check", help="CSV report of every in-range inequality instance")
    with_list(p)
    with_decimal(p)
    p.add_argument("--families", help="comma-separated: newton, gen-newton, lambda-newton, gen-lambda-newton, i..v "
                                      "(default i,ii,iii,iv,v)")
    p.add_argument("--k", type=int)
    p.add_argument("--l", type=int)
    p.add_argument("--lambda", dest="lam", metavar="P/Q", help="wedge parameter for the lambda families")
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--csv", metavar="PATH", help="write CSV here instead of stdout")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("positivity", help="coefficient positivity of f, g, the theta gap or the P gap")
    p.add_argument("--m", type=int, required=True, help="pair count")
    p.add_argument("--s", type=int, default=0, help="real count")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--l", type=int)
    p.add_argument("--which", choices=("f", "g", "theta-gap", "p-gap"), required=True)
    p.add_argument("--dump", metavar="PATH", help="write the polynomial in canonical text form")
    p.add_argument("--list-terms", type=int, default=16, metavar="N", help="list all terms when at most N")
    p.set_defaults(func=cmd_positivity)

    p = sub.add_parser("lemma23", help="reality and interlacing of the even/odd parts")
    with_list(p)
    p.add_argument("--random", nargs=2, type=int, metavar=("COUNT", "SEED"))
    p.add_argument("--n-max", type=int, default=10)
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--verbose", action="store_true", help="also print every verdict in batch mode")
    p.set_defaults(func=cmd_lemma23)

    p = sub.add_parser(
        "wedge", help="boundary points of the critical wedges",
        description=f"CSV rows (lambda, theta_radians, x, y).  The SVG is illustrative: "
                    f"{SVG_SIZE}x{SVG_SIZE} px, wedge radius {SVG_RADIUS} drawn at 80% of the half-width.",
    )
    p.add_argument("--lambdas", required=True, metavar="LIST", help="comma-separated rationals in [0, 1]")
    p.add_argument("--radius", type=float, default=1.0)
    p.add_argument("--samples", type=int, default=32)
    p.add_argument("--csv", metavar="PATH")
    p.add_argument("--svg", metavar="PATH")
    p.set_defaults(func=cmd_wedge)

    p = sub.add_parser("search", help="estimate the best constant by randomised descent")
    with_decimal(p)
    p.add_argument("--family", required=True, help="i..v, or 'probe' (C = 1, explicit k, l, h)")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--indices", metavar="K,L[,H]")
    p.add_argument("--k", type=int)
    p.add_argument("--l", type=int)
    p.add_argument("--h", type=int)
    p.add_argument("--budget", type=int, default=100_000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--corpus", metavar="PATH", help="JSON-lines witness store to update")
    p.set_defaults(func=cmd_search)

    p = sub.add_parser("example", help="print an extremal example as a list document")
    p.add_argument("id", choices=("21", "25", "31", "32"))
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--eps", default="1/2")
    p.add_argument("--tau", default="1")
    p.set_defaults(func=cmd_example)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code in (0, None) else EXIT_USAGE
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"newtonineq {args.command}: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
