"""Command-line front end.

Subcommands: convolve, norms, search, verify, conjecture.  Exit codes:
0 all checks passed, 1 a verified inequality was violated (the witness
instance is printed), 2 usage or budget error.  FGW_THREADS caps
worker threads; --threads overrides it.  Reports are byte-identical
for identical (argv, seed) regardless of thread count.
"""

from __future__ import annotations

import argparse
import math
import sys

from .errors import BudgetExceededError
from .lorentz import LorentzIndex, lorentz_norm, rearrange_radial
from .operators import FAMILY_KINDS, SetFamily, default_radius
from .radial import (
    chi,
    convolve_radial,
    format_radial_literal,
    oracle_convolve,
    parse_radial_literal,
)
from .reportio import json_dumps, write_csv, write_json
from .theorems import (
    build_thm1_suite,
    conjecture_scan,
    thm3_equivalence_report,
    thm4_lower_chain,
    thm5_exponent_fit,
    verify_display_majorization,
    verify_lemma1,
    verify_p_columns,
    verify_q_columns,
    verify_r22,
    verify_thm1,
)
from .words import FreeGroupCtx

VERIFY_TARGETS = (
    "lemma1",
    "thm1",
    "r22",
    "thm3",
    "thm4",
    "thm5",
    "pk",
    "qn",
    "display",
    "all",
)

THM5_PAIRS = ((1.0, math.inf), (2.0, 2.0), (2.0, math.inf), (1.0, 2.0), (1.5, 3.0))


def _add_common(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--k", type=int, default=2, help="number of generators (>= 2)")
    parser.add_argument("--threads", type=int, default=None, help="worker threads (overrides FGW_THREADS)")
    parser.add_argument("--format", choices=("json", "csv"), default="json")
    parser.add_argument("--output", default=None, help="write reports here instead of stdout")


def _add_family(parser: argparse.ArgumentParser, radius_default=None) -> None:
    parser.add_argument("--family", choices=FAMILY_KINDS, default="sphere-unions")
    parser.add_argument("--radius", type=int, default=radius_default)
    parser.add_argument("--budget", type=int, default=1000)
    parser.add_argument("--seed", type=int, default=0)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="fgw",
        description="exact radial convolution toolkit on free groups",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("convolve", help="chi_n * chi_m with exact structure constants")
    _add_common(p)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--oracle", action="store_true", help="cross-check against brute enumeration")

    p = sub.add_parser("norms", help="Lorentz norm of a radial literal")
    _add_common(p)
    p.add_argument("--p", type=float, required=True)
    p.add_argument("--s", type=str, required=True, help="second index; 'inf' for the weak norm")
    p.add_argument("--radial", required=True, help='coefficients, e.g. "1,1/3,0,2"')

    p = sub.add_parser("search", help="set-search lower bound for an operator norm")
    _add_common(p)
    _add_family(p)
    p.add_argument("--f", required=True, help="radial literal of the convolver")
    p.add_argument(
        "--estimator",
        choices=("restricted", "weak"),
        default="restricted",
        help="restricted: L^{2,1} -> L^{2,inf}; weak: L^{2,1} -> l^2",
    )

    p = sub.add_parser("verify", help="run a verifier suite")
    _add_common(p)
    _add_family(p)
    p.add_argument("target", choices=VERIFY_TARGETS)
    p.add_argument("--f", default=None, help="radial literal (thm1/thm4 single function)")
    p.add_argument("--k-max", type=int, default=None, help="max sphere index (lemma1/pk)")
    p.add_argument("--n-max", type=int, default=None, help="max sphere index (r22/qn)")
    p.add_argument("--samples", type=int, default=100, help="sample count (thm3)")
    p.add_argument("--max-degree", type=int, default=6, help="sampled degree cap (thm3)")
    p.add_argument("--p", type=float, default=None, help="Lebesgue index (thm4)")
    p.add_argument("--s", type=float, default=None, help="source index (thm5)")
    p.add_argument("--t", type=str, default=None, help="target index, 'inf' allowed (thm5)")
    p.add_argument("--n-min", type=int, default=4, help="smallest fitted n (thm5)")
    p.add_argument("--fit-n-max", type=int, default=40, help="largest fitted n (thm5)")

    p = sub.add_parser("conjecture", help="exploratory functional-vs-estimator scan")
    _add_common(p)
    _add_family(p)
    p.add_argument("--s-grid", default="1,1.25,1.5,1.75,2", help="comma-separated s values")

    return parser


def _ctx(args) -> FreeGroupCtx:
    return FreeGroupCtx(args.k)


def _family(args, ctx: FreeGroupCtx) -> SetFamily:
    radius = args.radius if args.radius is not None else default_radius(ctx)
    return SetFamily(args.family, radius, budget=args.budget, seed=args.seed)


def _emit(args, objects, csv_rows) -> None:
    out = sys.stdout
    opened = None
    if args.output:
        opened = open(args.output, "w", encoding="utf-8")
        out = opened
    try:
        if args.format == "csv":
            write_csv(out, csv_rows)
        elif isinstance(objects, dict):
            out.write(json_dumps(objects))
            out.write("\n")
        else:
            write_json(out, objects)
    finally:
        if opened is not None:
            opened.close()


def _finish(args, reports) -> int:
    objects = []
    rows = []
    for rep in reports:
        objects.extend(rep.json_objects())
        rows.extend(rep.csv_rows())
    _emit(args, objects, rows)
    failures = [c for rep in reports for c in rep.failures()]
    if failures:
        worst = failures[0]
        print(
            f"violated: {worst['id']}: {worst['inequality']}",
            file=sys.stderr,
        )
        return 1
    return 0


def cmd_convolve(args) -> int:
    ctx = _ctx(args)
    if args.format == "csv":
        raise ValueError("convolve emits JSON only")
    if args.n < 0 or args.m < 0:
        raise ValueError("sphere indices must be nonnegative")
    product = convolve_radial(chi(ctx, args.n), chi(ctx, args.m))
    obj = {str(l): str(c) for l, c in product.nonzero_items()}
    if args.oracle:
        obj["oracle_match"] = oracle_convolve(ctx, args.n, args.m).coeffs == product.coeffs
    _emit(args, obj, None)
    return 0


def cmd_norms(args) -> int:
    ctx = _ctx(args)
    if args.format == "csv":
        raise ValueError("norms emits JSON only")
    s = float(args.s)
    idx = LorentzIndex(args.p, s)
    f = parse_radial_literal(ctx, args.radial)
    value = lorentz_norm(rearrange_radial(f), idx)
    obj = {
        "kind": "norm",
        "k": ctx.k,
        "p": args.p,
        "s": s if math.isfinite(s) else "inf",
        "f": format_radial_literal(f),
        "value": value,
    }
    _emit(args, [obj], None)
    return 0


def cmd_search(args) -> int:
    from .operators import restricted_weak_estimate, weak_estimate_21_to_2

    ctx = _ctx(args)
    fam = _family(args, ctx)
    f = parse_radial_literal(ctx, args.f)
    if args.estimator == "restricted":
        report = restricted_weak_estimate(f, fam, threads=args.threads)
    else:
        report = weak_estimate_21_to_2(f, fam, threads=args.threads)
    report = {"kind": "search", "estimator": args.estimator, "f": format_radial_literal(f), **report}
    if args.format == "csv":
        _emit(
            args,
            None,
            [(f"search:{args.estimator}", f"f={report['f']}", None, report["estimate"], None, "informational")],
        )
    else:
        _emit(args, [report], None)
    return 0


def _verify_reports(args, ctx: FreeGroupCtx, target: str) -> list:
    fam = _family(args, ctx)
    threads = args.threads
    reports = []
    if target in ("lemma1", "all"):
        k_max = args.k_max if args.k_max is not None else 8
        reports.append(verify_lemma1(ctx, fam, k_max, threads=threads))
    if target in ("thm1", "all"):
        if args.f is not None:
            suite = [("f", parse_radial_literal(ctx, args.f))]
        else:
            suite = build_thm1_suite(ctx, seed=args.seed)
        for label, f in suite:
            rep = verify_thm1(f, fam, threads=threads)
            rep.params["label"] = label
            reports.append(rep)
    if target in ("r22", "all"):
        n_max = args.n_max if args.n_max is not None else 8
        reports.append(verify_r22(ctx, fam, n_max, threads=threads))
    if target in ("thm3", "all"):
        reports.append(
            thm3_equivalence_report(
                ctx,
                samples=args.samples,
                seed=args.seed,
                max_degree=args.max_degree,
                fam=fam,
                threads=threads,
            )
        )
    if target in ("thm4", "all"):
        if args.f is not None:
            suite = [("f", parse_radial_literal(ctx, args.f))]
        else:
            suite = build_thm1_suite(ctx, seed=args.seed)
        ps = [args.p] if args.p is not None else [1.25, 1.5, 1.75]
        for p in ps:
            for label, f in suite:
                rep = thm4_lower_chain(f, p)
                rep.params["label"] = label
                reports.append(rep)
    if target in ("thm5", "all"):
        n_range = range(args.n_min, args.fit_n_max + 1)
        if args.s is not None or args.t is not None:
            if args.s is None or args.t is None:
                raise ValueError("thm5 needs both --s and --t")
            pairs = [(args.s, float(args.t))]
        else:
            pairs = THM5_PAIRS
        for s, t in pairs:
            reports.append(thm5_exponent_fit(ctx, s, t, n_range))
    if target in ("pk", "all"):
        k_max = args.k_max if args.k_max is not None else 6
        radius = args.radius if args.radius is not None else default_radius(ctx)
        reports.append(verify_p_columns(ctx, k_max, radius, threads=threads))
    if target in ("qn", "all"):
        n_max = args.n_max if args.n_max is not None else 6
        radius = args.radius if args.radius is not None else default_radius(ctx)
        reports.append(verify_q_columns(ctx, n_max, radius, threads=threads))
    if target in ("display", "all"):
        reports.append(verify_display_majorization(ctx))
    return reports


def cmd_verify(args) -> int:
    ctx = _ctx(args)
    reports = _verify_reports(args, ctx, args.target)
    return _finish(args, reports)


def cmd_conjecture(args) -> int:
    ctx = _ctx(args)
    fam = _family(args, ctx)
    try:
        s_grid = [float(tok) for tok in args.s_grid.split(",") if tok.strip()]
    except ValueError as exc:
        raise ValueError(f"malformed s grid {args.s_grid!r}: {exc}") from None
    report = conjecture_scan(ctx, s_grid=s_grid, fam=fam, threads=args.threads)
    return _finish(args, [report])


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    handlers = {
        "convolve": cmd_convolve,
        "norms": cmd_norms,
        "search": cmd_search,
        "verify": cmd_verify,
        "conjecture": cmd_conjecture,
    }
    try:
        return handlers[args.command](args)
    except BudgetExceededError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
