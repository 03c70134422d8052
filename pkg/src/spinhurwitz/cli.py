"""Command-line front end.

Exit codes: 0 success, 1 a verification failed, 2 usage error. Data goes to
stdout, logs to stderr. Rationals are printed as exact num/den strings; only
the numeric soliton commands print floats (15 significant digits).
"""

import argparse
import csv
import io
import json
import logging
import sys
from fractions import Fraction

from . import __version__, cache

log = logging.getLogger("spinhurwitz")


class UsageError(Exception):
    pass


# argument parsing helpers


def parse_parts(text: str) -> tuple[int, ...]:
    text = text.strip().strip("[]").strip()
    if not text:
        return ()
    try:
        parts = tuple(int(x) for x in text.split(","))
    except ValueError:
        raise UsageError(f"not a partition: {text!r} (expected e.g. 3,1)") from None
    if any(x <= 0 for x in parts):
        raise UsageError(f"parts must be positive: {text!r}")
    return tuple(sorted(parts, reverse=True))


def parse_profiles(text: str) -> list[tuple[int, ...]]:
    return [parse_parts(chunk) for chunk in text.split(";") if chunk.strip()]


def parse_rational(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise UsageError(f"not a rational number: {text!r}") from None


def parse_point(text: str):
    """'delta:r' or 'delta:r:c' for p_k = c delta(k, r); 'dense:v1,v2,...' for p_k = v_k."""
    from .polyring import TimeAssignment
    kind, _, rest = text.partition(":")
    if kind == "delta":
        bits = rest.split(":")
        try:
            r = int(bits[0])
        except ValueError:
            raise UsageError(f"bad --at value {text!r}") from None
        c = parse_rational(bits[1]) if len(bits) > 1 else Fraction(1)
        return TimeAssignment.delta(r, c)
    if kind == "dense":
        values = [parse_rational(v) for v in rest.split(",") if v]
        return TimeAssignment.dense(dict(enumerate(values, start=1)))
    raise UsageError(f"bad --at value {text!r} (expected delta:r[:c] or dense:v1,v2,...)")


def rational(x) -> dict:
    x = Fraction(x)
    return {"num": str(x.numerator), "den": str(x.denominator)}


def numeric(x: float) -> str:
    return f"{x:.15g}"


# output


def emit(obj, fmt: str, out):
    if fmt == "pretty":
        out.write(json.dumps(obj, indent=2) + "\n")
    else:
        out.write(json.dumps(obj, separators=(",", ":")) + "\n")


def emit_rows(rows, columns, fmt, out):
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(columns)
        for row in rows:
            writer.writerow([row[c] for c in columns])
        out.write(buf.getvalue())
    else:
        emit(rows, fmt, out)


# commands


def cmd_partitions(args, out):
    from .combinatorics import odd_partitions, partitions, strict_partitions
    if args.d < 0:
        raise UsageError("--d must be nonnegative")
    if args.strict and args.odd:
        raise UsageError("choose at most one of --strict and --odd")
    if args.strict:
        rows = strict_partitions(args.d)
    elif args.odd:
        rows = odd_partitions(args.d)
    else:
        rows = partitions(args.d)
    emit([list(p) for p in rows], args.format, out)
    return 0


def cmd_qschur(args, out):
    from .symfun import q_schur, q_schur_at
    from .combinatorics import check_strict
    alpha = parse_parts(args.alpha)
    try:
        check_strict(alpha)
    except ValueError as e:
        raise UsageError(str(e)) from None
    if args.at:
        emit({"alpha": list(alpha), "value": rational(q_schur_at(alpha, parse_point(args.at)))}, args.format, out)
    else:
        emit(q_schur(alpha).to_json(), args.format, out)
    return 0


def cmd_schur(args, out):
    from .symfun import schur
    lam = parse_parts(args.lam)
    f = schur(lam)
    if args.at:
        emit({"lambda": list(lam), "value": rational(f.evaluate(parse_point(args.at)))}, args.format, out)
    else:
        emit(f.to_json(), args.format, out)
    return 0


def cmd_char(args, out):
    from . import characters
    if args.d < 0:
        raise UsageError("--d must be nonnegative")
    table = characters.sergeev_table(args.d) if args.kind == "sergeev" else characters.symmetric_table(args.d)
    if cache.load(args.kind, args.d) is None:
        cache.store(args.kind, args.d, table)
    dump = cache.dump_table(args.kind, args.d, table)
    if args.format == "csv":
        rows = [{"label": " ".join(map(str, r["label"])), "class": " ".join(map(str, r["class"])),
                 "num": r["num"], "den": r["den"]} for r in dump["rows"]]
        emit_rows(rows, ["label", "class", "num", "den"], "csv", out)
    else:
        emit(dump, args.format, out)
    return 0


def cmd_hurwitz(args, out):
    from .hurwitz import classical_hurwitz
    profiles = parse_profiles(args.profiles)
    try:
        value = classical_hurwitz(args.g, profiles)
    except ValueError as e:
        raise UsageError(str(e)) from None
    emit({"value": rational(value)}, args.format, out)
    return 0


def cmd_spin_hurwitz(args, out):
    from .hurwitz import spin_hurwitz, spin_hurwitz_gamma
    try:
        if args.r is not None:
            if args.d is None or args.p1 is None or args.p2 is None:
                raise UsageError("--r needs --d, --p1 and --p2")
            value = spin_hurwitz_gamma(args.sign, args.d, args.r, parse_parts(args.p1), parse_parts(args.p2))
        else:
            if args.profiles is None:
                raise UsageError("give --profiles, or --r with --d/--p1/--p2")
            value = spin_hurwitz(args.sign, parse_profiles(args.profiles), args.d)
    except ValueError as e:
        raise UsageError(str(e)) from None
    emit({"value": rational(value)}, args.format, out)
    return 0


def cmd_factorize(args, out):
    from .factorization import decompose, factorized_qs, omega_sign, rescale_times, verify_qs
    from .symfun import q_schur
    alpha = parse_parts(args.alpha)
    try:
        dec = decompose(alpha, args.r)
    except ValueError as e:
        raise UsageError(str(e)) from None
    report = {
        "alpha": list(alpha),
        "r": args.r,
        "mu": list(dec.mu),
        "a": {str(c): list(dec.a[c]) for c in dec.colors},
        "b": {str(c): list(dec.b[c]) for c in dec.colors},
        "admissible": dec.admissible,
    }
    if dec.admissible:
        report["hooks"] = {str(c): list(h) for c, h in dec.hooks().items()}
        report["omega_sign"] = omega_sign(dec)
    report["lhs"] = rescale_times(q_schur(alpha), args.r).to_json()
    report["rhs"] = factorized_qs(alpha, args.r).to_json()
    report["equal"] = verify_qs(alpha, args.r)["equal"]
    emit(report, args.format, out)
    return 0 if report["equal"] else 1


def cmd_tau(args, out):
    from . import tau
    if args.tau_cmd == "hyperg":
        times = {1: parse_rational(args.t1), 3: parse_rational(args.t3)}
        series = tau.hyperg_tau(args.sign, tau.HypergeomWeights.from_times(times), args.deg)
        data = series.to_json()
        if args.out:
            with open(args.out, "w") as fh:
                fh.write(json.dumps(data, indent=1) + "\n")
            log.info("wrote %d coefficients to %s", len(series.coeffs), args.out)
        else:
            emit(data, args.format, out)
        return 0
    if args.tau_cmd == "kdv":
        if args.n < 0:
            raise UsageError("--n must be nonnegative")
        scale = 2.0 if args.times == "bkp" else 1.0
        cfg = tau.SolitonConfig.canonical(args.n, args.sign, scale)
        try:
            xs = tau.parse_grid(args.grid)
        except ValueError as e:
            raise UsageError(str(e)) from None
        report = {"numeric": True, "n": args.n, "times": args.times, "coefficient": numeric(args.coefficient),
                  "tau_at_origin": numeric(tau.kdv_soliton_tau(cfg))}
        status = 0
        if args.check_pde:
            residual = tau.kdv_residual(cfg, xs, h=args.h, coefficient=args.coefficient)
            study = tau.convergence_study(cfg, xs[:: max(1, len(xs) // 5)], coefficient=args.coefficient)
            report.update(residual=numeric(residual), tol=numeric(args.tol),
                          orders=[numeric(o) for o in study["orders"]], passed=residual < args.tol)
            status = 0 if residual < args.tol else 1
        emit(report, args.format, out)
        return status
    if args.tau_cmd == "extract":
        series = tau.kdv_series(args.sign, args.d, args.r)
        value = tau.hurwitz_extract(args.d, args.r, series)
        emit({"d": args.d, "r": args.r, "value": rational(value)}, args.format, out)
        return 0
    raise UsageError("unknown tau subcommand")


def cmd_verify(args, out):
    from . import verify
    suite, jobs = args.suite, args.jobs
    if suite == "all":
        reports = verify.run_all(args.max, jobs)
    elif suite == "cut-and-join":
        from .operators import verify_cut_and_join
        results = {str(r): ok for r, ok in verify_cut_and_join(args.sign, args.d, args.order).items()}
        emit(results, args.format, out)
        return 0 if all(results.values()) else 1
    elif suite == "factorization":
        rows = verify.qs_table(args.max_size, args.r, jobs)
        table = [{"alpha": " ".join(map(str, r["alpha"])), "r": r["r"], "admissible": r["admissible"],
                  "result": "pass" if r["equal"] else "FAIL"} for r in rows]
        emit_rows(table, ["alpha", "r", "admissible", "result"], args.format if args.format != "json" else "csv", out)
        return 0 if all(r["equal"] for r in rows) else 1
    elif suite == "ratio":
        reports = [verify.ratio(args.N, args.r, args.max, jobs)]
    elif suite == "plucker":
        reports = [verify.plucker(args.window)]
    elif suite == "kdv":
        reports = [verify.kdv(args.n, args.grid, 2.0 if args.times == "bkp" else 1.0)]
    else:
        reports = [_SUITES[suite](verify, args)]
    for rep in reports:
        for key in ("residual",):
            if key in rep:
                rep[key] = numeric(rep[key])
        if "orders" in rep:
            rep["orders"] = [numeric(o) for o in rep["orders"]]
    emit(_stringify(reports), args.format, out)
    return 0 if all(r["passed"] for r in reports) else 1


_SUITES = {
    "qschur": lambda v, a: v.q_ground_truth(min(a.max, 8)),
    "cauchy": lambda v, a: v.cauchy(a.max),
    "orthogonality": lambda v, a: v.b_orthogonality(a.max),
    "sergeev": lambda v, a: v.sergeev_round_trip(a.max),
    "f3": lambda v, a: v.f3(a.max),
    "eigen": lambda v, a: v.eigen(a.max),
    "virasoro": lambda v, a: v.virasoro(3, a.max),
    "hurwitz": lambda v, a: v.classical(min(a.max, 5)),
    "triple": lambda v, a: v.triple(min(a.max, 6), 3),
}


def _stringify(obj):
    if isinstance(obj, Fraction):
        return rational(obj)
    if isinstance(obj, dict):
        return {str(k): _stringify(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_stringify(v) for v in obj]
    return obj


def cmd_cache(args, out):
    if args.action == "path":
        out.write(str(cache.cache_dir()) + "\n")
    elif args.action == "stats":
        try:
            emit(cache.stats(), args.format, out)
        except cache.CacheError as e:
            raise UsageError(str(e)) from None
    else:
        n = cache.clear()
        emit({"removed": n}, args.format, out)
    return 0


# parser


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=["json", "csv", "pretty"], default="json")
    common.add_argument("--cache-dir", help=f"table cache directory (default: ${cache.ENV_VAR} or ~/.cache)")
    common.add_argument("--jobs", type=int, default=1, help="worker processes for sweeps")
    common.add_argument("-v", "--verbose", action="store_true")

    parser = argparse.ArgumentParser(prog="spinhurwitz", description="Q Schur functions, spin Hurwitz numbers "
                                     "and BKP tau-functions in exact arithmetic.")
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="cmd", required=True)

    p = sub.add_parser("partitions", parents=[common], help="list partitions of d")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--strict", action="store_true")
    p.add_argument("--odd", action="store_true")
    p.set_defaults(func=cmd_partitions)

    p = sub.add_parser("qschur", parents=[common], help="Q Schur function as a polynomial or value")
    p.add_argument("--alpha", required=True)
    p.add_argument("--at", help="delta:r[:c] or dense:v1,v2,...")
    p.set_defaults(func=cmd_qschur)

    p = sub.add_parser("schur", parents=[common], help="Schur function as a polynomial or value")
    p.add_argument("--lambda", dest="lam", required=True)
    p.add_argument("--at")
    p.set_defaults(func=cmd_schur)

    p = sub.add_parser("char", parents=[common], help="character table")
    p.add_argument("--kind", choices=["sergeev", "symmetric"], default="sergeev")
    p.add_argument("--d", type=int, required=True)
    p.set_defaults(func=cmd_char)

    p = sub.add_parser("hurwitz", parents=[common], help="classical Hurwitz number")
    p.add_argument("--g", type=int, required=True)
    p.add_argument("--profiles", required=True, help="semicolon-separated, e.g. '2;2'")
    p.set_defaults(func=cmd_hurwitz)

    p = sub.add_parser("spin-hurwitz", parents=[common], help="spin Hurwitz number")
    p.add_argument("--sign", choices=["+", "-"], default="+")
    p.add_argument("--d", type=int)
    p.add_argument("--r", type=int, help="number of Gamma_d = (3,1^{d-3}) points")
    p.add_argument("--p1")
    p.add_argument("--p2")
    p.add_argument("--profiles", help="semicolon-separated odd profiles")
    p.set_defaults(func=cmd_spin_hurwitz)

    p = sub.add_parser("factorize", parents=[common], help="r-decomposition and factorized Q_alpha{p[r]}")
    p.add_argument("--alpha", required=True)
    p.add_argument("--r", type=int, required=True)
    p.set_defaults(func=cmd_factorize)

    p = sub.add_parser("tau", parents=[common], help="tau-function series and soliton checks")
    tsub = p.add_subparsers(dest="tau_cmd", required=True)
    t = tsub.add_parser("hyperg", parents=[common], help="hypergeometric series with exact exponents")
    t.add_argument("--sign", choices=["+", "-"], default="+")
    t.add_argument("--t1", default="0")
    t.add_argument("--t3", default="0")
    t.add_argument("--deg", type=int, required=True)
    t.add_argument("--out")
    t = tsub.add_parser("kdv", parents=[common], help="numeric KdV soliton tau-function")
    t.add_argument("--n", type=int, default=4)
    t.add_argument("--sign", choices=["+", "-"], default="+")
    t.add_argument("--grid", default="-1:1:0.05")
    t.add_argument("--check-pde", action="store_true")
    t.add_argument("--times", choices=["hurwitz", "bkp"], default="hurwitz",
                   help="phases (1/m) t_m (hurwitz) or (2/m) t_m (bkp)")
    t.add_argument("--coefficient", type=float, default=12.0, help="c in c u_t3 = u_xxx + 6 u u_x")
    t.add_argument("--h", type=float, default=1e-3)
    t.add_argument("--tol", type=float, default=1e-6)
    t = tsub.add_parser("extract", parents=[common], help="H(Gamma^r_d) from the soliton series")
    t.add_argument("--sign", choices=["+", "-"], default="+")
    t.add_argument("--d", type=int, required=True)
    t.add_argument("--r", type=int, required=True)
    p.set_defaults(func=cmd_tau)

    p = sub.add_parser("verify", parents=[common], help="run a verification suite")
    p.add_argument("suite", choices=["all", "cut-and-join", "factorization", "ratio", "plucker", "kdv",
                                     *_SUITES])
    p.add_argument("--max", type=int, default=8)
    p.add_argument("--max-size", type=int, default=12)
    p.add_argument("--sign", choices=["+", "-"], default="+")
    p.add_argument("--d", type=int, default=5)
    p.add_argument("--order", type=int, default=3)
    p.add_argument("--r", type=int, default=3)
    p.add_argument("--N", type=int, default=2)
    p.add_argument("--window", type=int, default=9)
    p.add_argument("--n", type=int, default=4)
    p.add_argument("--grid", default="-1:1:0.05")
    p.add_argument("--times", choices=["hurwitz", "bkp"], default="hurwitz")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("cache", parents=[common], help="cache administration")
    p.add_argument("action", choices=["clear", "stats", "path"])
    p.set_defaults(func=cmd_cache)
    return parser


def run(argv=None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, stream=sys.stderr,
                        format="%(levelname)s %(name)s: %(message)s")
    if args.cache_dir:
        cache.set_cache_dir(args.cache_dir)
    if args.jobs < 1:
        args.jobs = 1
    try:
        return args.func(args, out)
    except UsageError as e:
        sys.stderr.write(f"spinhurwitz {args.cmd}: error: {e}\n")
        sub = [a for a in parser._subparsers._group_actions[0].choices.values() if a.prog.endswith(" " + args.cmd)]
        (sub[0] if sub else parser).print_usage(sys.stderr)
        return 2
    finally:
        if args.cache_dir:
            cache.set_cache_dir(None)


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
