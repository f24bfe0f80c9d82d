"""Command-line front end.

Exit codes: 0 success, 1 usage error, 2 computation failure, 3 selftest failure.
"""

from __future__ import annotations

import argparse
import os
import sys
import time
from fractions import Fraction
from typing import Sequence

from . import cue_sampler as cs
from . import exact_functionals as ef
from . import polytope_ehrhart as pe
from .convergence_harness import FUNCTIONALS, convergence_table, richardson
from .errors import CueLabError
from .limit_constants import ANCHORS, Budget, build_spec, evaluate_constant
from .partitions import Partition
from .reporting import Report, emit_report

EXIT_OK, EXIT_USAGE, EXIT_COMPUTE, EXIT_SELFTEST = 0, 1, 2, 3

EXACT_ANCHORS = {
    "ks": "Eq:KSmomentsCharpol",
    "sc": "FuncZ:MidSecularCoeff",
    "kr3g": "FuncZ:KR3Gfunc",
    "mom": "FuncZ:MoMo",
    "truncated": "FuncZ:Truncation",
    "birkhoff": "Eq:BeckFormulaBirkhoff",
    "subbirkhoff": "Eq:BeckFormulaSubBirkhoff",
    "transport": "Eq:EhrhartTransportationPolytope",
    "sample": "Eq:WeylHaarRealisationBis",
}

# flags that a config file may set; values are parsed with the same converters
CONFIG_KEYS = ("N", "k", "beta", "rho", "c", "lambda", "m", "t", "seed", "tol", "samples", "method", "format", "out", "workers")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _rational(s: str) -> Fraction:
    try:
        return Fraction(s)
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(f"not a rational number: {s!r}") from exc


def _int_list(s: str) -> list[int]:
    try:
        return [int(v) for v in s.split(",") if v.strip()]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"not a comma-separated integer list: {s!r}") from exc


def _common() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--N", type=_int_list)
    p.add_argument("--k", type=int)
    p.add_argument("--beta", type=int)
    p.add_argument("--rho", type=_rational)
    p.add_argument("--c", type=_rational)
    p.add_argument("--lambda", dest="lam", type=_rational)
    p.add_argument("--m", type=int)
    p.add_argument("--t", type=int)
    p.add_argument("--seed", type=int)
    p.add_argument("--tol", type=float)
    p.add_argument("--samples", type=int)
    p.add_argument("--method", choices=["auto", "hankel", "spline", "quad", "qmc", "mc"])
    p.add_argument("--format", choices=["json", "csv"])
    p.add_argument("--out")
    p.add_argument("--workers", type=int)
    p.add_argument("--config", help="key = value file; command-line flags take precedence")
    return p


def build_parser() -> argparse.ArgumentParser:
    common = _common()
    parser = _Parser(prog="cue-lab", description="Exact CUE moments, limit constants and convergence checks.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    e = sub.add_parser("exact", parents=[common], help="exact finite-N moments")
    e.add_argument("functional", choices=["ks", "sc", "kr3g", "mom", "truncated"])
    lim = sub.add_parser("limit", parents=[common], help="limiting constants")
    lim.add_argument("functional", choices=[f.lower() for f in FUNCTIONALS])
    cv = sub.add_parser("converge", parents=[common], help="rescaled exact values and Richardson extrapolation")
    cv.add_argument("functional", choices=[f.lower() for f in FUNCTIONALS])
    eh = sub.add_parser("ehrhart", parents=[common], help="lattice-point counts")
    eh.add_argument("polytope", choices=["birkhoff", "subbirkhoff", "transport"])
    eh.add_argument("--rows", type=_int_list, help="row partition λ for transport")
    eh.add_argument("--cols", type=_int_list, help="column partition μ for transport")
    sp = sub.add_parser("sample", parents=[common], help="MCMC estimate of a CUE functional")
    sp.add_argument("observable", choices=["trace", "z1", "sc", "truncated"])
    sp.add_argument("--chains", type=int, default=100)
    st = sub.add_parser("selftest", parents=[common], help="run the acceptance criteria")
    st.add_argument("--criteria", type=_int_list)
    return parser


def _read_config(path: str) -> dict[str, str]:
    out = {}
    try:
        with open(path, encoding="utf-8") as fh:
            for lineno, raw in enumerate(fh, 1):
                line = raw.split("#", 1)[0].strip()
                if not line:
                    continue
                if "=" not in line:
                    raise UsageError(f"{path}:{lineno}: expected key = value")
                key, val = (s.strip() for s in line.split("=", 1))
                if key not in CONFIG_KEYS:
                    raise UsageError(f"{path}:{lineno}: unknown key {key!r}")
                out[key] = val
    except OSError as exc:
        raise UsageError(f"cannot read config {path}: {exc.strerror}") from exc
    return out


def _merge_config(args: argparse.Namespace, parser: argparse.ArgumentParser) -> None:
    if not args.config:
        return
    conv = {
        "N": _int_list, "k": int, "beta": int, "rho": _rational, "c": _rational, "lambda": _rational,
        "m": int, "t": int, "seed": int, "tol": float, "samples": int, "method": str, "format": str,
        "out": str, "workers": int,
    }
    for key, raw in _read_config(args.config).items():
        attr = "lam" if key == "lambda" else key
        if getattr(args, attr, None) is None:
            try:
                setattr(args, attr, conv[key](raw))
            except (ValueError, argparse.ArgumentTypeError) as exc:
                raise UsageError(f"config value for {key}: {exc}") from exc


def resolve_workers(flag: int | None) -> int:
    if flag is not None:
        if flag < 1:
            raise UsageError("--workers must be ≥ 1")
        return flag
    env = os.environ.get("CUE_LAB_WORKERS")
    if env:
        try:
            n = int(env)
        except ValueError as exc:
            raise UsageError(f"CUE_LAB_WORKERS is not an integer: {env!r}") from exc
        if n < 1:
            raise UsageError("CUE_LAB_WORKERS must be ≥ 1")
        return n
    return os.cpu_count() or 1


def _need(args, *names):
    missing = [n for n in names if getattr(args, "lam" if n == "lambda" else n) is None]
    if missing:
        raise UsageError(f"{args.command} needs " + ", ".join("--" + n for n in missing))


def _single_N(args) -> int:
    _need(args, "N")
    if len(args.N) != 1:
        raise UsageError("--N takes a single value here")
    return args.N[0]


def _limit_params(kind: str, args) -> dict:
    kind = kind.upper()
    if kind in ("KS", "VOL_B", "VOL_S"):
        _need(args, "k")
        return {"k": args.k}
    if kind in ("SC", "ZT"):
        _need(args, "k", "rho")
        return {"k": args.k, "rho": args.rho}
    if kind == "KR3G":
        _need(args, "k", "c")
        return {"k": args.k, "c": args.c}
    _need(args, "k", "beta")
    return {"k": args.k, "beta": args.beta}


def cmd_exact(args) -> list[Report]:
    f = args.functional
    N = _single_N(args)
    if f == "ks":
        _need(args, "k")
        params, val = {"N": N, "k": args.k}, ef.ks_moment(N, args.k)
    elif f == "sc":
        _need(args, "m", "k")
        params, val = {"N": N, "m": args.m, "k": args.k}, ef.secular_moment(N, args.m, args.k)
    elif f == "kr3g":
        _need(args, "m", "k")
        params, val = {"N": N, "m": args.m, "k": args.k}, ef.kr3g_moment(N, args.m, args.k)
    elif f == "mom":
        _need(args, "k", "beta")
        params, val = {"N": N, "k": args.k, "beta": args.beta}, ef.mom_moment(N, args.k, args.beta)
    else:
        _need(args, "k", "t")
        lam = args.lam if args.lam is not None else Fraction(1)
        if N < args.k * args.t:
            raise UsageError("the truncated moment is exact only for N ≥ k·t")
        params, val = {"N": N, "k": args.k, "t": args.t, "lambda": lam}, ef.truncated_moment_lambda(args.k, args.t, lam * lam)
    return [Report(f, params, val, 0, "exact", EXACT_ANCHORS[f])]


def cmd_limit(args) -> list[Report]:
    kind = args.functional.upper()
    params = _limit_params(kind, args)
    method = args.method or "auto"
    if method in ("qmc", "mc") and args.seed is None:
        raise UsageError("randomized methods require --seed")
    budget = Budget(method=method, tol=args.tol or 1e-3, seed=args.seed, samples=args.samples or 2 ** 16)
    est = evaluate_constant(build_spec(kind, **params), budget)
    value = est.exact if est.exact is not None else est.value
    return [Report(kind, params, value, est.abs_error, est.method, ANCHORS[kind], seed=est.seed,
                   extra={k: v for k, v in est.diagnostics.items()})]


def cmd_converge(args) -> list[Report]:
    kind = args.functional.upper()
    params = _limit_params(kind, args)
    _need(args, "N")
    rows = convergence_table(kind, params, args.N, workers=resolve_workers(args.workers))
    reports = [Report(kind, {**params, "N": r.N}, r.rescaled, 0, "exact-rescaled", ANCHORS[kind]) for r in rows]
    try:
        ext = richardson([(r.N, r.rescaled) for r in rows])
    except CueLabError:
        return reports
    reports.append(Report(kind, {**params, "N": list(args.N)}, ext.value, ext.abs_error, "richardson", ANCHORS[kind]))
    return reports


def cmd_ehrhart(args) -> list[Report]:
    if args.polytope == "transport":
        _need(args, "t")
        if not args.rows or not args.cols:
            raise UsageError("transport needs --rows and --cols")
        lam, mu = Partition(tuple(args.rows)), Partition(tuple(args.cols))
        val = pe.ehrhart_transport(lam, mu, args.t)
        params = {"rows": list(lam.parts), "cols": list(mu.parts), "t": args.t}
    else:
        _need(args, "k", "t")
        fn = pe.ehrhart_birkhoff if args.polytope == "birkhoff" else pe.ehrhart_subbirkhoff
        val = fn(args.k, args.t)
        params = {"k": args.k, "t": args.t}
    return [Report(args.polytope, params, val, 0, "coefficient-extraction", EXACT_ANCHORS[args.polytope])]


def cmd_sample(args) -> list[Report]:
    N = _single_N(args)
    if args.seed is None:
        raise UsageError("sample requires --seed")
    samples = args.samples or 10 ** 5
    chains = max(2, args.chains)
    keep = max(1, samples // chains)
    obs = args.observable
    if obs == "trace":
        f = cs.abs_trace_sq()
    elif obs == "z1":
        _need(args, "k")
        f = cs.abs_charpoly_at_one(args.k)
    elif obs == "sc":
        _need(args, "m", "k")
        f = cs.abs_secular(args.m, args.k)
    else:
        _need(args, "t", "k")
        f = cs.abs_truncated(args.t, args.k, float(args.lam) if args.lam is not None else 1.0)
    burn = max(100, keep // 10)
    ens = cs.sample_ensemble(N, chains, keep + burn, burn, args.seed)
    mean, se = cs.estimate_functional(ens, f)
    params = {"N": N, "observable": f.name, "chains": chains, "sweeps_kept": keep}
    return [Report(f.name, params, mean, se, "mcmc", EXACT_ANCHORS["sample"], seed=args.seed, stderr=se,
                   extra={"acceptance_rate": round(ens.acceptance_rate, 4), "proposal_width": round(ens.width, 5)})]


def cmd_selftest(args) -> tuple[list[Report], bool]:
    from .acceptance import run_all

    results = run_all(args.criteria)
    reports = []
    for r in results:
        print(r.line(), file=sys.stderr)
        reports.append(Report(f"criterion {r.number}", {"title": r.title}, int(r.passed), 0, "selftest", "acceptance",
                              runtime_ms=r.seconds * 1000, extra={"details": r.details}))
    return reports, all(r.passed for r in results)


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        _merge_config(args, parser)
        resolve_workers(args.workers)
        fmt = args.format or "json"
        t0 = time.perf_counter()
        ok = True
        if args.command == "selftest":
            reports, ok = cmd_selftest(args)
        else:
            handler = {"exact": cmd_exact, "limit": cmd_limit, "converge": cmd_converge,
                       "ehrhart": cmd_ehrhart, "sample": cmd_sample}[args.command]
            reports = handler(args)
            elapsed = (time.perf_counter() - t0) * 1000
            for r in reports:
                r.runtime_ms = elapsed
        text = emit_report(reports, fmt, args.out)
        if args.out is None:
            sys.stdout.write(text)
        return EXIT_OK if ok else EXIT_SELFTEST
    except UsageError as exc:
        print(f"cue-lab: usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (CueLabError, ValueError, ArithmeticError, OSError) as exc:
        print(f"cue-lab: computation failed: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_COMPUTE


if __name__ == "__main__":
    sys.exit(main())
