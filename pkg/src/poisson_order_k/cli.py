"""``pok``: command-line driver.

Exit codes: 0 success, 1 checks failed, 2 usage error, 3 budget/bracket or
solver error.
"""

from __future__ import annotations

import argparse
import dataclasses
import datetime as _dt
import json
import sys
from concurrent.futures import ThreadPoolExecutor
from typing import Any, Sequence

from . import __version__, formulas, harness
from .boundaries import ALPHA_TOL, BETA_TOL, alpha, beta, first_double_mode
from .claims import generate_claim_index
from .errors import InvalidParameterError, OracleBudgetError, PoissonOrderKError
from .output import FORMATS, OutputRecord, write
from .params import OrderKParams
from .pmf import ORACLE_MAX_K, ORACLE_MAX_N, RECURRENCE_ENGINES, Engine, PmfTable, compute_pmf
from .scaled import decimal_string, rel_diff_arrays
from .stats import TIE_RTOL, summarize

EXIT_OK, EXIT_FAILED, EXIT_USAGE, EXIT_SOLVER = 0, 1, 2, 3
ENGINE_CHOICES = [e.value for e in Engine] + ["all"]


class UsageError(Exception):
    pass


def _provenance(args, **extra) -> dict[str, Any]:
    prov: dict[str, Any] = dict(extra)
    if args.stamp:
        prov["version"] = __version__
        prov["generated_at"] = _dt.datetime.now(_dt.timezone.utc).replace(microsecond=0).isoformat()
    return prov


def _emit(args, record: OutputRecord) -> None:
    write(record, args.format, args.out)


def _pmap(fn, items, threads: int) -> list:
    if threads > 1 and len(items) > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            return list(pool.map(fn, items))
    return [fn(x) for x in items]


# -- pmf ----------------------------------------------------------------------

def _pmf_columns(prefix: str, table: PmfTable, n: int) -> dict[str, Any]:
    m, e = float(table.mantissa[n]), int(table.exponent[n])
    return {
        f"{prefix}decimal": decimal_string(m, e),
        f"{prefix}mantissa": m,
        f"{prefix}exponent": e,
    }


def cmd_pmf(args) -> int:
    params = OrderKParams(args.k, args.lam)
    if args.n_max < 0:
        raise UsageError("--n-max must be >= 0")
    prov = _provenance(args)
    if args.engine != "all":
        table = compute_pmf(params, args.n_max, args.engine)
        hm, he = table.h_values()
        rows = []
        for n in range(len(table)):
            row = {"n": n}
            row.update(_pmf_columns("p_", table, n))
            row["h_decimal"] = decimal_string(float(hm[n]), int(he[n]))
            rows.append(row)
        prov["engine"] = table.engine.value
    else:
        engines = list(RECURRENCE_ENGINES)
        if params.k <= ORACLE_MAX_K and args.n_max <= ORACLE_MAX_N:
            engines.append(Engine.ORACLE)
        else:
            prov["oracle_skipped"] = f"needs k <= {ORACLE_MAX_K} and n_max <= {ORACLE_MAX_N}"
        tables = [compute_pmf(params, args.n_max, e) for e in engines]
        ref = tables[0]
        dev = [0.0] * len(ref)
        for t in tables[1:]:
            d = rel_diff_arrays(ref.mantissa, ref.exponent, t.mantissa, t.exponent)
            dev = [max(a, float(b)) for a, b in zip(dev, d)]
        rows = []
        for n in range(len(ref)):
            row: dict[str, Any] = {"n": n}
            for t in tables:
                row.update(_pmf_columns(f"{t.engine.value}_", t, n))
            row["max_rel_deviation"] = dev[n]
            rows.append(row)
        prov["engines"] = [e.value for e in engines]
    _emit(args, OutputRecord("pmf", {"k": params.k, "lambda": params.lam, "n_max": args.n_max,
                                     "engine": args.engine}, rows, prov))
    return EXIT_OK


# -- stats --------------------------------------------------------------------

def cmd_stats(args) -> int:
    if (args.lam is None) == (args.mean is None):
        raise UsageError("give exactly one of --lambda or --mean")
    params = OrderKParams(args.k, args.lam) if args.lam is not None else OrderKParams.from_mean(args.k, args.mean)
    tie = args.tol if args.tol is not None else TIE_RTOL
    s = summarize(params, tie_rtol=tie)
    row = {
        "k": params.k,
        "lambda": params.lam,
        "mean": s.mean,
        "variance": s.variance,
        "median": s.median,
        "modes": list(s.modes),
        "multimodal": s.multimodal,
        "cdf_at_median": s.cdf_at_median,
    }
    given = {"lambda": args.lam} if args.lam is not None else {"mean": args.mean}
    _emit(args, OutputRecord("stats", {"k": args.k, **given}, [row],
                             _provenance(args, engine="adelson", tie_rtol=tie)))
    return EXIT_OK


# -- boundaries ---------------------------------------------------------------

def cmd_boundaries(args) -> int:
    if args.n_to < args.n_from:
        raise UsageError("--n-to must be >= --n-from")
    k = args.k
    if args.kind == "median":
        tol = args.tol if args.tol is not None else ALPHA_TOL
        solve, predict, locate = alpha, formulas.alpha_asymptotic, formulas.median_formula
    else:
        tol = args.tol if args.tol is not None else BETA_TOL
        solve, predict, locate = beta, formulas.beta_asymptotic, formulas.mode_formula
    ns = list(range(args.n_from, args.n_to + 1))
    points = _pmap(lambda n: solve(k, n, tol), ns, args.threads)
    rows = []
    for b in points:
        pred = predict(k, b.n)
        rows.append({
            "k": b.k,
            "n": b.n,
            "kind": b.kind.value,
            "value": b.value,
            "offset": b.offset,
            "lambda": b.lam,
            "location": locate(k, b.n),
            "prediction": pred,
            "deviation": b.value - pred,
            "residual": b.residual,
            "modes_at_boundary": b.modes_at_boundary,
        })
    params = {"kind": args.kind, "k": k, "n_from": args.n_from, "n_to": args.n_to}
    _emit(args, OutputRecord("boundaries", params, rows, _provenance(args, engine="adelson-dd", tol=tol)))
    return EXIT_OK


# -- double modes -------------------------------------------------------------

def cmd_double_modes(args) -> int:
    tie = args.tol if args.tol is not None else TIE_RTOL

    def one(k: int) -> dict[str, Any]:
        lam, modes = first_double_mode(k, args.lambda_max, tie_rtol=tie)
        return {"k": k, "lambda": lam, "modes": modes, "kappa_lambda_0": formulas.kappa(k) * lam}

    rows = _pmap(one, sorted(set(args.k)), args.threads)
    params = {"k": sorted(set(args.k)), "lambda_max": args.lambda_max}
    _emit(args, OutputRecord("double-modes", params, rows, _provenance(args, engine="adelson", tie_rtol=tie)))
    return EXIT_OK


# -- verify -------------------------------------------------------------------

def _record_row(r) -> dict[str, Any]:
    if isinstance(r, harness.FitReport):
        return {
            "name": r.name,
            "kind": "fit",
            "passed": r.passed,
            "range": r.grid,
            "max_abs_deviation": r.residual_max,
            "residual_rms": r.residual_rms,
            "criterion": r.criterion,
            "counterexamples": [],
            "fitted_coefficients": r.fitted_coefficients,
            "details": r.details,
        }
    return {
        "name": r.name,
        "kind": "check",
        "passed": r.passed,
        "range": r.params_range,
        "max_abs_deviation": r.max_abs_deviation,
        "residual_rms": None,
        "criterion": "no counterexamples",
        "counterexamples": [_jsonable(dataclasses.asdict(c)) for c in r.counterexamples],
        "fitted_coefficients": {},
        "details": _jsonable(r.details),
    }


def _jsonable(x):
    # Fractions and numpy scalars become plain JSON values
    return json.loads(json.dumps(x, default=lambda o: float(o) if hasattr(o, "__float__") else str(o)))


def cmd_verify(args) -> int:
    if args.list:
        for name in harness.SUITES:
            print(name)
        return EXIT_OK
    options: dict[str, Any] = {}
    if args.config:
        with open(args.config, encoding="utf-8") as fh:
            options.update(json.load(fh))
    if args.k_max is not None:
        options["k_max"] = args.k_max
    options.setdefault("threads", args.threads)
    names = list(harness.SUITES) if "all" in args.suite else args.suite
    unknown = [s for s in names if s not in harness.SUITES]
    if unknown:
        raise UsageError(f"unknown suite(s): {', '.join(unknown)}; see --list")
    rows = []
    for name in names:
        for r in harness.run_suite(name, **options):
            row = {"suite": name}
            row.update(_record_row(r))
            rows.append(row)
    ok = all(r["passed"] is not False for r in rows)
    params = {"suite": names, "options": {k: v for k, v in sorted(options.items())}}
    _emit(args, OutputRecord("verify", params, rows, _provenance(args, all_passed=ok)))
    for r in rows:
        tag = "PASS" if r["passed"] else ("INFO" if r["passed"] is None else "FAIL")
        print(f"{tag}  {r['suite']}/{r['name']}", file=sys.stderr)
    return EXIT_OK if ok else EXIT_FAILED


def cmd_claims(args) -> int:
    text = generate_claim_index()
    if args.out in (None, "-"):
        sys.stdout.write(text)
    else:
        with open(args.out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    return EXIT_OK


# -- parser -------------------------------------------------------------------

def _positive_int(s: str) -> int:
    v = int(s)
    if v < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {s}")
    return v


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=FORMATS, default="csv")
    common.add_argument("--out", default=None, help="output path (default stdout)")
    common.add_argument("--tol", type=float, default=None, help="solver tolerance override")
    common.add_argument("--threads", type=_positive_int, default=1)
    common.add_argument("--stamp", action="store_true", help="add version and timestamp to provenance")

    p = argparse.ArgumentParser(prog="pok", description="Poisson distribution of order k: pmf, median, mode.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("pmf", parents=[common], help="pmf table")
    s.add_argument("--k", type=_positive_int, required=True)
    s.add_argument("--lambda", dest="lam", type=float, required=True)
    s.add_argument("--n-max", type=int, required=True)
    s.add_argument("--engine", choices=ENGINE_CHOICES, default="adelson")
    s.set_defaults(func=cmd_pmf)

    s = sub.add_parser("stats", parents=[common], help="mean, variance, median, modes")
    s.add_argument("--k", type=_positive_int, required=True)
    s.add_argument("--lambda", dest="lam", type=float)
    s.add_argument("--mean", type=float, help="kappa * lambda")
    s.set_defaults(func=cmd_stats)

    s = sub.add_parser("boundaries", parents=[common], help="solve alpha_{k,n} or beta_{k,n}")
    s.add_argument("--kind", choices=("median", "mode"), required=True)
    s.add_argument("--k", type=_positive_int, required=True)
    s.add_argument("--n-from", type=int, required=True)
    s.add_argument("--n-to", type=int, required=True)
    s.set_defaults(func=cmd_boundaries)

    s = sub.add_parser("double-modes", parents=[common], help="first double mode and (kappa lambda)_0")
    s.add_argument("--k", type=_positive_int, nargs="+", required=True)
    s.add_argument("--lambda-max", type=float, default=2.0)
    s.set_defaults(func=cmd_double_modes)

    s = sub.add_parser("verify", parents=[common], help="run verification suites")
    s.add_argument("--suite", action="append", default=None, help="suite name or 'all' (repeatable)")
    s.add_argument("--list", action="store_true", help="list suites and exit")
    s.add_argument("--k-max", type=_positive_int, default=None, help="largest k for the power-law fit")
    s.add_argument("--config", default=None, help="JSON file of suite options")
    s.set_defaults(func=cmd_verify)

    s = sub.add_parser("claims", help="print the claim index (markdown)")
    s.add_argument("--out", default=None)
    s.set_defaults(func=cmd_claims)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "verify" and not args.list and not args.suite:
        parser.error("verify needs --suite or --list")
    try:
        return args.func(args)
    except (UsageError, InvalidParameterError) as exc:
        print(f"pok: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OracleBudgetError as exc:
        print(f"pok: error: {exc}", file=sys.stderr)
        return EXIT_SOLVER
    except PoissonOrderKError as exc:
        print(f"pok: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_SOLVER


if __name__ == "__main__":
    sys.exit(main())
