"""Command-line front end: evaluate, bound, verify, optimize, scan.

Machine-readable output only: CSV (with a '#'-prefixed column-header
comment) or JSON lines (each record carries a schema_version field).
Numeric columns are emitted with 17 significant digits so files
round-trip bit-exactly; re-running a command with the same inputs and
seed produces byte-identical output.

Exit codes: 0 success, 1 usage error, 2 verification violation,
3 numerical non-convergence.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from typing import Sequence

from .bounds import (
    E2,
    E3,
    E6,
    BoundParams,
    theorem1_bound,
    theorem2_bound,
    theorem2_coeffs,
)
from .numerics import geometric_grid
from .optimize import Objective, crossover_scan, optimize_params
from .verify import SampleSpec, SUPPORTED_CHECKS, verify_lemma, verify_theorem_envelope
from .zeta import EvalPoint, default_em_config, zeta_prime_em

SCHEMA_VERSION = 1
OUT_DIR_ENV = "ZETABOUNDS_OUT"

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_VIOLATION = 2
EXIT_NONCONVERGED = 3


class UsageError(Exception):
    pass


def _fmt(x) -> str:
    if isinstance(x, float):
        return format(x, ".17g")
    if x is None:
        return ""
    return str(x)


def _resolve_out(path: str | None):
    if path is None:
        return sys.stdout, False
    if not os.path.isabs(path):
        base = os.environ.get(OUT_DIR_ENV)
        if base:
            path = os.path.join(base, path)
    return open(path, "w", encoding="utf-8", newline="\n"), True


def _write_rows(rows, columns, kind, fmt, out_path) -> None:
    handle, owned = _resolve_out(out_path)
    try:
        if fmt == "csv":
            handle.write("# " + ",".join(columns) + "\n")
            for row in rows:
                handle.write(",".join(_fmt(row.get(col)) for col in columns) + "\n")
        else:  # json-lines
            for row in rows:
                rec = {"schema_version": SCHEMA_VERSION, "kind": kind}
                rec.update({col: row.get(col) for col in columns})
                handle.write(json.dumps(rec, sort_keys=True, allow_nan=True) + "\n")
    finally:
        if owned:
            handle.close()


def _t_values(args) -> list[float]:
    if args.t is not None:
        if args.t_min is not None or args.t_max is not None:
            raise UsageError("pass either --t or a --t-min/--t-max range, not both")
        return [args.t]
    if args.t_min is None or args.t_max is None:
        raise UsageError("need --t or both --t-min and --t-max")
    if not (0 < args.t_min <= args.t_max):
        raise UsageError("need 0 < t_min <= t_max")
    return geometric_grid(args.t_min, args.t_max, args.samples)


def _bound_params(args) -> BoundParams:
    try:
        return BoundParams(k=args.k, tau=args.tau, q=args.q, t1=args.t1, t2=args.t2)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc


def _check_theorem_domain(ts: Sequence[float], theorem: int) -> None:
    threshold = E2 if theorem == 1 else E6
    for t in ts:
        if not (t >= threshold * (1 - 1e-6)):
            raise UsageError(
                f"t={t:g} below theorem-{theorem} threshold {threshold:.6f}"
            )


def _cmd_eval(args) -> int:
    ts = _t_values(args)
    if args.theorem is not None:
        _check_theorem_domain(ts, args.theorem)
    rows = []
    nonconverged = 0
    for t in sorted(ts):
        point = EvalPoint(t)
        try:
            cfg = default_em_config(point, tol=args.tol, for_derivative=True)
            result = zeta_prime_em(point, cfg)
        except ValueError as exc:
            raise UsageError(str(exc)) from exc
        if not result.converged:
            nonconverged += 1
        rows.append(
            {
                "t": t,
                "re_zeta_prime": result.value.real,
                "im_zeta_prime": result.value.imag,
                "abs_zeta_prime": abs(result.value),
                "error_bound": result.error_bound,
            }
        )
    columns = ["t", "re_zeta_prime", "im_zeta_prime", "abs_zeta_prime", "error_bound"]
    _write_rows(rows, columns, "eval", args.format, args.out)
    return EXIT_NONCONVERGED if nonconverged else EXIT_OK


_BOUND_COLUMNS = [
    "t", "thm1_total", "thm2_total",
    "thm1_head", "thm1_mid_tail", "thm1_tail_error",
    "thm2_head", "thm2_block_13", "thm2_block_23", "thm2_mid_tail",
    "thm2_tail_error",
    "Q1", "Q2", "Q3", "Q4", "Q5", "Q6",
]


def _cmd_bound(args) -> int:
    ts = _t_values(args)
    params = _bound_params(args)
    want = {1, 2} if args.theorem is None else {args.theorem}
    if args.theorem is not None:
        _check_theorem_domain(ts, args.theorem)
    coeffs = theorem2_coeffs(params)
    rows = []
    for t in sorted(ts):
        row: dict = {"t": t}
        if 1 in want and t >= E2 * (1 - 1e-6):
            curve = theorem1_bound(t)
            row["thm1_total"] = curve.total
            for name, val in curve.per_term.items():
                row[f"thm1_{name}"] = val
        if 2 in want and t >= E6 * (1 - 1e-6):
            curve = theorem2_bound(t, params, coeffs)
            row["thm2_total"] = curve.total
            for name, val in curve.per_term.items():
                row[f"thm2_{name}"] = val
            for i, q in enumerate(coeffs.Q):
                row[f"Q{i + 1}"] = q
        rows.append(row)
    _write_rows(rows, _BOUND_COLUMNS, "bound", args.format, args.out)
    if args.trace:
        sys.stderr.write(coeffs.trace_report() + "\n")
    return EXIT_OK


_VERIFY_COLUMNS = [
    "check_id", "samples", "violations", "min_slack", "max_oracle",
    "error_budget_used", "notes",
]


def _cmd_verify(args) -> int:
    params = _bound_params(args)
    reports = []
    if args.lemma is None and args.theorem is None:
        raise UsageError("verify needs --lemma and/or --theorem")
    if args.lemma is not None:
        targets = SUPPORTED_CHECKS if args.lemma == "all" else [args.lemma]
        for check_id in targets:
            if check_id == "2.2" and args.lemma == "all":
                continue  # the variants are already in the list
            ranges = {"M": (1, args.max_m)} if check_id == "4.6" else {}
            spec = SampleSpec(samples=args.samples, seed=args.seed, ranges=ranges)
            try:
                reports.append(verify_lemma(check_id, spec))
            except ValueError as exc:
                raise UsageError(str(exc)) from exc
    if args.theorem is not None:
        lo = args.t_min if args.t_min is not None else (E2 if args.theorem == 1 else E6)
        hi = args.t_max if args.t_max is not None else 1e4
        try:
            reports.append(
                verify_theorem_envelope(
                    args.theorem, (lo, hi), args.samples, params
                )
            )
        except ValueError as exc:
            raise UsageError(str(exc)) from exc
    rows = [r.to_record() for r in reports]
    _write_rows(rows, _VERIFY_COLUMNS, "verify", args.format, args.out)
    return EXIT_VIOLATION if any(r.violations for r in reports) else EXIT_OK


def _cmd_optimize(args) -> int:
    if args.objective == "bound-at-t":
        t = args.t if args.t is not None else 1e4
        obj = Objective.minimize_bound_at_t(t)
    elif args.objective == "q1":
        obj = Objective.minimize_q1()
    else:
        weights = tuple(float(w) for w in args.weights.split(","))
        try:
            obj = Objective.minimize_weighted_q(weights)
        except ValueError as exc:
            raise UsageError(str(exc)) from exc
    try:
        result = optimize_params(obj, ranges=None, budget=args.budget)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    rows = []
    for step, (p, value) in enumerate(result.trace):
        rows.append(
            {
                "step": step, "k": p.k, "tau": p.tau, "q": p.q,
                "t1": p.t1, "t2": p.t2, "objective": value,
            }
        )
    columns = ["step", "k", "tau", "q", "t1", "t2", "objective"]
    _write_rows(rows, columns, "optimize", args.format, args.out)
    best = result.best
    sys.stderr.write(
        "best: "
        f"k={_fmt(best.k)} tau={_fmt(best.tau)} q={_fmt(best.q)} "
        f"t1={_fmt(best.t1)} t2={_fmt(best.t2)} "
        f"objective={_fmt(result.objective_value)} "
        f"evaluations={result.evaluations}\n"
    )
    if args.crossover:
        t_star = crossover_scan(best, t_max=args.crossover_t_max)
        sys.stderr.write(f"crossover: {_fmt(t_star)}\n")
    return EXIT_OK


def _cmd_scan(args) -> int:
    from .zeta import zeta_prime_oracle  # heavy import path kept local

    ts = _t_values(args)
    theorem = args.theorem if args.theorem is not None else 1
    _check_theorem_domain(ts, theorem)
    params = _bound_params(args)
    coeffs = theorem2_coeffs(params) if theorem == 2 else None
    rows = []
    nonconverged = 0
    for t in sorted(ts):
        if theorem == 1:
            bound = theorem1_bound(t).total
        else:
            bound = theorem2_bound(t, params, coeffs).total
        oracle = zeta_prime_oracle(EvalPoint(t))
        if not oracle.converged:
            nonconverged += 1
        value = abs(oracle.value)
        rows.append(
            {
                "t": t,
                "bound": bound,
                "oracle": value,
                "slack": bound - value - oracle.error_bound,
                "oracle_error": oracle.error_bound,
            }
        )
    columns = ["t", "bound", "oracle", "slack", "oracle_error"]
    _write_rows(rows, columns, "scan", args.format, args.out)
    return EXIT_NONCONVERGED if nonconverged else EXIT_OK


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="zetabounds",
        description=(
            "Evaluate the zeta derivative on the critical line, compute its "
            "explicit upper bounds, verify every supporting inequality, and "
            "tune the bound parameters."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p: argparse.ArgumentParser, with_t: bool = True) -> None:
        if with_t:
            p.add_argument("--t", type=float, default=None, help="single t value")
            p.add_argument("--t-min", type=float, default=None)
            p.add_argument("--t-max", type=float, default=None)
            p.add_argument(
                "--samples", type=int, default=50,
                help="grid size for --t-min/--t-max (geometric spacing)",
            )
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--out", default=None, help="output path (default stdout); "
                       f"relative paths resolve under ${OUT_DIR_ENV} when set")
        p.add_argument("--format", choices=("csv", "json-lines"), default="csv")

    def add_params(p: argparse.ArgumentParser) -> None:
        p.add_argument("--k", type=float, default=2.0)
        p.add_argument("--tau", type=float, default=2.0)
        p.add_argument("--q", type=float, default=2.0)
        p.add_argument("--t1", type=float, default=E3)
        p.add_argument("--t2", type=float, default=E6)

    p_eval = sub.add_parser("eval", help="certified zeta' values")
    add_common(p_eval)
    p_eval.add_argument("--tol", type=float, default=1e-9)
    p_eval.add_argument("--theorem", type=int, choices=(1, 2), default=None,
                        help="additionally require t inside this theorem's range")
    p_eval.set_defaults(func=_cmd_eval)

    p_bound = sub.add_parser("bound", help="bound totals and breakdowns")
    add_common(p_bound)
    add_params(p_bound)
    p_bound.add_argument("--theorem", type=int, choices=(1, 2), default=None)
    p_bound.add_argument("--trace", action="store_true",
                         help="print the coefficient derivation trace to stderr")
    p_bound.set_defaults(func=_cmd_bound)

    p_verify = sub.add_parser("verify", help="inequality sweeps")
    add_common(p_verify)
    add_params(p_verify)
    p_verify.add_argument("--lemma", default=None,
                          help=f"check id ({', '.join(SUPPORTED_CHECKS)}) or 'all'")
    p_verify.add_argument("--theorem", type=int, choices=(1, 2), default=None)
    p_verify.add_argument("--max-m", type=int, default=10000,
                          help="exhaustive M range for check 4.6")
    p_verify.set_defaults(func=_cmd_verify, samples=50)

    p_opt = sub.add_parser("optimize", help="tune the free parameters")
    add_common(p_opt, with_t=False)
    p_opt.add_argument("--objective", choices=("q1", "bound-at-t", "weighted"),
                       default="bound-at-t")
    p_opt.add_argument("--t", type=float, default=None,
                       help="target t for --objective bound-at-t")
    p_opt.add_argument("--weights", default="1,1,1,1,1,1",
                       help="comma-separated Q weights for --objective weighted")
    p_opt.add_argument("--budget", type=int, default=600)
    p_opt.add_argument("--crossover", action="store_true",
                       help="also report the crossover t* for the tuned parameters")
    p_opt.add_argument("--crossover-t-max", type=float, default=1e30)
    p_opt.set_defaults(func=_cmd_optimize)

    p_scan = sub.add_parser("scan", help="(t, bound, oracle, slack) sweep rows")
    add_common(p_scan)
    add_params(p_scan)
    p_scan.add_argument("--theorem", type=int, choices=(1, 2), default=1)
    p_scan.set_defaults(func=_cmd_scan)

    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_USAGE
    try:
        return args.func(args)
    except UsageError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_USAGE
    except ArithmeticError as exc:
        sys.stderr.write(f"error: non-convergence: {exc}\n")
        return EXIT_NONCONVERGED


if __name__ == "__main__":
    sys.exit(main())
