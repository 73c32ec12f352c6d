"""Command-line front end.

Subcommands
-----------
uc-table   uncertainty constants over an (a, j) grid, CSV or JSON
verify     filter-bank identity + cascade/Parseval checks with exit-code gate
transform  analyze or round-trip a coefficient-window JSON file
asym       direct vs asymptotic reference-wavelet moments
theta      lattice sum by direct and Poisson routes
eval       grid samples of a scaling/wavelet function, CSV

Exit codes: 0 success, 1 parameter validation, 2 I/O or format, 3 a
verification defect at or above tolerance.
"""

import argparse
import json
import math
import os
import sys
from concurrent.futures import ThreadPoolExecutor

import numpy as np

from . import frame as _frame
from . import localization as _loc
from . import thetasum as _theta
from . import transform as _transform
from .fourier import (FourierSeq, evaluate_grid, fourier_from_dict,
                      fourier_to_dict, norm_sq, save_grid_csv)

EXIT_OK = 0
EXIT_VALIDATION = 1
EXIT_IO = 2
EXIT_VERIFY = 3

EPSILON_ENV_VAR = "PERIFRAME_EPSILON"


def _default_epsilon() -> float:
    raw = os.environ.get(EPSILON_ENV_VAR)
    if raw is None:
        return _frame.DEFAULT_EPSILON
    try:
        value = float(raw)
    except ValueError:
        return _frame.DEFAULT_EPSILON
    return value if 0.0 < value < 1.0 else _frame.DEFAULT_EPSILON


def _parse_float_list(text: str) -> list:
    return [float(tok) for tok in text.split(",") if tok.strip()]


def _parse_int_list(text: str) -> list:
    out = []
    for tok in text.split(","):
        tok = tok.strip()
        if not tok:
            continue
        val = float(tok)
        if not val.is_integer():
            raise ValueError(f"level {tok!r} is not an integer")
        out.append(int(val))
    return out


def _open_out(path):
    if path in (None, "-"):
        return sys.stdout, False
    return open(path, "w", encoding="utf-8"), True


# ---------------------------------------------------------------------------
# uc-table
# ---------------------------------------------------------------------------

def _uc_cell(a, j, target, epsilon):
    p = _frame.FrameParams(a, j, epsilon)
    rep = _loc.uc_scaling(p) if target == "scaling" else _loc.uc_wavelet(p)
    return (a, j, target, rep)


def cmd_uc_table(args) -> int:
    try:
        a_values = _parse_float_list(args.a)
        j_values = _parse_int_list(args.j)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    if not a_values or not j_values:
        print("error: empty parameter grid", file=sys.stderr)
        return EXIT_VALIDATION
    if any(a <= 1.0 for a in a_values):
        print("error: every family parameter must satisfy a > 1", file=sys.stderr)
        return EXIT_VALIDATION
    if any(j < 0 for j in j_values):
        print("error: levels must be >= 0", file=sys.stderr)
        return EXIT_VALIDATION
    cells = [(a, j) for a in a_values for j in j_values]
    workers = args.threads or os.cpu_count() or 1
    try:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            rows = list(pool.map(
                lambda cell: _uc_cell(cell[0], cell[1], args.target, args.epsilon),
                cells))
    except (ValueError, _loc.UndefinedUCError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    try:
        fh, owned = _open_out(args.out)
    except OSError as exc:
        print(f"error: cannot open output: {exc}", file=sys.stderr)
        return EXIT_IO
    try:
        if args.format == "csv":
            fh.write("a,j,target,uc,var_a,var_f,norm_sq\n")
            for a, j, target, rep in rows:
                fh.write("%.9g,%d,%s,%.9g,%.9g,%.9g,%.9g\n"
                         % (a, j, target, rep.uc, rep.var_a, rep.var_f, rep.norm_sq))
        else:
            payload = [_loc.uc_report_to_dict(rep, a, j, target)
                       for a, j, target, rep in rows]
            json.dump(payload, fh, indent=2)
            fh.write("\n")
    except OSError as exc:
        print(f"error: write failed: {exc}", file=sys.stderr)
        return EXIT_IO
    finally:
        if owned:
            fh.close()
    return EXIT_OK


# ---------------------------------------------------------------------------
# verify
# ---------------------------------------------------------------------------

def _battery(seed: int, count: int, degree: int):
    rng = np.random.default_rng(seed)
    polys = []
    for _ in range(count):
        coeffs = rng.standard_normal(2 * degree + 1) + 1j * rng.standard_normal(2 * degree + 1)
        polys.append(FourierSeq(-degree, coeffs))
    return polys


def cmd_verify(args) -> int:
    if args.a <= 1.0:
        print("error: family parameter must satisfy a > 1", file=sys.stderr)
        return EXIT_VALIDATION
    if args.jmax < 1 or (1 << args.jmax) > _transform.LEVEL_CAP:
        print("error: jmax out of range for the transform level cap", file=sys.stderr)
        return EXIT_VALIDATION
    eps = args.epsilon
    worst = []
    for j in range(1, args.jmax + 1):
        p = _frame.FrameParams(args.a, j, eps)
        rep = _frame.verify_uep(p, corrupt=args.inject_defect)
        worst.append((f"uep row defect      j={j}", rep.max_row_defect))
        worst.append((f"uep cross defect    j={j}", rep.max_cross_defect))
        worst.append((f"uep refine defect   j={j}", rep.max_refine_defect))
    polys = _battery(args.seed, count=5, degree=64)
    for idx, f in enumerate(polys):
        for j in range(1, min(args.jmax, 10) + 1):
            d = _transform.cascade_defect(f, _frame.FrameParams(args.a, j, eps))
            worst.append((f"cascade defect      sig={idx} j={j}", d))
        rep = _transform.parseval_defect(f, args.a, min(args.jmax, 12), eps)
        worst.append((f"parseval telescope  sig={idx}", rep.telescoping))
    worst.sort(key=lambda kv: kv[1], reverse=True)
    print(f"verification at a={args.a}, jmax={args.jmax}, tol={args.tol:g}")
    for name, value in worst[:8]:
        print(f"  {name:28s} {value:.3e}")
    bad = [kv for kv in worst if kv[1] >= args.tol]
    if bad:
        print(f"FAIL: {len(bad)} defect(s) at or above tolerance {args.tol:g}")
        return EXIT_VERIFY
    print("OK: all defects below tolerance")
    return EXIT_OK


# ---------------------------------------------------------------------------
# transform
# ---------------------------------------------------------------------------

def cmd_transform(args) -> int:
    if args.a <= 1.0:
        print("error: family parameter must satisfy a > 1", file=sys.stderr)
        return EXIT_VALIDATION
    if args.J < 1:
        print("error: depth J must be >= 1", file=sys.stderr)
        return EXIT_VALIDATION
    try:
        with open(args.input, "r", encoding="utf-8") as fh:
            data = json.load(fh)
        f = fourier_from_dict(data)
    except OSError as exc:
        print(f"error: cannot read input: {exc}", file=sys.stderr)
        return EXIT_IO
    except json.JSONDecodeError as exc:
        print(f"error: malformed JSON at line {exc.lineno} column {exc.colno}"
              f" (char {exc.pos}): {exc.msg}", file=sys.stderr)
        return EXIT_IO
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    deco = _transform.decompose(f, args.a, args.J, args.epsilon)
    payload = _transform.decomposition_to_dict(deco)
    if args.mode == "roundtrip":
        rec = _transform.synthesize(deco, args.epsilon)
        from .fourier import difference_norm_sq

        total = norm_sq(f)
        err = math.sqrt(difference_norm_sq(f, rec) / total) if total > 0 else 0.0
        payload["reconstruction"] = fourier_to_dict(rec)
        payload["relative_l2_error"] = err
        print(f"relative L2 round-trip error: {err:.9g}")
    try:
        fh, owned = _open_out(args.out)
    except OSError as exc:
        print(f"error: cannot open output: {exc}", file=sys.stderr)
        return EXIT_IO
    try:
        json.dump(payload, fh)
        fh.write("\n")
    finally:
        if owned:
            fh.close()
    return EXIT_OK


# ---------------------------------------------------------------------------
# asym
# ---------------------------------------------------------------------------

def cmd_asym(args) -> int:
    if args.a <= 1.0 or args.j < 1:
        print("error: need a > 1 and level j >= 1", file=sys.stderr)
        return EXIT_VALIDATION
    p = _frame.FrameParams(args.a, args.j, args.epsilon)
    ap = _loc.AsymParams.from_frame(p)
    direct = {m: _theta.ref_moment_direct(p, m) for m in ("norm", "dnorm", "tau")}
    asym_norm = _loc.asym_norm_sq(ap)
    asym_dnorm = _loc.asym_deriv_norm_sq(ap)
    tau_h = math.tau * _loc.asym_tau(ap, "h_to_0")
    tau_q = math.tau * _loc.asym_tau(ap, "q_to_0")
    print(f"reference wavelet moments at a={args.a}, j={args.j}"
          f" (h={ap.h:.3e}, q={ap.q:.3e})")
    print(f"{'moment':10s} {'direct':>16s} {'asymptotic':>16s} {'ratio':>14s}")
    rows = [
        ("norm", direct["norm"], asym_norm),
        ("dnorm", direct["dnorm"], asym_dnorm),
        ("tau[h->0]", direct["tau"], tau_h),
        ("tau[q->0]", direct["tau"], tau_q),
    ]
    for name, d, a_ in rows:
        ratio = d / a_ if a_ != 0.0 else math.inf
        print(f"{name:10s} {d:16.9g} {a_:16.9g} {ratio:14.9g}")
    return EXIT_OK


# ---------------------------------------------------------------------------
# theta
# ---------------------------------------------------------------------------

def cmd_theta(args) -> int:
    try:
        p = _theta.ThetaParams(alpha=args.alpha, beta=args.beta, gamma=args.gamma,
                               b=args.b, m=args.m)
        direct = _theta.theta_direct(p)
        poisson = _theta.theta_poisson(p)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    print(f"direct  = {direct:.17g}")
    print(f"poisson = {poisson:.17g}")
    denom = max(abs(direct), abs(poisson), 1e-300)
    print(f"difference = {direct - poisson:.3e} ({abs(direct - poisson) / denom:.3e} relative)")
    return EXIT_OK


# ---------------------------------------------------------------------------
# eval
# ---------------------------------------------------------------------------

def cmd_eval(args) -> int:
    if args.a <= 1.0 or args.j < 0 or args.grid < 1:
        print("error: need a > 1, level j >= 0 and a positive grid size", file=sys.stderr)
        return EXIT_VALIDATION
    p = _frame.FrameParams(args.a, args.j, args.epsilon)
    seq = _frame.build_scaling_seq(p) if args.kind == "scaling" else _frame.build_wavelet_seq(p)
    sig = evaluate_grid(seq, args.grid)
    try:
        if args.out in (None, "-"):
            from .fourier import grid_to_csv

            sys.stdout.write(grid_to_csv(sig))
        else:
            save_grid_csv(sig, args.out)
    except OSError as exc:
        print(f"error: write failed: {exc}", file=sys.stderr)
        return EXIT_IO
    return EXIT_OK


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="periframe",
        description="Periodic Gaussian-mask Parseval frames: tables, checks, transforms.")
    parser.add_argument("--epsilon", type=float, default=None,
                        help="relative truncation tolerance (default 1e-16, "
                             f"or ${EPSILON_ENV_VAR})")
    parser.add_argument("--threads", type=int, default=None,
                        help="worker threads for sweeps (default: cpu count)")
    parser.add_argument("--seed", type=int, default=20240901,
                        help="seed for the pseudorandom verification battery")
    parser.add_argument("--format", choices=("csv", "json"), default="csv",
                        help="table output format")
    parser.add_argument("--out", default=None, help="output path (default stdout)")
    sub = parser.add_subparsers(dest="command", required=True)

    s = sub.add_parser("uc-table", help="UC sweep over an (a, j) grid")
    s.add_argument("--a", required=True, help="comma-separated family parameters")
    s.add_argument("--j", required=True, help="comma-separated levels")
    s.add_argument("--target", choices=("scaling", "wavelet"), default="wavelet")
    s.set_defaults(func=cmd_uc_table)

    s = sub.add_parser("verify", help="filter-bank and Parseval verification")
    s.add_argument("--a", type=float, required=True)
    s.add_argument("--jmax", type=int, default=10)
    s.add_argument("--tol", type=float, default=1e-9)
    s.add_argument("--inject-defect", type=float, default=0.0, help=argparse.SUPPRESS)
    s.set_defaults(func=cmd_verify)

    s = sub.add_parser("transform", help="analyze or round-trip a coefficient file")
    s.add_argument("--input", required=True, help="coefficient-window JSON file")
    s.add_argument("--a", type=float, required=True)
    s.add_argument("--J", type=int, required=True)
    s.add_argument("--mode", choices=("analyze", "roundtrip"), default="analyze")
    s.set_defaults(func=cmd_transform)

    s = sub.add_parser("asym", help="direct vs asymptotic reference moments")
    s.add_argument("--j", type=int, required=True)
    s.add_argument("--a", type=float, required=True)
    s.set_defaults(func=cmd_asym)

    s = sub.add_parser("theta", help="lattice sum, direct and Poisson routes")
    s.add_argument("--alpha", type=float, required=True)
    s.add_argument("--beta", type=float, default=0.0)
    s.add_argument("--gamma", type=float, default=0.0)
    s.add_argument("--b", type=float, required=True)
    s.add_argument("--m", type=int, default=0)
    s.set_defaults(func=cmd_theta)

    s = sub.add_parser("eval", help="grid samples of a frame function, CSV")
    s.add_argument("--kind", choices=("scaling", "wavelet"), default="scaling")
    s.add_argument("--a", type=float, required=True)
    s.add_argument("--j", type=int, required=True)
    s.add_argument("--grid", type=int, default=1024)
    s.set_defaults(func=cmd_eval)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.epsilon is None:
        args.epsilon = _default_epsilon()
    if not (0.0 < args.epsilon < 1.0):
        print("error: epsilon must lie in (0, 1)", file=sys.stderr)
        return EXIT_VALIDATION
    try:
        return args.func(args)
    except _frame.WindowCapError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION


if __name__ == "__main__":
    sys.exit(main())
