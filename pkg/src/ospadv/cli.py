"""Command-line front end.

Exit codes: 0 success, 1 a verification check failed, 2 usage or domain
error, 3 the SDP solver did not converge.
"""
from __future__ import annotations

import argparse
import csv
import io
import math
import os
import sys
from concurrent.futures import ThreadPoolExecutor

import numpy as np

from . import constructions as cons
from .linalg import inertia, spectral_norm, trace_norm
from .ospmodel import adv_objective, verify_symmetry
from .sdp import SolverError, check_dual_feasibility, solve_primal
from .seqcomb import convolve_xi

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_SOLVER = 0, 1, 2, 3
MAX_VERIFY_N = 512
MAX_MADV_N = 64
MAX_SYMMETRY_N = 16


class UsageError(Exception):
    pass


def _positive_int(text: str) -> int:
    try:
        n = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}")
    if n < 1:
        raise argparse.ArgumentTypeError(f"must be >= 1, got {n}")
    return n


def _positive_float(text: str) -> float:
    try:
        x = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}")
    if not math.isfinite(x) or x <= 0:
        raise argparse.ArgumentTypeError(f"must be finite and > 0, got {text!r}")
    return x


def _fmt12(x: float) -> str:
    return f"{x:.12g}"


def _fmt17(x: float) -> str:
    return f"{x:.17g}"


def _solve_or_raise(n: int, nonneg: bool):
    try:
        return solve_primal(n, nonneg)
    except SolverError as exc:
        s = exc.solution
        print(
            f"solver did not converge for n={n} ({'nonneg' if nonneg else 'negative'}): "
            f"value={s.value:.12g} gap={s.gap:.3e} norm_violation={s.max_norm_violation:.3e}",
            file=sys.stderr,
        )
        raise


# --- value ----------------------------------------------------------------

def cmd_value(args, out) -> int:
    n = args.n
    if args.method == "closed":
        v = cons.adv_value(n)
    elif args.method == "hns":
        v = cons.hns_value(n)
    elif args.method == "asymptotic":
        v = cons.asymptotic_estimate(n)
    else:
        v = _solve_or_raise(n, True).value
    print(_fmt12(v), file=out)
    return EXIT_OK


# --- weights --------------------------------------------------------------

def cmd_weights(args, out) -> int:
    n = args.n
    footer = None
    if args.scheme == "hns":
        g = cons.hns_weights(n).gamma
    elif args.scheme == "optimal":
        g = cons.optimal_weights(n).gamma
    else:
        sol = _solve_or_raise(n, args.scheme == "sdp")
        g = sol.weights.gamma
        footer = f"# value={_fmt17(sol.value)} gap={sol.gap:.3e}"
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["i", "gamma"])
    for i, gi in enumerate(g, start=1):
        writer.writerow([i, _fmt17(float(gi))])
    if footer:
        buf.write(footer + "\n")
    out.write(buf.getvalue())
    return EXIT_OK


# --- verify ---------------------------------------------------------------

def _verify_checks(n: int, tol: float | None):
    """Yield ``(name, residual, threshold)`` for every check at size ``n``."""

    def thr(default):
        return default if tol is None else tol

    yield "xi_convolution", max(abs(convolve_xi(j) - 1.0) for j in range(2 * n + 1)), thr(1e-12)
    yield "evcond_residual", cons.verify_eigen_condition(n), thr(1e-13)

    w = cons.optimal_weights(n)
    adv = cons.adv_value(n)
    yield "primal_objective", abs(adv_objective(w) - adv), thr(1e-11)
    yield "primal_norm_is_one", abs(spectral_norm(w.toeplitz()) - 1.0), thr(1e-9)
    yield "primal_nonneg", max(0.0, -float(np.min(w.gamma))), thr(1e-15)

    dw = cons.dual_witness(n)
    rep = check_dual_feasibility(dw.P, mode="nonneg", tol=thr(1e-11))
    yield "dual_feasible", max(rep.diag_residual, max(0.0, -rep.min_eigenvalue)), thr(1e-11)
    yield "dual_trace_matches", abs(dw.trace - adv), thr(1e-11)

    nd = cons.negative_dual(n)
    yield "negdual_diag_sums", float(np.max(np.abs(nd.diag_sums() - 1.0))), thr(1e-11)
    yield "negdual_inertia", float(inertia(nd.R) != (1, 0, n - 1)), thr(0.5)
    trn = trace_norm(nd.R)
    lb = cons.lemma_bounds(nd.v, nd.w)
    yield "negdual_lemma_bracket", max(0.0, lb.lower - trn, trn - lb.upper), thr(1e-9)
    yield "negdual_bound", max(0.0, trn - cons.adv_value(2 * n) - 1.0), thr(1e-9)
    nrep = check_dual_feasibility(nd.P, nd.Q, mode="negative", tol=thr(1e-9))
    yield "negdual_split_feasible", max(nrep.diag_residual, max(0.0, -nrep.min_eigenvalue)), thr(1e-9)

    if n <= MAX_SYMMETRY_N:
        for label, weights in (("optimal", w), ("hns", cons.hns_weights(n))):
            srep = verify_symmetry(weights, tol=thr(1e-9))
            res = max(srep.uniform_residual, srep.mask_spread, srep.block_residual)
            yield f"symmetry_{label}", res, thr(1e-9)


def cmd_verify(args, out) -> int:
    n = args.n
    if n > MAX_VERIFY_N:
        raise UsageError(f"n={n} exceeds supported verification range ({MAX_VERIFY_N})")
    ok = True
    for name, residual, threshold in _verify_checks(n, args.tol):
        passed = residual <= threshold
        ok &= passed
        print(f"{name}<={threshold:g} {'PASS' if passed else 'FAIL'} residual={residual:.3e}", file=out)
    return EXIT_OK if ok else EXIT_FAIL


# --- table ----------------------------------------------------------------

TABLE_HEADER = ["n", "hns", "adv_closed", "adv_sdp", "madv_sdp", "madv_upper", "asymptotic"]


def table_row(n: int, include_madv: bool) -> list[str]:
    madv = _fmt17(_solve_or_raise(n, False).value) if include_madv else ""
    return [
        str(n),
        _fmt17(cons.hns_value(n)),
        _fmt17(cons.adv_value(n)),
        _fmt17(_solve_or_raise(n, True).value),
        madv,
        _fmt17(cons.madv_upper_bound(n)),
        _fmt17(cons.asymptotic_estimate(n)),
    ]


def _worker_count() -> int:
    raw = os.environ.get("OSP_ADV_THREADS")
    if raw is None or raw == "":
        return os.cpu_count() or 1
    try:
        k = int(raw)
    except ValueError:
        raise UsageError(f"OSP_ADV_THREADS must be a positive integer, got {raw!r}")
    if k < 1:
        raise UsageError(f"OSP_ADV_THREADS must be a positive integer, got {raw!r}")
    return k


def cmd_table(args, out) -> int:
    lo, hi = args.from_, args.to
    if lo > hi:
        raise UsageError(f"--from ({lo}) must not exceed --to ({hi})")
    if args.madv and hi > MAX_MADV_N:
        raise UsageError(f"--madv supports --to <= {MAX_MADV_N}, got {hi}")
    ns = range(lo, hi + 1)
    with ThreadPoolExecutor(max_workers=_worker_count()) as pool:
        rows = list(pool.map(lambda n: table_row(n, args.madv), ns))
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(TABLE_HEADER)
    writer.writerows(rows)
    text = buf.getvalue()
    if args.out is None:
        out.write(text)
        return EXIT_OK
    try:
        with open(args.out, "w", newline="", encoding="ascii") as fh:
            fh.write(text)
    except OSError as exc:
        raise UsageError(f"cannot write {args.out}: {exc}")
    return EXIT_OK


# --- dual -----------------------------------------------------------------

def cmd_dual(args, out) -> int:
    n = args.n
    if args.negative:
        nd = cons.negative_dual(n)
        sums = nd.diag_sums()
        trace = trace_norm(nd.R)
        inert = inertia(nd.R)
        kind = "negative"
    else:
        dw = cons.dual_witness(n)
        sums = dw.diag_sums()
        trace = dw.trace
        inert = inertia(dw.P)
        kind = "nonneg"
    print(f"witness={kind} n={n}", file=out)
    print(f"objective={_fmt12(trace)}", file=out)
    print(f"diag_sum_min={_fmt12(float(sums.min()))}", file=out)
    print(f"diag_sum_max={_fmt12(float(sums.max()))}", file=out)
    print("inertia={},{},{}".format(*inert), file=out)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="osp-adv", description="Adversary bounds for ordered search.")
    sub = p.add_subparsers(dest="command", required=True)

    v = sub.add_parser("value", help="print an adversary value")
    v.add_argument("n", type=_positive_int)
    v.add_argument("--method", choices=["closed", "sdp", "hns", "asymptotic"], default="closed")
    v.set_defaults(func=cmd_value)

    w = sub.add_parser("weights", help="print a weight vector as CSV")
    w.add_argument("n", type=_positive_int)
    w.add_argument("--scheme", choices=["hns", "optimal", "sdp", "sdp-negative"], required=True)
    w.set_defaults(func=cmd_weights)

    c = sub.add_parser("verify", help="run every consistency check at one size")
    c.add_argument("n", type=_positive_int)
    c.add_argument("--tol", type=_positive_float, default=None)
    c.set_defaults(func=cmd_verify)

    t = sub.add_parser("table", help="write the comparison table as CSV")
    t.add_argument("--from", dest="from_", type=_positive_int, required=True)
    t.add_argument("--to", type=_positive_int, required=True)
    t.add_argument("--madv", action="store_true")
    t.add_argument("--out", default=None)
    t.set_defaults(func=cmd_table)

    d = sub.add_parser("dual", help="summarise a dual witness")
    d.add_argument("n", type=_positive_int)
    d.add_argument("--negative", action="store_true")
    d.set_defaults(func=cmd_dual)
    return p


def main(argv=None, out=None) -> int:
    out = sys.stdout if out is None else out
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args, out)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except SolverError:
        return EXIT_SOLVER


if __name__ == "__main__":
    sys.exit(main())
