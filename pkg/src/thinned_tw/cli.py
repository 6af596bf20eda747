"""Command-line surface: evaluation tables, verification, sampling.

Output is CSV by default (fixed column order) or JSON (one object per row
inside a versioned envelope).  Identical requests produce byte-identical
output; wall-clock timings are only attached when --timings is passed.
"""

from __future__ import annotations

import argparse
import concurrent.futures
import io
import json
import math
import os
import sys
import time

import numpy as np

from . import __version__, acceptance, fredholm, painleve, sampler, specfun, tails
from .errors import ThinnedTWError, NumericError
from .fredholm import ThinningParams

EXIT_OK = 0
EXIT_VALIDATION = 1
EXIT_NUMERIC = 2
EXIT_ACCEPTANCE = 3

ROUTES = ("determinant", "painleve", "tail", "weibull", "transition")
_ROUTE_BETAS = {
    "determinant": (2,),
    "painleve": (1, 2, 4),
    "tail": (1, 2, 4),
    "weibull": (1, 2, 4),
    "transition": (2,),
}


class UsageError(ValueError):
    pass


def _thread_count() -> int:
    raw = os.environ.get("THINNED_TW_THREADS", "1")
    try:
        n = int(raw)
    except ValueError:
        raise UsageError(f"THINNED_TW_THREADS must be an integer, got {raw!r}")
    return max(1, n)


def _parse_s_grid(values: list[str]) -> list[float]:
    grid: list[float] = []
    for item in values:
        if ":" in item:
            parts = item.split(":")
            if len(parts) != 3:
                raise UsageError(f"grid syntax is start:stop:step, got {item!r}")
            start, stop, step = (float(p) for p in parts)
            if step <= 0:
                raise UsageError(f"grid step must be positive in {item!r}")
            n = int(math.floor((stop - start) / step + 1e-9)) + 1
            if n < 1:
                raise UsageError(f"empty grid {item!r}")
            grid.extend(start + k * step for k in range(n))
        else:
            grid.append(float(item))
    if not grid:
        raise UsageError("at least one --s value is required")
    return grid


def _parallel_map(fn, items):
    n = _thread_count()
    if n == 1 or len(items) <= 1:
        return [fn(x) for x in items]
    with concurrent.futures.ThreadPoolExecutor(max_workers=n) as pool:
        return list(pool.map(fn, items))  # map preserves input order


def _route_value(route: str, beta: int, s: float, gamma: float,
                 order, tol) -> float:
    if route == "determinant":
        return fredholm.f2_determinant(ThinningParams(s, gamma), order)
    if route == "painleve":
        kw = {"tol": tol} if tol else {}
        return {1: painleve.f1, 2: painleve.f2, 4: painleve.f4}[beta](s, gamma, **kw)
    if route == "tail":
        v = math.inf if gamma >= 1.0 else -math.log1p(-gamma)
        if s <= -1.0:
            ev = {1: tails.ln_f1_left, 2: tails.ln_f2_left,
                  4: tails.ln_f4_left}[beta](s, v)
            return math.exp(ev.value)
        if s >= 1.0:
            return tails.right_tail(s, gamma, beta).value
        raise NumericError("tail route is undefined on -1 < s < 1")
    if route == "weibull":
        return tails.weibull_limit(s, beta)
    if route == "transition":
        v = math.inf if gamma >= 1.0 else -math.log1p(-gamma)
        chi = _transition_chi(s, v)
        return math.exp(tails.transition_ln_f2(s, v, chi).value)
    raise UsageError(f"unknown route {route!r}")


def _transition_chi(s: float, v: float) -> float:
    # invert v = (2 sqrt(2)/3) t - chi ln t with t = (-s)^{3/2}
    t = (-s) ** 1.5
    return ((2.0 * math.sqrt(2.0) / 3.0) * t - v) / math.log(t)


def _check_route_beta(route: str, beta: int) -> None:
    if beta not in (1, 2, 4):
        raise UsageError(f"beta must be 1, 2 or 4, got {beta}")
    if beta not in _ROUTE_BETAS[route]:
        raise UsageError(f"route {route!r} supports beta in {_ROUTE_BETAS[route]}")


def _emit(args, header, rows, parameters, timings):
    if args.format == "csv":
        buf = io.StringIO()
        buf.write(",".join(header) + "\n")
        for row in rows:
            buf.write(",".join(_csv_cell(c) for c in row) + "\n")
        text = buf.getvalue()
    else:
        payload = {
            "version": __version__,
            "parameters": parameters,
            "rows": [dict(zip(header, row)) for row in rows],
        }
        if args.timings:
            payload["timings"] = timings
        text = json.dumps(payload, indent=2, sort_keys=True) + "\n"
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _csv_cell(c) -> str:
    if c is None:
        return ""
    if isinstance(c, float):
        return repr(c)
    return str(c)


# ---------------------------------------------------------------- commands

def _cmd_eval(args):
    _check_route_beta(args.route, args.beta)
    grid = _parse_s_grid(args.s)
    t0 = time.perf_counter()
    vals = _parallel_map(
        lambda s: _route_value(args.route, args.beta, s, args.gamma,
                               args.order, args.tol), grid)
    timings = {"eval_seconds": time.perf_counter() - t0}
    header = ["s", "gamma", "beta", "route", "value"]
    rows = [[s, args.gamma, args.beta, args.route, v]
            for s, v in zip(grid, vals)]
    _emit(args, header, rows, _params(args), timings)
    return EXIT_OK


def _cmd_table(args):
    grid = _parse_s_grid(args.s)
    beta = args.beta
    t0 = time.perf_counter()

    def one(s):
        pain = _route_value("painleve", beta, s, args.gamma, None, args.tol)
        det = _route_value("determinant", beta, s, args.gamma, args.order, None) \
            if beta == 2 else None
        try:
            tail = _route_value("tail", beta, s, args.gamma, None, None)
        except ThinnedTWError:
            tail = None
        wb = tails.weibull_limit(s, beta)
        d_dp = abs(det - pain) if det is not None else None
        d_pt = abs(pain - tail) if tail is not None else None
        return [s, args.gamma, beta, det, pain, tail, wb, d_dp, d_pt]

    rows = _parallel_map(one, grid)
    timings = {"eval_seconds": time.perf_counter() - t0}
    header = ["s", "gamma", "beta", "determinant", "painleve", "tail",
              "weibull", "delta_det_painleve", "delta_painleve_tail"]
    _emit(args, header, rows, _params(args), timings)
    return EXIT_OK


def _cmd_density(args):
    _check_route_beta(args.route, args.beta)
    grid = _parse_s_grid(args.s)
    h = args.step
    t0 = time.perf_counter()

    def one(s):
        hi = _route_value(args.route, args.beta, s + h, args.gamma,
                          args.order, args.tol)
        lo = _route_value(args.route, args.beta, s - h, args.gamma,
                          args.order, args.tol)
        dens = (hi - lo) / (2.0 * h)
        g = tails.G_BETA[args.beta]
        if s < 0.0:
            wd = g * 1.5 * math.sqrt(-s) * math.exp(-g * (-s) ** 1.5)
        else:
            wd = 0.0
        return [s, args.gamma, args.beta, args.route, dens, wd]

    rows = _parallel_map(one, grid)
    timings = {"eval_seconds": time.perf_counter() - t0}
    header = ["s", "gamma", "beta", "route", "density", "weibull_density"]
    _emit(args, header, rows, _params(args), timings)
    return EXIT_OK


def _cmd_counting(args):
    t0 = time.perf_counter()
    dist = fredholm.counting_distribution(args.s_point, args.m_max, args.order)
    timings = {"eval_seconds": time.perf_counter() - t0}
    header = ["m", "e2m"]
    rows = [[m, float(p)] for m, p in enumerate(dist.probabilities)]
    _emit(args, header, rows, _params(args), timings)
    return EXIT_OK


def _cmd_sample(args):
    t0 = time.perf_counter()
    batch = sampler.sample_batch(args.n_matrix, args.beta, args.gamma,
                                 args.draws, args.seed)
    text = sampler.batch_to_csv(batch)
    timings = {"eval_seconds": time.perf_counter() - t0}
    if args.format == "json":
        payload = {
            "version": __version__,
            "parameters": _params(args),
            "rows": [{"draw_index": i,
                      "value_or_empty": m,
                      "is_sentinel": int(m is None)}
                     for i, m in enumerate(batch.maxima)],
        }
        if args.timings:
            payload["timings"] = timings
        text = json.dumps(payload, indent=2, sort_keys=True) + "\n"
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    if args.ks:
        if args.beta != 2:
            raise UsageError("--ks requires beta 2 (analytic route)")
        if args.gamma == 1.0:
            cdf = acceptance._det_cdf_gamma1()
        else:
            cdf = acceptance._painleve_cdf(args.gamma)
        ks, n_eff = sampler.empirical_vs_analytic(batch, cdf)
        sys.stderr.write(f"KS distance vs analytic route: {ks:.5f} "
                         f"(n_effective={n_eff})\n")
    return EXIT_OK


def _cmd_constants(args):
    v = args.v
    zp = specfun.zeta_prime_minus_one()
    header = ["name", "value"]
    rows = [
        ["c_1", tails.C_BETA[1]], ["c_2", tails.C_BETA[2]], ["c_4", tails.C_BETA[4]],
        ["g_1", tails.G_BETA[1]], ["g_2", tails.G_BETA[2]], ["g_4", tails.G_BETA[4]],
        ["tau_1", specfun.tau_beta(1)], ["tau_2", specfun.tau_beta(2)],
        ["tau_4", specfun.tau_beta(4)],
        ["zeta_prime_minus_one", zp],
        ["log_barnes_g_product", specfun.log_barnes_g_product(v)],
        ["v", v],
    ]
    _emit(args, header, rows, _params(args), {})
    return EXIT_OK


def _cmd_verify(args):
    results = acceptance.run_all()
    for res in results:
        print(res.line())
    n_fail = sum(1 for r in results if not r.passed)
    print(f"{len(results) - n_fail}/{len(results)} criteria passed")
    return EXIT_OK if n_fail == 0 else EXIT_ACCEPTANCE


def _params(args) -> dict:
    skip = {"func", "out", "format", "timings"}
    return {k: v for k, v in sorted(vars(args).items())
            if k not in skip and v is not None}


# ---------------------------------------------------------------- parser

class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _add_common(p, gamma=True):
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("--out", help="write output to a file instead of stdout")
    p.add_argument("--timings", action="store_true",
                   help="attach wall-clock timings to JSON output")
    if gamma:
        p.add_argument("--gamma", type=float, default=1.0,
                       help="retention probability in [0, 1]")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="thinned-tw",
                     description="Thinned Tracy-Widom distribution evaluator")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("eval", help="evaluate F_beta(s, gamma) over an s grid")
    p.add_argument("--beta", type=int, default=2)
    p.add_argument("--s", action="append", required=True,
                   help="point or start:stop:step grid; repeatable")
    p.add_argument("--route", choices=ROUTES, default="painleve")
    p.add_argument("--order", type=int, help="determinant quadrature order")
    p.add_argument("--tol", type=float, help="Painleve integrator tolerance")
    _add_common(p)
    p.set_defaults(func=_cmd_eval)

    p = sub.add_parser("table", help="all routes side by side with deltas")
    p.add_argument("--beta", type=int, default=2)
    p.add_argument("--s", action="append", required=True)
    p.add_argument("--order", type=int)
    p.add_argument("--tol", type=float)
    _add_common(p)
    p.set_defaults(func=_cmd_table)

    p = sub.add_parser("density", help="centered-difference dF/ds with Weibull comparison")
    p.add_argument("--beta", type=int, default=2)
    p.add_argument("--s", action="append", required=True)
    p.add_argument("--route", choices=ROUTES, default="painleve")
    p.add_argument("--step", type=float, default=1e-3)
    p.add_argument("--order", type=int)
    p.add_argument("--tol", type=float)
    _add_common(p)
    p.set_defaults(func=_cmd_density)

    p = sub.add_parser("counting", help="E2(m) table at a point s")
    p.add_argument("--s-point", type=float, required=True)
    p.add_argument("--m-max", type=int, default=20)
    p.add_argument("--order", type=int)
    _add_common(p, gamma=False)
    p.set_defaults(func=_cmd_counting)

    p = sub.add_parser("sample", help="Monte Carlo batch of thinned maxima")
    p.add_argument("--n-matrix", type=int, default=200)
    p.add_argument("--beta", type=int, default=2, choices=(1, 2, 4))
    p.add_argument("--draws", type=int, default=1000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--ks", action="store_true",
                   help="also report the KS distance against the analytic route")
    _add_common(p)
    p.set_defaults(func=_cmd_sample)

    p = sub.add_parser("constants", help="print c_beta, g_beta, tau_beta, zeta'(-1), Barnes-G")
    p.add_argument("--v", type=float, default=0.0)
    _add_common(p, gamma=False)
    p.set_defaults(func=_cmd_constants)

    p = sub.add_parser("verify", help="run the acceptance suite")
    p.set_defaults(func=_cmd_verify)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except (ThinnedTWError, ValueError) as exc:
        if isinstance(exc, NumericError):
            print(f"numeric failure: {exc}", file=sys.stderr)
            return EXIT_NUMERIC
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except ArithmeticError as exc:
        print(f"numeric failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC


if __name__ == "__main__":
    sys.exit(main())
