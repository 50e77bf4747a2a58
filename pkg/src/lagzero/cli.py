"""Command-line surface: plot-ready CSV/JSON for every major operation.

Subcommands
    betas    endpoint pair for a given A
    contour  traced Gamma_r polyline as CSV
    zeros    certified zeros of L_n^{(alpha)}(nz) as CSV
    verify   full comparison report as JSON
    asymp    asymptotic predictions vs exact evaluation as CSV

alpha and A are accepted only as exact decimal strings; parsing them
through binary floating point would wreck the near-integer regimes the
experiments are about. Every command is deterministic: identical flags
produce byte-identical output. Exit codes: 2 domain violation, 3 tracer
closure failure, 4 root-finder non-convergence, 5 asymptotic-domain
violation.

The LAGZERO_PRECISION environment variable overrides the default
working precision (bits) wherever --precision is not given explicitly.
"""

from __future__ import annotations

import argparse
import math
import json
import os
import sys
from typing import List, Optional

from mpmath import mp

from . import asymptotics, contour, harness, laguerre, measure
from .errors import (
    BranchCutError,
    ClosureError,
    DomainError,
    NonConvergence,
    PlanError,
    QuadratureError,
    StepCollapse,
)
from .landscape import g_eval, make_context

ENV_PRECISION = "LAGZERO_PRECISION"

EXIT_DOMAIN = 2
EXIT_CLOSURE = 3
EXIT_NONCONVERGENCE = 4
EXIT_ASYMP_DOMAIN = 5

# contour warning threshold: the negative-axis crossing this close to 0
# signals a near-degenerate loop
SMALL_LOOP_CROSSING = 0.05


def _precision_from(args) -> Optional[int]:
    if getattr(args, "precision", None) is not None:
        return args.precision
    env = os.environ.get(ENV_PRECISION)
    if env:
        try:
            return int(env)
        except ValueError as exc:
            raise DomainError(f"{ENV_PRECISION}={env!r} is not an integer") from exc
    return None


def _emit(text: str, out: Optional[str]) -> None:
    if out:
        with open(out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _parse_r(raw: str) -> float:
    if raw.strip().lower() in ("inf", "infinity"):
        return math.inf
    try:
        r = float(raw)
    except ValueError as exc:
        raise DomainError(f"cannot parse r {raw!r}") from exc
    if r < 0:
        raise DomainError(f"r must be nonnegative, got {r}")
    return r


def cmd_betas(args) -> int:
    bits = _precision_from(args) or 256
    ctx = make_context(args.A, precision_bits=bits)
    doc = {"A": args.A, "beta1": float(ctx.beta1), "beta2": float(ctx.beta2)}
    _emit(json.dumps(doc, indent=2) + "\n", args.out)
    return 0


def cmd_contour(args) -> int:
    bits = _precision_from(args) or 256
    ctx = make_context(args.A, precision_bits=bits)
    r = _parse_r(args.r)
    if math.isinf(r):
        raise DomainError("Gamma_inf degenerates to the origin; no polyline")
    gamma = contour.trace_gamma(ctx, r, max_step=args.step)
    text = contour.polyline_csv(gamma)
    if abs(gamma.points[0]) < SMALL_LOOP_CROSSING:
        text += "# warning,small loop near the origin,\n"
    _emit(text, args.out)
    return 0


def cmd_zeros(args) -> int:
    zset, _, _, _ = harness.compute_zeros(
        args.n, args.alpha, precision_bits=_precision_from(args)
    )
    lines = ["re,im,residual"]
    for _ in range(zset.origin_multiplicity):
        lines.append("0.0,0.0,0.0")
    for z, res in zip(zset.zeros, zset.residuals):
        zc = complex(z)
        lines.append(f"{zc.real!r},{zc.imag!r},{float(res)!r}")
    _emit("\n".join(lines) + "\n", args.out)
    return 0


def cmd_verify(args) -> int:
    sweep = tuple(float(t) for t in args.sweep.split(",")) if args.sweep else (0.05, 0.1, 0.2)
    opts = harness.RunOptions(
        classify_tol=args.classify_tol,
        sweep=sweep,
        precision_bits=_precision_from(args),
    )
    rep = harness.run_comparison(args.n, args.alpha, opts)
    _emit(harness.report_json(rep) + "\n", args.out)
    return 0


def _parse_points(args) -> List[str]:
    if args.points:
        return [tok.strip() for tok in args.points.split(",") if tok.strip()]
    if args.grid:
        try:
            start, stop, count = args.grid.split(":")
            start, stop, count = float(start), float(stop), int(count)
        except ValueError as exc:
            raise DomainError(f"--grid wants start:stop:count, got {args.grid!r}") from exc
        if count < 2:
            raise DomainError("--grid needs at least 2 points")
        return [repr(start + (stop - start) * k / (count - 1)) for k in range(count)]
    raise DomainError("asymp needs --points or --grid")


def cmd_asymp(args) -> int:
    tokens = _parse_points(args)
    bits = _precision_from(args) or laguerre.default_precision(args.n)
    n = args.n
    alpha_f = laguerre.parse_alpha(args.alpha)
    lines = ["point,exact,predicted,rel_error"]

    if args.regime == "oscillatory":
        lspec = laguerre.LaguerreSpec.create(n, alpha_f, precision_bits=bits)
        coeffs = laguerre.build_coefficients(lspec)
        for tok in tokens:
            x = float(tok)
            pred = asymptotics.oscillatory_value(n, alpha_f, x).value
            with mp.workprec(bits):
                exact = laguerre.eval_poly(coeffs.coeffs, mp.mpf(n) * x, bits)
                rel = float(abs(pred / exact - 1)) if exact != 0 else math.inf
            lines.append(f"{tok},{float(exact)!r},{float(pred)!r},{rel!r}")
    elif args.regime == "outer":
        from fractions import Fraction

        a_n = Fraction(-alpha_f, n)
        ctx = make_context(a_n, precision_bits=max(bits, 256))
        lspec = laguerre.LaguerreSpec.create(n, alpha_f, precision_bits=bits)
        coeffs = laguerre.monic_rescaled(lspec, scale=n)
        for tok in tokens:
            z = complex(tok.replace(" ", ""))
            pred = asymptotics.outer_ratio(ctx, n, z).value
            with mp.workprec(bits):
                p = laguerre.eval_poly(coeffs.coeffs, mp.mpc(z), bits)
                exact = p * mp.e ** (-n * g_eval(ctx, mp.mpc(z)))
                rel = float(abs(complex(pred) / complex(exact) - 1))
            lines.append(f"{tok},{complex(exact)!r},{complex(pred)!r},{rel!r}")
    elif args.regime == "nth_root":
        from fractions import Fraction

        a_n = Fraction(-alpha_f, n)
        ctx = make_context(a_n, precision_bits=max(bits, 256))
        r = _parse_r(args.r)
        spec_m = measure.make_measure(ctx, r)
        for tok in tokens:
            z = complex(tok.replace(" ", ""))
            emp, pred = asymptotics.nth_root_exponent(n, alpha_f, spec_m, z)
            rel = abs(emp / pred - 1) if pred != 0 else math.inf
            lines.append(f"{tok},{emp!r},{pred!r},{rel!r}")
    else:
        raise DomainError(f"unknown regime {args.regime!r}")
    _emit("\n".join(lines) + "\n", args.out)
    return 0


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="lagzero",
        description="zeros of scaled Laguerre polynomials with negative "
                    "varying parameters: contours, measures, asymptotics",
    )
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("betas", help="endpoints beta1, beta2 for a given A")
    p.add_argument("--A", required=True, help="A in (0,1], exact decimal string")
    p.add_argument("--precision", type=int)
    p.add_argument("--out")
    p.set_defaults(func=cmd_betas)

    p = sub.add_parser("contour", help="trace Gamma_r as CSV re,im,arclength")
    p.add_argument("--A", required=True)
    p.add_argument("--r", required=True, help="level parameter, >= 0")
    p.add_argument("--step", type=float, default=None,
                   help="max step (default (beta2-beta1)/400)")
    p.add_argument("--precision", type=int)
    p.add_argument("--out")
    p.set_defaults(func=cmd_contour)

    p = sub.add_parser("zeros", help="zeros of L_n^(alpha)(nz) as CSV")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--alpha", required=True,
                   help="exact decimal string, e.g. -31.999999")
    p.add_argument("--precision", type=int)
    p.add_argument("--out")
    p.set_defaults(func=cmd_zeros)

    p = sub.add_parser("verify", help="comparison report as JSON")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--alpha", required=True)
    p.add_argument("--classify-tol", dest="classify_tol", type=float, default=0.1)
    p.add_argument("--sweep", default=None, help="comma list of deltas")
    p.add_argument("--precision", type=int)
    p.add_argument("--out")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("asymp", help="asymptotic prediction vs exact, CSV")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--alpha", required=True)
    p.add_argument("--regime", required=True,
                   choices=["outer", "oscillatory", "nth_root"])
    p.add_argument("--points", default=None,
                   help="comma list of evaluation points")
    p.add_argument("--grid", default=None, help="start:stop:count")
    p.add_argument("--r", default="0", help="measure parameter for nth_root")
    p.add_argument("--precision", type=int)
    p.add_argument("--out")
    p.set_defaults(func=cmd_asymp)
    return ap


def main(argv: Optional[List[str]] = None) -> int:
    # deep adaptive-quadrature recursion near the interval endpoints
    sys.setrecursionlimit(max(sys.getrecursionlimit(), 10000))
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (DomainError, BranchCutError) as exc:
        code = EXIT_ASYMP_DOMAIN if args.command == "asymp" else EXIT_DOMAIN
        print(f"error: {exc}", file=sys.stderr)
        return code
    except PlanError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    except (ClosureError, StepCollapse) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CLOSURE
    except (NonConvergence, QuadratureError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NONCONVERGENCE


if __name__ == "__main__":
    sys.exit(main())
