"""Experiment harness: parameter plans, zero runs, comparison reports.

The pipeline mirrors the sensitivity experiments: pick alphas whose
distance to the integers decays like e^{-r n}, compute all zeros of the
scaled polynomial, classify them against the predicted limit set
Gamma_{r_hat} union [beta1, beta2], and boil the comparison down to a
small deterministic report (counts, KS discrepancies, mass error).

alpha values are carried as exact Fractions end to end; binary rounding
of, say, -31.999999 would silently change dist(alpha, Z) by orders of
magnitude, which is the quantity the whole experiment is about.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

import numpy as np
from mpmath import mp

from . import contour, laguerre, measure, rootfinder
from .errors import DomainError, NonConvergence, PlanError
from .landscape import make_context

# r_hat values beyond this trace loops smaller than the step floor
_TRACE_R_MAX = 8.0

_REPORT_FIELDS = (
    "n", "alpha", "r_hat", "max_deviation", "loop_count", "interval_count",
    "outlier_count", "ks_interval", "ks_loop", "mass_error", "residual_max",
    "origin_multiplicity", "valid",
)

_CSV_FIELDS = ("n", "alpha", "r_hat", "max_deviation", "ks_interval",
               "ks_loop", "mass_error")


@dataclass(frozen=True)
class ParameterPlan:
    A: Fraction
    r: float
    n_values: Tuple[int, ...]
    alphas: Tuple[Fraction, ...]


@dataclass(frozen=True)
class RunOptions:
    classify_tol: float = 0.1
    sweep: Tuple[float, ...] = (0.05, 0.1, 0.2)
    precision_bits: Optional[int] = None
    max_step: Optional[float] = None


@dataclass(frozen=True)
class ComparisonReport:
    n: int
    alpha: str
    r_hat: float
    max_deviation: float
    loop_count: int
    interval_count: int
    outlier_count: int
    ks_interval: float
    ks_loop: float
    mass_error: float
    residual_max: float
    origin_multiplicity: int
    valid: bool
    sweep: Tuple[Tuple[float, int, int, int], ...] = ()
    zeros: Tuple[Tuple[float, float, str], ...] = ()


def dist_to_integers(alpha) -> Fraction:
    """Exact distance from alpha to the nearest integer."""
    a = laguerre.parse_alpha(alpha)
    frac = a - math.floor(a)
    return min(frac, 1 - frac)


def r_hat_from(n: int, alpha) -> float:
    """-(1/n) log dist(alpha, Z); infinity at the integers."""
    dist = dist_to_integers(alpha)
    if dist == 0:
        return math.inf
    # a plain float log would round dist first and destroy tiny distances
    bits = max(64, 4 * (dist.denominator.bit_length() + 8))
    with mp.workprec(bits):
        val = -mp.log(mp.mpf(dist.numerator) / dist.denominator) / n
    return float(val)


def decimal_str(q: Fraction) -> str:
    """Exact decimal string when the denominator divides a power of 10."""
    num, den = q.numerator, q.denominator
    sign = "-" if num < 0 else ""
    num = abs(num)
    d = den
    e2 = e5 = 0
    while d % 2 == 0:
        d //= 2
        e2 += 1
    while d % 5 == 0:
        d //= 5
        e5 += 1
    if d != 1:
        with mp.workprec(200):
            return mp.nstr(mp.mpf(num) / den * (-1 if sign else 1), 40)
    k = max(e2, e5)
    scaled = num * 10 ** k // den
    s = str(scaled).rjust(k + 1, "0")
    if k:
        head, tail = s[:-k], s[-k:].rstrip("0")
    else:
        head, tail = s, ""
    return sign + head + ("." + tail if tail else "")


def _round_frac(q: Fraction) -> int:
    # round-half-away-from-zero keeps the rounding independent of parity
    f = math.floor(q)
    return f + 1 if q - f >= Fraction(1, 2) else f


def _exp_fraction(r: float, n: int) -> Fraction:
    """e^{-r n} as an exact 40-digit decimal Fraction (capped at 1/2)."""
    if r == 0:
        return Fraction(1, 2)
    bits = int(1.5 * r * n) + 200
    with mp.workprec(bits):
        x = mp.e ** (-mp.mpf(r) * n)
        e = int(mp.floor(mp.log10(x)))
        digits = int(mp.floor(x * mp.mpf(10) ** (39 - e)))
    dist = Fraction(digits, 1) * Fraction(10) ** (e - 39)
    return min(dist, Fraction(1, 2))


def make_plan(A, r: float, n_values: Sequence[int],
              overrides: Optional[Sequence] = None) -> ParameterPlan:
    """Alphas with -alpha/n -> A and dist(alpha, Z) = e^{-r n} (up to 2x).

    For r = 0 the distance saturates at the maximum possible 1/2; for
    r = inf the alphas are the nearest integers -round(nA).  An explicit
    override list (one alpha per n, exact decimal strings or Fractions)
    replaces the construction, keeping only the A-consistency and
    degeneracy checks; that is the hook for direct parameter choices
    like alpha = -nA whose distances do not follow an e^{-rn} law.
    """
    A = laguerre.parse_alpha(A)
    if not 0 < A < 1:
        raise PlanError(f"A={A} outside (0,1)")
    n_values = tuple(int(n) for n in n_values)
    if overrides is not None and len(overrides) != len(n_values):
        raise PlanError("need exactly one override alpha per n")
    alphas: List[Fraction] = []
    for i, n in enumerate(n_values):
        if n < 2:
            raise PlanError(f"n={n} too small to satisfy the invariants")
        if overrides is not None:
            a = laguerre.parse_alpha(overrides[i])
            if a == 0 or a == -n:
                raise PlanError(f"override alpha={a} is a degenerate edge")
            if r != math.inf and a.denominator == 1:
                raise PlanError(f"override alpha={a} is an integer but r={r}")
        else:
            k = _round_frac(n * A)
            k = min(max(k, 1), n - 1)
            if r == math.inf:
                a = Fraction(-k)
            else:
                a = -k + _exp_fraction(r, n)
        if abs(Fraction(-a, n) - A) > Fraction(1, n):
            raise PlanError(f"alpha={a} violates |-alpha/n - A| <= 1/n at n={n}")
        alphas.append(a)
    return ParameterPlan(A, float(r), n_values, tuple(alphas))


def _segment_gap(z: complex, a: float, b: float) -> float:
    t = min(max(z.real, a), b)
    return math.hypot(z.real - t, z.imag)


def _limit_distance(ctx, gamma, z: complex) -> float:
    if gamma is None:
        seg = _segment_gap(z, float(ctx.beta1), float(ctx.beta2))
        return min(abs(z), seg)
    return contour.limit_set_distance(ctx, gamma, z)


def _classify(zeros: Sequence[complex], ctx, gamma,
              delta: float) -> List[str]:
    # both sets can match near beta1 at loose tolerances; the nearer one
    # wins, with the interval taking exact ties
    b1, b2 = float(ctx.beta1), float(ctx.beta2)
    labels = []
    for z in zeros:
        d_int = _segment_gap(z, b1, b2)
        int_ok = d_int <= delta and abs(z.imag) < delta
        d_loop = abs(z) if gamma is None else measure.project_to_loop(gamma, z)[1]
        loop_ok = d_loop <= delta
        if int_ok and (not loop_ok or d_int <= d_loop):
            labels.append("interval")
        elif loop_ok:
            labels.append("loop")
        else:
            labels.append("outlier")
    return labels


def _ks_interval(xs: Sequence[float], ctx) -> float:
    if not xs:
        return 0.0
    b1, b2 = float(ctx.beta1), float(ctx.beta2)
    denom = 1 - float(ctx.A)
    k = len(xs)
    d = 0.0
    for j, x in enumerate(sorted(xs)):
        f = float(measure.cdf_interval(ctx, min(max(x, b1), b2))) / denom
        d = max(d, abs(f - (j + 1) / k), abs(f - j / k))
    return d


def _ks_loop(zs: Sequence[complex], spec: measure.MeasureSpec) -> float:
    if not zs:
        return 0.0
    arcs, cum = measure.loop_cdf_points(spec)
    total = float(cum[-1])
    ss = sorted(measure.project_to_loop(spec.gamma, z)[0] for z in zs)
    k = len(ss)
    d = 0.0
    for j, s in enumerate(ss):
        g = float(np.interp(s, arcs, cum)) / total
        d = max(d, abs(g - (j + 1) / k), abs(g - j / k))
    return d


def _seeds_for(deg: int, ctx, r_hat: float, spec_m, origin_mult: int):
    # integer case: every remaining zero lives on the interval
    if origin_mult > 0 or deg == 0:
        return [mp.mpc(s) for s in measure.interval_quantiles(ctx, deg)]
    n_loop = min(deg, math.ceil(deg * float(ctx.A)))
    n_int = deg - n_loop
    seeds = list(measure.loop_quantiles(spec_m, n_loop)) if n_loop else []
    if n_int:
        seeds.extend(measure.interval_quantiles(ctx, n_int))
    return [mp.mpc(s) for s in seeds]


def working_precision(n: int, alpha) -> int:
    """Root-finding precision; raised for near-integer alpha, whose
    constant coefficient scales with dist(alpha, Z)."""
    alpha_f = laguerre.parse_alpha(alpha)
    dist = dist_to_integers(alpha_f)
    bits = laguerre.default_precision(n)
    if 0 < dist < Fraction(1, 2):
        with mp.workprec(64 + dist.denominator.bit_length()):
            lg = int(mp.ceil(-mp.log(mp.mpf(dist.numerator) / dist.denominator, 2)))
        bits = max(bits, 4 * n + 10 * max(lg, 0))
    return bits


def compute_zeros(n: int, alpha, precision_bits: Optional[int] = None,
                  max_step: Optional[float] = None):
    """Certified zeros of the scaled polynomial L_n^{(alpha)}(nz).

    Returns (zset, ctx, gamma, r_hat); ctx and gamma are None when
    -alpha/n falls outside (0,1) or alpha is an integer. Retries once at
    doubled precision on NonConvergence, then propagates.
    """
    alpha_f = laguerre.parse_alpha(alpha)
    a_n = Fraction(-alpha_f, n)
    r_hat = r_hat_from(n, alpha_f)
    bits = precision_bits if precision_bits is not None else working_precision(n, alpha_f)

    ctx = gamma = spec_m = None
    origin_mult = 0
    if r_hat == math.inf and -n <= alpha_f <= -1:
        origin_mult, red = laguerre.integer_reduction(n, alpha_f)
        work = laguerre.LaguerreSpec.create(red.n, red.alpha, precision_bits=bits)
    else:
        work = laguerre.LaguerreSpec.create(n, alpha_f, precision_bits=bits)
    if 0 < a_n < 1:
        ctx = make_context(a_n, precision_bits=max(bits, 256))
        if r_hat <= _TRACE_R_MAX:
            if r_hat == math.inf:
                spec_m = measure.make_measure(ctx, math.inf)
            else:
                gamma = contour.trace_gamma(ctx, r_hat, max_step=max_step)
                spec_m = measure.MeasureSpec(ctx, r_hat, gamma)

    coeffs = laguerre.monic_rescaled(work, scale=n)
    tol = mp.mpf(2) ** (-(bits // 2))
    if ctx is not None and spec_m is not None:
        seeds = _seeds_for(work.n, ctx, r_hat, spec_m, origin_mult)
    else:
        seeds = None
    try:
        zset = rootfinder.find_zeros(coeffs, bits, tol, seeds=seeds,
                                     origin_multiplicity=origin_mult)
    except NonConvergence:
        zset = rootfinder.find_zeros(coeffs, 2 * bits, mp.mpf(2) ** (-bits),
                                     seeds=seeds, origin_multiplicity=origin_mult)
    return rootfinder.certify(coeffs, zset), ctx, gamma, r_hat


def run_comparison(n: int, alpha, opts: RunOptions = RunOptions()) -> ComparisonReport:
    """Zeros of L_n^{(alpha)}(nz) against the predicted limit set.

    Classification is interval-first inside the tolerance band, then
    loop, then outlier; the origin multiplicity of integer alpha counts
    toward the loop mass (the limit measure's atom at 0).
    """
    alpha_f = laguerre.parse_alpha(alpha)
    a_n = Fraction(-alpha_f, n)
    if not 0 < a_n < 1:
        raise DomainError(f"-alpha/n = {a_n} outside (0,1)")
    r_hat = r_hat_from(n, alpha_f)
    if r_hat != math.inf and r_hat > _TRACE_R_MAX:
        raise DomainError(
            f"r_hat={r_hat:.3f} exceeds {_TRACE_R_MAX}; the loop is "
            "below the tracer's resolution"
        )
    zset, ctx, gamma, r_hat = compute_zeros(
        n, alpha_f, precision_bits=opts.precision_bits, max_step=opts.max_step
    )
    origin_mult = zset.origin_multiplicity
    if gamma is None:
        spec_m = measure.make_measure(ctx, math.inf)
    else:
        spec_m = measure.MeasureSpec(ctx, r_hat, gamma)
    valid = not zset.suspect

    zeros = [complex(z) for z in zset.zeros]
    labels = _classify(zeros, ctx, gamma, opts.classify_tol)
    loop_zs = [z for z, lab in zip(zeros, labels) if lab == "loop"]
    int_xs = [z.real for z, lab in zip(zeros, labels) if lab == "interval"]
    n_out = sum(1 for lab in labels if lab == "outlier")

    max_dev = 0.0
    for z in zeros:
        max_dev = max(max_dev, _limit_distance(ctx, gamma, z))

    ks_loop = 0.0 if gamma is None else _ks_loop(loop_zs, spec_m)
    mass = Fraction(len(loop_zs) + origin_mult, n) - a_n
    sweep = []
    for delta in opts.sweep:
        labs = _classify(zeros, ctx, gamma, delta)
        sweep.append((delta, labs.count("loop"), labs.count("interval"),
                      labs.count("outlier")))

    return ComparisonReport(
        n=n,
        alpha=decimal_str(alpha_f),
        r_hat=r_hat,
        max_deviation=max_dev,
        loop_count=len(loop_zs),
        interval_count=len(int_xs),
        outlier_count=n_out,
        ks_interval=_ks_interval(int_xs, ctx),
        ks_loop=ks_loop,
        mass_error=abs(float(mass)),
        residual_max=float(max(zset.residuals, default=mp.mpf(0))),
        origin_multiplicity=origin_mult,
        valid=valid,
        sweep=tuple(sweep),
        zeros=tuple((z.real, z.imag, lab) for z, lab in zip(zeros, labels)),
    )


def convergence_study(plan: ParameterPlan,
                      opts: RunOptions = RunOptions()) -> List[ComparisonReport]:
    """run_comparison per n; trend check on deviation and KS statistics.

    Raises NonConvergence when max_deviation, ks_interval, or ks_loop
    grows by more than 20% from one n to the next (the weak-* claim has
    no rate, so the slack is empirical).
    """
    reports = [run_comparison(n, a, opts)
               for n, a in zip(plan.n_values, plan.alphas)]
    for name in ("max_deviation", "ks_interval", "ks_loop"):
        vals = [getattr(rep, name) for rep in reports]
        for i in range(len(vals) - 1):
            if vals[i + 1] > 1.2 * vals[i] + 1e-12:
                raise NonConvergence(
                    iterations=i + 1,
                    worst_residual=vals[i + 1] / max(vals[i], 1e-300),
                )
    return reports


def _json_value(v):
    if isinstance(v, float) and math.isinf(v):
        return "inf"
    return v


def report_to_dict(rep: ComparisonReport) -> dict:
    out = {name: _json_value(getattr(rep, name)) for name in _REPORT_FIELDS}
    out["sweep"] = [
        {"delta": d, "loop": lo, "interval": iv, "outlier": ou}
        for d, lo, iv, ou in rep.sweep
    ]
    return out


def report_json(rep: ComparisonReport) -> str:
    return json.dumps(report_to_dict(rep), indent=2)


def study_json(reports: Sequence[ComparisonReport]) -> str:
    return json.dumps([report_to_dict(r) for r in reports], indent=2)


def study_csv(reports: Sequence[ComparisonReport]) -> str:
    lines = [",".join(_CSV_FIELDS)]
    for rep in reports:
        row = []
        for name in _CSV_FIELDS:
            v = getattr(rep, name)
            if isinstance(v, float):
                row.append("inf" if math.isinf(v) else repr(v))
            else:
                row.append(str(v))
        lines.append(",".join(row))
    return "\n".join(lines) + "\n"
