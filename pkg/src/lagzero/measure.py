"""Limit measures mu_r = nu_r + MP.

nu_r lives on the loop Gamma_r with arclength density |R(p)/p|/(2*pi)
and total mass A; the interval part is the Marchenko-Pastur-type density
sqrt((x-beta1)(beta2-x))/(2*pi*x) on [beta1, beta2] with mass 1-A.  The
r = infinity case replaces the loop by an atom of mass A at the origin,
stored symbolically.

Loop quantities are trapezoid sums over a traced polyline (float64,
adequate for the 1e-6 mass tolerances); interval quantities integrate in
mpmath with substitutions absorbing the square-root endpoint zeros.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple, Union

import numpy as np
from mpmath import mp

from lagzero.contour import ContourPolyline, _segment_distance
from lagzero.errors import DomainError
from lagzero.landscape import PotentialContext, quad_seg

INF = math.inf


@dataclass(frozen=True)
class MeasureSpec:
    """mu_r for one context; gamma present exactly when r is finite."""

    ctx: PotentialContext
    r: float
    gamma: Optional[ContourPolyline] = None

    def __post_init__(self):
        if math.isinf(self.r):
            if self.gamma is not None:
                raise ValueError("the r=inf measure carries no loop polyline")
        else:
            if self.gamma is None:
                raise ValueError("finite r needs a traced Gamma_r polyline")
            if self.gamma.r != self.r:
                raise ValueError(
                    f"polyline level {self.gamma.r} != measure r {self.r}"
                )


def make_measure(
    ctx: PotentialContext,
    r: float,
    gamma: Optional[ContourPolyline] = None,
) -> MeasureSpec:
    """Convenience constructor: traces Gamma_r when needed."""
    r = float(r)
    if math.isinf(r):
        return MeasureSpec(ctx, INF, None)
    if gamma is None:
        from lagzero import contour

        gamma = contour.trace_gamma(ctx, r)
    return MeasureSpec(ctx, r, gamma)


# ---------------------------------------------------------------------------
# densities


def _clamp_to_interval(ctx: PotentialContext, x: mp.mpf) -> mp.mpf:
    # tolerate float64 rounding of the mpf endpoints
    b1, b2 = ctx.beta1, ctx.beta2
    eps = (b2 - b1) * mp.mpf("1e-12") + mp.mpf("1e-300")
    if b1 - eps <= x < b1:
        return b1
    if b2 < x <= b2 + eps:
        return b2
    if x < b1 or x > b2:
        raise DomainError(f"{x} outside [beta1, beta2]")
    return x


def mp_density(ctx: PotentialContext, x: Union[float, mp.mpf]) -> mp.mpf:
    """sqrt((x-beta1)(beta2-x)) / (2 pi x) on [beta1, beta2]."""
    with mp.workprec(ctx.precision_bits):
        x = _clamp_to_interval(ctx, mp.mpf(x))
        b1, b2 = ctx.beta1, ctx.beta2
        if x == b1 or x == b2:
            return mp.mpf(0)
        return mp.sqrt((x - b1) * (b2 - x)) / (2 * mp.pi * x)


def nu_density_at(ctx: PotentialContext, p: complex) -> float:
    # raw |R(p)/p| / (2 pi) with no on-curve check; float64
    b1, b2 = float(ctx.beta1), float(ctx.beta2)
    rp = np.sqrt(complex(p - b1)) * np.sqrt(complex(p - b2))
    return abs(rp / p) / (2 * math.pi)


def nu_arclength_density(spec: MeasureSpec, p: complex) -> float:
    """Arclength density of nu_r at a point p of the traced curve.

    Positive everywhere on Gamma_r except at the r = 0 corner beta1,
    where R vanishes.  DomainError if p is not on the polyline.
    """
    if math.isinf(spec.r):
        raise DomainError("the r=inf loop is an atom; no arclength density")
    gamma = spec.gamma
    pts = gamma.points
    dist = min(
        _segment_distance(complex(p), pts[i], pts[i + 1])
        for i in range(len(pts) - 1)
    )
    if dist > max(10 * gamma.level_tol, 1e-8):
        raise DomainError(f"{p} is not on the traced Gamma_{spec.r}")
    return nu_density_at(spec.ctx, complex(p))


# ---------------------------------------------------------------------------
# masses and CDFs


def _vertex_densities(spec: MeasureSpec) -> Tuple[np.ndarray, np.ndarray]:
    pts, arcs = spec.gamma.as_arrays()
    dens = np.array(
        [nu_density_at(spec.ctx, complex(p)) for p in pts], dtype=np.float64
    )
    return dens, arcs


def _simpson_irregular(x: np.ndarray, y: np.ndarray) -> float:
    """Composite parabolic rule on an irregular grid.

    Pairs of adjacent panels are integrated with the quadratic through
    their three samples; a trailing odd panel falls back to trapezoid.
    Sampling error is O(h^4), which leaves the chord-versus-arc O(h^2)
    geometry error of the polyline as the accuracy limit.
    """
    n = len(x)
    total = 0.0
    i = 0
    while i + 2 < n:
        h0 = x[i + 1] - x[i]
        h1 = x[i + 2] - x[i + 1]
        s = h0 + h1
        if h0 <= 0 or h1 <= 0:
            total += (y[i] + y[i + 1]) / 2 * h0 + (y[i + 1] + y[i + 2]) / 2 * h1
            i += 2
            continue
        total += (s / 6) * (
            y[i] * (2 - h1 / h0)
            + y[i + 1] * s * s / (h0 * h1)
            + y[i + 2] * (2 - h0 / h1)
        )
        i += 2
    if i + 1 < n:
        total += (y[i] + y[i + 1]) / 2 * (x[i + 1] - x[i])
    return float(total)


def loop_mass(spec: MeasureSpec) -> float:
    """Integral of the nu_r density over the polyline arclength (= A)."""
    if math.isinf(spec.r):
        return float(spec.ctx.A)
    dens, arcs = _vertex_densities(spec)
    return _simpson_irregular(arcs, dens)


def loop_cdf_points(spec: MeasureSpec) -> Tuple[np.ndarray, np.ndarray]:
    """Cumulative nu_r mass at each vertex, clockwise from x_r."""
    dens, arcs = _vertex_densities(spec)
    seg = np.diff(arcs) * (dens[:-1] + dens[1:]) / 2
    return arcs, np.concatenate([[0.0], np.cumsum(seg)])


def interval_mass(ctx: PotentialContext) -> mp.mpf:
    """Integral of mp_density over [beta1, beta2] by quadrature (= 1-A).

    Unlike cdf_interval(ctx, beta2), this never takes the closed-form
    shortcut, so it exercises the density itself.
    """
    with mp.workprec(ctx.precision_bits):
        b1, b2 = ctx.beta1, ctx.beta2
        mid = (b1 + b2) / 2
        half = (b2 - b1) / 2

        def f(t):
            s = mid - half * mp.cos(t)
            return half * half * mp.sin(t) ** 2 / (2 * mp.pi * s)

        return quad_seg(f, mp.mpf(0), mp.pi, ctx.tol)


def cdf_interval(ctx: PotentialContext, x: Union[float, mp.mpf]) -> mp.mpf:
    """Integral of mp_density from beta1 to x; equals 1-A at x = beta2."""
    with mp.workprec(ctx.precision_bits):
        x = _clamp_to_interval(ctx, mp.mpf(x))
        b1, b2 = ctx.beta1, ctx.beta2
        if x == b1:
            return mp.mpf(0)
        if x == b2:
            return 1 - ctx.A
        U = mp.sqrt(x - b1)

        def f(u):
            s = b1 + u * u
            return 2 * u * u * mp.sqrt(b2 - s) / (2 * mp.pi * s)

        return quad_seg(f, 0, U, ctx.tol)


def cdf_from_beta2(ctx: PotentialContext, x: Union[float, mp.mpf]) -> mp.mpf:
    """Signed variant Integral_{beta2}^{x} mp_density, nonpositive on the
    interval; this is the oscillatory phase integral, so it is computed
    with the substitution at beta2 for accuracy near that endpoint."""
    with mp.workprec(ctx.precision_bits):
        x = _clamp_to_interval(ctx, mp.mpf(x))
        b1, b2 = ctx.beta1, ctx.beta2
        if x == b2:
            return mp.mpf(0)
        U = mp.sqrt(b2 - x)

        def f(u):
            s = b2 - u * u
            return 2 * u * u * mp.sqrt(s - b1) / (2 * mp.pi * s)

        return -quad_seg(f, 0, U, ctx.tol)


# ---------------------------------------------------------------------------
# log potential


def _interval_log_abs(ctx: PotentialContext, z: mp.mpc) -> mp.mpf:
    b1, b2 = ctx.beta1, ctx.beta2
    mid = (b1 + b2) / 2
    half = (b2 - b1) / 2

    def f(t):
        s = mid - half * mp.cos(t)
        w = half * mp.sin(t)
        return mp.log(abs(z - s)) * w * w / (2 * mp.pi * s)

    return quad_seg(f, 0, mp.pi, ctx.tol)


def log_potential(spec: MeasureSpec, z: complex) -> float:
    """U(z) = Integral log|z - s| dmu_r(s), z off the support.

    Loop part by trapezoid over the polyline; interval part in mpmath
    with the cosine substitution; the r = inf atom contributes
    A*log|z| exactly.
    """
    ctx = spec.ctx
    with mp.workprec(ctx.precision_bits):
        w = mp.mpc(z)
        if math.isinf(spec.r):
            if abs(w) < 1e-12:
                raise DomainError("z at the atom")
            x = mp.re(w)
            if mp.im(w) == 0 and ctx.beta1 <= x <= ctx.beta2:
                raise DomainError("z on the interval support")
            loop_part = float(ctx.A) * math.log(abs(complex(z)))
        else:
            from lagzero import contour

            dist = contour.limit_set_distance(ctx, spec.gamma, complex(z))
            if dist <= max(10 * spec.gamma.level_tol, 1e-8):
                raise DomainError("z on the support of mu_r")
            pts, arcs = spec.gamma.as_arrays()
            dens = np.array(
                [nu_density_at(ctx, complex(p)) for p in pts]
            )
            vals = np.log(np.abs(complex(z) - pts)) * dens
            loop_part = _simpson_irregular(arcs, vals)
        return loop_part + float(_interval_log_abs(ctx, w))


# ---------------------------------------------------------------------------
# quantiles (seed generation and classification support)


def loop_quantiles(spec: MeasureSpec, k: int) -> List[complex]:
    """k points on the polyline at nu-mass quantiles (j+1/2)/k."""
    if k <= 0:
        return []
    arcs, cum = loop_cdf_points(spec)
    pts, _ = spec.gamma.as_arrays()
    total = cum[-1]
    out = []
    targets = [(j + 0.5) / k * total for j in range(k)]
    idx = np.searchsorted(cum, targets, side="right") - 1
    for j, i in enumerate(idx):
        i = min(max(int(i), 0), len(pts) - 2)
        m0, m1 = cum[i], cum[i + 1]
        t = 0.0 if m1 == m0 else (targets[j] - m0) / (m1 - m0)
        out.append(complex(pts[i] + t * (pts[i + 1] - pts[i])))
    return out


def interval_quantiles(ctx: PotentialContext, k: int) -> List[float]:
    """k real points at Marchenko-Pastur quantiles (j+1/2)/k."""
    if k <= 0:
        return []
    b1, b2 = float(ctx.beta1), float(ctx.beta2)
    mid, half = (b1 + b2) / 2, (b2 - b1) / 2
    t = np.linspace(0.0, math.pi, 4001)
    s = mid - half * np.cos(t)
    w = (half * np.sin(t)) ** 2 / (2 * math.pi * s)
    cum = np.concatenate(
        [[0.0], np.cumsum(np.diff(t) * (w[1:] + w[:-1]) / 2)]
    )
    total = cum[-1]
    targets = [(j + 0.5) / k * total for j in range(k)]
    t_q = np.interp(targets, cum, t)
    return [float(mid - half * math.cos(tv)) for tv in t_q]


def project_to_loop(gamma: ContourPolyline, z: complex) -> Tuple[float, float]:
    """(arclength of nearest polyline point, distance to it)."""
    z = complex(z)
    pts = gamma.points
    arcs = gamma.arclengths
    best = (0.0, math.inf)
    for i in range(len(pts) - 1):
        a, b = pts[i], pts[i + 1]
        d = b - a
        L2 = d.real * d.real + d.imag * d.imag
        t = 0.0
        if L2 > 0:
            t = ((z - a).real * d.real + (z - a).imag * d.imag) / L2
            t = max(0.0, min(1.0, t))
        p = a + t * d
        dist = abs(z - p)
        if dist < best[1]:
            best = (arcs[i] + t * (arcs[i + 1] - arcs[i]), dist)
    return best
