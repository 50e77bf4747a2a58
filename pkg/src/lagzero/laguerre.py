"""Generalized Laguerre polynomials L_n^(a)(z) for arbitrary real parameters.

Coefficients come from the explicit monomial representation

    L_n^(a)(z) = sum_{k=0}^{n} binom(n+a, n-k) (-z)^k / k!

built in exact rational arithmetic. The parameter is carried as a
fractions.Fraction parsed from a decimal string, never through binary floating
point: the experiments downstream depend on dist(alpha, Z) values as small as
1e-300, which a float cannot represent and a gamma-function quotient cannot
recover (catastrophic cancellation near negative integers). Rounding to the
working precision happens once, after the exact product is assembled.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence, Union

import mpmath as mp

from .errors import DomainError

AlphaLike = Union[str, int, Fraction]


def parse_alpha(alpha: AlphaLike) -> Fraction:
    """Exact parameter from a decimal string (or int/Fraction passthrough).

    Floats are rejected: '0.81' is not representable in binary and the
    difference matters here.
    """
    if isinstance(alpha, Fraction):
        return alpha
    if isinstance(alpha, int):
        return Fraction(alpha)
    if isinstance(alpha, float):
        raise DomainError("alpha must be a decimal string, int, or Fraction, not float")
    try:
        return Fraction(alpha.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise DomainError(f"cannot parse alpha {alpha!r} as an exact decimal") from exc


def default_precision(n: int) -> int:
    return max(256, 4 * n + 64)


@dataclass(frozen=True)
class LaguerreSpec:
    """Degree, exact parameter, and working precision for one polynomial."""

    n: int
    alpha: Fraction
    precision_bits: int

    def __post_init__(self):
        if self.n < 0:
            raise DomainError(f"degree n must be >= 0, got {self.n}")
        if self.precision_bits < 64:
            raise DomainError("precision_bits must be >= 64")

    @classmethod
    def create(cls, n: int, alpha: AlphaLike, precision_bits: int | None = None) -> "LaguerreSpec":
        return cls(n, parse_alpha(alpha), precision_bits or default_precision(n))

    @property
    def A_n(self) -> Fraction:
        if self.n == 0:
            raise DomainError("A_n undefined for degree 0")
        return -self.alpha / self.n

    def require_theorem_range(self) -> None:
        """Experiments assume n >= 1 and A_n in (0,1); plain evaluation does not."""
        if self.n < 1:
            raise DomainError("degenerate degree-0 spec cannot drive an experiment")
        if not (0 < self.A_n < 1):
            raise DomainError(f"A_n = {self.A_n} outside (0,1)")


@dataclass(frozen=True)
class CoefficientList:
    """Monomial coefficients c_0..c_n, exact and rounded views.

    coeffs holds mpf values rounded at precision_bits; exact holds the
    Fractions they came from so callers can re-round at a higher precision
    (certify does this).
    """

    coeffs: tuple
    exact: tuple
    precision_bits: int

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def at_precision(self, precision_bits: int) -> "CoefficientList":
        if precision_bits == self.precision_bits:
            return self
        rounded = _round_fractions(self.exact, precision_bits)
        return CoefficientList(rounded, self.exact, precision_bits)


def _round_fractions(fracs: Sequence[Fraction], precision_bits: int) -> tuple:
    with mp.workprec(precision_bits):
        return tuple(mp.mpf(f.numerator) / mp.mpf(f.denominator) for f in fracs)


def _exact_coefficients(n: int, alpha: Fraction) -> list:
    # binom(n+alpha, n-k) = prod_{j=1}^{n-k} (alpha+k+j) / (n-k)!
    # built backwards so each k reuses the previous product
    coeffs = [Fraction(0)] * (n + 1)
    prod = Fraction(1)
    coeffs[n] = Fraction(-1) ** n / math.factorial(n)
    for k in range(n - 1, -1, -1):
        prod *= alpha + k + 1
        binom = prod / math.factorial(n - k)
        coeffs[k] = binom * Fraction(-1) ** k / math.factorial(k)
    return coeffs


def build_coefficients(spec: LaguerreSpec) -> CoefficientList:
    """Coefficients of L_n^(alpha)(z); leading coefficient (-1)^n/n! exactly."""
    exact = tuple(_exact_coefficients(spec.n, spec.alpha))
    return CoefficientList(
        _round_fractions(exact, spec.precision_bits), exact, spec.precision_bits
    )


def eval_poly(coeffs: Sequence, z, precision_bits: int):
    """Horner evaluation at the given precision. Accepts mpf/mpc/complex z."""
    with mp.workprec(precision_bits):
        zz = mp.mpmathify(z)
        acc = mp.mpf(0)
        for c in reversed(coeffs):
            acc = acc * zz + c
        return acc


def eval_laguerre(spec: LaguerreSpec, z):
    """L_n^(alpha)(z) by Horner at spec.precision_bits.

    The accuracy statement (relative 2^-precision/2 against a doubled
    precision run) holds when the cancellation budget fits, i.e. away from
    the deep oscillatory regime at large n; the default budget 4n+64 keeps
    roughly 64 - 0.2n bits of headroom there.
    """
    return eval_poly(build_coefficients(spec).coeffs, z, spec.precision_bits)


def monic_rescaled(spec: LaguerreSpec, scale: int | None = None) -> CoefficientList:
    """Coefficients of the monic P(z) = (n!/(-s)^n) L_n^(alpha)(s z), s = scale.

    scale defaults to spec.n (the standard rescaling). The integer-reduction
    pipeline passes the original degree as scale so the reduced polynomial is
    still evaluated on the original s*z grid.
    """
    s = spec.n if scale is None else scale
    if s < 1:
        raise DomainError("scale must be a positive integer")
    n = spec.n
    base = _exact_coefficients(n, spec.alpha)
    lead = base[n]  # (-1)^n / n!
    powers = Fraction(1)
    monic = []
    for k in range(n + 1):
        # c_k * s^k / (lead * s^n) ; accumulate s^k, divide by s^n via lead
        monic.append(base[k] * powers / (lead * Fraction(s) ** n))
        powers *= s
    exact = tuple(monic)
    assert exact[n] == 1
    return CoefficientList(
        _round_fractions(exact, spec.precision_bits), exact, spec.precision_bits
    )


def integer_reduction(n: int, alpha: AlphaLike) -> tuple[int, LaguerreSpec]:
    """Reduce integer alpha in {-n..-1}: zero of order |alpha| at the origin.

    L_n^(alpha)(z) = ((n+alpha)!/n!) (-z)^{-alpha} L_{n+alpha}^{(-alpha)}(z),
    so the returned spec has degree n+alpha and parameter -alpha.
    """
    a = parse_alpha(alpha)
    if a.denominator != 1:
        raise DomainError(f"integer_reduction needs integer alpha, got {a}")
    ai = int(a)
    if not (-n <= ai <= -1):
        raise DomainError(f"alpha {ai} outside {{-n..-1}} for n={n}")
    multiplicity = -ai
    # reduced degree may be 0 (alpha = -n: every zero sits at the origin)
    return multiplicity, LaguerreSpec(n + ai, Fraction(-ai), default_precision(n))
