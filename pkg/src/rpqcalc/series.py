"""Truncated power series and the deformed derivative operators.

A :class:`TruncatedSeries` is a finite complex coefficient vector in
ascending degree.  The operators here are all diagonal or degree-shifting
maps on monomials:

* ``scale_op(f, b)``: z^n -> (b z)^n, i.e. a_n <- a_n b^n (the P and Q maps
  for b = p, q).
* ``pq_derivative``: z^n -> ((p^n - q^n)/(p - q)) z^(n-1).
* ``r_derivative``: the kernel derivative, in two multiplier conventions —
  ``composite`` uses R(p^(n-1), q^(n-1)) * (p^n - q^n)/(p^(n-1) - q^(n-1))
  with the degree-1 multiplier set to [1] (the n = 1 formula is 0/0), and
  ``canonical`` uses [n] directly.  The two agree for kernels proportional
  to u - v and can genuinely differ otherwise; ``algebra_diagnostic``
  reports both multipliers so the discrepancy is observable.
* ``invert_P_minus_Q``: diagonal inverse a_n / (p^n - q^n), defined only on
  series with (numerically) vanishing constant term.
* ``r_multiplier_op``: z^n -> [n] z^n (annihilates constants since [0] = 0).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np
from numpy.polynomial import polynomial as npoly

from .errors import (
    DegenerateParameters,
    NotInSubspace,
    OutOfRange,
    ParameterDomain,
)
from .kernel import DeformedContext

MODE_COMPOSITE = "composite"
MODE_CANONICAL = "canonical"
DERIVATIVE_MODES = (MODE_COMPOSITE, MODE_CANONICAL)

#: constant terms at or below this magnitude count as zero for (P - Q)^{-1}
CONSTANT_TERM_TOL = 1e-14


@dataclass(frozen=True)
class TruncatedSeries:
    """Finite power series sum a_n z^n, coefficients ascending in n."""

    coeffs: np.ndarray

    def __post_init__(self):
        arr = np.asarray(self.coeffs, dtype=complex)
        if arr.ndim != 1 or arr.size < 1:
            raise ValueError("coefficients must form a non-empty 1-D vector")
        if not np.all(np.isfinite(arr.view(float))):
            raise ValueError("coefficients must be finite")
        arr = arr.copy()
        arr.setflags(write=False)
        object.__setattr__(self, "coeffs", arr)

    @property
    def order(self) -> int:
        return self.coeffs.size - 1

    def coefficient(self, n: int) -> complex:
        return complex(self.coeffs[n]) if 0 <= n <= self.order else 0.0 + 0.0j

    def __add__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        n = max(self.coeffs.size, other.coeffs.size)
        out = np.zeros(n, dtype=complex)
        out[: self.coeffs.size] = self.coeffs
        out[: other.coeffs.size] += other.coeffs
        return TruncatedSeries(out)

    def __sub__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        n = max(self.coeffs.size, other.coeffs.size)
        out = np.zeros(n, dtype=complex)
        out[: self.coeffs.size] = self.coeffs
        out[: other.coeffs.size] -= other.coeffs
        return TruncatedSeries(out)

    def __mul__(self, scalar: complex) -> "TruncatedSeries":
        return TruncatedSeries(self.coeffs * scalar)

    __rmul__ = __mul__


def series_from_pairs(pairs: Sequence[Sequence[float]]) -> TruncatedSeries:
    """Build a series from the interchange format: [[re, im], ...] by degree."""
    if len(pairs) == 0:
        raise ValueError("series document must contain at least one coefficient")
    coeffs = np.array([complex(float(re), float(im)) for re, im in pairs])
    return TruncatedSeries(coeffs)


def series_to_pairs(f: TruncatedSeries) -> list[list[float]]:
    return [[float(c.real), float(c.imag)] for c in f.coeffs]


def eval_series(f: TruncatedSeries, z: complex) -> complex:
    """Horner evaluation of the truncated series at a point."""
    return complex(npoly.polyval(z, f.coeffs))


def eval_on_circle(f: TruncatedSeries, radius: float, count: int) -> np.ndarray:
    """Values of f at ``count`` equispaced points of the circle |z| = radius."""
    if count < 1:
        raise OutOfRange(f"need at least one sample point, got {count}")
    angles = 2.0 * np.pi * np.arange(count) / count
    points = radius * np.exp(1j * angles)
    return npoly.polyval(points, f.coeffs)


def scale_op(f: TruncatedSeries, base: float) -> TruncatedSeries:
    """Composition with z -> base * z; diagonal factors base^n, base in (0, 1]."""
    if not (0.0 < base <= 1.0):
        raise ParameterDomain(f"scale base must lie in (0, 1], got {base!r}")
    factors = np.power(base, np.arange(f.coeffs.size, dtype=float))
    return TruncatedSeries(f.coeffs * factors)


def pq_derivative(f: TruncatedSeries, p: float, q: float) -> TruncatedSeries:
    """Two-parameter divided difference: z^n -> ((p^n - q^n)/(p - q)) z^(n-1)."""
    if p == q:
        raise DegenerateParameters("pq-derivative needs p != q")
    if f.order == 0:
        return TruncatedSeries(np.zeros(1, dtype=complex))
    n = np.arange(1, f.coeffs.size, dtype=float)
    mult = (np.power(p, n) - np.power(q, n)) / (p - q)
    return TruncatedSeries(f.coeffs[1:] * mult)


def _composite_multiplier(ctx: DeformedContext, n: int) -> float:
    """Degree-n multiplier of the composite kernel derivative (n >= 1)."""
    p, q = ctx.spec.p, ctx.spec.q
    if n == 1:
        # The general formula is 0/0 at n = 1; the operator's value on z is
        # pinned to [1], matching the canonical convention.
        return math.exp(ctx.log_number(1))
    prev = math.exp(ctx.log_number(n - 1))
    return prev * (p**n - q**n) / (p ** (n - 1) - q ** (n - 1))


def _canonical_multiplier(ctx: DeformedContext, n: int) -> float:
    return math.exp(ctx.log_number(n))


def r_derivative(
    ctx: DeformedContext, f: TruncatedSeries, mode: str = MODE_COMPOSITE
) -> TruncatedSeries:
    """Kernel derivative of a truncated series; see module docstring for modes."""
    if mode not in DERIVATIVE_MODES:
        raise ValueError(f"mode must be one of {DERIVATIVE_MODES}, got {mode!r}")
    if f.order > ctx.order_cap:
        raise OutOfRange(
            f"series order {f.order} exceeds order_cap {ctx.order_cap}"
        )
    if f.order == 0:
        return TruncatedSeries(np.zeros(1, dtype=complex))
    pick = _composite_multiplier if mode == MODE_COMPOSITE else _canonical_multiplier
    mult = np.array([pick(ctx, n) for n in range(1, f.order + 1)])
    return TruncatedSeries(f.coeffs[1:] * mult)


def invert_P_minus_Q(
    f: TruncatedSeries, p: float, q: float
) -> TruncatedSeries:
    """Diagonal inverse of (P - Q) on the subspace of vanishing constant term.

    Raises:
        NotInSubspace: |a_0| exceeds ``CONSTANT_TERM_TOL``.
        DegenerateParameters: p == q.
    """
    if p == q:
        raise DegenerateParameters("(P - Q) is zero when p == q")
    a0 = abs(complex(f.coeffs[0]))
    if a0 > CONSTANT_TERM_TOL:
        raise NotInSubspace(
            f"constant term magnitude {a0:.3e} exceeds {CONSTANT_TERM_TOL}"
        )
    out = np.zeros(f.coeffs.size, dtype=complex)
    if f.coeffs.size > 1:
        n = np.arange(1, f.coeffs.size, dtype=float)
        out[1:] = f.coeffs[1:] / (np.power(p, n) - np.power(q, n))
    return TruncatedSeries(out)


def r_multiplier_op(ctx: DeformedContext, f: TruncatedSeries) -> TruncatedSeries:
    """Diagonal map z^n -> [n] z^n; the constant term is annihilated exactly."""
    if f.order > ctx.order_cap:
        raise OutOfRange(
            f"series order {f.order} exceeds order_cap {ctx.order_cap}"
        )
    out = np.zeros(f.coeffs.size, dtype=complex)
    for n in range(1, f.coeffs.size):
        out[n] = f.coeffs[n] * math.exp(ctx.log_number(n))
    return TruncatedSeries(out)


def deformed_exponential(ctx: DeformedContext, order: int) -> TruncatedSeries:
    """Truncation of the deformed exponential: coefficients 1/[n]!."""
    if not 0 <= order <= ctx.order_cap:
        raise OutOfRange(f"order={order} outside [0, {ctx.order_cap}]")
    coeffs = np.array(
        [math.exp(-ctx.log_factorial(n)) for n in range(order + 1)], dtype=complex
    )
    return TruncatedSeries(coeffs)


def algebra_diagnostic(ctx: DeformedContext, n: int) -> tuple[float, float]:
    """(composite multiplier, canonical multiplier) at degree n, linear domain.

    Equal (to rounding) for difference-type kernels; a genuine gap flags a
    kernel for which the two derivative conventions are different operators.
    """
    if not 1 <= n <= ctx.order_cap:
        raise OutOfRange(f"n={n} outside [1, {ctx.order_cap}]")
    return (_composite_multiplier(ctx, n), _canonical_multiplier(ctx, n))
