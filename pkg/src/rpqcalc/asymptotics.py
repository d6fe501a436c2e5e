"""Growth classification of the lattice values by quadratic log fits.

``fit_log_growth`` regresses log R(p^n, q^n) on {n^2, n, 1} over an index
window and classifies the kernel's growth:

* ``bounded``       — both curvature and slope negligible;
* ``G1``            — zero curvature, positive slope (geometric growth);
* ``G2``            — positive curvature (super-geometric growth);
* ``unclassified``  — anything else (e.g. decaying tails).

``lambda_hat`` is the curvature of the matching fit to the log *factorials*;
for a clean G1 kernel with slope b the factorial curvature approaches b/2,
and the cubic/quadratic partial sums are probed by ``sum_asymptotics_check``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import OutOfRange, WindowTooSmall
from .kernel import DeformedContext

#: below these magnitudes a fitted coefficient counts as zero
CURVATURE_TOL = 1e-6
SLOPE_TOL = 1e-6

REGIME_BOUNDED = "bounded"
REGIME_G1 = "G1"
REGIME_G2 = "G2"
REGIME_UNCLASSIFIED = "unclassified"


@dataclass(frozen=True)
class AsymptoticFit:
    alpha_hat: float        # curvature of log lattice values
    beta_hat: float         # slope
    intercept_hat: float
    window: tuple[int, int]
    max_abs_residual: float
    regime: str
    lambda_hat: float       # curvature of log factorials over the same window


def _window_indices(ctx: DeformedContext, window: tuple[int, int]) -> np.ndarray:
    lo, hi = int(window[0]), int(window[1])
    if lo < 1 or hi > ctx.order_cap:
        raise OutOfRange(
            f"window {window!r} outside lattice cache [1, {ctx.order_cap}]"
        )
    if hi - lo + 1 < 3:
        raise WindowTooSmall(f"need at least 3 points, window {window!r} has {max(hi - lo + 1, 0)}")
    return np.arange(lo, hi + 1)


def _quadratic_fit(ns: np.ndarray, ys: np.ndarray) -> tuple[np.ndarray, float]:
    """Least squares onto {n^2, n, 1}; returns (coeffs, max abs residual)."""
    design = np.column_stack([ns.astype(float) ** 2, ns.astype(float), np.ones(ns.size)])
    coeffs, *_ = np.linalg.lstsq(design, ys, rcond=None)
    residuals = ys - design @ coeffs
    return coeffs, float(np.max(np.abs(residuals)))


def fit_log_growth(ctx: DeformedContext, window: tuple[int, int]) -> AsymptoticFit:
    """Quadratic fit of the cached log lattice values over an index window."""
    ns = _window_indices(ctx, window)
    ys = ctx.log_numbers[ns - 1]
    (alpha, beta, intercept), max_resid = _quadratic_fit(ns, ys)

    if abs(alpha) <= CURVATURE_TOL:
        if abs(beta) <= SLOPE_TOL:
            regime = REGIME_BOUNDED
        elif beta > SLOPE_TOL:
            regime = REGIME_G1
        else:
            regime = REGIME_UNCLASSIFIED
    elif alpha > CURVATURE_TOL:
        regime = REGIME_G2
    else:
        regime = REGIME_UNCLASSIFIED

    fact_ys = ctx.log_factorials[ns]
    (lam, _, _), _ = _quadratic_fit(ns, fact_ys)

    return AsymptoticFit(
        alpha_hat=float(alpha),
        beta_hat=float(beta),
        intercept_hat=float(intercept),
        window=(int(window[0]), int(window[1])),
        max_abs_residual=max_resid,
        regime=regime,
        lambda_hat=float(lam),
    )


def sum_asymptotics_check(ctx: DeformedContext, fit: AsymptoticFit, n: int) -> float:
    """Residual of the partial-sum form: log [n]! - (alpha/3 n^3 + beta/2 n^2)."""
    if not 0 <= n <= ctx.order_cap:
        raise OutOfRange(f"n={n} outside [0, {ctx.order_cap}]")
    nf = float(n)
    predicted = fit.alpha_hat / 3.0 * nf**3 + fit.beta_hat / 2.0 * nf**2
    return float(ctx.log_factorials[n] - predicted)
