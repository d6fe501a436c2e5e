"""Independent reference implementations used to freeze expected test values.

Everything here works in exact rational arithmetic (fractions.Fraction) and
never touches the package's log-domain code paths, so agreement between the
two is evidence, not circularity.  Kernels are represented as plain Laurent
term lists [(s, t, c), ...] with Fraction coefficients.
"""

from __future__ import annotations

from fractions import Fraction
from math import log


def frac_kernel_value(terms, u: Fraction, v: Fraction) -> Fraction:
    return sum((c * u**s * v**t for (s, t, c) in terms), start=Fraction(0))


def frac_lattice(terms, p: Fraction, q: Fraction, n: int) -> Fraction:
    return frac_kernel_value(terms, p**n, q**n)


def frac_factorial(terms, p: Fraction, q: Fraction, n: int) -> Fraction:
    out = Fraction(1)
    for k in range(1, n + 1):
        out *= frac_lattice(terms, p, q, k)
    return out


def frac_binomial(terms, p: Fraction, q: Fraction, m: int, n: int) -> Fraction:
    return frac_factorial(terms, p, q, m) / (
        frac_factorial(terms, p, q, n) * frac_factorial(terms, p, q, m - n)
    )


def difference_terms():
    return [(1, 0, Fraction(1)), (0, 1, Fraction(-1))]


def js_terms(p: Fraction, q: Fraction):
    c = 1 / (p - q)
    return [(1, 0, c), (0, 1, -c)]


def frac_composite_multiplier(terms, p: Fraction, q: Fraction, n: int) -> Fraction:
    """Degree-n composite derivative multiplier by direct substitution."""
    if n == 1:
        return frac_lattice(terms, p, q, 1)
    return (
        frac_lattice(terms, p, q, n - 1)
        * (p**n - q**n)
        / (p ** (n - 1) - q ** (n - 1))
    )


def log_factorial_float(terms, p: Fraction, q: Fraction, n: int) -> float:
    """High-precision log of the exact rational factorial."""
    val = frac_factorial(terms, p, q, n)
    # log of a Fraction without overflowing: split numerator/denominator
    return log(val.numerator) - log(val.denominator)


def oracle_tail_radius(terms, p: Fraction, q: Fraction, coeff_abs, order: int,
                       tail_window: int, deformed: bool) -> float:
    """Brute-force the tail-max radius estimate from exact factorials.

    coeff_abs maps k -> |a_k| as a Fraction (or int).
    """
    exponents = []
    for k in range(order - tail_window + 1, order + 1):
        a = Fraction(coeff_abs(k))
        if a == 0:
            continue
        la = log(a.numerator) - log(a.denominator)
        if deformed:
            la -= log_factorial_float(terms, p, q, k)
        exponents.append(la / k)
    if not exponents:
        return float("inf")
    from math import exp

    return exp(-max(exponents))
