"""Exception taxonomy for the deformed-calculus package.

Every error raised by the library derives from :class:`RpqError`, so callers
can catch one type at an API boundary.  Subclasses are semantic: they name the
violated contract, not the call site.
"""

from __future__ import annotations


class RpqError(Exception):
    """Base class for all library errors."""


class ParameterDomain(RpqError):
    """Deformation parameters outside the admissible range 0 < q < p <= 1."""


class InvalidKernel(RpqError):
    """Kernel fails a structural requirement (e.g. it does not vanish at (1, 1))."""


class NonPositiveLattice(RpqError):
    """A lattice value R(p^n, q^n) is not strictly positive (or not finite)."""

    def __init__(self, n: int, value: float):
        self.n = n
        self.value = value
        super().__init__(
            f"lattice value at n={n} is {value!r}; expected a finite positive number"
        )


class NonPositiveShiftedLattice(RpqError):
    """A shifted lattice value R(p^x, q^x) needed by Gamma is not positive."""


class OutOfRange(RpqError):
    """An index lies outside the precomputed cache or the stated domain."""


class DomainError(RpqError):
    """An argument violates a mathematical domain restriction."""


class DegenerateParameters(RpqError):
    """An operation requires p != q but the parameters coincide."""


class NotInSubspace(RpqError):
    """Input series lies outside the subspace on which the operator is defined."""


class NonIntegerUnsupported(RpqError):
    """Gamma evaluation at a non-integer point in integer-only base mode."""


class WindowTooSmall(RpqError):
    """A fit or tail window has too few points for the requested estimate."""


class EmptyKernel(RpqError):
    """A custom kernel has no nonzero coefficients."""


class PreconditionViolated(RpqError):
    """A check was invoked with parameters outside its stated hypotheses."""


class EmptyDisc(RpqError):
    """A deformed disc contains no points other than the origin."""


class NonRealConstantTerm(RpqError):
    """The constant term must be real for this check."""


class NonPositiveLogRate(RpqError):
    """A sector's log-growth rate is non-positive, so the sector is empty there."""


class GateUnevaluable(RpqError):
    """A growth-gate comparison cannot be formed from the cached lattice data."""


class EmptyList(RpqError):
    """An aggregate operation received an empty collection."""
