"""Exception and warning types shared across the library.

Two error families matter to callers (and to the CLI exit codes): invalid
requests (bad arguments, unsupported operations) and numerical-quality
failures (a computation ran but its own diagnostics say the result cannot
be trusted).
"""


class ValidationError(ValueError):
    """A request that can never succeed: bad arguments or an unsupported operation."""


class NumericalQualityError(ArithmeticError):
    """A computation finished but failed its own accuracy diagnostics."""


class UnknownActivation(ValidationError):
    """Activation name not found in the registry."""


class AmbiguousSmoothness(NumericalQualityError):
    """Finite-difference jump estimates cannot be separated from estimator noise."""


class DomainError(ValidationError):
    """Argument outside the mathematical domain of the operation."""


class NotPseudoDifferentiable(ValidationError):
    """The activation has no integrable pseudo-derivative (it is discontinuous at 0)."""


class NTKUndefined(ValidationError):
    """NTK quantities requested for an activation whose NTK does not exist."""


class QuadratureUnderResolved(NumericalQualityError):
    """Eigenvalue quadrature failed the Mercer reconstruction check."""


class InsufficientData(ValidationError):
    """Not enough usable eigenvalues in the requested window/parity to fit."""


class InconclusiveTail(NumericalQualityError):
    """Fitted tail exponent too close to the convergence boundary to call."""


class TruncationWarning(UserWarning):
    """A truncated expansion still carries non-negligible mass in its last term."""
