"""Exception types; each maps to one CLI exit code."""


class DomainError(ValueError):
    """Spectrum outside a function's domain, or a non positive definite input."""


class NonConvergenceError(RuntimeError):
    """Iteration or quadrature refinement cap reached."""


class MatrixFormatError(ValueError):
    """Unreadable or malformed matrix/config file."""


class IneligibleError(ValueError):
    """A bound was requested for a function whose hypotheses are not known to hold."""
