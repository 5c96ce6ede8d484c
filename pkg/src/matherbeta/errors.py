"""Exception types shared across the package."""


class MatherBetaError(Exception):
    """Base class for all library errors."""


class NonZeroMean(MatherBetaError):
    """A zero-mean series was required but the constant coefficient is nonzero."""


class ShiftOverflow(MatherBetaError):
    """A shift/evaluation would exceed the floating-point exponent budget."""


class SmallDivisorBreakdown(MatherBetaError):
    """A small divisor fell below the configured guard.

    Attributes:
        k: offending Fourier mode.
        divisor: value of the divisor at that mode.
    """

    def __init__(self, k: int, divisor: complex):
        self.k = k
        self.divisor = divisor
        super().__init__(f"small divisor at mode k={k}: |{divisor:.3e}| below guard")


class NoConvergence(MatherBetaError):
    """An iterative scheme hit its iteration cap before reaching tolerance."""

    def __init__(self, message: str, diagnostics=None):
        self.diagnostics = diagnostics
        super().__init__(message)


class ResidualStagnation(MatherBetaError):
    """Residual decrease stalled (factor > 0.9 for 10 consecutive iterations).

    Carries the last iterate for breakdown studies.
    """

    def __init__(self, message: str, diagnostics=None):
        self.diagnostics = diagnostics
        super().__init__(message)


class SaddlePoint(MatherBetaError):
    """Minimization converged to a critical point with a negative Hessian direction."""


class RejectedResidual(MatherBetaError):
    """A curve solution was rejected because its residual exceeds the threshold."""


class ConfigError(MatherBetaError):
    """A run configuration failed to parse or validate."""
