"""Exception and warning types raised across the package."""


class SpcoverError(Exception):
    """Base class for all package errors."""


class InvalidInput(SpcoverError, ValueError):
    pass


class NotInM4R0(InvalidInput):
    """Matrix does not have the (A -B; B A) block structure."""


class NumericalFailure(SpcoverError, ArithmeticError):
    pass


class StepTooCoarse(SpcoverError):
    """Circle-function phase jumped by pi or more between consecutive path samples."""

    def __init__(self, index, jump):
        super().__init__(f"phase jump {jump:.3g} rad between samples {index} and {index + 1}")
        self.index = index
        self.jump = jump


class NotInvariant(SpcoverError):
    """A function failed its declared symmetry probe."""


class OutOfWindow(SpcoverError, ValueError):
    """Exponent p lies outside the range where the p-dependent constants are positive."""

    def __init__(self, p, endpoint, dual_endpoint):
        super().__init__(
            f"p = {p} outside (endpoint {endpoint}, {float('inf')}]; "
            f"dual window endpoint {dual_endpoint}"
        )
        self.p = p
        self.endpoint = endpoint
        self.dual_endpoint = dual_endpoint


class TruncationWarning(UserWarning):
    """Coefficient expansion discarded more mass than the truncation budget allows."""
