"""Exception types shared across the package."""


class DomainError(ValueError):
    """An argument lies outside the domain an operation is defined on."""


class NonInvertibleSeriesError(ArithmeticError):
    """Division by a formal series whose constant term vanishes."""


class TruncationMismatchError(ValueError):
    """A series operation asked for more terms than its inputs carry."""


class DegenerateEllipseError(ArithmeticError):
    """The boundary linear system of the ellipse solver is singular."""


class QuadratureError(RuntimeError):
    """Adaptive quadrature ran out of refinement budget.

    The best estimate reached so far is kept on the exception so callers can
    decide whether it is good enough.
    """

    def __init__(self, message, value, abs_error_estimate):
        super().__init__(message)
        self.value = value
        self.abs_error_estimate = abs_error_estimate


class RootFindingError(RuntimeError):
    """Simultaneous root iteration did not converge."""

    def __init__(self, message, unconverged):
        super().__init__(message)
        self.unconverged = list(unconverged)
