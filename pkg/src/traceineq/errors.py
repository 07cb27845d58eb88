"""Exception types raised by the library."""


class TraceIneqError(Exception):
    """Base class for all library errors."""


class NotHermitian(TraceIneqError, ValueError):
    pass


class NotSquare(TraceIneqError, ValueError):
    pass


class NonFiniteEntry(TraceIneqError, ValueError):
    pass


class DimensionMismatch(TraceIneqError, ValueError):
    pass


class DimensionViolation(TraceIneqError, ValueError):
    """Operation only defined for a fixed dimension (e.g. the 2x2 theorem)."""


class ConvergenceFailure(TraceIneqError, RuntimeError):
    pass


class DomainViolation(TraceIneqError, ValueError):
    def __init__(self, func_name, value):
        super().__init__(f"eigenvalue {value!r} outside the domain of {func_name}")
        self.value = value


class NegativeEigenvalue(TraceIneqError, ValueError):
    def __init__(self, value, tol):
        super().__init__(f"minimum eigenvalue {value!r} below -psd_tol ({-tol!r})")
        self.value = value
        self.tol = tol


class InvalidWeights(TraceIneqError, ValueError):
    pass


class NonPositiveInput(TraceIneqError, ValueError):
    pass


class GoldenMismatch(TraceIneqError, AssertionError):
    pass
