"""Exception hierarchy shared by every module of the package."""


class SovQuantError(Exception):
    """Base class for all errors raised by sovquant."""


class PrecisionExhausted(SovQuantError):
    """A jet ran out of valid order before the requested computation finished."""


class NotInvertible(SovQuantError):
    """Inversion requested for an element with vanishing leading coefficient."""


class BasePointMismatch(SovQuantError):
    """Two jets expanded around different base points were combined."""


class ConsistencyFailure(SovQuantError):
    """The left-multiplication recursion produced a nonzero cross-equation residual."""


class FiberGradeViolation(SovQuantError):
    """A lifted object carries fiber grades it is not allowed to have."""


class OnHypersurface(SovQuantError):
    """The operation needs psi != 0 at the base point, but the point lies on S."""


class NotOnHypersurface(SovQuantError):
    """The operation needs psi == 0 at the base point."""


class CriticalPoint(SovQuantError):
    """psi and its differential both vanish at the base point."""


class GammaSingular(SovQuantError):
    """The lifted Hessian is singular at the base point.

    ``case`` records the diagnosis: ``"case1"`` (degenerate metric off S),
    ``"case2"`` (degenerate Levi form on S) or ``"critical"``.
    """

    def __init__(self, message, case=None):
        super().__init__(message)
        self.case = case


class ConfigError(SovQuantError):
    """A scenario configuration could not be parsed or validated."""
