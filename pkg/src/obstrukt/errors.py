"""Exception types shared across the package."""


class ObstruktError(Exception):
    """Base class for package errors."""


class JetStructureError(ObstruktError, ValueError):
    """Mismatched orders/base points or malformed jet data."""


class OrderUnderflowError(JetStructureError):
    """Differentiation requested on an order-0 jet."""


class SingularDivisionError(ObstruktError, ZeroDivisionError):
    """Division (or log/power) on a jet whose constant term forbids it."""


class ChartDomainError(ObstruktError, ValueError):
    """Point outside a chart's domain, or unsupported jet order."""


class BundleMetricUnavailable(ObstruktError, ValueError):
    """Chart provides only a potential; the bundle metric H is gauge-ambiguous."""


class DegenerateMetricError(ObstruktError, ArithmeticError):
    """Levi form failed to be positive definite at the requested point."""


class PreconditionError(ObstruktError, ValueError):
    """A documented operation precondition failed (e.g. csc check)."""


class InfeasibleError(ObstruktError, ValueError):
    """Kahler-Einstein solve requested for eigenvalues >= 1."""


class NumericalFailure(ObstruktError, ArithmeticError):
    """Integrator or root-branch failure with diagnostic payload."""

    def __init__(self, message, **info):
        super().__init__(message)
        self.info = info


class ExpressionError(ObstruktError, ValueError):
    """Malformed custom-chart expression."""
