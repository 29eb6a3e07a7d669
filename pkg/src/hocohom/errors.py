"""Exception hierarchy shared by the engines and the CLI."""


class WorkbenchError(Exception):
    exit_code = 2


class InputError(WorkbenchError, ValueError):
    """Malformed arguments, fixtures or representations."""


class ContainmentError(WorkbenchError, ValueError):
    """A subspace expected to lie inside another does not."""


class ResourceError(WorkbenchError):
    """A feasibility bound (coordinates, group order, ...) was exceeded."""

    exit_code = 3


class EvaluationDomainError(WorkbenchError, ValueError):
    """A q-expansion was asked for a point too close to the real axis."""


class ConvergenceError(WorkbenchError, RuntimeError):
    """Adaptive quadrature did not settle within the depth budget."""


class RewriteBudgetError(WorkbenchError, RuntimeError):
    """Normal-form rewriting exceeded its step budget (indicates a bug)."""
