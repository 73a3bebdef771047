"""
Exception types raised throughout anoncover.

Validation errors subclass ValueError so that callers that only care about bad input can keep catching ValueError.
"""


class GraphValidationError(ValueError):
    """Graph, port numbering or serialized graph violates a structural invariant."""


class CoveringError(ValueError):
    """A vertex/arc map or fibre partition does not satisfy a covering condition."""


class BudgetExhaustedError(RuntimeError):
    """
    A search ran out of budget before it could decide.

    :param msg: Description of the search that was cut.
    :param partial: Whatever was found before the budget ran out.
    """

    def __init__(self, msg: str, partial=None):
        super().__init__(msg)
        self.partial = partial


class StepCapExceededError(RuntimeError):
    """Simulation did not reach quiescence within the step cap, carries the partial trace."""

    def __init__(self, msg: str, trace=None):
        super().__init__(msg)
        self.trace = trace


class TraceMismatchError(ValueError):
    """Replayed trace is inconsistent with the configuration it is replayed against."""


class ProtocolInvariantError(RuntimeError):
    """A protocol reached a state that correct runs can never reach."""


class FibreUniformityError(RuntimeError):
    """Processes of a common fibre diverged during a lifted run, carries both traces."""

    def __init__(self, msg: str, total_trace=None, base_trace=None):
        super().__init__(msg)
        self.total_trace = total_trace
        self.base_trace = base_trace
