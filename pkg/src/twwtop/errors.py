"""Exception hierarchy shared by every module."""


class TwwtopError(Exception):
    """Base class for all library errors."""


class ValidationError(TwwtopError, ValueError):
    """Malformed input; the CLI maps these to exit code 1."""


class OverlapError(ValidationError):
    pass


class SelfLoopError(ValidationError):
    pass


class DanglingEndpointError(ValidationError):
    pass


class UnknownVertexError(ValidationError, KeyError):
    pass


class SameVertexError(ValidationError):
    pass


class NonInjectiveMapError(ValidationError):
    pass


class DimensionError(ValidationError):
    pass


class NotPureError(ValidationError):
    pass


class UnknownCellError(ValidationError, KeyError):
    pass


class PreconditionError(ValidationError):
    pass


class InfeasibleSpec(ValidationError):
    pass


class NotRegularError(ValidationError):
    pass


class NotSimpleError(ValidationError):
    pass


class StructuralViolation(TwwtopError):
    """A structural claim about the construction failed to hold."""


class DisjointnessViolation(StructuralViolation):
    pass


class EmbeddingViolation(StructuralViolation):
    pass


class ClaimViolation(StructuralViolation):
    pass


class VerificationFailed(StructuralViolation):
    def __init__(self, message, cell=None):
        super().__init__(message)
        self.cell = cell


class ResourceError(TwwtopError):
    """Size or search budget exhausted; the CLI maps these to exit code 2."""


class SizeError(ResourceError):
    pass


class BudgetExceeded(ResourceError):
    def __init__(self, message, upper_bound=None, witness=None, nodes_explored=0):
        super().__init__(message)
        self.upper_bound = upper_bound
        self.witness = witness
        self.nodes_explored = nodes_explored
