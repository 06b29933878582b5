"""Exception hierarchy shared by all modules."""


class ExclusionPolyError(Exception):
    pass


class StructuralError(ExclusionPolyError, ValueError):
    """Malformed input: mismatched lengths, non-square matrices and the like."""


class DomainError(ExclusionPolyError, ValueError):
    """Well-formed input outside the operation's domain."""


class MajorizationError(DomainError):
    pass


class GenericityError(DomainError):
    """Raised when an operation needs pairwise distinct weights."""


class InfeasibleError(ExclusionPolyError):
    pass


class UnboundedError(ExclusionPolyError):
    pass
