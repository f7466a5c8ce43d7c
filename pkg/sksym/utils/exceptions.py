"""
Error kinds raised by sksym.

Every error derives from `SymmetrisationError` and from the closest builtin,
so that callers may also catch `ValueError`, `TypeError` or
`NotImplementedError`.
"""


class SymmetrisationError(Exception):
    pass


class StructuralError(SymmetrisationError, TypeError):
    """A payload, point or object does not belong where it was used."""


class InvariantViolationError(SymmetrisationError, ValueError):
    """A value breaks the invariant of its type (e.g. orthogonality or stochasticity)."""


class UnsupportedGroupError(SymmetrisationError, NotImplementedError):
    """The requested operation needs a finite or compact group."""


class InvalidInclusionError(SymmetrisationError, ValueError):
    pass


class IllTypedInputError(SymmetrisationError, ValueError):
    """The input map or kernel is not equivariant for the group it claims."""


class UnsupportedModeError(SymmetrisationError, NotImplementedError):
    pass


class UnsupportedHomomorphismError(SymmetrisationError, NotImplementedError):
    pass


class NonlinearActionError(UnsupportedModeError):
    """Averaging needs a codomain whose action is declared linear."""


class ConfigError(SymmetrisationError, ValueError):
    pass
