"""Exception types."""


class DegreeMismatchError(ValueError):
    """Operands live in symmetric groups (or tensor powers) of different degree."""


class DegreeCapError(ValueError):
    """Requested degree or ambient dimension exceeds the configured cap."""


class ParityError(ValueError):
    """A map would mix even and odd basis vectors."""


class NotIdempotentError(ValueError):
    pass


class NotInvertibleError(ValueError):
    """The requested exterior or symmetric power is not an invertible object."""


class ZeroObjectError(ValueError):
    pass


class VerificationOrderError(RuntimeError):
    """A construction step was requested before the identity it relies on was checked."""


class FalsifiedIdentity(AssertionError):
    """An identity the construction depends on failed exactly."""


class SnakeFailure(FalsifiedIdentity):
    """A constructed dual failed a snake relation; the construction is falsified."""
