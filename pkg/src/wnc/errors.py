"""Exception types shared across the package."""


class RingError(Exception):
    """Base class for all errors raised by this package."""


class TableFormatError(RingError):
    """Operation tables are malformed (wrong shape, out-of-range entries)."""


class CapacityError(RingError):
    """A construction would exceed the configured element-count budget."""


class InvalidModuleError(RingError):
    """Module attached to an idealization is not well defined."""


class InvalidIdempotentError(RingError):
    """A corner construction was given a non-idempotent element."""


class InvalidEndomorphismError(RingError):
    """The twisting map of a skew polynomial quotient is not a unital ring endomorphism."""


class InvalidIdealError(RingError):
    """A quotient construction was given a subset that is not a two-sided ideal."""


class InvalidSubsetError(RingError):
    """An idempotent-subset argument is not contained in the ring's idempotents."""


class CrossRingError(RingError):
    """Element ids or subsets from different rings were mixed."""


class ExprSyntaxError(RingError):
    """Ring expression text could not be parsed."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position
