"""Exception types.

Every domain failure derives from :class:`CubicLatticeError` so callers (and the
CLI) can separate bad input from programming errors with a single ``except``.
"""


class CubicLatticeError(ValueError):
    pass


class IntOverflowError(CubicLatticeError, OverflowError):
    """An intermediate value left the signed 128-bit range."""


class ZeroVectorError(CubicLatticeError):
    pass


class NotPrimitiveError(CubicLatticeError):
    pass


class DivisibilityError(CubicLatticeError):
    def __init__(self, msg: str = "d² does not divide ‖v‖²"):
        super().__init__(msg)


class RankError(CubicLatticeError):
    def __init__(self, rank: int, expected: int):
        self.rank = rank
        self.expected = expected
        super().__init__(f"generators have rank {rank}, expected {expected}")


class NotOrthogonalError(CubicLatticeError):
    pass


class BoundExceededError(CubicLatticeError):
    pass


class NotPrimeError(CubicLatticeError):
    pass


class EvenModulusError(CubicLatticeError):
    """Raised for p = 2 in prime vector construction and for even scale factors."""
