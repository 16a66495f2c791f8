"""Exception types raised by the library."""


class DimensionError(ValueError):
    """Operands live in complex spaces of different dimension."""


class OutsideBallError(ValueError):
    """A point does not lie strictly inside the unit ball.

    ``index`` locates the offending point inside its container (``None`` for
    a bare point) and ``coords`` holds its coordinates.
    """

    def __init__(self, message, coords=None, norm=None, index=None):
        super().__init__(message)
        self.coords = coords
        self.norm = norm
        self.index = index


class NotInducedError(ValueError):
    """A black-box map is not the symmetric power of a ball automorphism."""


class TooLargeError(ValueError):
    """A brute-force enumeration was requested beyond its size limit."""


class SchemaError(ValueError):
    """A JSON document does not match the expected schema."""

    def __init__(self, message, path=()):
        super().__init__(message)
        self.path = tuple(path)
