"""Exception types shared across the package."""


class QuantorusError(Exception):
    """Base class for package-specific errors."""


class NonMonomialError(QuantorusError):
    """An operation required a single-term scalar."""


class ZeroScalarError(QuantorusError):
    """An operation required a nonzero scalar."""


class MissingSymbolError(QuantorusError):
    """A numeric evaluation lacked a binding for a symbol."""


class NotInvertibleError(QuantorusError):
    """The algebra element is not a unit."""


class NotUnitaryMonomialError(QuantorusError):
    """The element is not a unit-phase multiple of a single basis element."""


class ZeroIndexError(QuantorusError):
    """The basis index (0, 0) was rejected."""


class NotCoprimeError(QuantorusError):
    """The module parameters p, q must be relatively prime."""


class NotSimpleError(QuantorusError):
    """The module class is not simple."""


class WindowTooSmallError(QuantorusError):
    """The truncation window cannot resolve the requested computation."""


class ParseError(QuantorusError):
    """Input text did not match the expression grammar."""

    def __init__(self, message: str, offset: int, expected: tuple[str, ...] = ()):
        super().__init__(f"{message} at offset {offset}")
        self.offset = offset
        self.expected = expected
