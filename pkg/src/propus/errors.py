"""Exception types raised across the package."""


class PropusError(Exception):
    """Base class for all errors raised by :mod:`propus`."""


class InvalidModulus(PropusError, ValueError):
    pass


class NonUnitGenerator(PropusError, ValueError):
    """A generator or multiplier shares a factor with the modulus."""


# is_multiplier uses the same condition
NonUnit = NonUnitGenerator


class SubgroupNotClosed(PropusError, ValueError):
    pass


class EvenModulus(PropusError, ValueError):
    pass


class NotARepresentative(PropusError, ValueError):
    pass


class NotInvariant(PropusError, ValueError):
    pass


class ZeroShift(PropusError, ValueError):
    pass


class NoValidArrangement(PropusError, ValueError):
    pass


class DimensionMismatch(PropusError, ValueError):
    pass


class InfeasibleParams(PropusError, ValueError):
    pass


class BlockSizeMismatch(PropusError, ValueError):
    pass


class SchemaError(PropusError, ValueError):
    pass


class FamilySyntaxError(PropusError, ValueError):
    """Malformed family notation; carries the 1-based line and column."""

    def __init__(self, message, line, column):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column
