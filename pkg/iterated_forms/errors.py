class IteratedFormsError(Exception):
    """
    Base class for all errors raised by the engine
    """


class SpaceMismatchError(IteratedFormsError, ValueError):
    """
    Operands live over different coordinate spaces
    """

    def __init__(self, expected, actual):
        super().__init__("Space mismatch: expected {} but got {}".format(expected, actual))
        self.expected = expected
        self.actual = actual


class UnknownCoordinateError(IteratedFormsError, KeyError):
    """
    A coordinate name that the space does not declare
    """

    def __init__(self, name: str, space=None):
        self.name = name
        self.space = space
        super().__init__(name)

    def __str__(self):
        if self.space is None:
            return "Unknown coordinate: {}".format(self.name)
        return "Unknown coordinate: {} (space has {})".format(self.name, ", ".join(self.space.coords))


class SlotError(IteratedFormsError, ValueError):
    """
    Invalid differential slot, index set or slot relabeling
    """


class DegreeError(IteratedFormsError, ValueError):
    """
    A form does not have the degree (or slot range) an operation requires
    """


class ParseError(IteratedFormsError):
    """
    Syntax error in an expression

    Args:
        message: what went wrong
        line: 1-based line of the offending character
        column: 1-based column of the offending character
    """

    def __init__(self, message: str, line: int = 1, column: int = 1):
        super().__init__("{} at line {}, column {}".format(message, line, column))
        self.message = message
        self.line = line
        self.column = column


class UnknownSuiteError(IteratedFormsError, KeyError):
    """
    The requested identity-check suite does not exist
    """

    def __init__(self, name: str):
        self.name = name
        super().__init__(name)

    def __str__(self):
        return "unknown suite: {}".format(self.name)


class UnknownNameError(IteratedFormsError, KeyError):
    """
    A vector field or map name that the environment does not define
    """

    def __init__(self, kind: str, name: str):
        self.kind = kind
        self.name = name
        super().__init__(name)

    def __str__(self):
        return "unknown {}: {}".format(self.kind, self.name)
