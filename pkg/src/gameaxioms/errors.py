"""Exception hierarchy."""


class GameError(ValueError):
    """Base class for every error raised by this package."""


class ShapeMismatch(GameError):
    pass


class ZeroProbabilityCondition(GameError):
    """Conditioning on an action that has zero marginal probability."""


class PreconditionNotMet(GameError):
    pass


class NotAPureNashEquilibrium(PreconditionNotMet):
    pass


class NotStrictPNE(PreconditionNotMet):
    pass


class ProfilesEqual(PreconditionNotMet):
    pass


class UnsupportedPlayerCount(GameError):
    pass


class IncompatibleAxiom(GameError):
    pass


class EmptyFamily(GameError):
    pass


class MalformedProgram(GameError):
    pass


class InvariantFailure(AssertionError):
    """An internal consistency check failed; indicates a bug, not bad input."""


class GameFormatError(GameError):
    def __init__(self, message, line=None, column=None):
        self.line = line
        self.column = column
        where = ""
        if line is not None:
            where = f"line {line}" + (f", column {column}" if column is not None else "") + ": "
        super().__init__(where + message)
