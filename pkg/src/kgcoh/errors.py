"""Exception hierarchy shared by every module."""


class KGCohError(Exception):
    """Base class for all package errors."""


class ValidationError(KGCohError, ValueError):
    """Malformed graph data (bad colour, unknown vertex, bad square shape)."""


class IncompleteSquares(ValidationError):
    def __init__(self, word):
        self.word = tuple(word)
        super().__init__(f"no square for composable word {'.'.join(self.word)}")


class DuplicateSquare(ValidationError):
    def __init__(self, word):
        self.word = tuple(word)
        super().__init__(f"word {'.'.join(self.word)} is a side of two squares")


class CubeInconsistency(ValidationError):
    def __init__(self, word):
        self.word = tuple(word)
        super().__init__(f"rewriting routes disagree on {'.'.join(self.word)}")


class NotComposable(KGCohError, ValueError):
    pass


class DegreeOutOfRange(KGCohError, ValueError):
    pass


class IndexOutOfRange(KGCohError, IndexError):
    pass


class InfiniteResult(KGCohError, ValueError):
    pass


class InvalidFunctor(KGCohError, ValueError):
    pass


class HasSources(KGCohError, ValueError):
    def __init__(self, vertex, colour):
        self.vertex = vertex
        self.colour = colour
        super().__init__(f"vertex {vertex} receives no edge of colour {colour}")


class NotACocycle(KGCohError, ValueError):
    pass


class UnsupportedCoefficients(KGCohError, ValueError):
    pass


class GraphMismatch(KGCohError, ValueError):
    pass


class BaseMismatch(KGCohError, ValueError):
    pass


class ParseError(KGCohError, ValueError):
    def __init__(self, line, reason):
        self.line = line
        self.reason = reason
        super().__init__(f"line {line}: {reason}")


class UnknownCommand(KGCohError, ValueError):
    pass
