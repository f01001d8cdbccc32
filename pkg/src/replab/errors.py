class ReplabError(ValueError):
    """Base class for errors raised by ``replab``."""


class FieldError(ReplabError):
    pass


class DgaError(ReplabError):
    pass


class ParseError(ReplabError):
    pass


class BraidError(ReplabError):
    pass


class ProblemError(ReplabError):
    pass


class InterpolationError(ReplabError):
    pass


class HomflyError(ReplabError):
    pass
