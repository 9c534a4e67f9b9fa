"""Exception hierarchy shared by the package."""


class VKnotError(Exception):
    """Base class for all errors raised by vknot."""


class GaussCodeError(VKnotError, ValueError):
    """Text could not be read as an extended Gauss code."""


class MalformedToken(GaussCodeError):
    pass


class UnmatchedLabel(GaussCodeError):
    pass


class SignConflict(GaussCodeError):
    pass


class DuplicateOccurrence(GaussCodeError):
    pass


class UnknownChord(VKnotError, KeyError):
    pass


class InvalidPosition(VKnotError, IndexError):
    pass


class InapplicableMove(VKnotError, ValueError):
    pass


class InvalidSpec(VKnotError, ValueError):
    pass


class ZeroK(VKnotError, ValueError):
    """The k-th writhe is only defined for k != 0."""


class EmptyMatrix(VKnotError, ValueError):
    pass
