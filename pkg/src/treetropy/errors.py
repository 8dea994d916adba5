"""Exception hierarchy shared by every treetropy module."""


class TreetropyError(Exception):
    """Base class for all library errors."""


class PatternError(TreetropyError, ValueError):
    """A component family does not describe a valid periodic pattern."""


class OutOfRange(PatternError):
    pass


class EmptyComponent(PatternError):
    pass


class SingletonComponent(PatternError):
    pass


class OverlapTooLarge(PatternError):
    pass


class NotConnected(PatternError):
    pass


class Cyclic(PatternError):
    pass


class NonMaximal(PatternError):
    pass


class PatternSyntaxError(PatternError):
    """Raised by the text and JSON parsers on malformed input."""


class NotAComponent(TreetropyError, ValueError):
    pass


class NotAdjacent(TreetropyError, ValueError):
    pass


class NonConvergence(TreetropyError, ArithmeticError):
    pass


class CollapseInvalid(TreetropyError):
    """A collapse produced something that is not a pattern; indicates a caller bug."""


class PolicyMismatch(TreetropyError, ValueError):
    pass


class VerificationFailed(TreetropyError):
    pass


class PivotNotFound(TreetropyError, ValueError):
    pass


class BadRange(TreetropyError, ValueError):
    pass


class NotRepresentable(TreetropyError, ValueError):
    pass


class CapExceeded(TreetropyError, ValueError):
    pass
