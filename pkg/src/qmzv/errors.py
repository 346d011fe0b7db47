"""Exception types raised by the library."""


class QMZVError(Exception):
    """Base class for library errors."""


class PoleAtT(QMZVError, ZeroDivisionError):
    """A rational function was evaluated at a root of its denominator."""


class InsufficientTruncation(QMZVError):
    """A coefficient beyond the known truncation order of a series was needed."""


class ZeroIndexLetter(QMZVError, ValueError):
    """A letter y_0 was formed, either directly or by merging y_n with y_{-n}."""


class EmptyWord(QMZVError, ValueError):
    """An operation that requires a non-empty word received the empty word."""


class ZeroLeadingIndex(QMZVError, ValueError):
    """A nested q-sum was requested with leading index k_1 = 0 (divergent)."""
