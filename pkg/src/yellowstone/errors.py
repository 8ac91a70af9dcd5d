"""Exception types shared across the package.

Every error raised on purpose derives from YellowstoneError, so callers
(and the CLI) can distinguish expected failure modes from genuine bugs.
"""


class YellowstoneError(Exception):
    """Base class for all package errors."""


class InvalidArgumentError(YellowstoneError):
    """A caller-supplied argument violates a documented precondition."""


class OutOfRangeError(YellowstoneError):
    """A query exceeds the range a table or model was built for.

    The message names the size that would be required; nothing is
    extrapolated silently.
    """


class ResourceLimitError(YellowstoneError):
    """A requested structure would exceed the configured memory budget."""


class InternalLimitError(YellowstoneError):
    """A candidate scan ran past its safety bound (includes diagnostics)."""


class InsufficientDataError(YellowstoneError):
    """Not enough generated data to compute the requested statistic."""


class InternalConsistencyError(YellowstoneError):
    """A runtime self-check failed; indicates a bug, not bad input."""


class BFileFormatError(YellowstoneError):
    """A b-file violates the `index value` line format."""
