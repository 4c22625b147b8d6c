"""Exception hierarchy shared by the whole engine.

Mathematical precondition failures (exit code 1 in the CLI) are kept
separate from malformed input (exit code 2).
"""


class BggError(Exception):
    """Base class for all engine errors."""


class MathPreconditionError(BggError):
    """A mathematically meaningful precondition failed (CLI exit 1)."""


class WindowInsufficientError(MathPreconditionError):
    """The computed window is too small to certify the requested invariant."""


class StartTooSmallError(MathPreconditionError):
    """Linear-strand start degree failed the self-certification loop."""


class SupportMeetsCenterError(MathPreconditionError):
    """Projection requested from a center meeting the support of the sheaf."""


class InputError(BggError):
    """Malformed user input: bad JSON, bad schema, bad parameters (CLI exit 2)."""
