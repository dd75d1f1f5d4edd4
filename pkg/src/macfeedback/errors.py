"""Exception types shared across the package."""


class InputError(ValueError):
    """Raised when an argument violates a documented precondition."""


class ChannelFormatError(InputError):
    """Raised when a channel file cannot be parsed into a valid model.

    The message names the JSON path of the offending element so that the
    file can be fixed without guesswork.
    """
