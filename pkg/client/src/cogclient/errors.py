class ChecksumError(RuntimeError):
    """A dataset file does not match its manifest checksum."""


class FormatError(RuntimeError):
    """The dataset or response uses an unsupported or malformed format."""


class TransportError(RuntimeError):
    """The episode server could not be reached."""


class ProtocolError(RuntimeError):
    """The episode server answered with an error or an unexpected shape."""
