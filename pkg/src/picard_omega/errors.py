class OmegaError(Exception):
    """Base class for every error raised by this package."""


class InfiniteGroup(OmegaError):
    pass


class CompositeNonzero(OmegaError):
    pass


class IllDefinedHom(OmegaError):
    pass


class NotComposable(OmegaError):
    pass


class PreconditionViolated(OmegaError):
    pass


class TooLarge(OmegaError):
    pass


class TruncationTooLow(OmegaError):
    pass


class MissingMeet(OmegaError):
    pass


class NotAHomotopy(OmegaError):
    pass


class InternalInconsistency(OmegaError):
    """Two independent decision procedures disagreed."""


class ParseError(OmegaError):
    pass
