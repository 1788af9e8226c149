"""Library-wide error type carrying a short machine-readable token."""


class DomainError(ValueError):
    """Raised when an operation is called outside its domain.

    The ``token`` is a short stable identifier (e.g. ``"shape"``,
    ``"not_hermitian"``) suitable for scripted consumers; the optional
    message adds human-readable detail.
    """

    def __init__(self, token: str, message: str = ""):
        self.token = token
        super().__init__(f"{token}: {message}" if message else token)
