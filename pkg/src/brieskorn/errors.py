"""Exception types shared across the package."""


class BrieskornError(Exception):
    """Base class for all package-specific errors."""


class InputError(BrieskornError):
    """Raised when user-supplied exponents, index sets or options are invalid."""


class CertificateError(BrieskornError):
    """Raised when a certificate fails structural validation or replay.

    ``path`` locates the first failing node, e.g. ``root.children[1]``.
    """

    def __init__(self, message: str, path: str = "root"):
        super().__init__(f"{path}: {message}")
        self.path = path
        self.reason = message


class SoundnessError(BrieskornError):
    """Raised if two rules ever derive contradictory statuses for one tuple."""
