"""Exception types shared across the package."""


class QDiscordError(Exception):
    """Base class for all package errors."""


class DimensionError(QDiscordError, ValueError):
    """Matrix dimension is not what the operation requires."""


class QubitIndexError(QDiscordError, IndexError):
    """Qubit index list is out of range or contains duplicates."""


class ContractError(QDiscordError, ValueError):
    """Input violates an operation's precondition (e.g. not Hermitian)."""


class DomainError(QDiscordError, ValueError):
    """Scalar parameter outside its allowed range."""


class BracketError(QDiscordError, ValueError):
    """No sign change found inside a root-finding bracket."""
