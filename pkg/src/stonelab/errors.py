"""Exception and warning types shared across the package.

Exit-code mapping used by the CLI: ValidationError -> 1,
CapExceededError -> 2, OracleMismatchError -> 3.
"""


class StonelabError(Exception):
    """Base class for all package errors."""


class ValidationError(StonelabError):
    """Malformed input: bad structure data, bad arguments, broken axioms."""


class AlgebraMismatchError(ValidationError):
    """Operation mixing elements of distinct algebras."""


class CapExceededError(StonelabError):
    """A configured enumeration or size cap would be exceeded."""


class PoolInsufficientError(ValidationError):
    """A candidate pool cannot T0-separate its point set even without budget.

    Carries one unseparated pair as ``witness``.
    """

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class OracleMismatchError(StonelabError):
    """A built-in cross-check failed; indicates an internal bug."""


class LintWarning(UserWarning):
    """Non-fatal input oddities: duplicate family members, non-separating
    generator sets, combinator preconditions that only degrade guarantees."""
