"""Exception hierarchy shared by every module."""

from __future__ import annotations


class DesignError(Exception):
    """Base class for all errors raised by this package."""


class ParseError(DesignError):
    def __init__(self, line: int, reason: str):
        super().__init__(f"line {line}: {reason}")
        self.line = line
        self.reason = reason


class NonIntegerCount(DesignError):
    pass


class UnsupportedOrder(DesignError):
    pass


class KTooLarge(DesignError):
    pass


class UnknownId(DesignError, KeyError):
    def __str__(self) -> str:
        return Exception.__str__(self)


class EntryOutOfRange(DesignError):
    pass


class NotDeveloped(DesignError):
    pass


class InvalidCertificate(DesignError):
    pass


class ArityMismatch(DesignError):
    pass


class TdNotVerified(DesignError):
    pass


class MissingIngredient(DesignError):
    pass


class AlignmentError(DesignError):
    pass


class MissingFiller(DesignError):
    pass


class SizeMismatch(DesignError):
    pass


class BlockTooSmall(DesignError):
    pass


class RecipeError(DesignError):
    """Malformed recipe: unknown verb, bad reference, dependency cycle."""


class StepVerificationFailed(DesignError):
    def __init__(self, step: str, report):
        super().__init__(f"step {step!r} failed verification")
        self.step = step
        self.report = report
