"""Shared exception types."""


class DegenerateArgument(ArithmeticError):
    """An identity argument collapsed (division by zero in exact algebra)."""


class PrecisionTooLow(ValueError):
    """Input precision is insufficient for the requested output."""


class IneligibleFormula(ValueError):
    """Formula does not admit per-digit extraction."""


class DigitBoundaryRisk(ArithmeticError):
    """Extracted digits sit too close to a carry boundary to certify."""


class OutOfDomain(ValueError):
    """Parameter outside the declared domain of an identity record."""


class MalformedDigits(ValueError):
    """Golden-base digit string violates the canonical (no adjacent 1s) form."""
