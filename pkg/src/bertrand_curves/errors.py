"""Exception hierarchy.

Every error carries a short machine-readable ``code`` so the report writer and
the CLI can map failures to stable identifiers and exit statuses.
"""

from __future__ import annotations


class CurveError(Exception):
    """Base class for every error raised by the toolkit."""

    code = "Error"
    exit_status = 5

    def __init__(self, message: str = "", **details):
        super().__init__(message)
        self.details = details

    def to_dict(self) -> dict:
        out = {"code": self.code, "message": str(self)}
        if self.details:
            out["details"] = {k: _plain(v) for k, v in self.details.items()}
        return out


def _plain(v):
    if isinstance(v, (int, float, str, bool)) or v is None:
        return v
    try:
        return float(v)
    except (TypeError, ValueError):
        return str(v)


class ExpressionError(CurveError):
    code = "ExpressionError"
    exit_status = 2

    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} at offset {offset}", offset=offset)
        self.offset = offset


class ExprSyntaxError(ExpressionError):
    code = "SyntaxError"


class UnknownIdentifier(ExpressionError):
    code = "UnknownIdentifier"


class NonIntegerExponent(ExpressionError):
    code = "NonIntegerExponent"


class ConfigError(CurveError):
    code = "ConfigError"
    exit_status = 2


class DomainError(CurveError):
    code = "DomainError"


class GuardViolation(CurveError):
    code = "GuardViolation"


class JetOrderExhausted(CurveError):
    code = "JetOrderExhausted"


class FrameUndefined(CurveError):
    code = "FrameUndefined"
    exit_status = 4


class SingularSpeed(FrameUndefined):
    code = "SingularSpeed"


class DegenerateDenominator(CurveError):
    code = "DegenerateDenominator"


class NotBertrand(CurveError):
    code = "NotBertrand"
    exit_status = 3


class TorsionZero(NotBertrand):
    code = "TorsionZero"


class ThetaDegenerate(NotBertrand):
    code = "ThetaDegenerate"


class DegeneratePartner(NotBertrand):
    """The offset is Bertrand-compatible but the partner has no Frenet frame."""

    code = "Degenerate"
    exit_status = 4


class Degenerate(CurveError):
    code = "Degenerate"
    exit_status = 4


class NotNormalField(CurveError):
    code = "NotNormalField"


class NotHelixBase(CurveError):
    code = "NotHelixBase"


class ConsistencyError(CurveError):
    """Two independent routes to the same quantity disagree."""

    code = "ConsistencyError"


class NumericFailure(CurveError):
    code = "NumericFailure"


class IoError(CurveError):
    code = "IoError"
    exit_status = 6
