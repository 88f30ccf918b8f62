"""Exception types shared across the package.

Every failure mode exposed by the public API carries a stable,
machine-readable ``code``.  The CLI uses the codes to map failures onto
exit codes and report entries; library users can match on the classes.
"""


class ProtocolError(Exception):
    """Base class for all package-specific failures."""

    code = "protocol-error"

    def __init__(self, message: str = ""):
        super().__init__(f"{self.code}: {message}" if message else self.code)


class ShapeMismatch(ProtocolError):
    code = "shape-mismatch"


class BadSubsystem(ProtocolError):
    code = "bad-subsystem"


class BadDimension(ProtocolError):
    code = "bad-dimension"


class BadSize(ProtocolError):
    code = "bad-size"


class InvariantViolation(ProtocolError):
    code = "invariant-violation"


class ImpossibleOutcome(ProtocolError):
    code = "impossible-outcome"


class NullPostselection(ProtocolError):
    code = "null-postselection"


class LayoutMismatch(ProtocolError):
    code = "layout-mismatch"


class UnbiasednessViolation(ProtocolError):
    code = "unbiasedness-violation"


class NonFactorablePostselection(ProtocolError):
    code = "non-factorable-postselection"


class ParseFailure(ProtocolError):
    code = "parse-failure"
