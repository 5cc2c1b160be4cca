"""Exception hierarchy.

Everything raised on purpose derives from ProjdynError so the CLI can map
failures to exit codes without fishing through stdlib exceptions.
"""


class ProjdynError(Exception):
    pass


class InvalidInputError(ProjdynError):
    """Malformed user input: bad field spec, unparsable polynomial, bad arguments."""


class RingMismatchError(ProjdynError):
    """Operands live in different rings (variable count or field)."""


class NotDivisibleError(ProjdynError):
    """Exact polynomial division requested but remainder is nonzero."""


class DegeneracyError(ProjdynError):
    """A computation hit a degenerate configuration it could not route around.

    Carries a machine-readable ``code`` (stable string) plus free-form detail.
    """

    def __init__(self, code: str, detail: str = ""):
        self.code = code
        self.detail = detail
        super().__init__(f"{code}: {detail}" if detail else code)


class UnsupportedScopeError(ProjdynError):
    """The requested computation is outside the implemented scope (explicit signal)."""


class VerificationError(ProjdynError):
    """An internally verified postcondition failed; the result would be untrustworthy."""
