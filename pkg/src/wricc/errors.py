"""Exception hierarchy with stable error codes for CLI reporting."""


class WriccError(Exception):
    """Base class; `code` is the stable machine-readable identifier."""

    code = "error"


class KindMismatch(WriccError):
    code = "kind-mismatch"


class Unsupported(WriccError):
    code = "unsupported"


class PreconditionError(WriccError):
    code = "precondition"


class TrivialD(WriccError):
    code = "trivial-d"


class EmptyOmega(WriccError):
    code = "empty-omega"


class NotFreeAction(WriccError):
    code = "not-free-action"


class UnsupportedQKind(WriccError):
    code = "unsupported-q-kind"


class CertificateBudget(WriccError):
    code = "certificate-budget"


class ParseError(WriccError):
    code = "parse-error"
