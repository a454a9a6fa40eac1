"""Exception hierarchy shared by all wittlab modules."""


class WittlabError(Exception):
    """Base class for all errors raised by wittlab."""

    code = "error"


class DomainError(WittlabError):
    """Invalid argument: depth mismatch, bad prime, malformed request."""

    code = "domain_error"


class DepthMismatchError(DomainError):
    code = "depth_mismatch"


class PrecisionError(WittlabError):
    """An operation ran out of p-adic digits, Witt length, or tilt window."""

    code = "precision_exhausted"


class NotDivisibleError(WittlabError):
    """An exact division failed; the element is not in the claimed ideal."""

    code = "not_divisible"
