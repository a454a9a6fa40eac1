"""wittlab: exact arithmetic for truncated p-typical Witt vectors, a
finite-depth model of the tilt of the cyclotomic tower, the theta maps
with their kernel generators, and a symbolic TR operator calculus."""

from .context import PrecisionCtx, SMALL_PROFILE, FULL_PROFILE
from .errors import (
    WittlabError,
    DomainError,
    DepthMismatchError,
    PrecisionError,
    NotDivisibleError,
)
from .rings import ResidueElt, CycElt, ValAtLeast
from .tilt import TiltElt
from .witt import WittVec, GhostVec
from .theta import ThetaResult
from .trmodel import TRClass

__version__ = "0.1.0"

__all__ = [
    "PrecisionCtx",
    "SMALL_PROFILE",
    "FULL_PROFILE",
    "WittlabError",
    "DomainError",
    "DepthMismatchError",
    "PrecisionError",
    "NotDivisibleError",
    "ResidueElt",
    "CycElt",
    "ValAtLeast",
    "TiltElt",
    "WittVec",
    "GhostVec",
    "ThetaResult",
    "TRClass",
]
