"""Global truncation parameters for a wittlab computation."""

from __future__ import annotations

from dataclasses import dataclass

from .errors import DomainError


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


@dataclass(frozen=True)
class PrecisionCtx:
    """Truncation parameters: everything downstream is exact *at this scale*.

    p: odd prime; N: p-adic digits carried by characteristic-0 elements;
    D: deepest cyclotomic level; L: longest Witt vector; G: guard digits
    used internally by the ghost-lift arithmetic backend.
    """

    p: int
    N: int = 6
    D: int = 6
    L: int = 4
    G: int = 4

    def __post_init__(self):
        if self.p < 3 or self.p % 2 == 0 or not _is_prime(self.p):
            raise DomainError(f"p must be an odd prime >= 3, got {self.p}")
        if self.N < 1 or self.D < 1 or self.L < 1:
            raise DomainError("N, D, L must all be >= 1")
        if self.G < self.L:
            raise DomainError("guard digits G must be >= L")

    def e(self, depth: int) -> int:
        """Ramification index p^(depth-1) * (p-1) of level `depth`."""
        if depth < 1:
            raise DomainError(f"depth must be >= 1, got {depth}")
        return self.p ** (depth - 1) * (self.p - 1)


SMALL_PROFILE = {"p": 3, "N": 4, "D": 5, "L": 4, "G": 4}
FULL_PROFILE = {"N": 6, "D": 6, "L": 4, "G": 4}
