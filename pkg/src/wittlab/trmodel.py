"""Symbolic model of the level-n TR groups as a free graded algebra on
one polynomial generator alpha in degree 2 over the length-n Witt
vectors, with restriction, Frobenius, and Galois operators and the
kernel half of the TC exactness check.

A class is c * alpha^m; the structure theorems fixing this shape are
taken as axioms, and the module makes the operator identities they
imply checkable at finite precision.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from . import rings as R, theta as TH, tilt as T, witt as W
from .errors import DomainError
from .witt import WittVec


@dataclass(frozen=True)
class TRClass:
    level: int  # n >= 1
    degree: int  # even and >= 0 (odd groups vanish: only the zero class)
    coeff: WittVec  # over CycRing, length = level

    def __post_init__(self):
        if self.level < 1:
            raise DomainError("TR level must be >= 1")
        if self.degree < 0:
            raise DomainError("TR degree must be >= 0")
        if len(self.coeff) != self.level:
            raise DomainError("coefficient length must equal the level")
        if self.degree % 2 == 1 and not W.witt_is_zero(self.coeff):
            raise DomainError("odd-degree groups vanish: coefficient must be zero")


def tr_alpha(n: int, ctx, prec=None) -> TRClass:
    ring = W.CycRing(ctx.p, 1, ctx.N if prec is None else prec)
    return TRClass(n, 2, W.int_witt(ring, 1, n))


def tr_zero(n: int, ctx, degree=0, prec=None) -> TRClass:
    ring = W.CycRing(ctx.p, 1, ctx.N if prec is None else prec)
    return TRClass(n, degree, W.int_witt(ring, 0, n))


def tr_eq(a: TRClass, b: TRClass) -> bool:
    if a.level != b.level:
        return False
    if W.witt_is_zero(a.coeff) and W.witt_is_zero(b.coeff):
        return True
    return a.degree == b.degree and W.witt_eq(a.coeff, b.coeff)


def _teich_minus_one(k: int, ctx, length: int) -> WittVec:
    window = min(ctx.L, ctx.D - k + 1)
    ring = T.TiltRing(ctx.p, window)
    eps = T.make_epsilon(ctx, k, window)
    return W.witt_sub(W.teichmuller(ring, eps, length), W.int_witt(ring, 1, length))


def tr_make_beta(n: int, ctx) -> TRClass:
    """beta = theta_n([eps_n] - 1) * alpha, the degree-2 Bott-type class."""
    coeff = TH.theta_n(_teich_minus_one(n, ctx, ctx.L), n, ctx).value
    return TRClass(n, 2, coeff)


def tr_add(a: TRClass, b: TRClass) -> TRClass:
    if a.level != b.level:
        raise DomainError("TR level mismatch")
    if W.witt_is_zero(a.coeff):
        return b
    if W.witt_is_zero(b.coeff):
        return a
    if a.degree != b.degree:
        raise DomainError("TR degree mismatch in addition")
    return TRClass(a.level, a.degree, W.witt_add(a.coeff, b.coeff))


def tr_mul(a: TRClass, b: TRClass) -> TRClass:
    if a.level != b.level:
        raise DomainError("TR level mismatch")
    return TRClass(a.level, a.degree + b.degree, W.witt_mul(a.coeff, b.coeff))


@lru_cache(maxsize=None)
def _lambda_factor(n: int, ctx) -> WittVec:
    """theta_{n-1} of ([eps_{n-1}] - 1)/([eps_n] - 1): what restriction
    multiplies onto each power of alpha."""
    window = min(ctx.L, ctx.D - n + 1)
    ring = T.TiltRing(ctx.p, window)
    m = ctx.L
    one = W.int_witt(ring, 1, m)
    num = W.witt_sub(
        W.teichmuller(ring, T.make_epsilon(ctx, n - 1, window), m), one
    )
    den = W.witt_sub(W.teichmuller(ring, T.make_epsilon(ctx, n, window), m), one)
    ratio = W.witt_divide_exact(num, den)
    return TH.theta_n(ratio, n - 1, ctx).value


def tr_restriction(a: TRClass, ctx) -> TRClass:
    """R: level n -> n-1; Witt restriction on the coefficient and a
    lambda factor per power of alpha."""
    if a.level < 2:
        raise DomainError("restriction needs level >= 2")
    m = a.degree // 2
    coeff = W.restrict(a.coeff)
    if m:
        coeff = W.witt_mul(coeff, W.witt_pow(_lambda_factor(a.level, ctx), m))
    return TRClass(a.level - 1, a.degree, coeff)


def tr_frobenius(a: TRClass, ctx) -> TRClass:
    """F: level n -> n-1; Witt Frobenius on the coefficient, alpha fixed."""
    if a.level < 2:
        raise DomainError("frobenius needs level >= 2")
    return TRClass(a.level - 1, a.degree, W.frobenius(a.coeff))


@lru_cache(maxsize=None)
def _mu_factor(n: int, u: int, ctx) -> WittVec:
    """theta_n of ([eps_n] - 1)/([eps_n^u] - 1), the correction the
    Galois action of u picks up on alpha."""
    window = min(ctx.L, ctx.D - n + 1)
    ring = T.TiltRing(ctx.p, window)
    m = ctx.L
    one = W.int_witt(ring, 1, m)
    eps_n = T.make_epsilon(ctx, n, window)
    num = W.witt_sub(W.teichmuller(ring, eps_n, m), one)
    den = W.witt_sub(W.teichmuller(ring, T.tilt_galois(eps_n, u), m), one)
    ratio = W.witt_divide_exact(num, den)
    return TH.theta_n(ratio, n, ctx).value


def tr_galois(a: TRClass, u: int, ctx) -> TRClass:
    """The action of the Galois element with cyclotomic character u:
    coordinatewise on the coefficient, times (u * mu(u))^m on alpha^m."""
    if u % ctx.p == 0:
        raise DomainError("galois parameter must be a unit mod p")
    ring = a.coeff.ring
    coeff = WittVec(ring, tuple(R.cyc_galois(c, u) for c in a.coeff.coords))
    m = a.degree // 2
    if m:
        factor = W.witt_mul(W.int_witt(ring, u, a.level), _mu_factor(a.level, u, ctx))
        coeff = W.witt_mul(coeff, W.witt_pow(factor, m))
    return TRClass(a.level, a.degree, coeff)


def tc_kernel_check(q: int, c, m: int, ctx, x=None) -> bool:
    """Kernel half of the TC exactness statement: for x = c*([eps_1]-1)^q
    with c over the prime field, checks x = xi^q * W(phi^{-1})(x) at the
    working truncation, where xi = ([eps_1]-1)/([eps_2]-1).

    `c` is a sequence of m integers (a Witt vector over the prime field).
    Passing an explicit Witt vector `x` over the tilt checks that input
    instead, so non-kernel elements can be fed in and reported false.
    """
    if q < 0:
        raise DomainError("degree parameter q must be >= 0")
    p = ctx.p
    window = min(ctx.L, ctx.D - 1)
    ring = T.TiltRing(p, window)
    one = W.int_witt(ring, 1, m)
    e1m1 = W.witt_sub(W.teichmuller(ring, T.make_epsilon(ctx, 1, window), m), one)
    if x is None:
        cw = WittVec(ring, tuple(T.tilt_from_int(int(ci), p, window) for ci in c))
        if len(cw) != m:
            raise DomainError("coefficient vector length must equal witt length")
        x = W.witt_mul(cw, W.witt_pow(e1m1, q)) if q else cw
    else:
        ring = x.ring
    phi_inv_x = WittVec(ring, tuple(T.tilt_pth_root(ci, ctx) for ci in x.coords))
    if q:
        e2m1 = W.witt_sub(
            W.teichmuller(ring, T.make_epsilon(ctx, 2, window), m), one
        )
        xi = W.witt_divide_exact(e1m1, e2m1)
        rhs = W.witt_mul(W.witt_pow(xi, q), phi_inv_x)
    else:
        rhs = phi_inv_x
    return W.witt_eq(x, rhs)
