"""Finite-depth model of the tilt of the cyclotomic tower.

An element is a window (a^(1), ..., a^(m)) of residue-ring elements
satisfying the compatibility a^(v) = (a^(v+1))^p; level v lives in
F_p[t]/(t^(e_v)) with t the image of zeta_{p^v} - 1 (coordinates may be
stored at any tower depth >= their natural one; the residue operations
align by embedding).  Each level carries a valuation-precision bound
`vprec` in [0, 1]: the coordinate is only trusted up to terms of that
normalized valuation, which matters after inexact divisions.

The rank-1 valuation is normalized by v_R(a) = p^(m-1) * v(a^(m)) at the
deepest level, so that v_R of the canonical compatible system of p-power
roots of unity minus 1 comes out to p/(p-1).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
import math

from . import rings as R
from .errors import DepthMismatchError, DomainError, NotDivisibleError, PrecisionError
from .rings import ResidueElt, ValAtLeast


@dataclass(frozen=True)
class TiltElt:
    p: int
    coords: tuple  # ResidueElt for levels 1..m
    vprec: tuple  # Fraction in [0,1] per level

    def __post_init__(self):
        if not self.coords:
            raise DomainError("tilt window must be non-empty")
        if len(self.vprec) != len(self.coords):
            raise DomainError("vprec length mismatch")

    @property
    def window(self):
        return (1, len(self.coords))

    def level(self, v) -> ResidueElt:
        return self.coords[v - 1]

    def __add__(self, other):
        return _tilt_binop(self, other, lambda x, y: x + y)

    def __sub__(self, other):
        return _tilt_binop(self, other, lambda x, y: x - y)

    def __neg__(self):
        return TiltElt(self.p, tuple(-c for c in self.coords), self.vprec)

    def __mul__(self, other):
        return _tilt_binop(self, other, lambda x, y: x * y)

    def __pow__(self, k):
        if k < 0:
            raise DomainError("negative powers unsupported; divide instead")
        result = tilt_one(self.p, len(self.coords))
        base = self
        while k:
            if k & 1:
                result = result * base
            if k > 1:
                base = base * base
            k >>= 1
        return result

    def is_zero(self):
        return all(
            _residue_val_at_least(c, pr) for c, pr in zip(self.coords, self.vprec)
        )


def _residue_val_at_least(c: ResidueElt, bound) -> bool:
    v = R.residue_valuation(c)
    return v == math.inf or v >= bound


def _tilt_binop(a: TiltElt, b: TiltElt, op) -> TiltElt:
    if not isinstance(b, TiltElt):
        return NotImplemented
    if a.p != b.p:
        raise DepthMismatchError("tilt elements over different primes")
    m = min(len(a.coords), len(b.coords))
    coords = tuple(op(a.coords[v], b.coords[v]) for v in range(m))
    vprec = tuple(min(a.vprec[v], b.vprec[v]) for v in range(m))
    return TiltElt(a.p, coords, vprec)


def _full_prec(m):
    return (Fraction(1),) * m


def tilt_zero(p, m) -> TiltElt:
    return TiltElt(p, tuple(R.residue_zero(p, v) for v in range(1, m + 1)), _full_prec(m))


def tilt_one(p, m) -> TiltElt:
    return TiltElt(p, tuple(R.residue_one(p, v) for v in range(1, m + 1)), _full_prec(m))


def tilt_from_int(n, p, m) -> TiltElt:
    # constants are Frobenius-fixed (Fermat), so every level gets n mod p
    return TiltElt(
        p, tuple(R.residue_from_int(n, p, v) for v in range(1, m + 1)), _full_prec(m)
    )


def make_epsilon(ctx, k, m=None) -> TiltElt:
    """The compatible system whose level-v entry is the p^(v+k-1)-th root
    of unity (1 + t at tower depth v+k-1; the entry is 1 when v+k-1 <= 0).

    Deeper k needs tower headroom: the window is clipped to ctx.D - k + 1.
    """
    if m is None:
        m = ctx.L
    avail = ctx.D - k + 1
    if avail < 1:
        raise PrecisionError(f"tower depth {ctx.D} cannot hold epsilon_{k}")
    m = min(m, avail)
    coords = []
    for v in range(1, m + 1):
        d = v + k - 1
        if d <= 0:
            coords.append(R.residue_one(ctx.p, 1))
        else:
            coords.append(R.residue_one(ctx.p, d) + R.residue_t(ctx.p, d))
    return TiltElt(ctx.p, tuple(coords), _full_prec(m))


def check_compatibility(a: TiltElt) -> bool:
    p = a.p
    return all(
        (a.coords[v] ** p - a.coords[v - 1]).is_zero()
        for v in range(1, len(a.coords))
    )


def tilt_eq(a: TiltElt, b: TiltElt) -> bool:
    m = min(len(a.coords), len(b.coords))
    for v in range(m):
        bound = min(a.vprec[v], b.vprec[v])
        if not _residue_val_at_least(a.coords[v] - b.coords[v], bound):
            return False
    return True


def tilt_valuation(a: TiltElt):
    """Rank-1 valuation, normalized against the deepest trusted level.

    Returns a Fraction, or ValAtLeast when the element is zero to the
    carried precision.
    """
    m = len(a.coords)
    v = R.residue_valuation(a.coords[m - 1])
    if v != math.inf and v < a.vprec[m - 1]:
        return Fraction(a.p) ** (m - 1) * v
    return ValAtLeast(Fraction(a.p) ** (m - 1) * min(Fraction(1), a.vprec[m - 1]))


def tilt_frobenius(a: TiltElt, k: int = 1) -> TiltElt:
    """phi^k for k >= 0: shifts the window down, p-th-powering the floor."""
    if k < 0:
        raise DomainError("use tilt_pth_root for inverse Frobenius")
    coords, vprec = a.coords, a.vprec
    for _ in range(k):
        coords = (coords[0] ** a.p,) + coords[:-1]
        vprec = (min(Fraction(1), a.p * vprec[0]),) + vprec[:-1]
    return TiltElt(a.p, coords, vprec)


def tilt_pth_root(a: TiltElt, ctx) -> TiltElt:
    """phi^{-1}: shift the window up; the new top level is the
    coefficientwise p-th root (exact in characteristic p), which costs one
    unit of tower headroom, or one window slot if the tower is exhausted."""
    m = len(a.coords)
    top = a.coords[m - 1]
    if top.depth + 1 <= ctx.D:
        new_top = R.residue_pth_root(top)
        coords = a.coords[1:] + (new_top,)
        vprec = a.vprec[1:] + (a.vprec[m - 1] / a.p,)
    else:
        if m < 2:
            raise PrecisionError("window exhausted: cannot take another p-th root")
        coords = a.coords[1:]
        vprec = a.vprec[1:]
    return TiltElt(a.p, coords, vprec)


def tilt_galois(a: TiltElt, u: int) -> TiltElt:
    """sigma_u for u in Z_p^* (an integer unit mod the working depth)."""
    return TiltElt(a.p, tuple(R.residue_galois(c, u) for c in a.coords), a.vprec)


def sharp(a: TiltElt, level: int, prec: int, ctx, rng=None) -> R.CycElt:
    """The multiplicative lift of a at the given level, modulo p^prec.

    Computed as (any lift of the level (level + prec - 1) coordinate)
    raised to the p^(prec-1): independent of the chosen lift to that
    precision, which `rng` lets the tests probe.
    """
    k = prec - 1
    if level + k > len(a.coords):
        raise PrecisionError(
            f"window [1,{len(a.coords)}] too short for precision {prec} at level {level}"
        )
    if a.vprec[level + k - 1] < 1:
        raise PrecisionError("coordinate precision exhausted")
    lift = R.cyc_from_residue(a.coords[level + k - 1], prec, rng=rng)
    return lift ** (a.p**k)


def tilt_divide_exact(x: TiltElt, y: TiltElt) -> TiltElt:
    """x / y when exact: divide at the deepest common level, then downfill
    the shallower levels by p-th powers.  The result's precision reflects
    the t-adic digits lost to the valuation of y."""
    m = min(len(x.coords), len(y.coords))
    xm, ym = x.coords[m - 1], y.coords[m - 1]
    if ym.is_zero():
        raise NotDivisibleError("division by zero in tilt")
    q_top, known = R.residue_divide(xm, ym)
    e = R._e(q_top.p, q_top.depth)
    delta = min(Fraction(known, e), x.vprec[m - 1], y.vprec[m - 1])
    coords = [q_top]
    for _ in range(m - 1):
        coords.append(coords[-1] ** x.p)
    coords.reverse()
    vprec = tuple(min(Fraction(1), x.p ** (m - v) * delta) for v in range(1, m + 1))
    return TiltElt(x.p, tuple(coords), vprec)


class TiltRing:
    """Coefficient-ring adapter so Witt vectors work over the tilt."""

    char_p = True
    exact = False
    name = "tilt"
    preferred_backend = "lift"

    def __init__(self, p, m):
        self.p = p
        self.m = m

    def zero(self):
        return tilt_zero(self.p, self.m)

    def one(self):
        return tilt_one(self.p, self.m)

    def from_int(self, n):
        return tilt_from_int(n, self.p, self.m)

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def neg(self, a):
        return -a

    def mul(self, a, b):
        return a * b

    def pow(self, a, k):
        return a**k

    def eq(self, a, b):
        return tilt_eq(a, b)

    def is_zero(self, a):
        return a.is_zero()

    def frobenius(self, a):
        return tilt_frobenius(a, 1)

    def divide_exact(self, a, b):
        return tilt_divide_exact(a, b)

    def witt_op_lifted(self, a, b, which):
        """Beyond the universal-polynomial cap: run the exact lifted
        characteristic-p route level by level and reassemble."""
        from . import witt as W

        m = min(len(c.coords) for c in a.coords + b.coords)
        per_level = []
        for v in range(1, m + 1):
            rr = W.ResidueRing(self.p, v)
            av = W.WittVec(rr, tuple(c.level(v) for c in a.coords))
            bv = W.WittVec(rr, tuple(c.level(v) for c in b.coords))
            per_level.append(W._backend_lift(av, bv, which))
        n = len(a.coords)
        out = []
        for i in range(n):
            vprec = tuple(
                min(a.coords[i].vprec[v], b.coords[i].vprec[v]) for v in range(m)
            )
            out.append(
                TiltElt(self.p, tuple(per_level[v].coords[i] for v in range(m)), vprec)
            )
        return W.WittVec(self, tuple(out))
