"""Exact arithmetic in the cyclotomic tower's coefficient rings.

Two element kinds:

* ResidueElt -- F_p[t]/(t^e) with e = p^(v-1)(p-1), the mod-p residue ring
  at level v of the tower (t stands for zeta_{p^v} - 1).
* CycElt -- (Z/p^M)[x]/Phi_{p^v}(x), the characteristic-0 ring at level v
  carried to M p-adic digits.

Valuations are normalized so v(p) = 1 and returned as Fraction; a value
that is zero at the carried precision yields a lower-bound marker rather
than a fake infinity.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from . import kernels
from .errors import DepthMismatchError, DomainError, NotDivisibleError, PrecisionError


@dataclass(frozen=True)
class ValAtLeast:
    """Marker: valuation is >= bound but indistinguishable from larger."""

    bound: Fraction

    def __repr__(self):
        return f">= {self.bound}"


def _e(p: int, depth: int) -> int:
    return p ** (depth - 1) * (p - 1)


# ---------------------------------------------------------------------------
# residue ring  F_p[t]/(t^e)
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ResidueElt:
    p: int
    depth: int
    coeffs: tuple

    def __post_init__(self):
        e = _e(self.p, self.depth)
        if len(self.coeffs) != e:
            raise DomainError(
                f"residue element at depth {self.depth} needs {e} coefficients"
            )

    @property
    def e(self) -> int:
        return _e(self.p, self.depth)

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    def __add__(self, other):
        a, b = _residue_align(self, other)
        p = a.p
        return ResidueElt(p, a.depth, tuple((x + y) % p for x, y in zip(a.coeffs, b.coeffs)))

    def __sub__(self, other):
        a, b = _residue_align(self, other)
        p = a.p
        return ResidueElt(p, a.depth, tuple((x - y) % p for x, y in zip(a.coeffs, b.coeffs)))

    def __neg__(self):
        return ResidueElt(self.p, self.depth, tuple((-c) % self.p for c in self.coeffs))

    def __mul__(self, other):
        a, b = _residue_align(self, other)
        out = kernels.poly_mul_trunc(list(a.coeffs), list(b.coeffs), a.p, a.e)
        return ResidueElt(a.p, a.depth, tuple(out))

    def __pow__(self, k: int):
        if k < 0:
            return residue_inverse(self) ** (-k)
        result = residue_one(self.p, self.depth)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result


def residue_zero(p, depth):
    return ResidueElt(p, depth, (0,) * _e(p, depth))


def residue_one(p, depth):
    return residue_from_int(1, p, depth)


def residue_from_int(n, p, depth):
    return ResidueElt(p, depth, (n % p,) + (0,) * (_e(p, depth) - 1))


def residue_t(p, depth):
    """The uniformizer t = zeta_{p^depth} - 1."""
    e = _e(p, depth)
    if e < 2:
        raise DomainError("depth too small for a uniformizer")
    return ResidueElt(p, depth, (0, 1) + (0,) * (e - 2))


def residue_zeta(p, depth):
    """zeta_{p^depth} = 1 + t."""
    e = _e(p, depth)
    return ResidueElt(p, depth, (1, 1) + (0,) * (e - 2))


def _residue_align(a: ResidueElt, b: ResidueElt):
    if a.p != b.p:
        raise DepthMismatchError("prime mismatch")
    if a.depth == b.depth:
        return a, b
    d = max(a.depth, b.depth)
    return residue_embed(a, d), residue_embed(b, d)


def residue_embed(a: ResidueElt, depth2: int) -> ResidueElt:
    """Tower inclusion: t_v maps to t_{v'}^(p^(v'-v)) (exact in char p)."""
    if depth2 < a.depth:
        raise DomainError("cannot embed into a shallower level")
    if depth2 == a.depth:
        return a
    s = a.p ** (depth2 - a.depth)
    e2 = _e(a.p, depth2)
    out = [0] * e2
    for i, c in enumerate(a.coeffs):
        out[i * s] = c
    return ResidueElt(a.p, depth2, tuple(out))


def residue_valuation(a: ResidueElt):
    """t-order / e, so that v(p) = 1; +inf for the literal zero."""
    for i, c in enumerate(a.coeffs):
        if c != 0:
            return Fraction(i, a.e)
    return math.inf


def residue_pth_root(a: ResidueElt) -> ResidueElt:
    """The canonical p-th root, landing one level deeper.

    Reinterpreting the coefficient array at depth+1 works because
    (sum c_i t_{v+1}^i)^p = sum c_i t_{v+1}^(i p), which is exactly the
    embedding of a into depth+1.
    """
    e2 = _e(a.p, a.depth + 1)
    return ResidueElt(a.p, a.depth + 1, tuple(a.coeffs) + (0,) * (e2 - a.e))


def residue_inverse(a: ResidueElt) -> ResidueElt:
    c0 = a.coeffs[0]
    if c0 % a.p == 0:
        raise NotDivisibleError("residue element is not a unit")
    c0inv = pow(c0, -1, a.p)
    # a = c0 (1 + w) with w nilpotent: invert by the finite geometric series
    w = ResidueElt(a.p, a.depth, tuple((c * c0inv) % a.p for c in a.coeffs)) - residue_one(
        a.p, a.depth
    )
    acc = residue_one(a.p, a.depth)
    term = residue_one(a.p, a.depth)
    i = 1
    while not term.is_zero() and i <= a.e:
        term = term * (-w)
        acc = acc + term
        i += 1
    return ResidueElt(a.p, a.depth, tuple((c * c0inv) % a.p for c in acc.coeffs))


def residue_divide(x: ResidueElt, y: ResidueElt):
    """Exact division x / y in F_p[t]/(t^e).

    Returns (quotient, known_digits): the quotient is determined only
    modulo t^(e - ord(y)); digits past that are set to zero.
    """
    x, y = _residue_align(x, y)
    if y.is_zero():
        raise NotDivisibleError("division by zero in residue ring")
    j = next(i for i, c in enumerate(y.coeffs) if c != 0)
    if any(c != 0 for c in x.coeffs[:j]):
        raise NotDivisibleError("not divisible: t-order too small")
    e = x.e
    known = e - j
    xs = tuple(x.coeffs[j:]) + (0,) * j
    ys = tuple(y.coeffs[j:]) + (0,) * j
    q = ResidueElt(x.p, x.depth, xs) * residue_inverse(ResidueElt(x.p, x.depth, ys))
    q = ResidueElt(x.p, x.depth, q.coeffs[:known] + (0,) * j)
    return q, known


def residue_galois(a: ResidueElt, u: int) -> ResidueElt:
    """Cyclotomic action zeta -> zeta^u, i.e. 1+t -> (1+t)^u."""
    p, depth = a.p, a.depth
    if u % p == 0:
        raise DomainError("galois unit must be coprime to p")
    ur = u % (p**depth)
    base = residue_zeta(p, depth) ** ur - residue_one(p, depth)  # image of t
    # Horner in the image of t
    acc = residue_zero(p, depth)
    for c in reversed(a.coeffs):
        acc = acc * base + residue_from_int(c, p, depth)
    return acc


# ---------------------------------------------------------------------------
# characteristic-0 ring  (Z/p^M)[x] / Phi_{p^v}(x)
# ---------------------------------------------------------------------------


def _phi_len(p, depth):
    return _e(p, depth)  # deg Phi_{p^v} = p^(v-1)(p-1)


def _cyc_reduce_raw(raw, p, depth, mod):
    """Reduce a raw coefficient list (any length < 2 p^v) mod (Phi, mod).

    Uses x^(p^v) = 1 first, then x^phi = -sum_{i<p-1} x^(i p^(v-1)).
    Works over Z when mod is None.
    """
    pv = p**depth
    phi = _phi_len(p, depth)
    step = p ** (depth - 1)
    out = [0] * pv
    for i, c in enumerate(raw):
        out[i % pv] += c
    for d in range(pv - 1, phi - 1, -1):
        c = out[d]
        if c == 0:
            continue
        out[d] = 0
        r = d - phi
        for i in range(p - 1):
            out[r + i * step] -= c
    out = out[:phi]
    if mod is not None:
        out = [c % mod for c in out]
    return out


@dataclass(frozen=True)
class CycElt:
    p: int
    depth: int
    prec: int  # carried modulus is p^prec
    coeffs: tuple

    def __post_init__(self):
        if self.prec < 1:
            raise PrecisionError("cyclotomic element with no remaining digits")
        if len(self.coeffs) != _phi_len(self.p, self.depth):
            raise DomainError(
                f"cyc element at depth {self.depth} needs {_phi_len(self.p, self.depth)} coefficients"
            )

    @property
    def modulus(self) -> int:
        return self.p**self.prec

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    def __add__(self, other):
        a, b = _cyc_align(self, other)
        m = a.modulus
        return CycElt(a.p, a.depth, a.prec, tuple((x + y) % m for x, y in zip(a.coeffs, b.coeffs)))

    def __sub__(self, other):
        a, b = _cyc_align(self, other)
        m = a.modulus
        return CycElt(a.p, a.depth, a.prec, tuple((x - y) % m for x, y in zip(a.coeffs, b.coeffs)))

    def __neg__(self):
        m = self.modulus
        return CycElt(self.p, self.depth, self.prec, tuple((-c) % m for c in self.coeffs))

    def __mul__(self, other):
        a, b = _cyc_align(self, other)
        raw = kernels.poly_mul_trunc(
            list(a.coeffs), list(b.coeffs), a.modulus, len(a.coeffs) * 2 - 1
        )
        return CycElt(a.p, a.depth, a.prec, tuple(_cyc_reduce_raw(raw, a.p, a.depth, a.modulus)))

    def __pow__(self, k: int):
        if k < 0:
            return cyc_inverse(self) ** (-k)
        result = cyc_one(self.p, self.depth, self.prec)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result


def _cyc_align(a: CycElt, b: CycElt):
    if a.p != b.p:
        raise DepthMismatchError("prime mismatch")
    prec = min(a.prec, b.prec)
    a, b = cyc_reduce_prec(a, prec), cyc_reduce_prec(b, prec)
    if a.depth == b.depth:
        return a, b
    d = max(a.depth, b.depth)
    return cyc_embed(a, d), cyc_embed(b, d)


def cyc_zero(p, depth, prec):
    return CycElt(p, depth, prec, (0,) * _phi_len(p, depth))


def cyc_one(p, depth, prec):
    return cyc_from_int(1, p, depth, prec)


def cyc_from_int(n, p, depth, prec):
    return CycElt(p, depth, prec, (n % p**prec,) + (0,) * (_phi_len(p, depth) - 1))


def cyc_zeta(p, depth, prec):
    """zeta_{p^depth}, i.e. the class of x."""
    return CycElt(p, depth, prec, (0, 1) + (0,) * (_phi_len(p, depth) - 2))


def cyc_pi(p, depth, prec):
    """The uniformizer x - 1."""
    m = p**prec
    return CycElt(p, depth, prec, ((-1) % m, 1) + (0,) * (_phi_len(p, depth) - 2))


def cyc_reduce_prec(a: CycElt, prec: int) -> CycElt:
    if prec == a.prec:
        return a
    if prec > a.prec:
        raise PrecisionError("cannot gain p-adic digits by reduction")
    m = a.p**prec
    return CycElt(a.p, a.depth, prec, tuple(c % m for c in a.coeffs))


def cyc_lift_prec(a: CycElt, prec: int) -> CycElt:
    """Reinterpret the canonical representative at a larger modulus.

    This is an arbitrary lift; callers rely on universality (integral
    polynomial identities) for the extra digits to be meaningful.
    """
    if prec < a.prec:
        return cyc_reduce_prec(a, prec)
    return CycElt(a.p, a.depth, prec, a.coeffs)


def cyc_embed(a: CycElt, depth2: int) -> CycElt:
    """Tower inclusion x -> x^(p^(depth2-depth))."""
    if depth2 < a.depth:
        raise DomainError("cannot embed into a shallower level")
    if depth2 == a.depth:
        return a
    s = a.p ** (depth2 - a.depth)
    raw = [0] * (_phi_len(a.p, a.depth) * s)
    for i, c in enumerate(a.coeffs):
        raw[i * s] = c
    return CycElt(a.p, depth2, a.prec, tuple(_cyc_reduce_raw(raw, a.p, depth2, a.modulus)))


def cyc_divide_by_p(a: CycElt) -> CycElt:
    """Exact division by p; costs one carried digit."""
    if a.prec < 2:
        raise PrecisionError("no digits left for division by p")
    if any(c % a.p for c in a.coeffs):
        raise NotDivisibleError("not divisible by p")
    return CycElt(a.p, a.depth, a.prec - 1, tuple(c // a.p for c in a.coeffs))


def cyc_to_residue(a: CycElt) -> ResidueElt:
    """Reduction mod p with x - 1 -> t (a ring homomorphism)."""
    p, depth = a.p, a.depth
    one = residue_one(p, depth)
    t = (
        residue_t(p, depth)
        if _e(p, depth) >= 2
        else residue_zero(p, depth)
    )
    base = one + t  # image of x
    acc = residue_zero(p, depth)
    for c in reversed(a.coeffs):
        acc = acc * base + residue_from_int(c, p, depth)
    return acc


def cyc_from_residue(a: ResidueElt, prec: int, rng=None) -> CycElt:
    """Coefficientwise lift with t -> x - 1.

    rng, when given, randomizes the lift by multiples of p (used to test
    lift-independence of limit constructions).
    """
    p, depth = a.p, a.depth
    m = p**prec
    coeffs = list(a.coeffs)
    if rng is not None:
        coeffs = [(c + p * rng.randrange(p ** (prec - 1))) % m for c in coeffs]
    pi = cyc_pi(p, depth, prec)
    acc = cyc_zero(p, depth, prec)
    for c in reversed(coeffs):
        acc = acc * pi + cyc_from_int(c, p, depth, prec)
    return acc


def _cyc_eval1_mod_p(a: CycElt) -> int:
    """Evaluation at x=1 mod p (well defined since Phi(1) = p)."""
    return sum(a.coeffs) % a.p


def cyc_is_unit(a: CycElt) -> bool:
    return _cyc_eval1_mod_p(a) != 0


def cyc_inverse(a: CycElt) -> CycElt:
    if not cyc_is_unit(a):
        raise NotDivisibleError("cyc element is not a unit")
    r = cyc_from_residue(residue_inverse(cyc_to_residue(a)), a.prec)
    # Hensel: quadratic convergence from the mod-p inverse
    v = r
    good = 1
    while good < a.prec:
        v = v * (cyc_from_int(2, a.p, a.depth, a.prec) - a * v)
        good *= 2
    return v


# pi-division support: pi^e = p * unit in Z[zeta]; cache the unit and pi^(e-1)


_PI_CACHE: dict = {}


def _cycz_mul(a, b, p, depth):
    raw = kernels.poly_mul_trunc(a, b, None, len(a) + len(b) - 1)
    return _cyc_reduce_raw(raw, p, depth, None)


def _pi_data(p, depth):
    """(pi^(e-1) mod Phi over Z, unit u = pi^e / p over Z)."""
    key = (p, depth)
    if key not in _PI_CACHE:
        phi = _phi_len(p, depth)
        pi = [-1, 1] + [0] * (phi - 2)
        acc = [1] + [0] * (phi - 1)
        e = _e(p, depth)
        for _ in range(e - 1):
            acc = _cycz_mul(acc, pi, p, depth)
        pi_e1 = acc
        pi_e = _cycz_mul(acc, pi, p, depth)
        assert all(c % p == 0 for c in pi_e)
        u = [c // p for c in pi_e]
        _PI_CACHE[key] = (pi_e1, u)
    return _PI_CACHE[key]


def _pi_inv_unit(p, depth, prec) -> CycElt:
    """pi^(e-1) * u^(-1) at the given precision: the ring element pi^(-1)*p."""
    pi_e1, u = _pi_data(p, depth)
    m = p**prec
    pi_e1_elt = CycElt(p, depth, prec, tuple(c % m for c in pi_e1))
    u_elt = CycElt(p, depth, prec, tuple(c % m for c in u))
    return pi_e1_elt * cyc_inverse(u_elt)


def cyc_divmod_pi(a: CycElt):
    """Divide by pi = x - 1: returns (quotient, ok).

    ok is False when a is a unit (not divisible). The quotient's lowest
    carried digit may be polluted at valuations >= prec - 1/e; callers
    probing valuations well below the carried precision are unaffected.
    """
    p, depth, prec = a.p, a.depth, a.prec
    m = a.modulus
    # synthetic division by (x - 1) over the canonical representative
    coeffs = list(a.coeffs)
    q = [0] * len(coeffs)
    carry = 0
    for i in range(len(coeffs) - 1, 0, -1):
        carry = (coeffs[i] + carry) % m
        q[i - 1] = carry
    r = (coeffs[0] + carry) % m
    if r % p != 0:
        return None, False
    qelt = CycElt(p, depth, prec, tuple(q))
    if r == 0:
        return qelt, True
    s = r // p
    corr = _pi_inv_unit(p, depth, prec) * cyc_from_int(s, p, depth, prec)
    return qelt + corr, True


def cyc_valuation(a: CycElt):
    """Largest k with pi^k | a, as k/e; ValAtLeast(prec) at truncated zero."""
    e = _e(a.p, a.depth)
    if a.is_zero():
        return ValAtLeast(Fraction(a.prec))
    k = 0
    cur = a
    cap = a.prec * e
    while k < cap:
        q, ok = cyc_divmod_pi(cur)
        if not ok:
            break
        cur = q
        k += 1
    if k >= cap:
        return ValAtLeast(Fraction(a.prec))
    return Fraction(k, e)


def cyc_galois(a: CycElt, u: int) -> CycElt:
    """Cyclotomic action x -> x^u (ring automorphism for u coprime to p)."""
    p, depth = a.p, a.depth
    if u % p == 0:
        raise DomainError("galois unit must be coprime to p")
    pv = p**depth
    ur = u % pv
    raw = [0] * pv
    for i, c in enumerate(a.coeffs):
        raw[(i * ur) % pv] += c
    return CycElt(a.p, a.depth, a.prec, tuple(_cyc_reduce_raw(raw, p, depth, a.modulus)))


def cyc_divide_exact(x: CycElt, y: CycElt):
    """Exact division x / y, stripping the common pi-power first.

    Returns the quotient; precision drops by ceil(j/e) digits where j is
    the pi-order of y. Raises NotDivisibleError if x is not a multiple.
    """
    if y.is_zero():
        raise NotDivisibleError("division by zero")
    if cyc_is_unit(y):
        return x * cyc_inverse(y)
    e = _e(x.p, x.depth)
    j = 0
    while not cyc_is_unit(y):
        qx, okx = cyc_divmod_pi(x) if not x.is_zero() else (x, True)
        if x.is_zero():
            qx = x
        qy, oky = cyc_divmod_pi(y)
        if not oky:
            raise NotDivisibleError("divisor stuck: not pi-divisible but not unit")
        if not okx:
            raise NotDivisibleError("not divisible: x has smaller valuation")
        x, y = qx, qy
        j += 1
        if j > x.prec * e:
            raise NotDivisibleError("divisor has no unit part at this precision")
    q = x * cyc_inverse(y)
    loss = -(-j // e)  # ceil
    if q.prec - loss < 1:
        raise PrecisionError("division consumed all digits")
    return cyc_reduce_prec(q, q.prec - loss)
