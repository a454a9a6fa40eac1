"""Truncated p-typical Witt vectors over the wittlab coefficient rings.

Two arithmetic backends, cross-validated:

* Backend A (ghost lift): compute ghost components, operate there, and
  invert. Exact over Z, Q and integer polynomial rings; over the
  cyclotomic rings it lifts to `guard` extra p-adic digits to absorb the
  divisions by powers of p.
* Backend B (universal polynomials): evaluate the cached universal sum
  and product polynomials, obtained once by ghost inversion over the
  integer polynomial ring. This is the only route for characteristic-p
  coefficient rings, where the ghost map is degenerate.

Beyond the polynomial cache cap the characteristic-p route evaluates the
same universal polynomials through an exact torsion-free lift
(Z[t]/(t^e) covers F_p[t]/(t^e)) instead of their expanded form.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from . import kernels, rings as R
from .errors import DomainError, NotDivisibleError, PrecisionError
from .polys import DictPoly


# ---------------------------------------------------------------------------
# coefficient ring adapters
# ---------------------------------------------------------------------------


class IntegerRing:
    """W_n(Z): exact big-integer coordinates."""

    char_p = False
    exact = True
    name = "integer"

    def __init__(self, p):
        self.p = p

    def zero(self):
        return 0

    def one(self):
        return 1

    def from_int(self, n):
        return n

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
        return a == b

    def is_zero(self, a):
        return a == 0

    def divide_by_p(self, a):
        q, r = divmod(a, self.p)
        if r:
            raise NotDivisibleError("not a ghost vector")
        return q

    def divide_exact(self, a, b):
        if b == 0:
            raise NotDivisibleError("division by zero")
        q, r = divmod(a, b)
        if r:
            raise NotDivisibleError("not divisible")
        return q


class RationalRing(IntegerRing):
    """W_n with p inverted: Fraction coordinates."""

    name = "rational"

    def from_int(self, n):
        return Fraction(n)

    def divide_by_p(self, a):
        return a / self.p

    def divide_exact(self, a, b):
        if b == 0:
            raise NotDivisibleError("division by zero")
        return a / b


class PolyRing:
    """W_n(Z[x_0..x_{k-1}]): the universal-identity workhorse."""

    char_p = False
    exact = True
    name = "poly"

    def __init__(self, p, nvars):
        self.p = p
        self.nvars = nvars

    def zero(self):
        return DictPoly(self.nvars, {})

    def one(self):
        return DictPoly.const(self.nvars, 1)

    def from_int(self, n):
        return DictPoly.const(self.nvars, n)

    def var(self, i):
        return DictPoly.var(self.nvars, i)

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
        return (a - b).is_zero()

    def is_zero(self, a):
        return a.is_zero()

    def divide_by_p(self, a):
        return a.exact_div(self.p)

    def divide_exact(self, a, b):
        # only integer-constant divisors arise here
        if not b.terms or any(e != (0,) * self.nvars for e in b.terms):
            raise NotDivisibleError("poly division restricted to constants")
        return a.exact_div(b.terms[(0,) * self.nvars])


class CycRing:
    """W_n over (Z/p^prec)[x]/Phi_{p^depth}."""

    char_p = False
    exact = False
    name = "cyc"

    def __init__(self, p, depth, prec, guard=4):
        self.p = p
        self.depth = depth
        self.prec = prec
        self.guard = guard

    def zero(self):
        return R.cyc_zero(self.p, self.depth, self.prec)

    def one(self):
        return R.cyc_one(self.p, self.depth, self.prec)

    def from_int(self, n):
        return R.cyc_from_int(n, self.p, self.depth, self.prec)

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
        prec = min(a.prec, b.prec)
        return (R.cyc_reduce_prec(a, prec) - R.cyc_reduce_prec(b, prec)).is_zero()

    def is_zero(self, a):
        return a.is_zero()

    def divide_by_p(self, a):
        return R.cyc_divide_by_p(a)

    def divide_exact(self, a, b):
        return R.cyc_divide_exact(a, b)

    @staticmethod
    def lift_prec(a, ref):
        if a.prec >= ref.prec:
            return a
        return R.cyc_lift_prec(a, ref.prec)


class ResidueRing:
    """W_n over F_p[t]/(t^e) at one tower level."""

    char_p = True
    exact = True
    name = "residue"

    def __init__(self, p, depth):
        self.p = p
        self.depth = depth

    def zero(self):
        return R.residue_zero(self.p, self.depth)

    def one(self):
        return R.residue_one(self.p, self.depth)

    def from_int(self, n):
        return R.residue_from_int(n, self.p, self.depth)

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
        return (a - b).is_zero()

    def is_zero(self, a):
        return a.is_zero()

    def frobenius(self, a):
        return a**self.p

    def divide_exact(self, a, b):
        q, _known = R.residue_divide(a, b)
        return q

    # exact torsion-free cover: Z[t]/(t^e) with coefficientwise lift;
    # both operands must share one cover, at their deepest common level

    def lift_pair(self, acoords, bcoords):
        depth = max(c.depth for c in acoords + bcoords)
        cover = _ZTruncRing(self.p, R._e(self.p, depth))
        lift = lambda cs: [tuple(R.residue_embed(c, depth).coeffs) for c in cs]
        return cover, lift(acoords), lift(bcoords)

    def reduce_lifted(self, ztrunc_ring, elt):
        depth = 1
        while R._e(self.p, depth) != ztrunc_ring.e:
            depth += 1
        return R.ResidueElt(self.p, depth, tuple(c % self.p for c in elt))


class _ZTruncRing:
    """Z[t]/(t^e): exact p-torsion-free cover of a residue ring."""

    char_p = False
    exact = True
    name = "ztrunc"

    def __init__(self, p, e):
        self.p = p
        self.e = e

    def zero(self):
        return (0,) * self.e

    def one(self):
        return (1,) + (0,) * (self.e - 1)

    def from_int(self, n):
        return (n,) + (0,) * (self.e - 1)

    def add(self, a, b):
        return tuple(x + y for x, y in zip(a, b))

    def sub(self, a, b):
        return tuple(x - y for x, y in zip(a, b))

    def neg(self, a):
        return tuple(-x for x in a)

    def mul(self, a, b):
        return tuple(kernels.poly_mul_trunc(list(a), list(b), None, self.e))

    def pow(self, a, k):
        result = self.one()
        base = a
        while k:
            if k & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            k >>= 1
        return result

    def eq(self, a, b):
        return a == b

    def is_zero(self, a):
        return all(c == 0 for c in a)

    def divide_by_p(self, a):
        if any(c % self.p for c in a):
            raise NotDivisibleError("not divisible by p")
        return tuple(c // self.p for c in a)


# ---------------------------------------------------------------------------
# vectors
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class WittVec:
    ring: object
    coords: tuple

    def __len__(self):
        return len(self.coords)


@dataclass(frozen=True)
class GhostVec:
    ring: object
    comps: tuple

    def __len__(self):
        return len(self.comps)


def make(ring, coords) -> WittVec:
    return WittVec(ring, tuple(coords))


def teichmuller(ring, x, n) -> WittVec:
    if n < 1:
        raise DomainError("witt length must be >= 1")
    return WittVec(ring, (x,) + (ring.zero(),) * (n - 1))


def int_witt(ring, k, n) -> WittVec:
    """The image of the integer k (i.e. k * 1) in W_n."""
    zc = _int_witt_coords_z(ring.p, k, n)
    return WittVec(ring, tuple(ring.from_int(c) for c in zc))


_INT_WITT_CACHE: dict = {}


def _int_witt_coords_z(p, k, n):
    key = (p, k, n)
    if key not in _INT_WITT_CACHE:
        coords = [k]
        for i in range(1, n):
            s = k - sum(p**j * coords[j] ** (p ** (i - j)) for j in range(i))
            q, r = divmod(s, p**i)
            assert r == 0
            coords.append(q)
        _INT_WITT_CACHE[key] = tuple(coords)
    return _INT_WITT_CACHE[key]


def ghost(a: WittVec) -> GhostVec:
    ring, p = a.ring, a.ring.p
    comps = []
    for i in range(len(a)):
        w = ring.pow(a.coords[0], p**i)
        for j in range(1, i + 1):
            w = ring.add(w, ring.mul(ring.from_int(p**j), ring.pow(a.coords[j], p ** (i - j))))
        comps.append(w)
    return GhostVec(ring, tuple(comps))


def ghost_inverse(w: GhostVec) -> WittVec:
    """Unique Witt vector with the given ghost components.

    Requires a p-torsion-free coefficient ring (or enough carried digits);
    raises NotDivisibleError when w is not in the image of the ghost map.
    """
    ring, p = w.ring, w.ring.p
    if ring.char_p:
        raise DomainError("ghost inversion needs a p-torsion-free coefficient ring")
    # re-lifting c_j before the p^j scaling is sound: any lift of a value
    # known mod p^(W-j) gives the same p^j * c_j^(p^(i-j)) mod p^W
    lift = getattr(ring, "lift_prec", None)
    coords = []
    for i in range(len(w)):
        s = w.comps[i]
        for j in range(i):
            cj = lift(coords[j], w.comps[i]) if lift else coords[j]
            s = ring.sub(s, ring.mul(ring.from_int(p**j), ring.pow(cj, p ** (i - j))))
        for _ in range(i):
            s = ring.divide_by_p(s)
        coords.append(s)
    return WittVec(ring, tuple(coords))


def is_ghost_image(p, comps) -> bool:
    """Dwork congruence criterion over Z: w_i = w_{i-1} mod p^i."""
    return all(
        (comps[i] - comps[i - 1]) % p**i == 0 for i in range(1, len(comps))
    )


# universal polynomials -----------------------------------------------------

_UNIV_CACHE: dict = {}


def _univ_cap_ok(p, n):
    return (p <= 5 and n <= 4) or (p == 3 and n <= 5)


def witt_universal_polys(p, n, which):
    """Universal sum/product polynomials s_0..s_{n-1} / m_0..m_{n-1}.

    Variables 0..n-1 are the a-coordinates, n..2n-1 the b-coordinates.
    Combinatorial growth caps this at n <= 4 for p <= 5 (n <= 5 for p=3).
    """
    if which not in ("sum", "prod"):
        raise DomainError(f"unknown polynomial family {which!r}")
    if not _univ_cap_ok(p, n):
        raise DomainError(f"universal polynomials capped: p={p}, n={n}")
    key = (p, n, which)
    if key in _UNIV_CACHE:
        return _UNIV_CACHE[key]
    ring = PolyRing(p, 2 * n)
    a = WittVec(ring, tuple(ring.var(i) for i in range(n)))
    b = WittVec(ring, tuple(ring.var(n + i) for i in range(n)))
    wa, wb = ghost(a), ghost(b)
    if which == "sum":
        target = tuple(x + y for x, y in zip(wa.comps, wb.comps))
    else:
        target = tuple(x * y for x, y in zip(wa.comps, wb.comps))
    result = tuple(ghost_inverse(GhostVec(ring, target)).coords)
    _UNIV_CACHE[key] = result
    return result


_UNIV_MODP_CACHE: dict = {}


def _univ_polys_mod_p(p, n, which):
    key = (p, n, which)
    if key not in _UNIV_MODP_CACHE:
        full = witt_universal_polys(p, n, which)
        reduced = []
        for poly in full:
            terms = {e: c % p for e, c in poly.terms.items() if c % p}
            reduced.append(DictPoly(poly.nvars, terms))
        _UNIV_MODP_CACHE[key] = tuple(reduced)
    return _UNIV_MODP_CACHE[key]


# backends ------------------------------------------------------------------


def _cyc_work_ring(ring: CycRing, coords_prec: int):
    return CycRing(ring.p, ring.depth, coords_prec + ring.guard, ring.guard)


def _backend_a(a: WittVec, b: WittVec, which) -> WittVec:
    ring = a.ring
    n = len(a)
    if ring.char_p:
        raise DomainError("backend A is undefined in characteristic p")
    if isinstance(ring, CycRing):
        prec = min(min(c.prec for c in a.coords), min(c.prec for c in b.coords))
        if ring.guard < n - 1:
            raise PrecisionError("guard digits insufficient for this Witt length")
        work = _cyc_work_ring(ring, prec)
        au = WittVec(work, tuple(R.cyc_lift_prec(c, work.prec) for c in a.coords))
        bu = WittVec(work, tuple(R.cyc_lift_prec(c, work.prec) for c in b.coords))
        wa, wb = ghost(au), ghost(bu)
        op = work.add if which == "sum" else work.mul
        combined = GhostVec(work, tuple(op(x, y) for x, y in zip(wa.comps, wb.comps)))
        res = ghost_inverse(combined)
        return WittVec(ring, tuple(R.cyc_reduce_prec(c, prec) for c in res.coords))
    wa, wb = ghost(a), ghost(b)
    op = ring.add if which == "sum" else ring.mul
    combined = GhostVec(ring, tuple(op(x, y) for x, y in zip(wa.comps, wb.comps)))
    return ghost_inverse(combined)


def _backend_b(a: WittVec, b: WittVec, which) -> WittVec:
    ring = a.ring
    n = len(a)
    if ring.char_p:
        polys = _univ_polys_mod_p(ring.p, n, which)
    else:
        polys = witt_universal_polys(ring.p, n, which)
    values = list(a.coords) + list(b.coords)
    out = tuple(
        poly.eval(values, ring.add, ring.mul, ring.from_int, ring.one())
        for poly in polys
    )
    if isinstance(ring, CycRing):
        prec = min(min(c.prec for c in a.coords), min(c.prec for c in b.coords))
        out = tuple(R.cyc_reduce_prec(c, min(prec, c.prec)) for c in out)
    return WittVec(ring, out)


def _backend_lift(a: WittVec, b: WittVec, which) -> WittVec:
    """Characteristic-p op through the exact torsion-free cover."""
    ring = a.ring
    cover, ac, bc = ring.lift_pair(a.coords, b.coords)
    au = WittVec(cover, tuple(ac))
    bu = WittVec(cover, tuple(bc))
    res = _backend_a(au, bu, which)
    return WittVec(ring, tuple(ring.reduce_lifted(cover, c) for c in res.coords))


def _binop(a: WittVec, b: WittVec, which, backend=None) -> WittVec:
    if len(a) != len(b):
        raise DomainError("witt length mismatch")
    ring = a.ring
    if backend is None:
        if ring.char_p:
            backend = getattr(ring, "preferred_backend", None) or (
                "B" if _univ_cap_ok(ring.p, len(a)) else "lift"
            )
        else:
            backend = "A"
    if backend == "A":
        return _backend_a(a, b, which)
    if backend == "B":
        return _backend_b(a, b, which)
    if backend == "lift":
        if not ring.char_p:
            raise DomainError("lift backend is for characteristic-p rings")
        if hasattr(ring, "witt_op_lifted"):
            return ring.witt_op_lifted(a, b, which)
        return _backend_lift(a, b, which)
    raise DomainError(f"unknown backend {backend!r}")


def witt_add(a, b, backend=None):
    return _binop(a, b, "sum", backend)


def witt_mul(a, b, backend=None):
    return _binop(a, b, "prod", backend)


def witt_neg(a: WittVec) -> WittVec:
    # coordinatewise negation is correct for odd p
    return WittVec(a.ring, tuple(a.ring.neg(c) for c in a.coords))


def witt_sub(a, b, backend=None):
    return witt_add(a, witt_neg(b), backend)


def witt_eq(a: WittVec, b: WittVec) -> bool:
    return len(a) == len(b) and all(
        a.ring.eq(x, y) for x, y in zip(a.coords, b.coords)
    )


def witt_is_zero(a: WittVec) -> bool:
    return all(a.ring.is_zero(c) for c in a.coords)


def witt_pow(a: WittVec, k: int) -> WittVec:
    if k < 0:
        return witt_pow(witt_inverse(a), -k)
    result = int_witt(a.ring, 1, len(a))
    base = a
    while k:
        if k & 1:
            result = witt_mul(result, base)
        base = witt_mul(base, base) if k > 1 else base
        k >>= 1
    return result


def restrict(a: WittVec) -> WittVec:
    if len(a) < 2:
        raise DomainError("cannot restrict below length 1")
    return WittVec(a.ring, a.coords[:-1])


def verschiebung(a: WittVec, max_len=None) -> WittVec:
    if max_len is not None and len(a) + 1 > max_len:
        raise DomainError(f"witt length {len(a) + 1} exceeds bound {max_len}")
    return WittVec(a.ring, (a.ring.zero(),) + a.coords)


def frobenius(a: WittVec) -> WittVec:
    """F: W_n -> W_{n-1}, characterized by w_i(Fa) = w_{i+1}(a)."""
    if len(a) < 2:
        raise DomainError("frobenius needs witt length >= 2")
    ring = a.ring
    if ring.char_p:
        return WittVec(ring, tuple(ring.frobenius(c) for c in a.coords[:-1]))
    if isinstance(ring, CycRing):
        prec = min(c.prec for c in a.coords)
        work = _cyc_work_ring(ring, prec)
        au = WittVec(work, tuple(R.cyc_lift_prec(c, work.prec) for c in a.coords))
        res = ghost_inverse(GhostVec(work, ghost(au).comps[1:]))
        return WittVec(ring, tuple(R.cyc_reduce_prec(c, prec) for c in res.coords))
    return ghost_inverse(GhostVec(ring, ghost(a).comps[1:]))


def witt_divide_exact(d: WittVec, b: WittVec) -> WittVec:
    """The unique c with c * b = d, solved coordinate by coordinate.

    Coordinate i is extracted from the degree-i product identity; the
    division is by the i-th ghost component of b (which is b_0^(p^i) in
    characteristic p).
    """
    if len(d) != len(b):
        raise DomainError("witt length mismatch")
    ring = d.ring
    n = len(d)
    if hasattr(ring, "witt_divide_coord"):
        solve = ring.witt_divide_coord
    else:
        gb = ghost(b) if not ring.char_p else None

        def solve(i, num, b0):
            den = ring.pow(b0, ring.p**i) if ring.char_p else gb.comps[i]
            return ring.divide_exact(num, den)

    coords = []
    for i in range(n):
        partial = WittVec(ring, tuple(coords) + (ring.zero(),))
        r_i = witt_mul(partial, WittVec(ring, b.coords[: i + 1])).coords[i]
        num = ring.sub(d.coords[i], r_i)
        try:
            coords.append(solve(i, num, b.coords[0]))
        except NotDivisibleError as exc:
            raise NotDivisibleError(f"not divisible at coordinate {i}: {exc}") from exc
    return WittVec(ring, tuple(coords))


def witt_inverse(a: WittVec) -> WittVec:
    """Multiplicative inverse via ghost components (char-0 rings only)."""
    ring = a.ring
    if ring.char_p:
        raise DomainError("witt inversion implemented for characteristic-0 rings")
    if isinstance(ring, CycRing):
        prec = min(c.prec for c in a.coords)
        work = _cyc_work_ring(ring, prec)
        au = WittVec(work, tuple(R.cyc_lift_prec(c, work.prec) for c in a.coords))
        inv_ghost = GhostVec(work, tuple(R.cyc_inverse(w) for w in ghost(au).comps))
        res = ghost_inverse(inv_ghost)
        return WittVec(ring, tuple(R.cyc_reduce_prec(c, prec) for c in res.coords))
    if isinstance(ring, RationalRing):
        inv_ghost = GhostVec(ring, tuple(Fraction(1) / w for w in ghost(a).comps))
        return ghost_inverse(inv_ghost)
    raise DomainError(f"witt inversion unsupported over {ring.name}")


def effective_prec(a: WittVec):
    """Minimum carried p-adic digits across coordinates (cyc rings)."""
    if isinstance(a.ring, CycRing):
        return min(c.prec for c in a.coords)
    return None
