"""The maps theta'_n and theta_n, the kernel generator xi_n, and the
roots-of-unity classification.

theta_n is realized two independent ways and cross-checked in tests:

* the limit algorithm: coordinatewise inverse-tilt-Frobenius absorbed
  into a level shift, coordinatewise multiplicative lift at the deepest
  usable level, then k iterated Witt-Frobenius steps in characteristic
  zero (one ghost round trip); precision k+1 p-adic digits;
* the multiplicative formula on Teichmueller representatives,
  theta_n([x]) = [x-sharp at level 1].

The projection-level convention is isolated in `projection_level` below.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from . import rings as R, tilt as T, witt as W
from .errors import DomainError, PrecisionError
from .tilt import TiltElt
from .witt import CycRing, GhostVec, WittVec


def projection_level(n: int) -> int:
    """Which level of a Frobenius-compatible system the length-n
    projection reads.

    Convention fixed by the requirement that the projection sends the
    Teichmueller lift of the compatible root-of-unity system eps_k to 1
    exactly when k <= -(n-1): the level-n entry of eps_k is a primitive
    root of order p^(k+n-1), trivial precisely in that range.  Hence the
    projection at length n evaluates at level n, and theta_n on
    Teichmuellers reduces to the level-1 multiplicative lift.
    """
    return n


@dataclass(frozen=True)
class ThetaResult:
    value: WittVec  # length n, over CycRing
    effective_precision: int  # p-adic digits
    consumed_window: int  # tilt levels read

    def __post_init__(self):
        if self.effective_precision < 1:
            raise PrecisionError("theta result carries no digits")


def theta_prime(x: R.CycElt, n: int, ctx) -> WittVec:
    """theta'_n(x) = [x]_n^p, a mod-p multiplicative-to-additive section.

    Output coordinates carry one p-adic digit.  Surjective ring
    homomorphism from the mod-p ring; its kernel is the ideal of
    elements of valuation >= (1 - p^-n)/(p - 1).
    """
    ring = CycRing(ctx.p, x.depth, 1, guard=max(4, n - 1))
    x1 = R.cyc_reduce_prec(x, 1)
    return W.witt_pow(W.teichmuller(ring, x1, n), ctx.p)


def theta_prime_lifted(x: R.CycElt, n: int, ctx, prec: int = 2) -> WittVec:
    """[x]_n^p carried to `prec` digits, for membership tests modulo
    p * W_n (which is coarser than coordinatewise divisibility)."""
    prec = min(prec, x.prec)
    ring = CycRing(ctx.p, x.depth, prec, guard=max(4, n - 1))
    return W.witt_pow(W.teichmuller(ring, R.cyc_reduce_prec(x, prec), n), ctx.p)


def witt_multiple_of_p(a: WittVec) -> bool:
    """Membership in p * W_n, certified by exact Witt division."""
    from .errors import NotDivisibleError

    try:
        W.witt_divide_exact(a, W.int_witt(a.ring, a.ring.p, len(a)))
    except NotDivisibleError:
        return False
    return True


def frobenius_mod_p_section(x: R.CycElt, n: int, ctx) -> WittVec:
    """A section of Witt-Frobenius mod p: F(theta'_n(x)) = theta'_{n-1}(x^p),
    exhibiting surjectivity of F on length-n Witt vectors mod p."""
    return theta_prime(x, n, ctx)


def _usable_levels(a: WittVec) -> int:
    """Deepest tilt level with full precision across all coordinates."""
    best = None
    for c in a.coords:
        good = 0
        for pr in c.vprec:
            if pr >= 1:
                good += 1
            else:
                break
        best = good if best is None else min(best, good)
    return best or 0


def theta_n(a: WittVec, n: int, ctx, precision=None) -> ThetaResult:
    """theta_n on a Witt vector over the tilt, to `precision` digits.

    Inverse-Frobenius powers are absorbed as a level shift (the tilt is
    perfect), so coordinate i contributes the multiplicative lift of its
    level-(k+1) entry, and one ghost round trip performs the k remaining
    Witt-Frobenius steps; the result is independent of the lifts modulo
    p^(k+1).  Needs Witt length >= n + k and window depth >= k + 1.
    """
    if n < 1:
        raise DomainError("theta_n needs n >= 1")
    m = len(a)
    if m < n:
        raise PrecisionError(f"witt length {m} < n = {n}")
    target = ctx.N if precision is None else precision
    if target < 1:
        raise DomainError("requested precision must be >= 1")
    k = min(target - 1, m - n, _usable_levels(a) - 1)
    if k < 0:
        raise PrecisionError("tilt window carries no trusted levels")
    p = ctx.p
    work_prec = n + k
    lifts = [
        R.cyc_from_residue(a.coords[i].level(k + 1), work_prec)
        for i in range(n + k)
    ]
    depth = max(c.depth for c in lifts)
    work = CycRing(p, depth, work_prec)
    g = W.ghost(WittVec(work, tuple(lifts)))
    res = W.ghost_inverse(GhostVec(work, g.comps[k:]))
    n_eff = k + 1
    out_ring = CycRing(p, depth, n_eff)
    value = WittVec(out_ring, tuple(R.cyc_reduce_prec(c, n_eff) for c in res.coords))
    return ThetaResult(value, n_eff, k + 1)


def theta_teichmuller(x: TiltElt, n: int, ctx, precision=None, rng=None) -> WittVec:
    """Independent oracle for theta_n on Teichmuellers:
    theta_n([x]) = [sharp of x at level 1]_n."""
    target = ctx.N if precision is None else precision
    prec = min(target, len(x.coords))
    s = T.sharp(x, 1, prec, ctx, rng=rng)
    return W.teichmuller(CycRing(ctx.p, s.depth, prec), s, n)


def kernel_valuation_bound(p: int, n: int) -> Fraction:
    """Valuation cutoff for the kernel of the mod-p map theta'_n."""
    return (1 - Fraction(1, p**n)) / (p - 1)


def xi_generator(n: int, m: int, ctx) -> WittVec:
    """The kernel generator xi_n = ([eps] - 1)/([eps_n] - 1) at Witt
    length m, computed by exact Witt division over the tilt.

    Each coordinate beyond the first divides by ([eps_n] - 1)_0^(p^i),
    costing t-adic precision; small m keeps the loss tracked and
    harmless (the defining product is re-checked by callers).
    """
    window = min(ctx.L, ctx.D - n + 1)
    if window < 1:
        raise PrecisionError(f"tower depth {ctx.D} cannot hold eps_{n}")
    ring = T.TiltRing(ctx.p, window)
    one = W.int_witt(ring, 1, m)
    d = W.witt_sub(W.teichmuller(ring, T.make_epsilon(ctx, 0, window), m), one)
    b = W.witt_sub(W.teichmuller(ring, T.make_epsilon(ctx, n, window), m), one)
    return W.witt_divide_exact(d, b)


def xi_first_closed_form(n: int, ctx, window=None) -> TiltElt:
    """Closed form for the first coordinate of xi_n: the geometric sum
    sum_{j < p^n} eps_n^j, levelwise (eps = eps_n^(p^n) exactly)."""
    if window is None:
        window = min(ctx.L, ctx.D - n + 1)
    eps_n = T.make_epsilon(ctx, n, window)
    acc = T.tilt_zero(ctx.p, len(eps_n.coords))
    one = T.tilt_one(ctx.p, len(eps_n.coords))
    for _ in range(ctx.p**n):
        acc = acc * eps_n + one
    return acc


class NotRootOfUnityError(DomainError):
    code = "not_root_of_unity"

    def __init__(self, msg, coordinate=None):
        super().__init__(msg)
        self.coordinate = coordinate


class NoTeichmullerFormError(DomainError):
    code = "no_teichmuller_form"

    def __init__(self, msg, coordinate):
        super().__init__(msg)
        self.coordinate = coordinate


def _first_bad_coordinate(a: WittVec, m: int, ctx):
    """First coordinate contradicting Teichmueller form, or None."""
    ring = a.ring
    if not ring.is_zero(ring.sub(ring.pow(a.coords[0], ctx.p**m), ring.one())):
        return 0
    for i in range(1, len(a)):
        if not ring.is_zero(a.coords[i]):
            return i
    return None


def classify_root_of_unity(a: WittVec, m: int, ctx) -> R.CycElt:
    """Certifies that a p^m-th root of unity in W_n is a Teichmueller
    lift [zeta]_n and returns zeta (odd p only; fails for p = 2).

    Follows the inductive argument: the leading coordinate must itself
    be a p^m-th root of unity, and every higher coordinate must vanish
    (a nonzero entry would have valuation at most 1/(p-1) against a
    lower bound growing with the index).  The first coordinate
    contradicting this form is reported on the raised error.
    """
    ring = a.ring
    n = len(a)
    power = W.witt_pow(a, ctx.p**m)
    if not W.witt_eq(power, W.int_witt(ring, 1, n)):
        raise NotRootOfUnityError(
            f"not a root of unity: a^(p^{m}) != 1",
            coordinate=_first_bad_coordinate(a, m, ctx),
        )
    bad = _first_bad_coordinate(a, m, ctx)
    if bad == 0:
        raise NoTeichmullerFormError(
            "no Teichmuller form: leading coordinate is not a root of unity", 0
        )
    if bad is not None:
        raise NoTeichmullerFormError(
            f"no Teichmuller form: coordinate {bad} does not vanish", bad
        )
    return a.coords[0]
