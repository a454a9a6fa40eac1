"""The acceptance suite: named algebraic identities checked at the
working truncation.  Shared between the CLI `selftest` subcommand and
the test suite; each entry returns pass/fail plus a short detail line.

Profiles: "small" (p=3, N=4, D=5) for quick runs, "full" (p in {3,5},
N=6, D=6) for the complete suite.
"""

from __future__ import annotations

import math
import random
import time
from fractions import Fraction

from . import rings as R, theta as TH, tilt as T, trmodel as TR, witt as W
from .context import FULL_PROFILE, SMALL_PROFILE, PrecisionCtx
from .errors import NotDivisibleError
from .rings import ValAtLeast
from .witt import CycRing, IntegerRing, PolyRing, RationalRing, WittVec

CHECKS = []


def _check(name):
    def deco(fn):
        CHECKS.append((name, fn))
        return fn

    return deco


def _profile(name):
    if name == "small":
        return {"primes": [3], "params": SMALL_PROFILE, "scale": 0.34}
    if name == "full":
        return {"primes": [3, 5], "params": dict(FULL_PROFILE, p=3), "scale": 1.0}
    raise ValueError(f"unknown profile {name!r}")


def _ctx(prof, p):
    params = {k: v for k, v in prof["params"].items() if k != "p"}
    return PrecisionCtx(p=p, **params)


def _count(prof, full):
    return max(3, math.ceil(full * prof["scale"]))


def _rand_witt_z(rnd, ring, n):
    return WittVec(ring, tuple(rnd.randrange(-99, 100) for _ in range(n)))


def _rand_tilt(rnd, ctx, m):
    """Random Frobenius-compatible window, built down from a random
    deepest coordinate."""
    e = ctx.e(m)
    top = R.ResidueElt(ctx.p, m, tuple(rnd.randrange(ctx.p) for _ in range(e)))
    coords = [top]
    for _ in range(m - 1):
        coords.append(coords[-1] ** ctx.p)
    coords.reverse()
    return T.TiltElt(ctx.p, tuple(coords), (Fraction(1),) * m)


def _rand_tilt_witt(rnd, ctx, ring, n):
    return WittVec(ring, tuple(_rand_tilt(rnd, ctx, ring.m) for _ in range(n)))


# ---------------------------------------------------------------------------


@_check("backend-equivalence")
def check_backends(prof):
    """Ghost-lift and universal-polynomial arithmetic agree in W_n(Z)."""
    rnd = random.Random(101)
    per_cell = _count(prof, 15)
    total = 0
    for p in prof["primes"]:
        ring = IntegerRing(p)
        for n in range(1, 5):
            for _ in range(per_cell):
                a, b = _rand_witt_z(rnd, ring, n), _rand_witt_z(rnd, ring, n)
                if not W.witt_eq(W.witt_add(a, b, "A"), W.witt_add(a, b, "B")):
                    return False, f"add mismatch p={p} n={n}"
                if not W.witt_eq(W.witt_mul(a, b, "A"), W.witt_mul(a, b, "B")):
                    return False, f"mul mismatch p={p} n={n}"
                total += 1
    return True, f"{total} random pairs, n <= 4, p in {prof['primes']}"


@_check("ghost-homomorphism-roundtrip")
def check_ghost(prof):
    rnd = random.Random(102)
    samples = _count(prof, 200)
    done = 0
    for p in prof["primes"]:
        ring = IntegerRing(p)
        for _ in range(samples // len(prof["primes"])):
            n = rnd.randrange(1, 5)
            a, b = _rand_witt_z(rnd, ring, n), _rand_witt_z(rnd, ring, n)
            ga, gb = W.ghost(a), W.ghost(b)
            if W.ghost(W.witt_add(a, b)).comps != tuple(
                x + y for x, y in zip(ga.comps, gb.comps)
            ):
                return False, f"ghost not additive p={p}"
            if W.ghost(W.witt_mul(a, b)).comps != tuple(
                x * y for x, y in zip(ga.comps, gb.comps)
            ):
                return False, f"ghost not multiplicative p={p}"
            if not W.witt_eq(W.ghost_inverse(ga), a):
                return False, f"roundtrip failed p={p}"
            if not W.is_ghost_image(p, ga.comps):
                return False, f"image congruences failed p={p}"
            done += 1
    return True, f"{done} samples: hom for +,*, inverse roundtrip, congruences"


def _rand_cyc(rnd, ctx, depth, prec):
    length = R._phi_len(ctx.p, depth)
    mod = ctx.p**prec
    return R.CycElt(
        ctx.p, depth, prec, tuple(rnd.randrange(mod) for _ in range(length))
    )


@_check("teichmuller-power-identities-mod-p")
def check_theta_prime(prof):
    """The mod-p section identities, with p*W_n membership certified by
    exact Witt division rather than coordinatewise divisibility."""
    rnd = random.Random(103)
    samples = _count(prof, 30)
    for p in prof["primes"]:
        ctx = _ctx(prof, p)
        for n in range(2, 5):
            # universal certificate over Z[x,y]: [x]^p + [y]^p - [x+y]^p
            ring = PolyRing(p, 2)
            x, y = ring.var(0), ring.var(1)
            tx = W.teichmuller(ring, ring.pow(x, p), n)
            ty = W.teichmuller(ring, ring.pow(y, p), n)
            s = W.witt_pow(
                W.witt_add(W.teichmuller(ring, x, n), W.teichmuller(ring, y, n)), p
            )
            d = W.witt_sub(W.witt_add(tx, ty), s)
            if not TH.witt_multiple_of_p(d):
                return False, f"[x]^p+[y]^p-[x+y]^p not in pW_{n} (p={p})"
            # V(1) = [-p] mod p W_n, over Z
            zr = IntegerRing(p)
            dv = W.witt_sub(
                W.verschiebung(W.int_witt(zr, 1, n - 1)),
                W.teichmuller(zr, -p, n),
            )
            if not TH.witt_multiple_of_p(dv):
                return False, f"V(1)-[-p] not in pW_{n} (p={p})"
        # F / R compatibility on random elements.  prec n+1: the exact
        # Witt division by p spends one digit per coordinate.
        for _ in range(samples):
            n = rnd.randrange(2, 5)
            depth = rnd.randrange(1, 3)
            x = _rand_cyc(rnd, ctx, depth, 6)
            tp = TH.theta_prime_lifted(x, n, ctx, prec=n + 1)
            d = W.witt_sub(
                W.frobenius(tp), TH.theta_prime_lifted(x**p, n - 1, ctx, prec=n + 1)
            )
            if not TH.witt_multiple_of_p(d):
                return False, f"F compatibility failed p={p} n={n}"
            d = W.witt_sub(
                W.restrict(tp), TH.theta_prime_lifted(x, n - 1, ctx, prec=n)
            )
            if not TH.witt_multiple_of_p(d):
                return False, f"R compatibility failed p={p} n={n}"
        # V compatibility on elements with constructible p-th roots
        for _ in range(max(3, samples // 3)):
            n = rnd.randrange(2, 5)
            d0 = rnd.randrange(2, 4)
            w = R.cyc_zeta(p, d0, 7) ** rnd.randrange(1, p**d0) * R.cyc_pi(
                p, d0, 7
            ) ** ctx.e(d0 - 1)
            x = -R.cyc_divide_by_p(w**p)
            dd = W.witt_sub(
                W.verschiebung(TH.theta_prime_lifted(x, n - 1, ctx, prec=n + 1)),
                TH.theta_prime_lifted(w, n, ctx, prec=n + 1),
            )
            if not TH.witt_multiple_of_p(dd):
                return False, f"V compatibility failed p={p} n={n}"
        # kernel valuation ladder: zero iff v >= (1 - p^-n)/(p - 1)
        # any tower depth straddles the bound (ceil puts the cut on the
        # grid), so pick the deepest tower with ramification e <= 40;
        # deeper ones only refine the grid, at e ~ p^D cost
        dmax = max(d for d in (1, 2, 3) if ctx.e(d) <= 40)
        for n in range(1, 5):
            bound = TH.kernel_valuation_bound(p, n)
            for depth in sorted({min(n, dmax), min(n + 1, dmax)}):
                if depth > ctx.D:
                    continue
                e = ctx.e(depth)
                cut = math.ceil(bound * e)
                probes = {0, max(0, cut - 2), cut - 1, cut, cut + 1, e}
                for j in sorted(probes):
                    if j > e:
                        continue
                    x = R.cyc_pi(p, depth, n + 1) ** j
                    is_zero = TH.witt_multiple_of_p(
                        TH.theta_prime_lifted(x, n, ctx, prec=n + 1)
                    )
                    if is_zero != (Fraction(j, e) >= bound):
                        return False, (
                            f"kernel misclassified p={p} n={n} v={Fraction(j, e)}"
                        )
    return True, "certified via exact Witt division by p; ladder clean"


@_check("valuation-table")
def check_valuations(prof):
    for p in prof["primes"][:1]:
        ctx = _ctx(prof, p)
        one = T.tilt_one(p, ctx.L)
        v = T.tilt_valuation(T.make_epsilon(ctx, 0) - one)
        if v != Fraction(p, p - 1):
            return False, f"v(eps-1) = {v} != p/(p-1) (p={p})"
        for n in range(1, 5):
            en = T.make_epsilon(ctx, n)
            v = T.tilt_valuation(en - T.tilt_one(p, len(en.coords)))
            if v != Fraction(1, p ** (n - 1) * (p - 1)):
                return False, f"v(eps_{n}-1) wrong (p={p}): {v}"
        for n in range(1, 4):
            xi = TH.xi_generator(n, 1, ctx)
            v = T.tilt_valuation(xi.coords[0])
            want = (1 - Fraction(1, p**n)) / (1 - Fraction(1, p))
            if v != want:
                return False, f"v(xi_{n},1) = {v} != {want} (p={p})"
    return True, "v(eps-1), v(eps_n-1) n<=4, v(xi_n,1) n<=3: exact match"


@_check("theta-map-correctness")
def check_theta(prof):
    rnd = random.Random(105)
    pairs = _count(prof, 100)
    for p in prof["primes"][:1]:
        ctx = _ctx(prof, p)
        ring = T.TiltRing(p, ctx.L)
        # ring homomorphism at >= 3 digits
        for i in range(pairs):
            n = 1 + i % 2
            a = _rand_tilt_witt(rnd, ctx, ring, ctx.L)
            b = _rand_tilt_witt(rnd, ctx, ring, ctx.L)
            ta, tb = TH.theta_n(a, n, ctx), TH.theta_n(b, n, ctx)
            if min(ta.effective_precision, tb.effective_precision) < 3:
                return False, f"effective precision below 3 digits (n={n})"
            ts = TH.theta_n(W.witt_add(a, b), n, ctx)
            if not W.witt_eq(ts.value, W.witt_add(ta.value, tb.value)):
                return False, f"theta_{n} not additive (p={p})"
            tm = TH.theta_n(W.witt_mul(a, b), n, ctx)
            if not W.witt_eq(tm.value, W.witt_mul(ta.value, tb.value)):
                return False, f"theta_{n} not multiplicative (p={p})"
        # Teichmuller oracle (two independent code paths)
        teichs = [T.make_epsilon(ctx, k) for k in (0, 1, 2)]
        teichs += [_rand_tilt(rnd, ctx, ctx.L) for _ in range(5)]
        for n in (1, 2):
            for x in teichs:
                res = TH.theta_n(W.teichmuller(ring, x, ctx.L), n, ctx)
                oracle = TH.theta_teichmuller(
                    x, n, ctx, precision=res.effective_precision
                )
                if not W.witt_eq(res.value, oracle):
                    return False, f"oracle disagreement at n={n} (p={p})"
        # R . theta_n = theta_{n-1};  F . theta_n = theta_{n-1} . F
        for n in (2, 3):
            for _ in range(5):
                a = _rand_tilt_witt(rnd, ctx, ring, ctx.L)
                tn = TH.theta_n(a, n, ctx)
                tn1 = TH.theta_n(a, n - 1, ctx, precision=tn.effective_precision)
                if not W.witt_eq(W.restrict(tn.value), tn1.value):
                    return False, f"R.theta_{n} != theta_{n-1} (p={p})"
                fa = W.frobenius(a)
                lhs = W.frobenius(tn.value)
                rhs = TH.theta_n(fa, n - 1, ctx, precision=tn.effective_precision)
                if not W.witt_eq(lhs, rhs.value):
                    return False, f"F.theta_{n} != theta_{n-1}.F (p={p})"
        # kernel generator, n <= 3, witt length <= 3
        for n in (1, 2, 3):
            m = 3
            xi = TH.xi_generator(n, m, ctx)
            window = min(ctx.L, ctx.D - n + 1)
            wring = T.TiltRing(p, window)
            one = W.int_witt(wring, 1, m)
            den = W.witt_sub(
                W.teichmuller(wring, T.make_epsilon(ctx, n, window), m), one
            )
            num = W.witt_sub(
                W.teichmuller(wring, T.make_epsilon(ctx, 0, window), m), one
            )
            if not W.witt_eq(W.witt_mul(xi, den), num):
                return False, f"xi_{n} defining product failed (p={p})"
            if not W.witt_is_zero(TH.theta_n(xi, n, ctx).value):
                return False, f"theta_{n}(xi_{n}) != 0 (p={p})"
    return True, "hom pairs at >= 3 digits; oracle, R/F transport, xi kernel"


@_check("roots-of-unity-classification")
def check_roots(prof):
    rnd = random.Random(106)
    p = 3
    ctx = _ctx(prof, p)
    perturbations = _count(prof, 50)
    for n in (1, 2, 3):
        for m in (1, 2):
            ring = CycRing(p, m, ctx.N)
            for j in range(p**m):
                zeta = R.cyc_zeta(p, m, ctx.N) ** j
                got = TH.classify_root_of_unity(
                    W.teichmuller(ring, zeta, n), m, ctx
                )
                if not (got - zeta).is_zero():
                    return False, f"[zeta^{j}]_{n} misclassified (m={m})"
    done = 0
    while done < perturbations:
        n = rnd.randrange(2, 4)
        m = rnd.randrange(1, 3)
        ring = CycRing(p, m, ctx.N)
        a = list(
            W.teichmuller(ring, R.cyc_zeta(p, m, ctx.N) ** rnd.randrange(p**m), n).coords
        )
        i = rnd.randrange(n)
        if i == 0:
            a[0] = a[0] + R.cyc_pi(p, m, ctx.N) ** rnd.randrange(1, 3)
            # the bump may land exactly on another root of unity
            # (e.g. 1 + pi = zeta); such a vector is genuinely classifiable
            zeta1 = R.cyc_zeta(p, m, ctx.N)
            if any((a[0] - zeta1**j).is_zero() for j in range(p**m)):
                continue
        else:
            a[i] = _rand_cyc(rnd, ctx, m, ctx.N)
            if a[i].is_zero():
                continue
        try:
            TH.classify_root_of_unity(WittVec(ring, tuple(a)), m, ctx)
            return False, f"perturbed coordinate {i} accepted"
        except (TH.NotRootOfUnityError, TH.NoTeichmullerFormError) as exc:
            if exc.coordinate != i:
                return False, f"blamed coordinate {exc.coordinate}, bumped {i}"
        done += 1
    return True, f"exhaustive Teichmuller roots pass; {done} perturbations blamed correctly"


@_check("tr-operator-consistency")
def check_tr(prof):
    rnd = random.Random(107)
    for p in prof["primes"][:1]:
        ctx = _ctx(prof, p)
        betas = {n: TR.tr_make_beta(n, ctx) for n in (1, 2, 3)}
        for n in (2, 3):
            if not TR.tr_eq(TR.tr_restriction(betas[n], ctx), betas[n - 1]):
                return False, f"R(beta_{n}) != beta_{n-1} (p={p})"
            if not TR.tr_eq(TR.tr_frobenius(betas[n], ctx), betas[n - 1]):
                return False, f"F(beta_{n}) != beta_{n-1} (p={p})"
        for u in (2, 1 + p, p - 1):
            for n in (1, 2):
                b = betas[n]
                got = TR.tr_galois(b, u, ctx)
                want = TR.TRClass(
                    n, 2, W.witt_mul(W.int_witt(b.coeff.ring, u, n), b.coeff)
                )
                if not TR.tr_eq(got, want):
                    return False, f"sigma_{u}(beta_{n}) != {u}*beta_{n} (p={p})"
        for _ in range(_count(prof, 20)):
            n = rnd.randrange(1, 3)
            ring = CycRing(p, 2, ctx.N)
            c = TR.TRClass(
                n,
                2 * rnd.randrange(3),
                WittVec(ring, tuple(_rand_cyc(rnd, ctx, 2, ctx.N) for _ in range(n))),
            )
            u1, u2 = rnd.randrange(1, 3 * p, 1), rnd.randrange(1, 3 * p)
            while u1 % p == 0:
                u1 += 1
            while u2 % p == 0:
                u2 += 1
            lhs = TR.tr_galois(TR.tr_galois(c, u1, ctx), u2, ctx)
            rhs = TR.tr_galois(c, u1 * u2, ctx)
            if not TR.tr_eq(lhs, rhs):
                return False, f"galois composition failed u={u1},{u2} (p={p})"
        for n in (2, 3):
            lam = TR._lambda_factor(n, ctx)
            lhs_r = TH.theta_n(TR._teich_minus_one(n, ctx, ctx.L), n - 1, ctx)
            rhs_r = TH.theta_n(TR._teich_minus_one(n - 1, ctx, ctx.L), n - 1, ctx)
            if not W.witt_eq(W.witt_mul(lhs_r.value, lam), rhs_r.value):
                return False, f"lambda consistency failed at n={n} (p={p})"
    return True, "R/F/Galois on beta, composition, lambda identity"


@_check("tc-kernel-exactness")
def check_tc(prof):
    p = 3
    ctx = _ctx(prof, p)
    for q in range(4):
        for m, basis in ((1, [(1,), (2,)]), (2, [(1, 0), (0, 1)])):
            for c in basis:
                if not TR.tc_kernel_check(q, c, m, ctx):
                    return False, f"kernel element rejected q={q} c={c} m={m}"
    # deliberate non-kernel inputs must come back false
    window = min(ctx.L, ctx.D - 1)
    ring = T.TiltRing(p, window)
    bad = 0
    for q in range(4):
        for m in (1, 2):
            one = W.int_witt(ring, 1, m)
            e1m1 = W.witt_sub(
                W.teichmuller(ring, T.make_epsilon(ctx, 1, window), m), one
            )
            x = W.witt_mul(
                W.int_witt(ring, 1, m), W.witt_pow(e1m1, q + 1)
            )  # wrong power of ([eps_1]-1) for this q
            if TR.tc_kernel_check(q, None, m, ctx, x=x):
                return False, f"non-kernel input accepted q={q} m={m}"
            bad += 1
        x2 = W.teichmuller(ring, T.make_epsilon(ctx, 1, window), 2)
        if TR.tc_kernel_check(q, None, 2, ctx, x=x2):
            return False, f"[eps_1] accepted at q={q}"
        bad += 1
    return True, f"kernel basis passes q<=3; {bad} non-kernel inputs rejected"


@_check("tilt-integrity")
def check_tilt(prof):
    rnd = random.Random(108)
    ops_total = _count(prof, 500)
    for p in prof["primes"][:1]:
        ctx = _ctx(prof, p)
        n_ops = ops_total
        for _ in range(n_ops):
            m = rnd.randrange(2, ctx.L + 1)
            a, b = _rand_tilt(rnd, ctx, m), _rand_tilt(rnd, ctx, m)
            op = rnd.choice(["add", "sub", "mul", "pow"])
            c = {
                "add": lambda: a + b,
                "sub": lambda: a - b,
                "mul": lambda: a * b,
                "pow": lambda: a ** rnd.randrange(2, 5),
            }[op]()
            if not T.check_compatibility(c):
                return False, f"compatibility broken by {op} (p={p})"
        for _ in range(_count(prof, 30)):
            a = _rand_tilt(rnd, ctx, ctx.L)
            rt = T.tilt_pth_root(T.tilt_frobenius(a), ctx)
            if not T.tilt_eq(rt, a):
                return False, f"pth_root(frobenius) != id (p={p})"
            prec = min(ctx.N, ctx.L)
            s1 = T.sharp(a, 1, prec, ctx)
            s2 = T.sharp(a, 1, prec, ctx, rng=random.Random(rnd.randrange(10**6)))
            if not (s1 - s2).is_zero():
                return False, f"sharp depends on the lift (p={p})"
            v = T.tilt_valuation(a)
            if not isinstance(v, ValAtLeast) and v < prec:
                vs = R.cyc_valuation(s1)
                if isinstance(vs, ValAtLeast) or vs != v:
                    return False, f"v_R {v} != sharp valuation {vs} (p={p})"
    return True, "compatibility closed under ops; root/frobenius; sharp checks"


@_check("ghost-rational-bijectivity")
def check_rational_ghost(prof):
    rnd = random.Random(109)
    for p in prof["primes"][:1]:
        ctx = _ctx(prof, p)
        qring = RationalRing(p)
        for _ in range(_count(prof, 50)):
            n = rnd.randrange(1, 5)
            # both directions of the bijection: vectors with denominators
            # dividing p^(n-1) round-trip through the ghost map, and
            # integer ghost targets invert inside the p-inverted ring
            a = WittVec(
                qring,
                tuple(
                    Fraction(rnd.randrange(-99, 100), p ** rnd.randrange(n))
                    for _ in range(n)
                ),
            )
            if not W.witt_eq(W.ghost_inverse(W.ghost(a)), a):
                return False, f"ghost roundtrip failed over Q (p={p})"
            if any(c.denominator > p ** (n - 1) for c in a.coords):
                return False, f"sample denominator exceeds p^{n-1} (p={p})"
            w = W.GhostVec(
                qring, tuple(Fraction(rnd.randrange(-99, 100)) for _ in range(n))
            )
            b = W.ghost_inverse(w)
            if W.ghost(b).comps != w.comps:
                return False, f"ghost not surjective over Q (p={p})"
            for c in b.coords:
                d = c.denominator
                while d % p == 0:
                    d //= p
                if d != 1:
                    return False, f"inverse left the p-inverted ring (p={p})"
        for n in (1, 2, 3):
            ring = CycRing(p, n, ctx.N)
            a = W.witt_sub(
                W.teichmuller(ring, R.cyc_zeta(p, n, ctx.N), n),
                W.int_witt(ring, 1, n),
            )
            comps = W.ghost(a).comps
            if any(c.is_zero() for c in comps):
                return False, f"zero ghost coordinate for [zeta]-1, n={n} (p={p})"
    return True, "inverse with bounded denominators; [zeta]-1 ghosts nonzero"


# ---------------------------------------------------------------------------


def run_profile(name):
    prof = _profile(name)
    results = []
    for check_name, fn in CHECKS:
        t0 = time.perf_counter()
        try:
            passed, detail = fn(prof)
        except Exception as exc:  # a crash is a failure, not an abort
            passed, detail = False, f"{type(exc).__name__}: {exc}"
        results.append(
            {
                "name": check_name,
                "passed": bool(passed),
                "detail": detail,
                "seconds": round(time.perf_counter() - t0, 3),
            }
        )
    return {
        "profile": name,
        "passed": all(r["passed"] for r in results),
        "checks": results,
    }
