"""The finite-depth tilt: compatible residue towers under p-th power maps."""

import random
from fractions import Fraction

import pytest
from wittlab import rings as R, tilt as T
from wittlab.context import PrecisionCtx
from wittlab.rings import ValAtLeast

CTX = PrecisionCtx(3, N=4, D=5, L=4)


def _rand_tilt(rnd, ctx, m):
    depth = m + rnd.randrange(0, ctx.D - m + 1)
    e = ctx.e(depth)
    deep = R.ResidueElt(ctx.p, depth, tuple(rnd.randrange(ctx.p) for _ in range(e)))
    coords = [deep]
    for _ in range(m - 1):
        coords.append(coords[-1] ** ctx.p)
    coords.reverse()
    return T.TiltElt(ctx.p, tuple(coords), (Fraction(1),) * m)


class TestStructure:
    def test_epsilon_compatible_and_nontrivial(self):
        eps = T.make_epsilon(CTX, 0)
        assert T.check_compatibility(eps)
        assert not T.tilt_eq(eps, T.tilt_one(3, len(eps.coords)))

    def test_epsilon_shifts(self):
        # eps_{k+1}^p = eps_k as tilt elements of the same window length
        m = 3
        e1 = T.make_epsilon(CTX, 1, m)
        e2 = T.make_epsilon(CTX, 2, m)
        assert T.tilt_eq(e2**3, e1)

    def test_operations_preserve_compatibility(self):
        rnd = random.Random(0)
        for _ in range(25):
            a, b = _rand_tilt(rnd, CTX, 3), _rand_tilt(rnd, CTX, 3)
            for c in (a + b, a - b, a * b, a**3):
                assert T.check_compatibility(c)


class TestFrobenius:
    def test_pth_root_inverts_frobenius(self):
        rnd = random.Random(1)
        for _ in range(10):
            a = _rand_tilt(rnd, CTX, 3)
            assert T.tilt_eq(T.tilt_pth_root(T.tilt_frobenius(a), CTX), a)

    def test_frobenius_multiplies_valuation_by_p(self):
        rnd = random.Random(2)
        for _ in range(10):
            a = _rand_tilt(rnd, CTX, 3)
            v = T.tilt_valuation(a)
            if isinstance(v, ValAtLeast):
                continue
            assert T.tilt_valuation(T.tilt_frobenius(a)) == 3 * v


class TestValuation:
    def test_epsilon_minus_one(self):
        one = T.tilt_one(3, 4)
        assert T.tilt_valuation(T.make_epsilon(CTX, 0) - one) == Fraction(3, 2)
        for n in (1, 2, 3):
            en = T.make_epsilon(CTX, n)
            onen = T.tilt_one(3, len(en.coords))
            assert T.tilt_valuation(en - onen) == Fraction(1, 3 ** (n - 1) * 2)

    def test_zero_gives_lower_bound(self):
        z = T.tilt_zero(3, 4)
        assert isinstance(T.tilt_valuation(z), ValAtLeast)


class TestSharp:
    def test_lift_independent(self):
        rnd = random.Random(3)
        for _ in range(10):
            a = _rand_tilt(rnd, CTX, 4)
            s1 = T.sharp(a, 1, 4, CTX, rng=random.Random(1))
            s2 = T.sharp(a, 1, 4, CTX, rng=random.Random(999))
            assert (s1 - s2).is_zero()

    def test_multiplicative(self):
        rnd = random.Random(4)
        for _ in range(5):
            a, b = _rand_tilt(rnd, CTX, 4), _rand_tilt(rnd, CTX, 4)
            lhs = T.sharp(a * b, 1, 3, CTX)
            rhs = T.sharp(a, 1, 3, CTX) * T.sharp(b, 1, 3, CTX)
            assert (R.cyc_reduce_prec(lhs, 3) - R.cyc_reduce_prec(rhs, 3)).is_zero()

    def test_valuation_agrees(self):
        rnd = random.Random(5)
        for _ in range(10):
            a = _rand_tilt(rnd, CTX, 4)
            v = T.tilt_valuation(a)
            if isinstance(v, ValAtLeast) or v >= 3:
                continue
            assert R.cyc_valuation(T.sharp(a, 1, 3, CTX)) == v


class TestDivision:
    def test_exact_division(self):
        rnd = random.Random(6)
        for _ in range(10):
            a, b = _rand_tilt(rnd, CTX, 3), _rand_tilt(rnd, CTX, 3)
            v = T.tilt_valuation(b)
            if isinstance(v, ValAtLeast):
                continue
            q = T.tilt_divide_exact(a * b, b)
            # compare where the quotient retains full knowledge
            assert T.check_compatibility(q)
            diff = q - a
            for lvl, vp in zip(diff.coords, diff.vprec):
                rv = R.residue_valuation(lvl)
                assert rv == float("inf") or rv >= vp
