"""The theta maps from Witt vectors of the tilt to cyclotomic rings."""

import random
from fractions import Fraction

import pytest
from wittlab import rings as R, theta as TH, tilt as T, witt as W
from wittlab.context import PrecisionCtx

CTX = PrecisionCtx(3, N=4, D=5, L=4)
RING = T.TiltRing(3, 4)


def _teich(x, n, ring=None):
    ring = ring or T.TiltRing(3, len(x.coords))
    return W.teichmuller(ring, x, n)


class TestConventions:
    def test_theta_kills_shifted_epsilons(self):
        # [eps_k] for k <= 0 maps to 1: those epsilons are p-power roots
        # already absorbed by the Frobenius twist
        one = W.int_witt(W.CycRing(3, 1, 2, guard=4), 1, 2)
        for k in (0, -1):
            res = TH.theta_n(_teich(T.make_epsilon(CTX, k), 2), 2, CTX)
            got = res.value
            assert W.witt_eq(W.restrict(got), W.restrict(one)) or W.witt_eq(got, one)

    def test_theta_teichmuller_oracle(self):
        rnd = random.Random(0)
        xs = [T.make_epsilon(CTX, 1), T.make_epsilon(CTX, 2)]
        for n in (1, 2):
            for x in xs:
                res = TH.theta_n(_teich(x, n), n, CTX)
                oracle = TH.theta_teichmuller(x, n, CTX, precision=res.effective_precision)
                assert W.witt_eq(res.value, oracle)

    def test_result_reports_precision(self):
        res = TH.theta_n(_teich(T.make_epsilon(CTX, 1), 2), 2, CTX)
        assert res.effective_precision >= 1
        assert res.consumed_window >= 1


class TestHomomorphism:
    def test_additive_multiplicative(self):
        rnd = random.Random(1)
        from wittlab.selftest import _rand_tilt_witt

        for n in (1, 2):
            for _ in range(10):
                a = _rand_tilt_witt(rnd, CTX, RING, 4)
                b = _rand_tilt_witt(rnd, CTX, RING, 4)
                ta, tb = TH.theta_n(a, n, CTX), TH.theta_n(b, n, CTX)
                ts = TH.theta_n(W.witt_add(a, b), n, CTX)
                tm = TH.theta_n(W.witt_mul(a, b), n, CTX)
                assert W.witt_eq(ts.value, W.witt_add(ta.value, tb.value))
                assert W.witt_eq(tm.value, W.witt_mul(ta.value, tb.value))


class TestKernel:
    def test_bound_formula(self):
        assert TH.kernel_valuation_bound(3, 1) == Fraction(2, 3) / Fraction(2)
        assert TH.kernel_valuation_bound(3, 2) == (1 - Fraction(1, 9)) / 2

    def test_xi_defining_relation(self):
        for n in (1, 2, 3):
            m = 3
            window = min(CTX.L, CTX.D - n + 1)
            wring = T.TiltRing(3, window)
            xi = TH.xi_generator(n, m, CTX)
            one = W.int_witt(wring, 1, m)
            den = W.witt_sub(_teich(T.make_epsilon(CTX, n, window), m, wring), one)
            num = W.witt_sub(_teich(T.make_epsilon(CTX, 0, window), m, wring), one)
            assert W.witt_eq(W.witt_mul(xi, den), num)

    def test_xi_first_coordinate_closed_form(self):
        for n in (1, 2, 3):
            xi = TH.xi_generator(n, 1, CTX)
            closed = TH.xi_first_closed_form(n, CTX)
            assert T.tilt_eq(xi.coords[0], closed)

    def test_theta_annihilates_xi(self):
        for n in (1, 2, 3):
            xi = TH.xi_generator(n, 3, CTX)
            assert W.witt_is_zero(TH.theta_n(xi, n, CTX).value)

    def test_xi_first_coordinate_valuation(self):
        for n in (1, 2, 3):
            xi = TH.xi_generator(n, 1, CTX)
            want = (1 - Fraction(1, 3**n)) / (1 - Fraction(1, 3))
            assert T.tilt_valuation(xi.coords[0]) == want


class TestThetaPrime:
    def test_is_pth_power_of_teichmuller(self):
        x = R.cyc_zeta(3, 2, 4)
        got = TH.theta_prime(x, 2, CTX)
        ring = W.CycRing(3, 2, 1, guard=4)
        want = W.witt_pow(W.teichmuller(ring, R.cyc_reduce_prec(x, 1), 2), 3)
        assert W.witt_eq(got, want)
        assert all(c.prec == 1 for c in got.coords)

    def test_teichmuller_sum_identity_mod_p(self):
        rnd = random.Random(2)
        for _ in range(5):
            n = rnd.randrange(2, 4)
            x = R.CycElt(3, 1, n + 1, tuple(rnd.randrange(3 ** (n + 1)) for _ in range(2)))
            y = R.CycElt(3, 1, n + 1, tuple(rnd.randrange(3 ** (n + 1)) for _ in range(2)))
            tx = TH.theta_prime_lifted(x, n, CTX, prec=n + 1)
            ty = TH.theta_prime_lifted(y, n, CTX, prec=n + 1)
            ts = TH.theta_prime_lifted(x + y, n, CTX, prec=n + 1)
            d = W.witt_sub(W.witt_add(tx, ty), ts)
            assert TH.witt_multiple_of_p(d)

    def test_multiple_of_p_is_not_coordinatewise(self):
        # V(1) - [-p] lies in p W_n even though its coordinates are units
        zr = W.IntegerRing(3)
        d = W.witt_sub(W.verschiebung(W.int_witt(zr, 1, 2)), W.teichmuller(zr, -3, 3))
        assert TH.witt_multiple_of_p(d)
        assert any(c % 3 != 0 for c in d.coords)


class TestClassification:
    def test_accepts_all_teichmuller_roots(self):
        for m in (1, 2):
            ring = W.CycRing(3, m, 4, guard=4)
            for j in range(3**m):
                zeta = R.cyc_zeta(3, m, 4) ** j
                got = TH.classify_root_of_unity(W.teichmuller(ring, zeta, 2), m, CTX)
                assert (got - zeta).is_zero()

    def test_rejects_non_root_first_coordinate(self):
        ring = W.CycRing(3, 1, 4, guard=4)
        bad = R.cyc_zeta(3, 1, 4) + R.cyc_pi(3, 1, 4) ** 3
        with pytest.raises(TH.NotRootOfUnityError) as exc:
            TH.classify_root_of_unity(W.teichmuller(ring, bad, 2), 1, CTX)
        assert exc.value.coordinate == 0
        assert exc.value.code == "not_root_of_unity"

    def test_rejects_non_teichmuller_tail(self):
        ring = W.CycRing(3, 1, 4, guard=4)
        a = W.teichmuller(ring, R.cyc_zeta(3, 1, 4), 3)
        coords = list(a.coords)
        coords[1] = R.cyc_one(3, 1, 4)
        with pytest.raises((TH.NotRootOfUnityError, TH.NoTeichmullerFormError)) as exc:
            TH.classify_root_of_unity(W.WittVec(ring, tuple(coords)), 1, CTX)
        # the nonzero tail entry is blamed either way
        assert exc.value.coordinate == 1

    def test_error_codes_are_distinct(self):
        assert TH.NotRootOfUnityError.code == "not_root_of_unity"
        assert TH.NoTeichmullerFormError.code == "no_teichmuller_form"
