"""Truncated Witt vector arithmetic over Z, Q, and cyclotomic rings."""

import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from wittlab import rings as R, witt as W
from wittlab.errors import NotDivisibleError, PrecisionError
from wittlab.witt import CycRing, GhostVec, IntegerRing, RationalRing, WittVec


def _wv(ring, coords):
    return WittVec(ring, tuple(ring.from_int(c) for c in coords))


def _ghost_oracle(p, coords):
    # textbook formula, independent of the library's ghost implementation
    return [
        sum(p**j * coords[j] ** (p ** (i - j)) for j in range(i + 1))
        for i in range(len(coords))
    ]


def _unghost_oracle(p, comps):
    coords = []
    for i, wi in enumerate(comps):
        s = Fraction(wi) - sum(
            p**j * Fraction(coords[j]) ** (p ** (i - j)) for j in range(i)
        )
        coords.append(s / p**i)
    return coords


Z3 = IntegerRing(3)
Z5 = IntegerRing(5)

# frozen values computed from the textbook ghost formulas above
FROZEN = [
    (Z3, (1, 2, 3), (4, 5, 6), (5, -13, -187101), (4, 163, 44379)),
    (Z3, (2, 0, 1), (1, 1, 1), (3, -5, -2086), (2, 8, 525)),
    (Z3, (-1, 2), (3, -4), (2, 4), (-3, 34)),
    (Z5, (1, 2, 3), (2, 1, 4), (3, -39, -33872157347), (2, 75, -159196723)),
]


class TestGhost:
    @given(st.lists(st.integers(-9, 9), min_size=1, max_size=4))
    @settings(max_examples=50, deadline=None)
    def test_matches_textbook_formula(self, coords):
        for ring in (Z3, Z5):
            a = _wv(ring, coords)
            assert list(W.ghost(a).comps) == _ghost_oracle(ring.p, coords)
            assert W.witt_eq(W.ghost_inverse(W.ghost(a)), a)

    def test_inverse_matches_textbook_recursion(self):
        qring = RationalRing(3)
        comps = [Fraction(7), Fraction(-2), Fraction(81)]
        got = W.ghost_inverse(GhostVec(qring, tuple(comps)))
        assert list(got.coords) == _unghost_oracle(3, comps)

    def test_dwork_congruences(self):
        assert W.is_ghost_image(3, _ghost_oracle(3, [2, -5, 7]))
        assert not W.is_ghost_image(3, [1, 2, 3])

    def test_non_integral_target_rejected(self):
        with pytest.raises((NotDivisibleError, PrecisionError)):
            W.ghost_inverse(GhostVec(Z3, (1, 2)))


class TestArithmetic:
    @pytest.mark.parametrize("ring,a,b,s,m", FROZEN)
    def test_frozen_sums_products(self, ring, a, b, s, m):
        av, bv = _wv(ring, a), _wv(ring, b)
        for backend in ("A", "B"):
            assert W.witt_add(av, bv, backend).coords == s
            assert W.witt_mul(av, bv, backend).coords == m

    def test_teichmuller_ghost_is_geometric(self):
        t = W.teichmuller(Z3, 2, 4)
        assert list(W.ghost(t).comps) == [2 ** (3**i) for i in range(4)]
        assert t.coords == (2, 0, 0, 0)

    @given(
        st.lists(st.integers(-6, 6), min_size=2, max_size=4),
        st.lists(st.integers(-6, 6), min_size=2, max_size=4),
        st.lists(st.integers(-6, 6), min_size=2, max_size=4),
    )
    @settings(max_examples=25, deadline=None)
    def test_ring_axioms(self, xs, ys, zs):
        n = min(len(xs), len(ys), len(zs))
        a, b, c = (_wv(Z3, v[:n]) for v in (xs, ys, zs))
        assert W.witt_eq(W.witt_add(a, b), W.witt_add(b, a))
        assert W.witt_eq(W.witt_mul(a, b), W.witt_mul(b, a))
        assert W.witt_eq(
            W.witt_mul(a, W.witt_add(b, c)),
            W.witt_add(W.witt_mul(a, b), W.witt_mul(a, c)),
        )
        assert W.witt_is_zero(W.witt_sub(a, a))

    def test_int_witt_is_additive_teichmuller_sum(self):
        for k in (-3, 0, 1, 7):
            assert list(W.ghost(W.int_witt(Z3, k, 3)).comps) == [k, k, k]


class TestOperators:
    def test_fv_is_multiplication_by_p(self):
        rnd = random.Random(0)
        for _ in range(10):
            a = _wv(Z3, [rnd.randrange(-9, 9) for _ in range(3)])
            fv = W.frobenius(W.verschiebung(a, max_len=4))
            assert W.witt_eq(fv, W.witt_mul(a, W.int_witt(Z3, 3, 3)))

    def test_projection_formula(self):
        # V(x) * y = V(x * F(y))
        rnd = random.Random(1)
        for _ in range(10):
            x = _wv(Z3, [rnd.randrange(-5, 5) for _ in range(2)])
            y = _wv(Z3, [rnd.randrange(-5, 5) for _ in range(3)])
            lhs = W.witt_mul(W.verschiebung(x), y)
            rhs = W.verschiebung(W.witt_mul(x, W.frobenius(y)))
            assert W.witt_eq(lhs, rhs)

    def test_ghost_of_operators(self):
        a = _wv(Z3, (2, 1, 4))
        ga = W.ghost(a).comps
        assert list(W.ghost(W.verschiebung(a)).comps) == [0] + [3 * g for g in ga]
        assert list(W.ghost(W.frobenius(a)).comps) == list(ga[1:])
        assert list(W.ghost(W.restrict(a)).comps) == list(ga[:2])

    def test_frobenius_char_p_is_coordinatewise(self):
        ring = W.ResidueRing(3, 2)
        rnd = random.Random(2)
        coords = tuple(
            R.ResidueElt(3, 2, tuple(rnd.randrange(3) for _ in range(6)))
            for _ in range(3)
        )
        a = WittVec(ring, coords)
        got = W.frobenius(a)
        assert got.coords == tuple(c**3 for c in coords[:2])


class TestDivision:
    def test_exact_division_over_z(self):
        a, b = _wv(Z3, (2, 5, 1)), _wv(Z3, (1, -2, 3))
        prod = W.witt_mul(a, b)
        assert W.witt_eq(W.witt_divide_exact(prod, b), a)

    def test_divide_by_p(self):
        p3 = W.int_witt(Z3, 3, 3)
        a = _wv(Z3, (4, -1, 2))
        assert W.witt_eq(W.witt_divide_exact(W.witt_mul(a, p3), p3), a)

    def test_not_divisible_raises(self):
        with pytest.raises(NotDivisibleError):
            W.witt_divide_exact(_wv(Z3, (1, 0)), W.int_witt(Z3, 3, 2))

    def test_inverse_of_unit(self):
        qring = RationalRing(3)
        a = _wv(qring, (1, 7, -2))
        inv = W.witt_inverse(a)
        assert W.witt_eq(W.witt_mul(a, inv), W.int_witt(qring, 1, 3))


class TestBackends:
    def test_universal_polys_cap(self):
        with pytest.raises((PrecisionError, W.DomainError)):
            W.witt_universal_polys(7, 4, "sum")

    def test_cyc_backends_agree(self):
        rnd = random.Random(3)
        ring = CycRing(3, 2, 4, guard=4)
        mk = lambda: WittVec(
            ring,
            tuple(
                R.CycElt(3, 2, 4, tuple(rnd.randrange(81) for _ in range(6)))
                for _ in range(3)
            ),
        )
        for _ in range(5):
            a, b = mk(), mk()
            assert W.witt_eq(W.witt_mul(a, b, "A"), W.witt_mul(a, b, "B"))

    def test_rational_ring_allows_denominators(self):
        qring = RationalRing(3)
        a = WittVec(qring, (Fraction(1, 3), Fraction(2)))
        assert W.witt_eq(W.ghost_inverse(W.ghost(a)), a)
