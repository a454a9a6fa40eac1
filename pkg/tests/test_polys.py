"""Sparse polynomial arithmetic, cross-checked by evaluation at points."""

import pytest
from hypothesis import given, settings, strategies as st

from wittlab.errors import NotDivisibleError
from wittlab.polys import DictPoly


def _rand_poly(draw_terms):
    terms = {}
    for e1, e2, c in draw_terms:
        if c:
            terms[(e1, e2)] = terms.get((e1, e2), 0) + c
    return DictPoly(2, {e: c for e, c in terms.items() if c})


def _eval_int(f, x, y):
    return f.eval(
        [x, y], lambda a, b: a + b, lambda a, b: a * b, lambda c: c, 1
    )


term = st.tuples(st.integers(0, 4), st.integers(0, 4), st.integers(-9, 9))
poly = st.builds(_rand_poly, st.lists(term, max_size=6))
point = st.tuples(st.integers(-5, 5), st.integers(-5, 5))


@given(poly, poly, point)
@settings(max_examples=60, deadline=None)
def test_ops_agree_with_integer_evaluation(f, g, pt):
    x, y = pt
    assert _eval_int(f + g, x, y) == _eval_int(f, x, y) + _eval_int(g, x, y)
    assert _eval_int(f - g, x, y) == _eval_int(f, x, y) - _eval_int(g, x, y)
    assert _eval_int(f * g, x, y) == _eval_int(f, x, y) * _eval_int(g, x, y)
    assert _eval_int(f**3, x, y) == _eval_int(f, x, y) ** 3


@given(poly, point)
@settings(max_examples=30, deadline=None)
def test_scale_and_exact_div_roundtrip(f, pt):
    x, y = pt
    g = f.scale(6)
    assert _eval_int(g.exact_div(3), x, y) == 2 * _eval_int(f, x, y)


def test_exact_div_rejects_nondivisible():
    f = DictPoly(1, {(1,): 5})
    with pytest.raises(NotDivisibleError):
        f.exact_div(3)


def test_no_zero_terms_stored():
    x = DictPoly.var(1, 0)
    assert (x - x).is_zero()
    assert not (x * x).is_zero()
    assert DictPoly.const(1, 0).terms == {}
