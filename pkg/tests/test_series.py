from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from orbitdist.series import (DominanceViolated, NoRecurrence, NonCyclotomicDenominator, RationalGF, WindowMismatch,
                              cauchy_product, ddeg, ddim, increments, pole_order_at_one, prefix_sums, product_gf,
                              reconstruct_gf)

# denominators prod (1 - t^k)^m with small k, m
dens = st.lists(st.tuples(st.integers(1, 3), st.integers(1, 2)), min_size=1, max_size=3)
nums = st.lists(st.integers(0, 3), min_size=1, max_size=3).filter(lambda n: n[0] > 0)


def _sympy_coeffs(num, den, n):
    t = sympy.Symbol("t")
    expr = sum(c * t ** i for i, c in enumerate(num))
    for k, m in den:
        expr = expr / (1 - t ** k) ** m
    s = sympy.series(expr, t, 0, n).removeO()
    return [Fraction(int(s.coeff(t, i))) for i in range(n)]


@given(nums, dens)
@settings(max_examples=25, deadline=None)
def test_expand_matches_sympy(num, den):
    assert RationalGF.make(num, den).expand(10) == _sympy_coeffs(num, den, 10)


@given(nums, dens)
@settings(max_examples=40, deadline=None)
def test_reconstruct_round_trip(num, den):
    gf = RationalGF.make(num, den)
    degree = sum(k * m for k, m in den)
    # enough terms for the minimal recurrence to be pinned down
    n = 2 * (degree + len(num)) + 4 + 2
    assert reconstruct_gf([int(x) for x in gf.expand(n)], max_den_degree=max(degree, 1), window=4) == gf


def test_canonical_form_cancels_and_regroups():
    # (1 + t) / (1 - t^2) = 1 / (1 - t)
    assert RationalGF.make([1, 1], [(2, 1)]) == RationalGF.make([1], [(1, 1)])
    # 1/((1-t)^2 (1+t)) is grouped as (1-t)(1-t^2)
    gf = RationalGF.make([1], [(1, 1), (2, 1)])
    assert gf.denominator == ((1, 1), (2, 1))


def test_simple_reconstructions():
    assert reconstruct_gf([1] * 10) == RationalGF.make([1], [(1, 1)])
    assert reconstruct_gf([n // 2 + 1 for n in range(11)]) == RationalGF.make([1], [(1, 1), (2, 1)])


def test_short_data_uses_structured_search():
    from math import comb
    for y in range(1, 7):
        gf = reconstruct_gf([comb(n + y - 1, y - 1) for n in range(9)])
        assert gf == RationalGF.make([1], [(1, y)])


def test_reconstruction_errors():
    fib = [1, 1]
    while len(fib) < 14:
        fib.append(fib[-1] + fib[-2])
    with pytest.raises(NonCyclotomicDenominator):
        reconstruct_gf(fib)
    with pytest.raises(WindowMismatch):
        reconstruct_gf([1] * 10 + [2, 1])
    with pytest.raises(NoRecurrence):
        reconstruct_gf([1, 2, 3])
    with pytest.raises(NoRecurrence):
        reconstruct_gf([1, 5, 2, 7, 3, 11], window=2, max_den_degree=1)


def test_ddim_ddeg_values():
    assert ddim(RationalGF.make([1], [(1, 6)])) == 6
    assert ddeg(RationalGF.make([1], [(1, 6)])) == 1
    gf = RationalGF.make([1], [(1, 1), (2, 1), (3, 1)])
    assert (ddim(gf), ddeg(gf)) == (3, Fraction(1, 6))
    assert ddeg(RationalGF.make([1], [(1, 4), (2, 2)])) == Fraction(1, 4)
    assert ddeg(RationalGF.make([1], [(1, 2), (2, 2), (3, 2)])) == Fraction(1, 36)
    # polynomial gf: no pole, numerator value at 1
    assert ddim(RationalGF.make([2, 1])) == 0
    assert ddeg(RationalGF.make([2, 1])) == 3


def test_numerator_zero_at_one():
    gf = RationalGF.make([1, -1], [(2, 1)])  # (1-t)/(1-t^2) = 1/(1+t)
    assert pole_order_at_one(gf) == 0


def test_dominance_violation():
    # 1/(1-t^2)^2 has poles of order 2 at both t = 1 and t = -1
    with pytest.raises(DominanceViolated):
        ddeg(RationalGF.make([1], [(2, 2)]))


@given(nums, dens, nums, dens)
@settings(max_examples=25, deadline=None)
def test_product_is_multiplicative(n1, d1, n2, d2):
    a, b = RationalGF.make(n1, d1), RationalGF.make(n2, d2)
    p = product_gf(a, b)
    ia = [int(x) for x in a.expand(12)]
    ib = [int(x) for x in b.expand(12)]
    assert [int(x) for x in p.expand(12)] == cauchy_product(ia, ib) == product_gf(ia, ib)
    assert ddim(p) == ddim(a) + ddim(b)


def test_product_type_mismatch():
    with pytest.raises(TypeError):
        product_gf(RationalGF.make([1], [(1, 1)]), [1, 1])


@given(st.lists(st.integers(0, 20), max_size=10))
def test_increments_inverts_prefix_sums(xs):
    assert increments(prefix_sums(xs)) == xs
