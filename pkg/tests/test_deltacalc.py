from fractions import Fraction
from math import comb

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles
from orbitdist.deltacalc import (DeltaDistribution, annihilates, apply_derivative, apply_field, apply_monomial,
                                 kernel_basis, kernel_dimensions, kernel_dimensions_by_nullspace)
from orbitdist.exact import MultiPoly
from orbitdist.fields import PolyVectorField
from subregular import EXPECTED_DIMS, FIELDS

VARS = ("x", "y")
coef = st.builds(Fraction, st.integers(-4, 4), st.integers(1, 3))
exps = st.tuples(st.integers(0, 3), st.integers(0, 3))
poly_st = st.dictionaries(exps, coef, max_size=3).map(lambda d: MultiPoly(VARS, d))
field_st = st.lists(poly_st, min_size=2, max_size=2).map(lambda cs: PolyVectorField(VARS, cs))
dist_st = st.dictionaries(exps, coef, max_size=4).map(lambda d: DeltaDistribution(2, d))


def test_basic_rules():
    d = DeltaDistribution.delta(2)
    assert apply_derivative(d, 0) == DeltaDistribution.delta(2, (1, 0))
    # x * d_x delta = -delta
    assert apply_monomial(DeltaDistribution.delta(2, (1, 0)), (1, 0)) == DeltaDistribution.delta(2, c=-1)
    # x^2 * d_x^2 delta = 2 delta
    assert apply_monomial(DeltaDistribution.delta(2, (2, 0)), (2, 0)) == DeltaDistribution.delta(2, c=2)
    assert apply_monomial(DeltaDistribution.delta(2, (1, 0)), (0, 1)).is_zero()
    assert DeltaDistribution(2).order == float("-inf")
    assert DeltaDistribution.delta(2, (2, 1)).order == 3


def test_errors():
    with pytest.raises(IndexError):
        apply_derivative(DeltaDistribution.delta(2), 2)
    with pytest.raises(ValueError):
        DeltaDistribution(2, {(1,): 1})
    with pytest.raises(ValueError):
        kernel_dimensions([], 3)


@given(field_st, dist_st, poly_st)
@settings(max_examples=100)
def test_duality_with_pairing(v, xi, f):
    """<v.xi, f> = -sum_j <xi, d_j(p_j f)>: the field acts as the transpose of a differential operator."""
    lhs = oracles.pair(apply_field(v, xi).coeffs, f.terms)
    rhs = -sum(oracles.pair(xi.coeffs, (p * f).diff(j).terms) for j, p in enumerate(v.components))
    assert lhs == rhs


@given(field_st, dist_st, dist_st, coef)
@settings(max_examples=60)
def test_apply_field_is_linear(v, a, b, c):
    assert apply_field(v, a + b.scale(c)) == apply_field(v, a) + apply_field(v, b).scale(c)


@given(st.lists(field_st, max_size=3), field_st)
@settings(max_examples=40, deadline=None)
def test_kernel_series_properties(fields, extra):
    dims = kernel_dimensions(fields, 4, 2)
    assert all(a <= b for a, b in zip(dims, dims[1:]))
    assert all(d <= comb(n + 2, 2) for n, d in enumerate(dims))
    more = kernel_dimensions(fields + [extra], 4, 2)
    assert all(m <= d for m, d in zip(more, dims))
    assert dims == kernel_dimensions_by_nullspace(fields, 4, 2)


def test_empty_field_set_counts_everything():
    assert kernel_dimensions([], 5, num_vars=3) == [comb(n + 3, 3) for n in range(6)]


def test_constant_field_has_trivial_kernel():
    dx = PolyVectorField(VARS, [MultiPoly.one(VARS), MultiPoly.zero(VARS)])
    # d/dx applied to d^b delta gives d^(b+e_x) delta, never zero
    assert kernel_dimensions([dx], 4, 2) == [0] * 5


def test_euler_field():
    # x d/dx + y d/dy acts on d^b delta by -(|b| + 2); kernel is empty
    e = PolyVectorField(VARS, [MultiPoly.var(VARS, "x"), MultiPoly.var(VARS, "y")])
    assert kernel_dimensions([e], 3, 2) == [0] * 4


def test_subregular_matches_recurrence_oracle():
    assert kernel_dimensions(FIELDS, 8) == oracles.recurrence_dims(8) == EXPECTED_DIMS[:9]


def test_subregular_nullspace_route_and_basis():
    assert kernel_dimensions_by_nullspace(FIELDS, 4) == EXPECTED_DIMS[:5]
    for xi in kernel_basis(FIELDS, 4):
        assert annihilates(FIELDS, xi)
        # v1 forces equal c- and d-derivative counts
        assert all(b[2] == b[3] for b in xi.coeffs)
