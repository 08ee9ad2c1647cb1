from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from orbitdist.action import (AffineSlice, ComplexScenario, GaussPoly, adjoint_gl, adjoint_sl, realify,
                              realify_fields, slice_construct, slice_validate, slodowy_subregular_sl3)
from orbitdist.exact import MultiPoly, QMatrix

entries = st.lists(st.integers(-3, 3), min_size=9, max_size=9)


@given(entries, st.integers(0, 2), st.integers(0, 2))
@settings(max_examples=40)
def test_adjoint_fields_are_commutators(vals, a, b):
    action = adjoint_gl(3)
    A = sympy.Matrix(3, 3, vals)
    E = sympy.zeros(3, 3)
    E[a, b] = 1
    expected = E * A - A * E
    got = action.generators[3 * a + b].evaluate(vals)
    assert got == [expected[p, q] for p in range(3) for q in range(3)]


def test_sl_coordinates_drop_last_diagonal():
    action = adjoint_sl(3)
    assert action.ambient_dim == 8
    assert "A33" not in action.variables


def test_slodowy_slice_validates():
    action, slc = slodowy_subregular_sl3()
    report = slice_validate(action, slc, samples=[(1, 0, 0, 0), (0, 2, 1, -1)])
    assert report.ok, report.as_dict()
    assert slc.dim == 4 and slc.variables == ("a", "b", "c", "d")
    assert slc.point((1, 2, 3, 4))[action.variables.index("A12")] == 1


def test_bad_slice_detected():
    action = adjoint_gl(2)
    # at diag(1,-1), A12 is an orbit direction; a slice along A12 and A11 is not transverse
    base = [1, 0, 0, -1]
    slc = AffineSlice.from_basis(base, [[1, 0], [0, 1], [0, 0], [0, 0]])
    report = slice_validate(action, slc)
    assert not report.ok
    assert {c.name for c in report.failures()} >= {"submersion at base"}


def test_slice_construct_semisimple():
    action = adjoint_gl(2)
    slc = slice_construct(action, [1, 0, 0, -1])
    assert slc.dim == 2
    assert slc.variables == ("s_A11", "s_A22")
    assert slice_validate(action, slc).ok


def test_affine_slice_invariants():
    basis = QMatrix.from_dense([[1], [0]])
    with pytest.raises(ValueError):
        AffineSlice([0, 0], basis, QMatrix.from_dense([[2, 0]]), QMatrix.from_dense([[0, 1]]))
    with pytest.raises(ValueError):
        AffineSlice([0, 0], basis, QMatrix.from_dense([[1, 0]]), QMatrix.from_dense([[1, 1]]))
    with pytest.raises(ValueError):
        AffineSlice.from_basis([0, 0], [[0], [0]])


def test_gauss_realify():
    z = ("z",)
    p = GaussPoly(MultiPoly(z, {(2,): 1}))  # z^2
    rv = ("x", "y")
    re, im = p.realify(rv)
    assert re == MultiPoly(rv, {(2, 0): 1, (0, 2): -1})
    assert im == MultiPoly(rv, {(1, 1): 2})
    q = GaussPoly(MultiPoly(z, {(1,): 0}), MultiPoly(z, {(1,): 1}))  # i z
    re, im = q.realify(rv)
    assert re == MultiPoly(rv, {(0, 1): -1}) and im == MultiPoly(rv, {(1, 0): 1})


def test_realify_fields_doubles():
    z = ("z",)
    v = [[GaussPoly(MultiPoly(z, {(1,): 1}))]]  # z d/dz
    rv, fields = realify_fields(z, v)
    assert rv == ("z_re", "z_im")
    x, y = MultiPoly.var(rv, 0), MultiPoly.var(rv, 1)
    # z d/dz -> x d/dx + y d/dy ; i z d/dz -> -y d/dx + x d/dy
    assert list(fields[0].components) == [x, y]
    assert list(fields[1].components) == [-y, x]


def test_complex_slice_realification():
    action = adjoint_gl(2)
    gens = [[GaussPoly(p) for p in g.components] for g in action.generators]
    sc = ComplexScenario(action.variables, gens, base=[(1, 0), (0, 0), (0, 0), (-1, 0)],
                         basis=[[(1, 0), (0, 0)], [(0, 0), (0, 0)], [(0, 0), (0, 0)], [(0, 0), (1, 0)]])
    real_action, slc = realify(sc)
    assert real_action.ambient_dim == 8 and slc.dim == 4
    assert slice_validate(real_action, slc).ok
    assert slc.base[:4] == (1, 0, 0, -1) and all(x == 0 for x in slc.base[4:])


def test_tangent_vectors_rank_at_regular_point():
    action = adjoint_gl(2)
    tv = action.tangent_vectors([1, 0, 0, -1])
    assert sympy.Matrix(tv).rank() == 2
    assert action.tangent_vectors([Fraction(0)] * 4) == [[0] * 4] * 4
