import itertools
from math import comb

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles
from orbitdist.exact import LaurentPoly
from orbitdist.molien import (NonIntegerResult, ReductiveSpec, WeightCharacter, block_adjoint, gl, invariant_dims,
                              preset, realified_invariant_dims, sym_character_series)
from orbitdist.series import RationalGF, reconstruct_gf


def test_sym_characters():
    chars = sym_character_series(WeightCharacter(((1,),)), 3)
    assert chars[3] == LaurentPoly(("x1",), {(3,): 1})
    chars = sym_character_series(WeightCharacter(((1,), (-1,))), 2)
    assert chars[2] == LaurentPoly(("x1",), {(2,): 1, (0,): 1, (-2,): 1})
    chars = sym_character_series(WeightCharacter(()), 2, rank=1)
    assert chars[0] == LaurentPoly.one(("x1",)) and chars[1].is_zero() and chars[2].is_zero()


def test_trivial_group():
    assert invariant_dims(ReductiveSpec(0), WeightCharacter(((),) * 3), 5) == [comb(i + 2, i) for i in range(6)]
    assert realified_invariant_dims(ReductiveSpec(0), WeightCharacter(((),)), 5) == [1, 2, 3, 4, 5, 6]


@pytest.mark.parametrize("sizes", [[2], [3], [1, 2], [1, 1, 1]])
def test_against_brute_force(sizes):
    g, w = block_adjoint(sizes)
    assert invariant_dims(g, w, 7) == oracles.molien_brute_force(g.torus_rank, g.weyl_group_order, g.roots,
                                                                 w.weights, 7)


def test_partition_counts():
    assert invariant_dims(*preset("gl2"), 10) == [oracles.partitions_into((1, 2), i) for i in range(11)]
    assert invariant_dims(*preset("gl3"), 10) == [oracles.partitions_into((1, 2, 3), i) for i in range(11)]


def test_realified_rows():
    assert reconstruct_gf(realified_invariant_dims(*preset("gl3"), 24)) == RationalGF.make([1], [(1, 2), (2, 2), (3, 2)])
    assert reconstruct_gf(realified_invariant_dims(*preset("gl1xgl2"), 16)) == RationalGF.make([1], [(1, 4), (2, 2)])


def test_inconsistent_spec():
    _, w = preset("gl2")
    with pytest.raises(NonIntegerResult):
        invariant_dims(ReductiveSpec(2, 3, ((1, -1), (-1, 1))), w, 3)
    with pytest.raises(ValueError):
        ReductiveSpec(2, 2, ((1, -1),))  # not closed under negation
    with pytest.raises(ValueError):
        ReductiveSpec(2, 0)
    with pytest.raises(KeyError):
        preset("e8")


weights_st = st.lists(st.tuples(st.integers(-2, 2), st.integers(-2, 2)), min_size=1, max_size=4)


@given(weights_st)
@settings(max_examples=30, deadline=None)
def test_torus_counts_zero_weight_monomials(weights):
    dims = invariant_dims(ReductiveSpec(2), WeightCharacter(tuple(weights)), 5)
    for i, d in enumerate(dims):
        count = sum(1 for combo in itertools.combinations_with_replacement(weights, i)
                    if all(sum(c[t] for c in combo) == 0 for t in range(2)))
        assert d == count
        assert d <= comb(i + len(weights) - 1, i)


def test_gl_roots():
    g = gl(3)
    assert len(g.roots) == 6 and g.weyl_group_order == 6
