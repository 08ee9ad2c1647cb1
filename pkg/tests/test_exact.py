from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from orbitdist.exact import (EchelonBasis, LaurentPoly, MultiPoly, NonRationalLiteral, QMatrix, VariableMismatch,
                             format_rational, laurent_mul_truncated, monomials_of_degree, monomials_up_to, nullspace,
                             poly_mul, rank, rref_vectors, solve, to_rational)

VARS = ("x", "y", "z")

small = st.integers(-5, 5)
rationals = st.builds(Fraction, st.integers(-6, 6), st.integers(1, 4))
exponents = st.tuples(st.integers(0, 3), st.integers(0, 3), st.integers(0, 3))
polys = st.dictionaries(exponents, rationals, max_size=5).map(lambda d: MultiPoly(VARS, d))


def matrices(max_rows=5, max_cols=5):
    return st.integers(1, max_rows).flatmap(
        lambda r: st.integers(1, max_cols).flatmap(
            lambda c: st.lists(st.lists(small, min_size=c, max_size=c), min_size=r, max_size=r)))


# -- rationals -----------------------------------------------------------------------


def test_to_rational_accepts_exact_literals():
    assert to_rational("3/6") == Fraction(1, 2)
    assert to_rational(" -7 ") == -7
    assert to_rational(Fraction(2, 3)) == Fraction(2, 3)


@pytest.mark.parametrize("bad", [0.5, "0.5", "1e3", "x", True, None, "1/0"])
def test_to_rational_rejects(bad):
    with pytest.raises(NonRationalLiteral):
        to_rational(bad)


@given(rationals)
def test_format_round_trip(q):
    assert to_rational(format_rational(q)) == q


# -- polynomials --------------------------------------------------------------------


def test_monomials_grlex():
    assert monomials_of_degree(2, 2) == [(0, 2), (1, 1), (2, 0)]
    assert len(monomials_up_to(4, 3)) == 35


@given(polys, polys, polys)
@settings(max_examples=60)
def test_ring_axioms(p, q, r):
    assert p + q == q + p
    assert p * q == q * p
    assert (p * q) * r == p * (q * r)
    assert p * (q + r) == p * q + p * r
    assert p - p == MultiPoly.zero(VARS)


@given(polys, polys)
@settings(max_examples=60)
def test_leibniz(p, q):
    for v in VARS:
        assert (p * q).diff(v) == p.diff(v) * q + p * q.diff(v)


@given(polys, polys, st.tuples(rationals, rationals, rationals))
@settings(max_examples=60)
def test_evaluation_is_a_homomorphism(p, q, pt):
    assert (p * q).evaluate(pt) == p.evaluate(pt) * q.evaluate(pt)
    assert (p + q).evaluate(pt) == p.evaluate(pt) + q.evaluate(pt)


@given(polys)
@settings(max_examples=40)
def test_compose_with_identity(p):
    ident = [MultiPoly.var(VARS, v) for v in VARS]
    assert p.compose(ident) == p


def test_mixed_variables_rejected():
    with pytest.raises(VariableMismatch):
        poly_mul(MultiPoly.var(("x",), "x"), MultiPoly.var(("y",), "y"))


def test_zero_coefficients_dropped():
    p = MultiPoly(VARS, {(1, 0, 0): 1, (0, 1, 0): 0})
    assert list(p.terms) == [(1, 0, 0)]
    assert MultiPoly.zero(VARS).degree == 0


# -- linear algebra -------------------------------------------------------------------


def test_nullspace_small():
    m = QMatrix.from_dense([[1, 2, 3], [2, 4, 6]])
    assert rank(m) == 1
    basis = nullspace(m)
    assert len(basis) == 2
    for vec in basis:
        assert m.apply(vec) == [0, 0]
    assert nullspace(QMatrix.identity(3)) == []
    assert len(nullspace(QMatrix(2, 3))) == 3


@given(matrices())
@settings(max_examples=80)
def test_rank_nullity_against_sympy(rows):
    m = QMatrix.from_dense(rows)
    expected = sympy.Matrix(rows).rank()
    assert rank(m) == expected
    basis = nullspace(m)
    assert len(basis) + expected == m.cols
    for vec in basis:
        assert all(x == 0 for x in m.apply(vec))
        # integer primitive representative
        assert all(Fraction(x).denominator == 1 for x in vec)


@given(matrices(), st.lists(small, min_size=5, max_size=5))
@settings(max_examples=80)
def test_solve(rows, coeffs):
    m = QMatrix.from_dense(rows)
    x0 = coeffs[: m.cols]
    rhs = m.apply(x0)
    sol = solve(m, rhs)
    assert sol is not None and m.apply(sol) == rhs


def test_solve_inconsistent():
    assert solve(QMatrix.from_dense([[1, 1], [1, 1]]), [1, 2]) is None


@given(matrices())
@settings(max_examples=60)
def test_echelon_counts_rank(rows):
    e = EchelonBasis()
    added = sum(e.add({j: v for j, v in enumerate(r) if v}) for r in rows)
    assert added == sympy.Matrix(rows).rank()


@given(matrices(4, 4), st.lists(st.lists(small, min_size=4, max_size=4), min_size=4, max_size=4))
@settings(max_examples=60)
def test_rref_is_canonical(rows, mix):
    """Any generating set of the same span gives the same reduced rows."""
    cols = len(rows[0])
    order = list(range(cols))
    vecs = [{j: v for j, v in enumerate(r) if v} for r in rows]
    combos = []
    for coeffs in mix:
        combo = {}
        for c, r in zip(coeffs, rows):
            for j, v in enumerate(r):
                combo[j] = combo.get(j, 0) + c * v
        combos.append(combo)
    a = rref_vectors(vecs, order)
    b = rref_vectors(vecs + combos, order)
    assert a == b


def test_matmul_and_transpose():
    a = QMatrix.from_dense([[1, 2], [3, 4]])
    assert (a @ QMatrix.identity(2)) == a
    assert a.transpose().dense() == [[1, 3], [2, 4]]


# -- Laurent -----------------------------------------------------------------------------

laurents = st.dictionaries(st.tuples(st.integers(-2, 2), st.integers(-2, 2)), st.integers(-3, 3), max_size=6).map(
    lambda d: LaurentPoly(("s", "t"), d))


@given(laurents, laurents, st.tuples(st.integers(-3, 0), st.integers(0, 3)))
@settings(max_examples=80)
def test_truncated_product_is_restriction(p, q, window):
    box = [window, window]
    full = p * q
    cut = laurent_mul_truncated(p, q, box)
    expected = {e: c for e, c in full.terms.items() if all(window[0] <= x <= window[1] for x in e)}
    assert cut.terms == expected


def test_laurent_constant_term():
    s = LaurentPoly(("s",), {(1,): 1, (-1,): 1})
    assert (s * s).constant_term() == 2
