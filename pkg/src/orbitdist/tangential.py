"""Strongly tangential vector fields on a slice, truncated by degree.

A field on the slice comes from a polynomial map phi(u) = sum c_{a,beta} u^beta X_a
into the Lie algebra whenever the ambient field w_phi(s(u)) is tangent to
the slice, i.e. Q . w_phi(s(u)) vanishes identically. Tangency is linear in
the c's, so the admissible phi's are a nullspace.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .action import AffineSlice, LieAction
from .exact.linalg import QMatrix, nullspace, rref_vectors, solve
from .exact.poly import MultiPoly, VariableMismatch, monomials_up_to
from .fields import PolyVectorField, field_key_order


@dataclass(frozen=True)
class TangentialSolution:
    phi: dict[tuple[int, tuple[int, ...]], Fraction]  # (generator, exponent) -> coefficient
    ambient: list[MultiPoly]  # w_phi(s(u)), n components in slice variables
    field: PolyVectorField  # L . ambient


def _generator_along_slice(action: LieAction, slc: AffineSlice) -> list[list[MultiPoly]]:
    s = slc.parametrization()
    return [[p.compose(s) for p in g.components] for g in action.generators]


def _apply_rows(m: QMatrix, vec: Sequence[MultiPoly], variables) -> list[MultiPoly]:
    out = [MultiPoly.zero(variables) for _ in range(m.rows)]
    for (i, j), v in m.entries.items():
        out[i] = out[i] + vec[j].scale(v)
    return out


def tangential_solutions(action: LieAction, slc: AffineSlice, degree_bound: int) -> list[TangentialSolution]:
    """Nullspace basis of the tangency system, with the resulting fields."""
    vs = slc.variables
    along = _generator_along_slice(action, slc)
    monos = monomials_up_to(len(vs), degree_bound)
    unknowns = [(a, beta) for a in range(len(along)) for beta in monos]
    # Q . (u^beta g_a(s(u))) for each unknown
    row_keys: dict[tuple[int, tuple[int, ...]], int] = {}
    entries = {}
    base_q = [_apply_rows(slc.complement, along[a], vs) for a in range(len(along))]
    for col, (a, beta) in enumerate(unknowns):
        mono = MultiPoly.monomial(vs, beta)
        for r, poly in enumerate(base_q[a]):
            for e, c in (poly * mono).terms.items():
                key = (r, e)
                if key not in row_keys:
                    row_keys[key] = len(row_keys)
                entries[(row_keys[key], col)] = c
    m = QMatrix(len(row_keys), len(unknowns), entries)
    sols = []
    for vec in nullspace(m):
        phi = {unknowns[i]: c for i, c in enumerate(vec) if c}
        amb = [MultiPoly.zero(vs) for _ in range(slc.ambient_dim)]
        for (a, beta), c in phi.items():
            mono = MultiPoly.monomial(vs, beta, c)
            for i, p in enumerate(along[a]):
                if not p.is_zero():
                    amb[i] = amb[i] + p * mono
        field = PolyVectorField(vs, _apply_rows(slc.left_inverse, amb, vs))
        sols.append(TangentialSolution(phi, amb, field))
    return sols


def canonical_basis(fields: Sequence[PolyVectorField], variables: Sequence[str]) -> list[PolyVectorField]:
    """Reduced row echelon basis of the Q-span of ``fields`` (zero fields dropped)."""
    variables = tuple(variables)
    vecs = [f.coefficient_vector() for f in fields if not f.is_zero()]
    if not vecs:
        return []
    max_deg = max(f.degree for f in fields)
    order = field_key_order(variables, max_deg)
    return [PolyVectorField.from_coefficient_vector(variables, row) for row in rref_vectors(vecs, order)]


def tangential_generators(action: LieAction, slc: AffineSlice, degree_bound: int) -> list[PolyVectorField]:
    """Rational basis (canonical RREF) of the strongly tangential fields with phi of degree <= d."""
    if not action.generators:
        return []
    sols = tangential_solutions(action, slc, degree_bound)
    return canonical_basis([s.field for s in sols], slc.variables)


def is_tangent(slc: AffineSlice, ambient: Sequence[MultiPoly]) -> bool:
    return all(p.is_zero() for p in _apply_rows(slc.complement, ambient, slc.variables))


def module_contains(generators: Sequence[PolyVectorField], candidate: PolyVectorField, degree_bound: int) -> bool:
    """Is candidate = sum q_i g_i with polynomial q_i of degree <= degree_bound?"""
    vs = candidate.variables
    for g in generators:
        if g.variables != vs:
            raise VariableMismatch(f"generator over {g.variables}, candidate over {vs}")
    if candidate.is_zero():
        return True
    monos = monomials_up_to(len(vs), degree_bound)
    row_keys: dict[tuple[int, tuple[int, ...]], int] = {}
    entries = {}
    col = 0
    for g in generators:
        for beta in monos:
            mono = MultiPoly.monomial(vs, beta)
            for key, c in g.times(mono).coefficient_vector().items():
                if key not in row_keys:
                    row_keys[key] = len(row_keys)
                entries[(row_keys[key], col)] = c
            col += 1
    target = candidate.coefficient_vector()
    if any(key not in row_keys for key in target):
        # a monomial no multiple of any generator reaches
        return False
    rhs = [Fraction(0)] * len(row_keys)
    for key, c in target.items():
        rhs[row_keys[key]] = c
    return solve(QMatrix(len(row_keys), col, entries), rhs) is not None
