"""Distributions supported at the slice base point.

An element is a finite sum ``sum_beta c_beta * d^beta delta`` over
multi-indices ``beta``. Vector fields act by differentiating first and
multiplying by the coefficient polynomial afterwards::

    v . xi = sum_j p_j * (d_j xi),      x_m * d^b delta = -b_m * d^(b - e_m) delta

Orders are counted from 0 (plain delta has order 0).
"""
from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .exact.linalg import EchelonBasis, QMatrix, nullspace
from .exact.poly import Exponent, grlex_key, monomials_of_degree, monomials_up_to
from .exact.rational import RationalLike, to_rational
from .fields import PolyVectorField


class DeltaDistribution:
    __slots__ = ("num_vars", "coeffs")

    def __init__(self, num_vars: int, coeffs: Mapping[Sequence[int], RationalLike] | None = None):
        self.num_vars = int(num_vars)
        clean: dict[Exponent, Fraction] = {}
        for b, c in (coeffs or {}).items():
            b = tuple(int(x) for x in b)
            if len(b) != self.num_vars:
                raise ValueError(f"multi-index {b} has wrong length (expected {self.num_vars})")
            if any(x < 0 for x in b):
                raise ValueError(f"negative multi-index {b}")
            c = to_rational(c)
            if c:
                s = clean.get(b, 0) + c
                if s:
                    clean[b] = s
                else:
                    clean.pop(b, None)
        self.coeffs = clean

    @classmethod
    def _raw(cls, k: int, coeffs: dict) -> "DeltaDistribution":
        d = cls.__new__(cls)
        d.num_vars = k
        d.coeffs = coeffs
        return d

    @classmethod
    def delta(cls, k: int, beta: Sequence[int] | None = None, c: RationalLike = 1) -> "DeltaDistribution":
        """``c * d^beta delta`` (plain delta when beta is omitted)."""
        beta = tuple(beta) if beta is not None else (0,) * k
        return cls(k, {beta: c})

    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def order(self) -> float:
        """Maximal |beta|; ``-inf`` for the zero distribution."""
        return max((sum(b) for b in self.coeffs), default=float("-inf"))

    def items(self):
        return sorted(self.coeffs.items(), key=lambda kv: grlex_key(kv[0]))

    def __add__(self, other: "DeltaDistribution") -> "DeltaDistribution":
        if self.num_vars != other.num_vars:
            raise ValueError("variable count mismatch")
        out = dict(self.coeffs)
        for b, c in other.coeffs.items():
            s = out.get(b, 0) + c
            if s:
                out[b] = s
            else:
                out.pop(b, None)
        return DeltaDistribution._raw(self.num_vars, out)

    def __sub__(self, other: "DeltaDistribution") -> "DeltaDistribution":
        return self + other.scale(-1)

    def scale(self, c: RationalLike) -> "DeltaDistribution":
        c = to_rational(c)
        if not c:
            return DeltaDistribution._raw(self.num_vars, {})
        return DeltaDistribution._raw(self.num_vars, {b: v * c for b, v in self.coeffs.items()})

    def __eq__(self, other) -> bool:
        if not isinstance(other, DeltaDistribution):
            return NotImplemented
        return self.num_vars == other.num_vars and self.coeffs == other.coeffs

    def __repr__(self) -> str:
        if not self.coeffs:
            return "DeltaDistribution(0)"
        body = " + ".join(f"{c}*d{list(b)}" for b, c in self.items())
        return f"DeltaDistribution({body})"


def apply_derivative(xi: DeltaDistribution, j: int) -> DeltaDistribution:
    if not 0 <= j < xi.num_vars:
        raise IndexError(f"variable index {j} out of range for {xi.num_vars} variables")
    out = {}
    for b, c in xi.coeffs.items():
        nb = list(b)
        nb[j] += 1
        out[tuple(nb)] = c
    return DeltaDistribution._raw(xi.num_vars, out)


def _monomial_factor(b: Sequence[int], a: Sequence[int]) -> int:
    """Scalar s with ``x^a d^b delta = s * d^(b-a) delta`` (0 on underflow)."""
    s = 1
    for bm, am in zip(b, a):
        if am > bm:
            return 0
        for t in range(am):
            s *= -(bm - t)
    return s


def apply_monomial(xi: DeltaDistribution, a: Sequence[int]) -> DeltaDistribution:
    a = tuple(a)
    if len(a) != xi.num_vars:
        raise ValueError(f"monomial exponent of length {len(a)} for {xi.num_vars} variables")
    out: dict[Exponent, Fraction] = {}
    for b, c in xi.coeffs.items():
        s = _monomial_factor(b, a)
        if s:
            nb = tuple(x - y for x, y in zip(b, a))
            v = out.get(nb, 0) + c * s
            if v:
                out[nb] = v
            else:
                out.pop(nb, None)
    return DeltaDistribution._raw(xi.num_vars, out)


def apply_field(v: PolyVectorField, xi: DeltaDistribution) -> DeltaDistribution:
    if v.nvars != xi.num_vars:
        raise ValueError(f"field in {v.nvars} variables applied to distribution in {xi.num_vars}")
    total = DeltaDistribution._raw(xi.num_vars, {})
    for j, p in enumerate(v.components):
        if p.is_zero():
            continue
        dxi = apply_derivative(xi, j)
        for a, c in p.terms.items():
            total = total + apply_monomial(dxi, a).scale(c)
    return total


# -- kernel computation -------------------------------------------------------


def _field_terms(fields: Sequence[PolyVectorField]) -> list[list[tuple[int, Exponent, Fraction]]]:
    return [[(j, a, c) for j, p in enumerate(v.components) for a, c in p.terms.items()] for v in fields]


def _image(beta: Exponent, terms: list[tuple[int, Exponent, Fraction]]) -> dict[Exponent, Fraction]:
    """Coefficients of ``v . d^beta delta`` (one field, pre-split into terms)."""
    out: dict[Exponent, Fraction] = {}
    for j, a, c in terms:
        b = list(beta)
        b[j] += 1
        s = _monomial_factor(b, a)
        if s:
            g = tuple(x - y for x, y in zip(b, a))
            val = out.get(g, 0) + c * s
            if val:
                out[g] = val
            else:
                out.pop(g, None)
    return out


def _num_vars(fields: Sequence[PolyVectorField], num_vars: int | None) -> int:
    if num_vars is None:
        if not fields:
            raise ValueError("num_vars is required when the field list is empty")
        num_vars = fields[0].nvars
    for v in fields:
        if v.nvars != num_vars:
            raise ValueError("all fields must share the variable count")
    return num_vars


def kernel_dimensions(fields: Sequence[PolyVectorField], max_order: int, num_vars: int | None = None) -> list[int]:
    """K(0..max_order): dimension of the joint kernel among distributions of order <= n.

    Basis elements ``d^beta delta`` are fed in grlex order into one
    incremental echelon basis of their stacked images; a basis element whose
    image is dependent on the earlier ones adds one kernel dimension. Since
    the order-n basis is a grlex prefix, the running count after the last
    order-n element is exactly K(n).
    """
    k = _num_vars(fields, num_vars)
    terms = _field_terms([v for v in fields if not v.is_zero()])
    nf = len(terms)
    # image keys: (field, gamma) flattened to ints, gamma-major
    gamma_index = {g: i for i, g in enumerate(monomials_up_to(k, max_order + 1))}
    echelon = EchelonBasis()
    dims: list[int] = []
    nullity = 0
    for n in range(max_order + 1):
        for beta in monomials_of_degree(k, n):
            image: dict[int, Fraction] = {}
            for f, t in enumerate(terms):
                for g, c in _image(beta, t).items():
                    image[gamma_index[g] * nf + f] = c
            if not echelon.add(image):
                nullity += 1
        dims.append(nullity)
    return dims


def constraint_matrix(fields: Sequence[PolyVectorField], order: int, num_vars: int | None = None) -> tuple[QMatrix, list[Exponent]]:
    """Stacked constraint matrix on the basis {d^beta delta : |beta| <= order}.

    Rows are indexed by (field, gamma) with |gamma| <= order + 1; returns the
    matrix and the column multi-indices.
    """
    k = _num_vars(fields, num_vars)
    cols = monomials_up_to(k, order)
    rows_idx = monomials_up_to(k, order + 1)
    gamma_index = {g: i for i, g in enumerate(rows_idx)}
    terms = _field_terms(fields)
    entries = {}
    for col, beta in enumerate(cols):
        for f, t in enumerate(terms):
            for g, c in _image(beta, t).items():
                entries[(f * len(rows_idx) + gamma_index[g], col)] = c
    return QMatrix(len(terms) * len(rows_idx), len(cols), entries), cols


def kernel_basis(fields: Sequence[PolyVectorField], order: int, num_vars: int | None = None) -> list[DeltaDistribution]:
    """Explicit kernel basis at one order, via ``nullspace`` of the stacked system."""
    k = _num_vars(fields, num_vars)
    m, cols = constraint_matrix(fields, order, k)
    out = []
    for vec in nullspace(m):
        out.append(DeltaDistribution(k, {b: c for b, c in zip(cols, vec) if c}))
    return out


def kernel_dimensions_by_nullspace(fields: Sequence[PolyVectorField], max_order: int, num_vars: int | None = None) -> list[int]:
    """Same series as ``kernel_dimensions``, one full nullspace per order (slow path)."""
    k = _num_vars(fields, num_vars)
    return [len(kernel_basis(fields, n, k)) for n in range(max_order + 1)]


def annihilates(fields: Iterable[PolyVectorField], xi: DeltaDistribution) -> bool:
    return all(apply_field(v, xi).is_zero() for v in fields)
