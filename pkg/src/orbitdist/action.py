"""Infinitesimal group actions on affine space, affine slices, realification.

An action is given by one polynomial vector field per Lie-algebra basis
element (for a linear representation, ``x -> rho(X_a) x``). A slice is an
affine subspace ``base + span(P)`` through the point of interest.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from .exact.linalg import EchelonBasis, QMatrix, nullspace, rank, solve
from .exact.poly import MultiPoly, VariableMismatch
from .exact.rational import RationalLike, to_rational
from .fields import PolyVectorField

Gauss = tuple[Fraction, Fraction]


class LieAction:
    def __init__(self, variables: Iterable[str], generators: Sequence[PolyVectorField]):
        self.variables = tuple(variables)
        self.generators = tuple(generators)
        for g in self.generators:
            if g.variables != self.variables:
                raise VariableMismatch("generator field is not over the ambient variables")

    @property
    def ambient_dim(self) -> int:
        return len(self.variables)

    def tangent_vectors(self, point: Sequence[RationalLike]) -> list[list[Fraction]]:
        """Values of every generator field at ``point`` (spanning the orbit tangent)."""
        return [g.evaluate(point) for g in self.generators]

    def __repr__(self) -> str:
        return f"LieAction(dim={self.ambient_dim}, generators={len(self.generators)})"


def fundamental_field(action: LieAction, coeffs: Sequence[RationalLike]) -> PolyVectorField:
    if len(coeffs) != len(action.generators):
        raise ValueError(f"{len(coeffs)} coefficients for {len(action.generators)} generators")
    out = PolyVectorField.zero(action.variables)
    for c, g in zip(coeffs, action.generators):
        c = to_rational(c)
        if c:
            out = out + g.scale(c)
    return out


class AffineSlice:
    """``base + P u`` with a fixed left inverse ``L`` (L P = I) and complement ``Q`` (Q P = 0)."""

    def __init__(self, base: Sequence[RationalLike], basis: QMatrix, left_inverse: QMatrix,
                 complement: QMatrix, variables: Sequence[str] | None = None):
        self.base = tuple(to_rational(x) for x in base)
        n, k = basis.rows, basis.cols
        if len(self.base) != n:
            raise ValueError("base point and basis disagree on the ambient dimension")
        if rank(basis) != k:
            raise ValueError("slice basis must have full column rank")
        if (left_inverse.rows, left_inverse.cols) != (k, n) or left_inverse @ basis != QMatrix.identity(k):
            raise ValueError("left_inverse is not a left inverse of the basis")
        if (complement.rows, complement.cols) != (n - k, n) or (complement @ basis).entries:
            raise ValueError("complement must be (n-k) x n with complement . basis = 0")
        if rank(complement) != n - k:
            raise ValueError("complement must have full row rank")
        self.basis = basis
        self.left_inverse = left_inverse
        self.complement = complement
        self.variables = tuple(variables) if variables is not None else tuple(f"u{i + 1}" for i in range(k))
        if len(self.variables) != k:
            raise ValueError("need one slice variable name per basis column")

    @classmethod
    def from_basis(cls, base: Sequence[RationalLike], basis: QMatrix | Sequence[Sequence[RationalLike]],
                   variables: Sequence[str] | None = None) -> "AffineSlice":
        """Complete ``(base, P)`` with a deterministic left inverse and complement.

        L inverts the first k linearly independent rows of P (greedy, in row
        order); Q's rows are the nullspace basis of P^T.
        """
        if not isinstance(basis, QMatrix):
            basis = QMatrix.from_dense(basis, cols=len(basis[0]) if basis else 0)
        n, k = basis.rows, basis.cols
        rows = basis.row_dicts()
        chosen: list[int] = []
        echelon = EchelonBasis()
        for i, r in enumerate(rows):
            if len(chosen) == k:
                break
            if r and echelon.add(r):
                chosen.append(i)
        if len(chosen) != k:
            raise ValueError("slice basis must have full column rank")
        square = QMatrix(k, k, {(a, j): v for a, i in enumerate(chosen) for j, v in rows[i].items()})
        # columns of square^{-1}
        inv_cols = [solve(square, [1 if t == j else 0 for t in range(k)]) for j in range(k)]
        left = QMatrix(k, n, {(r, chosen[j]): inv_cols[j][r] for j in range(k) for r in range(k)})
        comp_rows = nullspace(basis.transpose())
        comp = QMatrix(len(comp_rows), n, {(i, j): v for i, vec in enumerate(comp_rows) for j, v in enumerate(vec)})
        return cls(base, basis, left, comp, variables)

    @property
    def dim(self) -> int:
        return self.basis.cols

    @property
    def ambient_dim(self) -> int:
        return self.basis.rows

    def point(self, u: Sequence[RationalLike]) -> list[Fraction]:
        du = self.basis.apply([to_rational(x) for x in u])
        return [b + x for b, x in zip(self.base, du)]

    def parametrization(self) -> list[MultiPoly]:
        """Ambient coordinates as polynomials in the slice variables: s(u) = base + P u."""
        vs = self.variables
        out = [MultiPoly.constant(vs, b) for b in self.base]
        for (i, j), v in self.basis.entries.items():
            out[i] = out[i] + MultiPoly.var(vs, j).scale(v)
        return out

    def __repr__(self) -> str:
        return f"AffineSlice(ambient={self.ambient_dim}, dim={self.dim}, variables={list(self.variables)})"


def slice_construct(action: LieAction, x0: Sequence[RationalLike], variables: Sequence[str] | None = None) -> AffineSlice:
    """Slice through x0 spanned by the first standard basis vectors completing T_x0(orbit)."""
    n = action.ambient_dim
    if len(x0) != n:
        raise ValueError(f"point of length {len(x0)} for ambient dimension {n}")
    echelon = EchelonBasis()
    for vec in action.tangent_vectors(x0):
        echelon.add({i: v for i, v in enumerate(vec) if v})
    chosen = [i for i in range(n) if echelon.add({i: 1})]
    basis = QMatrix(n, len(chosen), {(i, j): 1 for j, i in enumerate(chosen)})
    if variables is None:
        variables = [f"s_{action.variables[i]}" for i in chosen]
    return AffineSlice.from_basis(x0, basis, variables)


@dataclass
class SliceCheck:
    name: str
    passed: bool
    detail: str


@dataclass
class SliceReport:
    checks: list[SliceCheck] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(c.passed for c in self.checks)

    def failures(self) -> list[SliceCheck]:
        return [c for c in self.checks if not c.passed]

    def as_dict(self) -> dict:
        return {"ok": self.ok, "checks": [{"name": c.name, "passed": c.passed, "detail": c.detail} for c in self.checks]}


def _span_rank(vectors: Iterable[Sequence[Fraction]]) -> int:
    echelon = EchelonBasis()
    for vec in vectors:
        echelon.add({i: v for i, v in enumerate(vec) if v})
    return len(echelon)


def slice_validate(action: LieAction, slc: AffineSlice, samples: Sequence[Sequence[RationalLike]] = ()) -> SliceReport:
    """Infinitesimal slice conditions at the base point and at optional sample points.

    Only pointwise rank checks are made; the global submersion condition
    over the whole slice is the caller's responsibility.
    """
    report = SliceReport()
    n, k = action.ambient_dim, slc.dim
    if slc.ambient_dim != n:
        report.checks.append(SliceCheck("ambient dimension", False, f"slice lives in dimension {slc.ambient_dim}, action in {n}"))
        return report
    cols = [[slc.basis.entries.get((i, j), Fraction(0)) for i in range(n)] for j in range(k)]
    tangent = action.tangent_vectors(slc.base)
    t_rank = _span_rank(tangent)
    total = _span_rank(tangent + cols)
    report.checks.append(SliceCheck(
        "submersion at base", total == n,
        f"rank(T + span P) = {total}, ambient dimension {n}"))
    report.checks.append(SliceCheck(
        "dimension count", t_rank + k == n,
        f"dim T = {t_rank}, slice dim = {k}, sum {t_rank + k} vs {n}"))
    for idx, u in enumerate(samples):
        if len(u) != k:
            report.checks.append(SliceCheck(f"submersion at sample {idx}", False, f"sample has {len(u)} coordinates, slice has {k}"))
            continue
        pt = slc.point(u)
        r = _span_rank(action.tangent_vectors(pt) + cols)
        report.checks.append(SliceCheck(
            f"submersion at sample {idx}", r == n,
            f"rank {r} of {n} at point {[str(x) for x in pt]}"))
    return report


# -- complex scenarios ----------------------------------------------------------


class GaussPoly:
    """Polynomial with Gaussian-rational coefficients, stored as re + i*im."""

    __slots__ = ("re", "im")

    def __init__(self, re: MultiPoly, im: MultiPoly | None = None):
        if im is None:
            im = MultiPoly.zero(re.variables)
        if re.variables != im.variables:
            raise VariableMismatch("real and imaginary parts use different variables")
        self.re = re
        self.im = im

    @property
    def variables(self) -> tuple[str, ...]:
        return self.re.variables

    def __add__(self, other: "GaussPoly") -> "GaussPoly":
        return GaussPoly(self.re + other.re, self.im + other.im)

    def __mul__(self, other: "GaussPoly") -> "GaussPoly":
        return GaussPoly(self.re * other.re - self.im * other.im, self.re * other.im + self.im * other.re)

    def times_i(self) -> "GaussPoly":
        return GaussPoly(-self.im, self.re)

    def is_zero(self) -> bool:
        return self.re.is_zero() and self.im.is_zero()

    def realify(self, real_variables: Sequence[str]) -> tuple[MultiPoly, MultiPoly]:
        """Re and Im of p(x + i y) as polynomials in ``real_variables`` = (x..., y...)."""
        n = len(self.variables)
        real_variables = tuple(real_variables)
        if len(real_variables) != 2 * n:
            raise ValueError("need two real variables per complex variable")
        zs = [GaussPoly(MultiPoly.var(real_variables, j), MultiPoly.var(real_variables, n + j)) for j in range(n)]
        cache: dict[tuple[int, int], GaussPoly] = {}

        def zpow(j: int, k: int) -> GaussPoly:
            if k == 0:
                return GaussPoly(MultiPoly.one(real_variables))
            if (j, k) not in cache:
                cache[(j, k)] = zpow(j, k - 1) * zs[j]
            return cache[(j, k)]

        re = MultiPoly.zero(real_variables)
        im = MultiPoly.zero(real_variables)
        exps = set(self.re.terms) | set(self.im.terms)
        for e in sorted(exps):
            cr, ci = self.re.coefficient(e), self.im.coefficient(e)
            mono = GaussPoly(MultiPoly.one(real_variables))
            for j, k in enumerate(e):
                if k:
                    mono = mono * zpow(j, k)
            re = re + mono.re.scale(cr) - mono.im.scale(ci)
            im = im + mono.im.scale(cr) + mono.re.scale(ci)
        return re, im


def real_variable_names(variables: Sequence[str]) -> tuple[str, ...]:
    return tuple(f"{v}_re" for v in variables) + tuple(f"{v}_im" for v in variables)


def realify_fields(variables: Sequence[str], fields: Sequence[Sequence[GaussPoly]]) -> tuple[tuple[str, ...], list[PolyVectorField]]:
    """Each holomorphic field gives its realification and that of i times it.

    A component p_j becomes Re(p_j) d/dx_j + Im(p_j) d/dy_j; for i*v it is
    -Im(p_j) d/dx_j + Re(p_j) d/dy_j.
    """
    rv = real_variable_names(variables)
    out = []
    for comps in fields:
        if len(comps) != len(variables):
            raise ValueError("complex field has the wrong number of components")
        parts = [p.realify(rv) for p in comps]
        out.append(PolyVectorField(rv, [re for re, _ in parts] + [im for _, im in parts]))
        out.append(PolyVectorField(rv, [-im for _, im in parts] + [re for re, _ in parts]))
    return rv, out


@dataclass
class ComplexScenario:
    """Complex action plus complex slice; scalars are (re, im) pairs of Fractions."""

    variables: tuple[str, ...]
    generators: list[list[GaussPoly]]
    base: list[Gauss]
    basis: list[list[Gauss]]
    slice_variables: tuple[str, ...] | None = None


def _realify_matrix(m: Sequence[Sequence[Gauss]]) -> QMatrix:
    n = len(m)
    k = len(m[0]) if n else 0
    entries = {}
    for i, row in enumerate(m):
        for j, (a, b) in enumerate(row):
            entries[(i, j)] = a
            entries[(n + i, k + j)] = a
            entries[(i, k + j)] = -b
            entries[(n + i, j)] = b
    return QMatrix(2 * n, 2 * k, entries)


def realify(scenario: ComplexScenario) -> tuple[LieAction, AffineSlice]:
    rv, gens = realify_fields(scenario.variables, scenario.generators)
    base = [to_rational(re) for re, _ in scenario.base] + [to_rational(im) for _, im in scenario.base]
    basis = _realify_matrix([[(to_rational(a), to_rational(b)) for a, b in row] for row in scenario.basis])
    k = basis.cols // 2
    names = scenario.slice_variables or tuple(f"u{i + 1}" for i in range(k))
    return LieAction(rv, gens), AffineSlice.from_basis(base, basis, real_variable_names(names))


# -- presets --------------------------------------------------------------------


def _bracket_fields(n: int, coords: dict[tuple[int, int], MultiPoly], variables: tuple[str, ...],
                    component_of: list[tuple[int, int]]) -> list[PolyVectorField]:
    """Fields A -> [E_ab, A] for all a, b, read off at the given matrix positions."""
    fields = []
    for a in range(n):
        for b in range(n):
            comps = []
            for (p, q) in component_of:
                # [E_ab, A]_pq = delta_ap A_bq - A_pa delta_bq
                val = MultiPoly.zero(variables)
                if p == a:
                    val = val + coords[(b, q)]
                if q == b:
                    val = val - coords[(p, a)]
                comps.append(val)
            fields.append(PolyVectorField(variables, comps))
    return fields


def adjoint_gl(n: int) -> LieAction:
    """Adjoint action of gl_n on itself; coordinates A11, A12, ... row-major, generators E_ab row-major."""
    positions = [(p, q) for p in range(n) for q in range(n)]
    variables = tuple(f"A{p + 1}{q + 1}" for p, q in positions)
    coords = {pq: MultiPoly.var(variables, i) for i, pq in enumerate(positions)}
    return LieAction(variables, _bracket_fields(n, coords, variables, positions))


def adjoint_sl(n: int) -> LieAction:
    """Adjoint action of gl_n on sl_n; coordinates are all entries except A_nn (= -trace of the rest)."""
    positions = [(p, q) for p in range(n) for q in range(n) if (p, q) != (n - 1, n - 1)]
    variables = tuple(f"A{p + 1}{q + 1}" for p, q in positions)
    coords = {pq: MultiPoly.var(variables, i) for i, pq in enumerate(positions)}
    last = MultiPoly.zero(variables)
    for i in range(n - 1):
        last = last - coords[(i, i)]
    coords[(n - 1, n - 1)] = last
    return LieAction(variables, _bracket_fields(n, coords, variables, positions))


def slodowy_subregular_sl3() -> tuple[LieAction, AffineSlice]:
    """sl3 with the slice {[[a,1,0],[b,a,c],[d,0,-2a]]} through e = E12."""
    action = adjoint_sl(3)
    idx = {v: i for i, v in enumerate(action.variables)}
    base = [0] * action.ambient_dim
    base[idx["A12"]] = 1
    entries = {(idx["A11"], 0): 1, (idx["A22"], 0): 1, (idx["A21"], 1): 1, (idx["A23"], 2): 1, (idx["A31"], 3): 1}
    basis = QMatrix(action.ambient_dim, 4, entries)
    return action, AffineSlice.from_basis(base, basis, ("a", "b", "c", "d"))
