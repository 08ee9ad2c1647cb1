"""Polynomial vector fields."""
from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

from .exact.poly import Exponent, MultiPoly, VariableMismatch, grlex_key, monomials_up_to
from .exact.rational import RationalLike, to_rational


class PolyVectorField:
    """``sum_j components[j] * d/d(variables[j])`` with polynomial coefficients."""

    __slots__ = ("variables", "components")

    def __init__(self, variables: Iterable[str], components: Sequence[MultiPoly]):
        self.variables = tuple(variables)
        comps = tuple(components)
        if len(comps) != len(self.variables):
            raise ValueError(f"{len(comps)} components for {len(self.variables)} variables")
        for p in comps:
            if p.variables != self.variables:
                raise VariableMismatch(f"component over {p.variables}, field over {self.variables}")
        self.components = comps

    @classmethod
    def zero(cls, variables: Iterable[str]) -> "PolyVectorField":
        variables = tuple(variables)
        return cls(variables, [MultiPoly.zero(variables)] * len(variables))

    @classmethod
    def from_terms(cls, variables: Iterable[str], comps: Sequence[dict]) -> "PolyVectorField":
        """Build from one ``{exponent: coeff}`` dict per component."""
        variables = tuple(variables)
        return cls(variables, [MultiPoly(variables, t) for t in comps])

    @property
    def nvars(self) -> int:
        return len(self.variables)

    def is_zero(self) -> bool:
        return all(p.is_zero() for p in self.components)

    @property
    def degree(self) -> int:
        return max((p.degree for p in self.components if not p.is_zero()), default=0)

    def _check(self, other: "PolyVectorField") -> None:
        if self.variables != other.variables:
            raise VariableMismatch(f"{self.variables} != {other.variables}")

    def __add__(self, other: "PolyVectorField") -> "PolyVectorField":
        self._check(other)
        return PolyVectorField(self.variables, [p + q for p, q in zip(self.components, other.components)])

    def __sub__(self, other: "PolyVectorField") -> "PolyVectorField":
        self._check(other)
        return PolyVectorField(self.variables, [p - q for p, q in zip(self.components, other.components)])

    def __neg__(self) -> "PolyVectorField":
        return PolyVectorField(self.variables, [-p for p in self.components])

    def scale(self, c: RationalLike) -> "PolyVectorField":
        c = to_rational(c)
        return PolyVectorField(self.variables, [p.scale(c) for p in self.components])

    def times(self, f: MultiPoly) -> "PolyVectorField":
        """The field f*v."""
        return PolyVectorField(self.variables, [f * p for p in self.components])

    def embed(self, variables: Sequence[str]) -> "PolyVectorField":
        """The same field on a larger variable list (by name), zero in the new directions."""
        variables = tuple(variables)
        by_name = dict(zip(self.variables, self.components))
        return PolyVectorField(variables, [by_name[v].embed(variables) if v in by_name else MultiPoly.zero(variables)
                                           for v in variables])

    def __mul__(self, other):
        if isinstance(other, MultiPoly):
            return self.times(other)
        return self.scale(other)

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        if not isinstance(other, PolyVectorField):
            return NotImplemented
        return self.variables == other.variables and self.components == other.components

    def __hash__(self) -> int:
        return hash((self.variables, self.components))

    def evaluate(self, point: Sequence[RationalLike]) -> list[Fraction]:
        return [p.evaluate(point) for p in self.components]

    def coefficient_vector(self) -> dict[tuple[int, Exponent], Fraction]:
        """Sparse coordinates keyed by (component index, exponent)."""
        out = {}
        for j, p in enumerate(self.components):
            for e, c in p.terms.items():
                out[(j, e)] = c
        return out

    @classmethod
    def from_coefficient_vector(cls, variables: Iterable[str], vec: dict) -> "PolyVectorField":
        variables = tuple(variables)
        comps: list[dict] = [{} for _ in variables]
        for (j, e), c in vec.items():
            comps[j][e] = c
        return cls.from_terms(variables, comps)

    def __str__(self) -> str:
        parts = []
        for v, p in zip(self.variables, self.components):
            if p.is_zero():
                continue
            s = str(p)
            if len(p.terms) > 1:
                s = f"({s})"
            parts.append(f"{s}*d{v}")
        return " + ".join(parts) if parts else "0"

    def __repr__(self) -> str:
        return f"PolyVectorField({list(self.variables)}, {self})"


def field_key_order(variables: Sequence[str], max_degree: int) -> list[tuple[int, Exponent]]:
    """Column order for coefficient vectors: component-major, grlex within."""
    monos = monomials_up_to(len(variables), max_degree)
    monos.sort(key=grlex_key)
    return [(j, e) for j in range(len(variables)) for e in monos]
