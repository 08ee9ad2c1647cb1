"""Sparse multivariate polynomials over Q."""
from __future__ import annotations

import itertools
from fractions import Fraction
from typing import Iterable, Iterator, Mapping, Sequence

from .rational import RationalLike, format_rational, to_rational

Exponent = tuple[int, ...]


class VariableMismatch(ValueError):
    pass


def grlex_key(e: Sequence[int]) -> tuple:
    return (sum(e), tuple(e))


def monomials_of_degree(nvars: int, degree: int) -> list[Exponent]:
    """Exponent vectors of exact total degree, in grlex order."""
    if nvars == 0:
        return [()] if degree == 0 else []
    out = []
    for combo in itertools.combinations_with_replacement(range(nvars), degree):
        e = [0] * nvars
        for i in combo:
            e[i] += 1
        out.append(tuple(e))
    out.sort()
    return out


def monomials_up_to(nvars: int, degree: int) -> list[Exponent]:
    out: list[Exponent] = []
    for d in range(degree + 1):
        out.extend(monomials_of_degree(nvars, d))
    return out


class MultiPoly:
    """Polynomial with exact rational coefficients.

    ``terms`` maps exponent tuples (one entry per variable) to nonzero
    Fractions. Instances are treated as immutable.
    """

    __slots__ = ("variables", "terms", "_hash")

    def __init__(self, variables: Iterable[str], terms: Mapping[Exponent, RationalLike] | None = None):
        self.variables: tuple[str, ...] = tuple(variables)
        n = len(self.variables)
        clean: dict[Exponent, Fraction] = {}
        for e, c in (terms or {}).items():
            e = tuple(int(x) for x in e)
            if len(e) != n:
                raise ValueError(f"exponent {e} has length {len(e)}, expected {n}")
            if any(x < 0 for x in e):
                raise ValueError(f"negative exponent in {e}")
            c = to_rational(c)
            if c:
                clean[e] = clean.get(e, Fraction(0)) + c
                if not clean[e]:
                    del clean[e]
        self.terms: dict[Exponent, Fraction] = clean
        self._hash = None

    @classmethod
    def _raw(cls, variables: tuple[str, ...], terms: dict[Exponent, Fraction]) -> "MultiPoly":
        p = cls.__new__(cls)
        p.variables = variables
        p.terms = terms
        p._hash = None
        return p

    @classmethod
    def zero(cls, variables: Iterable[str]) -> "MultiPoly":
        return cls._raw(tuple(variables), {})

    @classmethod
    def constant(cls, variables: Iterable[str], c: RationalLike) -> "MultiPoly":
        variables = tuple(variables)
        c = to_rational(c)
        return cls._raw(variables, {(0,) * len(variables): c} if c else {})

    @classmethod
    def one(cls, variables: Iterable[str]) -> "MultiPoly":
        return cls.constant(variables, 1)

    @classmethod
    def var(cls, variables: Iterable[str], which: str | int) -> "MultiPoly":
        variables = tuple(variables)
        i = variables.index(which) if isinstance(which, str) else which
        e = [0] * len(variables)
        e[i] = 1
        return cls._raw(variables, {tuple(e): Fraction(1)})

    @classmethod
    def monomial(cls, variables: Iterable[str], exponent: Sequence[int], c: RationalLike = 1) -> "MultiPoly":
        return cls(variables, {tuple(exponent): c})

    # -- inspection ---------------------------------------------------------

    @property
    def nvars(self) -> int:
        return len(self.variables)

    def is_zero(self) -> bool:
        return not self.terms

    @property
    def degree(self) -> int:
        """Total degree; 0 for the zero polynomial."""
        return max((sum(e) for e in self.terms), default=0)

    def items(self) -> list[tuple[Exponent, Fraction]]:
        return sorted(self.terms.items(), key=lambda kv: grlex_key(kv[0]))

    def coefficient(self, e: Sequence[int]) -> Fraction:
        return self.terms.get(tuple(e), Fraction(0))

    def constant_coefficient(self) -> Fraction:
        return self.coefficient((0,) * self.nvars)

    def __iter__(self) -> Iterator[tuple[Exponent, Fraction]]:
        return iter(self.items())

    # -- arithmetic ---------------------------------------------------------

    def _check(self, other: "MultiPoly") -> None:
        if self.variables != other.variables:
            raise VariableMismatch(f"{self.variables} != {other.variables}")

    def _coerce(self, other) -> "MultiPoly":
        if isinstance(other, MultiPoly):
            self._check(other)
            return other
        return MultiPoly.constant(self.variables, other)

    def __add__(self, other) -> "MultiPoly":
        other = self._coerce(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            s = out.get(e, 0) + c
            if s:
                out[e] = s
            else:
                out.pop(e, None)
        return MultiPoly._raw(self.variables, out)

    __radd__ = __add__

    def __neg__(self) -> "MultiPoly":
        return MultiPoly._raw(self.variables, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other) -> "MultiPoly":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "MultiPoly":
        return self._coerce(other) - self

    def scale(self, c: RationalLike) -> "MultiPoly":
        c = to_rational(c)
        if not c:
            return MultiPoly.zero(self.variables)
        return MultiPoly._raw(self.variables, {e: v * c for e, v in self.terms.items()})

    def __mul__(self, other) -> "MultiPoly":
        if not isinstance(other, MultiPoly):
            return self.scale(other)
        return poly_mul(self, other)

    def __rmul__(self, other) -> "MultiPoly":
        return self.scale(other)

    def __pow__(self, k: int) -> "MultiPoly":
        if k < 0:
            raise ValueError("negative power")
        out = MultiPoly.one(self.variables)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __eq__(self, other) -> bool:
        if isinstance(other, MultiPoly):
            return self.variables == other.variables and self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            return self == MultiPoly.constant(self.variables, other)
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.variables, frozenset(self.terms.items())))
        return self._hash

    # -- calculus / substitution -------------------------------------------

    def diff(self, which: str | int) -> "MultiPoly":
        i = self.variables.index(which) if isinstance(which, str) else which
        out: dict[Exponent, Fraction] = {}
        for e, c in self.terms.items():
            if e[i]:
                f = list(e)
                f[i] -= 1
                out[tuple(f)] = c * e[i]
        return MultiPoly._raw(self.variables, out)

    def evaluate(self, point: Sequence[RationalLike]) -> Fraction:
        if len(point) != self.nvars:
            raise VariableMismatch(f"point of length {len(point)} for {self.nvars} variables")
        point = [to_rational(x) for x in point]
        total = Fraction(0)
        for e, c in self.terms.items():
            t = c
            for x, k in zip(point, e):
                if k:
                    t *= x ** k
            total += t
        return total

    def compose(self, substitutions: Sequence["MultiPoly"]) -> "MultiPoly":
        """Substitute ``substitutions[i]`` for variable i.

        All substitutes must share one variable list, which becomes the
        variable list of the result.
        """
        if len(substitutions) != self.nvars:
            raise VariableMismatch(f"{len(substitutions)} substitutes for {self.nvars} variables")
        if not substitutions:
            raise ValueError("cannot compose a constant without a target variable list")
        target = substitutions[0].variables
        for s in substitutions:
            if s.variables != target:
                raise VariableMismatch("substitutes use different variable lists")
        powers: list[dict[int, MultiPoly]] = [{0: MultiPoly.one(target)} for _ in substitutions]

        def power(i: int, k: int) -> MultiPoly:
            cache = powers[i]
            if k not in cache:
                cache[k] = power(i, k - 1) * substitutions[i]
            return cache[k]

        out = MultiPoly.zero(target)
        for e, c in self.terms.items():
            t = MultiPoly.constant(target, c)
            for i, k in enumerate(e):
                if k:
                    t = t * power(i, k)
            out = out + t
        return out

    def rename(self, variables: Sequence[str]) -> "MultiPoly":
        if len(variables) != self.nvars:
            raise VariableMismatch("rename must keep the number of variables")
        return MultiPoly._raw(tuple(variables), dict(self.terms))

    def embed(self, variables: Sequence[str]) -> "MultiPoly":
        """View the polynomial inside a larger variable list (by name)."""
        variables = tuple(variables)
        idx = [variables.index(v) for v in self.variables]
        out = {}
        for e, c in self.terms.items():
            f = [0] * len(variables)
            for i, k in zip(idx, e):
                f[i] = k
            out[tuple(f)] = c
        return MultiPoly._raw(variables, out)

    # -- display ------------------------------------------------------------

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for e, c in sorted(self.terms.items(), key=lambda kv: grlex_key(kv[0]), reverse=True):
            mono = "*".join(
                v if k == 1 else f"{v}^{k}" for v, k in zip(self.variables, e) if k
            )
            if not mono:
                parts.append(format_rational(c))
            elif c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append("-" + mono)
            else:
                parts.append(f"{format_rational(c)}*{mono}")
        return " + ".join(parts).replace("+ -", "- ")

    def __repr__(self) -> str:
        return f"MultiPoly({list(self.variables)}, {self})"


def poly_mul(p: MultiPoly, q: MultiPoly) -> MultiPoly:
    """Product of two polynomials over the same variable list."""
    if p.variables != q.variables:
        raise VariableMismatch(f"{p.variables} != {q.variables}")
    out: dict[Exponent, Fraction] = {}
    for e1, c1 in p.terms.items():
        for e2, c2 in q.terms.items():
            e = tuple(a + b for a, b in zip(e1, e2))
            s = out.get(e, 0) + c1 * c2
            if s:
                out[e] = s
            else:
                out.pop(e, None)
    return MultiPoly._raw(p.variables, out)
