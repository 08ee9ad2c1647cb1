"""Laurent polynomials in torus variables (integer exponents)."""
from __future__ import annotations

import itertools
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .poly import VariableMismatch, grlex_key
from .rational import RationalLike, to_rational

Box = Sequence[tuple[int, int]]


class LaurentPoly:
    __slots__ = ("variables", "terms")

    def __init__(self, variables: Iterable[str], terms: Mapping[tuple[int, ...], RationalLike] | None = None):
        self.variables = tuple(variables)
        clean: dict[tuple[int, ...], Fraction] = {}
        for e, c in (terms or {}).items():
            e = tuple(int(x) for x in e)
            if len(e) != len(self.variables):
                raise ValueError(f"exponent {e} does not match {len(self.variables)} variables")
            c = to_rational(c)
            if c:
                s = clean.get(e, 0) + c
                if s:
                    clean[e] = s
                else:
                    clean.pop(e, None)
        self.terms = clean

    @classmethod
    def _raw(cls, variables, terms) -> "LaurentPoly":
        p = cls.__new__(cls)
        p.variables = variables
        p.terms = terms
        return p

    @classmethod
    def one(cls, variables: Iterable[str]) -> "LaurentPoly":
        variables = tuple(variables)
        return cls._raw(variables, {(0,) * len(variables): Fraction(1)})

    @classmethod
    def monomial(cls, variables: Iterable[str], exponent: Sequence[int], c: RationalLike = 1) -> "LaurentPoly":
        return cls(variables, {tuple(exponent): c})

    def is_zero(self) -> bool:
        return not self.terms

    def coefficient(self, e: Sequence[int]) -> Fraction:
        return self.terms.get(tuple(e), Fraction(0))

    def constant_term(self) -> Fraction:
        return self.coefficient((0,) * len(self.variables))

    def items(self):
        return sorted(self.terms.items(), key=lambda kv: grlex_key(kv[0]))

    def __add__(self, other: "LaurentPoly") -> "LaurentPoly":
        if self.variables != other.variables:
            raise VariableMismatch(f"{self.variables} != {other.variables}")
        out = dict(self.terms)
        for e, c in other.terms.items():
            s = out.get(e, 0) + c
            if s:
                out[e] = s
            else:
                out.pop(e, None)
        return LaurentPoly._raw(self.variables, out)

    def __mul__(self, other: "LaurentPoly") -> "LaurentPoly":
        return laurent_mul_truncated(self, other, None)

    def __eq__(self, other) -> bool:
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self.variables == other.variables and self.terms == other.terms

    def __repr__(self) -> str:
        body = " + ".join(f"{c}*x^{list(e)}" for e, c in self.items()) or "0"
        return f"LaurentPoly({body})"


def _in_box(e: Sequence[int], box: Box) -> bool:
    return all(lo <= x <= hi for x, (lo, hi) in zip(e, box))


def laurent_mul_truncated(p: LaurentPoly, q: LaurentPoly, box: Box | None) -> LaurentPoly:
    """Product of ``p`` and ``q`` keeping only exponents inside ``box``.

    ``box`` is one inclusive ``(lo, hi)`` pair per variable; ``None`` keeps
    everything. The truncated product is exact inside the box only if the
    caller passes inputs that contain every term able to reach the box
    (for instance, full characters rather than already-truncated ones).
    """
    if p.variables != q.variables:
        raise VariableMismatch(f"{p.variables} != {q.variables}")
    if box is not None and len(box) != len(p.variables):
        raise ValueError("box must give one (lo, hi) bound per variable")
    small, large = (p, q) if len(p.terms) <= len(q.terms) else (q, p)
    out: dict[tuple[int, ...], Fraction] = {}

    volume = None
    if box is not None:
        volume = 1
        for lo, hi in box:
            volume *= max(0, hi - lo + 1)
    if box is not None and volume * len(small.terms) < len(small.terms) * len(large.terms):
        # walk the box and look partners up: cheap for narrow boxes such as
        # constant-term extraction
        points = list(itertools.product(*(range(lo, hi + 1) for lo, hi in box)))
        for e1, c1 in small.terms.items():
            for target in points:
                e2 = tuple(t - a for t, a in zip(target, e1))
                c2 = large.terms.get(e2)
                if c2 is not None:
                    s = out.get(target, 0) + c1 * c2
                    if s:
                        out[target] = s
                    else:
                        out.pop(target, None)
        return LaurentPoly._raw(p.variables, out)

    for e1, c1 in small.terms.items():
        for e2, c2 in large.terms.items():
            e = tuple(a + b for a, b in zip(e1, e2))
            if box is not None and not _in_box(e, box):
                continue
            s = out.get(e, 0) + c1 * c2
            if s:
                out[e] = s
            else:
                out.pop(e, None)
    return LaurentPoly._raw(p.variables, out)
