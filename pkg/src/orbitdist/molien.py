"""Invariant Hilbert series of symmetric powers via Weyl integration.

For a connected reductive group with maximal torus of rank r, Weyl group W
and roots R,

    dim (Sym^i N)^G = (1/|W|) CT[ char(Sym^i N) * prod_{alpha in R} (1 - x^alpha) ]

where CT is the constant term in the torus variables.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Sequence

from .exact.laurent import LaurentPoly, laurent_mul_truncated
from .series import cauchy_product


class NonIntegerResult(ArithmeticError):
    pass


@dataclass(frozen=True)
class ReductiveSpec:
    torus_rank: int
    weyl_group_order: int = 1
    roots: tuple[tuple[int, ...], ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "roots", tuple(tuple(int(x) for x in a) for a in self.roots))
        if self.weyl_group_order < 1:
            raise ValueError("weyl_group_order must be >= 1")
        for a in self.roots:
            if len(a) != self.torus_rank:
                raise ValueError(f"root {a} does not have length {self.torus_rank}")
        rootset = set(self.roots)
        for a in self.roots:
            if tuple(-x for x in a) not in rootset:
                raise ValueError(f"root list is not closed under negation: missing -{a}")

    def variables(self) -> tuple[str, ...]:
        return tuple(f"x{i + 1}" for i in range(self.torus_rank))


@dataclass(frozen=True)
class WeightCharacter:
    weights: tuple[tuple[int, ...], ...] = field(default_factory=tuple)

    def __post_init__(self):
        object.__setattr__(self, "weights", tuple(tuple(int(x) for x in w) for w in self.weights))

    def conjugate(self) -> "WeightCharacter":
        return WeightCharacter(tuple(tuple(-x for x in w) for w in self.weights))


def _check_rank(g_rank: int, w: WeightCharacter) -> None:
    for mu in w.weights:
        if len(mu) != g_rank:
            raise ValueError(f"weight {mu} does not have length {g_rank}")


def sym_character_series(w: WeightCharacter, max_degree: int, rank: int | None = None) -> list[LaurentPoly]:
    """Characters of Sym^0 .. Sym^max_degree of the torus module with weights ``w``."""
    if rank is None:
        rank = len(w.weights[0]) if w.weights else 0
    _check_rank(rank, w)
    variables = tuple(f"x{i + 1}" for i in range(rank))
    series = [LaurentPoly.one(variables)] + [LaurentPoly(variables) for _ in range(max_degree)]
    for mu in w.weights:
        # multiply by 1 / (1 - t x^mu):  new[i] = old[i] + x^mu * new[i-1]
        for i in range(1, max_degree + 1):
            acc = dict(series[i].terms)
            for e, c in series[i - 1].terms.items():
                key = tuple(a + b for a, b in zip(e, mu))
                v = acc.get(key, 0) + c
                if v:
                    acc[key] = v
                else:
                    acc.pop(key, None)
            series[i] = LaurentPoly(variables, acc)
    return series


def weyl_density(g: ReductiveSpec) -> LaurentPoly:
    variables = g.variables()
    out = LaurentPoly.one(variables)
    for a in g.roots:
        out = out * LaurentPoly(variables, {(0,) * g.torus_rank: 1, a: -1})
    return out


def invariant_dims(g: ReductiveSpec, w: WeightCharacter, max_degree: int) -> list[int]:
    """dim (Sym^i N)^G for i = 0..max_degree."""
    _check_rank(g.torus_rank, w)
    density = weyl_density(g)
    box = [(0, 0)] * g.torus_rank
    out = []
    for i, char in enumerate(sym_character_series(w, max_degree, g.torus_rank)):
        ct = laurent_mul_truncated(char, density, box).constant_term()
        val = ct / g.weyl_group_order
        if val.denominator != 1 or val < 0:
            raise NonIntegerResult(
                f"degree {i}: Weyl integral gave {val}; check the Weyl group order and root list")
        out.append(int(val))
    return out


def realified_invariant_dims(g: ReductiveSpec, w: WeightCharacter, max_degree: int) -> list[int]:
    """Invariant dims of N convolved with those of its conjugate (weights negated)."""
    return cauchy_product(invariant_dims(g, w, max_degree), invariant_dims(g, w.conjugate(), max_degree))


# -- presets ----------------------------------------------------------------------


def _unit(r: int, i: int) -> list[int]:
    e = [0] * r
    e[i] = 1
    return e


def gl(n: int) -> ReductiveSpec:
    roots = []
    for i in range(n):
        for j in range(n):
            if i != j:
                e = _unit(n, i)
                e[j] -= 1
                roots.append(tuple(e))
    return ReductiveSpec(n, math.factorial(n), tuple(roots))


def torus(r: int) -> ReductiveSpec:
    return ReductiveSpec(r, 1, ())


def direct_product(*specs: ReductiveSpec) -> ReductiveSpec:
    rank = sum(s.torus_rank for s in specs)
    roots = []
    order = 1
    offset = 0
    for s in specs:
        for a in s.roots:
            roots.append((0,) * offset + a + (0,) * (rank - offset - s.torus_rank))
        order *= s.weyl_group_order
        offset += s.torus_rank
    return ReductiveSpec(rank, order, tuple(roots))


def adjoint_weights(n: int, offset: int = 0, rank: int | None = None) -> WeightCharacter:
    """Weights e_a - e_b (all a, b, so n zero weights) of gl_n, placed at ``offset``."""
    rank = n if rank is None else rank
    ws = []
    for a in range(n):
        for b in range(n):
            e = [0] * rank
            e[offset + a] += 1
            e[offset + b] -= 1
            ws.append(tuple(e))
    return WeightCharacter(tuple(ws))


def trivial_weights(count: int, rank: int) -> WeightCharacter:
    return WeightCharacter(tuple((0,) * rank for _ in range(count)))


def block_adjoint(sizes: Sequence[int]) -> tuple[ReductiveSpec, WeightCharacter]:
    """Centralizer GL_n1 x ... x GL_nk acting on its own Lie algebra."""
    spec = direct_product(*(gl(n) for n in sizes))
    rank = spec.torus_rank
    ws: list[tuple[int, ...]] = []
    offset = 0
    for n in sizes:
        ws.extend(adjoint_weights(n, offset, rank).weights)
        offset += n
    return spec, WeightCharacter(tuple(ws))


PRESETS = {
    "gl1": lambda: block_adjoint([1]),
    "gl2": lambda: block_adjoint([2]),
    "gl3": lambda: block_adjoint([3]),
    "gl1xgl2": lambda: block_adjoint([1, 2]),
    "gl1xgl1xgl1": lambda: block_adjoint([1, 1, 1]),
}


def preset(name: str) -> tuple[ReductiveSpec, WeightCharacter]:
    """Named (group, adjoint module) pairs: gl1, gl2, gl3, gl1xgl2, gl1xgl1xgl1."""
    try:
        return PRESETS[name]()
    except KeyError:
        raise KeyError(f"unknown molien preset {name!r}; known: {sorted(PRESETS)}") from None

