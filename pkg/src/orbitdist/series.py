"""Dimension series, rational generating functions and their invariants.

Generating functions are kept as N(t) / prod_k (1 - t^k)^m_k. Univariate
polynomials are plain coefficient lists, lowest degree first.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Sequence, Union

from .exact.poly import MultiPoly
from .exact.rational import RationalLike, to_rational

Poly = list[Fraction]


class ReconstructionError(ValueError):
    pass


class NoRecurrence(ReconstructionError):
    pass


class NonCyclotomicDenominator(ReconstructionError):
    pass


class WindowMismatch(ReconstructionError):
    pass


class DominanceViolated(ValueError):
    pass


# -- univariate helpers ---------------------------------------------------------


def _trim(p: Sequence[Fraction]) -> Poly:
    p = [Fraction(x) for x in p]
    while p and p[-1] == 0:
        p.pop()
    return p


def _mul(p: Sequence[Fraction], q: Sequence[Fraction]) -> Poly:
    if not p or not q:
        return []
    out = [Fraction(0)] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a:
            for j, b in enumerate(q):
                out[i + j] += a * b
    return _trim(out)


def _divmod(p: Sequence[Fraction], d: Sequence[Fraction]) -> tuple[Poly, Poly]:
    p = _trim(p)
    d = _trim(d)
    if not d:
        raise ZeroDivisionError("polynomial division by zero")
    if len(p) < len(d):
        return [], p
    q = [Fraction(0)] * (len(p) - len(d) + 1)
    r = list(p)
    lead = d[-1]
    for i in range(len(q) - 1, -1, -1):
        c = r[i + len(d) - 1] / lead
        q[i] = c
        if c:
            for j, b in enumerate(d):
                r[i + j] -= c * b
    return _trim(q), _trim(r)


def _one_minus_t_pow(k: int) -> Poly:
    p = [Fraction(0)] * (k + 1)
    p[0] = Fraction(1)
    p[k] = Fraction(-1)
    return p


@lru_cache(maxsize=None)
def _cyclotomic(d: int) -> tuple[Fraction, ...]:
    """Phi_d normalised so that prod_{e | k} Phi_e = 1 - t^k (Phi_1 = 1 - t)."""
    if d == 1:
        return (Fraction(1), Fraction(-1))
    p = _one_minus_t_pow(d)
    for e in range(1, d):
        if d % e == 0:
            p, r = _divmod(p, list(_cyclotomic(e)))
            assert not r
    return tuple(p)


def _divisors(k: int) -> list[int]:
    return [d for d in range(1, k + 1) if k % d == 0]


def _euler_phi(d: int) -> int:
    return len(_cyclotomic(d)) - 1


def series_expand(num: Sequence[Fraction], den: Sequence[Fraction], n: int) -> list[Fraction]:
    """First n Taylor coefficients of num/den (den(0) != 0)."""
    den = list(den)
    if not den or den[0] == 0:
        raise ZeroDivisionError("denominator must have a nonzero constant term")
    out: list[Fraction] = []
    for i in range(n):
        s = Fraction(num[i]) if i < len(num) else Fraction(0)
        for j in range(1, min(i, len(den) - 1) + 1):
            s -= den[j] * out[i - j]
        out.append(s / den[0])
    return out


# -- the generating function type ------------------------------------------------


@dataclass(frozen=True)
class RationalGF:
    """numerator(t) / prod (1 - t^k)^mult over ``denominator`` = ((k, mult), ...)."""

    numerator: tuple[Fraction, ...]
    denominator: tuple[tuple[int, int], ...]

    @classmethod
    def make(cls, numerator: Sequence[RationalLike], denominator: Sequence[Sequence[int]] = ()) -> "RationalGF":
        """Build and canonicalise."""
        num = _trim([to_rational(c) for c in numerator])
        phis: dict[int, int] = {}
        for k, m in denominator:
            if k < 1 or m < 0:
                raise ValueError(f"bad denominator factor (1 - t^{k})^{m}")
            for d in _divisors(k):
                phis[d] = phis.get(d, 0) + m
        return _canonical(num, phis)

    def numerator_poly(self, var: str = "t") -> MultiPoly:
        return MultiPoly((var,), {(i,): c for i, c in enumerate(self.numerator)})

    def denominator_poly(self) -> Poly:
        out: Poly = [Fraction(1)]
        for k, m in self.denominator:
            for _ in range(m):
                out = _mul(out, _one_minus_t_pow(k))
        return out

    def expand(self, n: int) -> list[Fraction]:
        return series_expand(list(self.numerator), self.denominator_poly(), n)

    def is_zero(self) -> bool:
        return not self.numerator

    def __str__(self) -> str:
        num = " + ".join(
            f"{c}" if i == 0 else f"{c}*t^{i}" for i, c in enumerate(self.numerator) if c
        ) or "0"
        def block(k: int, m: int) -> str:
            b = "(1-t)" if k == 1 else f"(1-t^{k})"
            return f"{b}^{m}" if m > 1 else b

        den = "*".join(block(k, m) for k, m in self.denominator)
        return f"({num})/({den})" if den else f"({num})"


def _phi_multiplicities(poly: Poly, max_d: int) -> tuple[dict[int, int], Poly]:
    """Trial-divide by Phi_1 .. Phi_max_d; return multiplicities and the cofactor."""
    mult: dict[int, int] = {}
    rest = _trim(poly)
    for d in range(1, max_d + 1):
        phi = list(_cyclotomic(d))
        while len(rest) >= len(phi):
            q, r = _divmod(rest, phi)
            if r:
                break
            rest = q
            mult[d] = mult.get(d, 0) + 1
    return mult, rest


def _canonical(num: Poly, phis: dict[int, int]) -> RationalGF:
    """Cancel common cyclotomic factors, then regroup the denominator into (1 - t^k) blocks.

    Regrouping is greedy from the largest index: each block (1 - t^k) uses
    one copy of every Phi_d with d | k, and any Phi_d the denominator lacks
    is multiplied into the numerator.
    """
    phis = {d: m for d, m in phis.items() if m > 0}
    if not num:
        return RationalGF((), ())
    for d in sorted(phis):
        phi = list(_cyclotomic(d))
        while phis.get(d, 0) > 0 and len(num) >= len(phi):
            q, r = _divmod(num, phi)
            if r:
                break
            num = q
            phis[d] -= 1
    phis = {d: m for d, m in phis.items() if m > 0}
    blocks: dict[int, int] = {}
    while phis:
        k = max(phis)
        for d in _divisors(k):
            if phis.get(d, 0) > 0:
                phis[d] -= 1
                if not phis[d]:
                    del phis[d]
            else:
                num = _mul(num, list(_cyclotomic(d)))
        blocks[k] = blocks.get(k, 0) + 1
    return RationalGF(tuple(num), tuple(sorted(blocks.items())))


def _phi_exponents(gf: RationalGF) -> dict[int, int]:
    """Net order of the pole at the primitive d-th roots of unity, keyed by d."""
    den: dict[int, int] = {}
    for k, m in gf.denominator:
        for d in _divisors(k):
            den[d] = den.get(d, 0) + m
    top = max(den, default=1)
    num_mult, _ = _phi_multiplicities(list(gf.numerator), top)
    return {d: den[d] - num_mult.get(d, 0) for d in den}


# -- operations -----------------------------------------------------------------


def increments(dims: Sequence[int]) -> list[int]:
    return [d - (dims[i - 1] if i else 0) for i, d in enumerate(dims)]


def prefix_sums(incr: Sequence[int]) -> list[int]:
    return list(itertools.accumulate(incr))


def _berlekamp_massey(seq: Sequence[Fraction]) -> tuple[Poly, int]:
    """Shortest connection polynomial C (C[0] = 1) and its length L over Q."""
    c: Poly = [Fraction(1)]
    b: Poly = [Fraction(1)]
    length, m, bd = 0, 1, Fraction(1)
    for n, s in enumerate(seq):
        disc = Fraction(s)
        for i in range(1, length + 1):
            if i < len(c):
                disc += c[i] * seq[n - i]
        if disc == 0:
            m += 1
            continue
        coef = disc / bd
        shifted = [Fraction(0)] * m + [coef * x for x in b]
        new_c = list(c) + [Fraction(0)] * max(0, len(shifted) - len(c))
        for i, x in enumerate(shifted):
            new_c[i] -= x
        if 2 * length <= n:
            b, length, bd, m = c, n + 1 - length, disc, 1
        else:
            m += 1
        c = new_c
    return _trim(c), length


def _complexity(num: Poly, den: Poly) -> int:
    return max(len(den) - 1, len(num))


def _int_mul(p: Sequence[int], q: Sequence[int]) -> list[int]:
    out = [0] * (len(p) + len(q) - 1)
    for i, x in enumerate(p):
        if x:
            for j, y in enumerate(q):
                out[i + j] += x * y
    return out


def _cyclotomic_candidates(max_den_degree: int):
    """Yield ({d: mult}, integer denominator coefficients) for products of Phi_d of degree <= max_den_degree."""
    ds = [d for d in range(1, max_den_degree + 1) if _euler_phi(d) <= max_den_degree]
    phis = {d: [int(c) for c in _cyclotomic(d)] for d in ds}

    def rec(i: int, budget: int, mult: dict, den: list[int]):
        if i == len(ds):
            yield dict(mult), den
            return
        d = ds[i]
        w = len(phis[d]) - 1
        cur = den
        for m in range(budget // w + 1):
            if m:
                mult[d] = m
                cur = _int_mul(cur, phis[d])
            yield from rec(i + 1, budget - m * w, mult, cur)
        mult.pop(d, None)

    yield from rec(0, max_den_degree, {}, [1])


def reconstruct_gf(incr: Sequence[int], max_den_degree: int = 12, window: int = 4) -> RationalGF:
    """Rational generating function with cyclotomic denominator fitting ``incr``.

    The last ``window`` entries are withheld from fitting and must be
    predicted. When the fitted part pins the minimal recurrence down
    (2L <= fitted length, Berlekamp-Massey), that recurrence is used and its
    characteristic polynomial must split into cyclotomic factors. On shorter
    data the search runs over cyclotomic denominators of degree
    <= max_den_degree instead, keeping the one of least linear complexity
    that predicts the window.
    """
    seq = [Fraction(to_rational(x)) for x in incr]
    if window < 0:
        raise ValueError("window must be >= 0")
    fit_len = len(seq) - window
    if fit_len < 1:
        raise NoRecurrence(f"need more than window={window} terms, got {len(seq)}")
    fit = seq[:fit_len]
    c, length = _berlekamp_massey(fit)
    if 2 * length <= fit_len:
        if len(c) - 1 > max_den_degree:
            raise NoRecurrence(f"minimal recurrence has denominator degree {len(c) - 1} > {max_den_degree}")
        mult, rest = _phi_multiplicities(c, max_den_degree)
        if len(rest) != 1:
            raise NonCyclotomicDenominator(
                f"characteristic polynomial {[str(x) for x in c]} has a non-cyclotomic factor")
        scale = rest[0]
        num = _trim(_mul(fit, c)[:length])
        num = [x / scale for x in num]
        den = [x / scale for x in c]
        predicted = series_expand(num, den, len(seq))
        if predicted != seq:
            bad = next(i for i in range(len(seq)) if predicted[i] != seq[i])
            raise WindowMismatch(f"recurrence predicts {predicted[bad]} at index {bad}, data has {seq[bad]}")
        return _canonical(num, mult)

    # the window test is homogeneous, so integer data is enough
    scale = math.lcm(*(x.denominator for x in seq))
    iseq = [int(x * scale) for x in seq]
    best = None
    for phis, iden in _cyclotomic_candidates(max_den_degree):
        # den predicts the window iff (seq * den) vanishes on the window indices
        if any(sum(iden[j] * iseq[i - j] for j in range(min(i, len(iden) - 1) + 1))
               for i in range(fit_len, len(seq))):
            continue
        den = [Fraction(x) for x in iden]
        num = _trim(_mul(fit, den)[:fit_len])
        key = (_complexity(num, den), len(den), sorted(phis.items()))
        if best is None or key < best[0]:
            best = (key, num, phis)
    if best is None:
        raise NoRecurrence(
            f"no cyclotomic denominator of degree <= {max_den_degree} predicts the last {window} terms")
    _, num, phis = best
    return _canonical(num, dict(phis))


def pole_order_at_one(gf: RationalGF) -> int:
    """Raw pole order at t = 1; negative when the numerator vanishes there."""
    if gf.is_zero():
        return 0
    e = _phi_multiplicities(list(gf.numerator), 1)[0].get(1, 0)
    return sum(m for _, m in gf.denominator) - e


def ddim(gf: RationalGF) -> int:
    """Pole order at t = 1, clamped at 0 (``pole_order_at_one`` gives the raw value)."""
    return max(0, pole_order_at_one(gf))


def ddeg(gf: RationalGF) -> Fraction:
    """lim_{t->1} (1-t)^ddim * gf(t), provided t = 1 strictly dominates the unit-circle poles."""
    raw = pole_order_at_one(gf)
    r = max(0, raw)
    for d, o in _phi_exponents(gf).items():
        if d != 1 and o > 0 and o >= r:
            raise DominanceViolated(
                f"pole of order {o} at primitive {d}-th roots of unity ties or beats order {r} at t=1")
    if raw < r:
        return Fraction(0)
    # 1 - t^k = (1 - t)(1 + t + ... + t^(k-1)), which is k at t = 1
    _, rest = _phi_multiplicities(list(gf.numerator), 1)
    value = sum(rest, Fraction(0))
    for k, m in gf.denominator:
        value /= Fraction(k) ** m
    return value


Incrementish = Union[RationalGF, Sequence[int]]


def cauchy_product(a: Sequence[int], b: Sequence[int]) -> list[int]:
    n = min(len(a), len(b))
    return [sum(a[i] * b[k - i] for i in range(k + 1)) for k in range(n)]


def product_gf(a: Incrementish, b: Incrementish):
    """Generating function of a product: multiply gfs, or convolve increment lists."""
    if isinstance(a, RationalGF) and isinstance(b, RationalGF):
        phis: dict[int, int] = {}
        for k, m in a.denominator + b.denominator:
            for d in _divisors(k):
                phis[d] = phis.get(d, 0) + m
        return _canonical(_mul(list(a.numerator), list(b.numerator)), phis)
    if isinstance(a, RationalGF) or isinstance(b, RationalGF):
        raise TypeError("product_gf needs two gfs or two increment lists")
    return cauchy_product(list(a), list(b))
