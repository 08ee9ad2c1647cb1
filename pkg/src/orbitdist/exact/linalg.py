"""Sparse exact linear algebra over Q.

Elimination works on integer rows (denominators cleared, content divided
out after every step) so entries stay small on the large, very sparse
systems produced by the delta calculus.
"""
from __future__ import annotations

import math
from fractions import Fraction
from typing import Hashable, Iterable, Mapping, Sequence

from .rational import RationalLike, to_rational

IntRow = dict[int, int]


class QMatrix:
    """Sparse rows x cols matrix; ``entries`` maps (row, col) to a nonzero Fraction."""

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, rows: int, cols: int, entries: Mapping[tuple[int, int], RationalLike] | None = None):
        self.rows = int(rows)
        self.cols = int(cols)
        clean: dict[tuple[int, int], Fraction] = {}
        for (i, j), v in (entries or {}).items():
            if not (0 <= i < self.rows and 0 <= j < self.cols):
                raise IndexError(f"entry ({i}, {j}) outside {self.rows}x{self.cols}")
            v = to_rational(v)
            if v:
                clean[(i, j)] = v
        self.entries = clean

    @classmethod
    def from_dense(cls, data: Sequence[Sequence[RationalLike]], cols: int | None = None) -> "QMatrix":
        rows = len(data)
        if cols is None:
            cols = len(data[0]) if rows else 0
        entries = {}
        for i, row in enumerate(data):
            if len(row) != cols:
                raise ValueError("ragged matrix")
            for j, v in enumerate(row):
                entries[(i, j)] = v
        return cls(rows, cols, entries)

    @classmethod
    def identity(cls, n: int) -> "QMatrix":
        return cls(n, n, {(i, i): 1 for i in range(n)})

    def dense(self) -> list[list[Fraction]]:
        out = [[Fraction(0)] * self.cols for _ in range(self.rows)]
        for (i, j), v in self.entries.items():
            out[i][j] = v
        return out

    def row_dicts(self) -> list[dict[int, Fraction]]:
        out: list[dict[int, Fraction]] = [{} for _ in range(self.rows)]
        for (i, j), v in self.entries.items():
            out[i][j] = v
        return out

    def transpose(self) -> "QMatrix":
        return QMatrix(self.cols, self.rows, {(j, i): v for (i, j), v in self.entries.items()})

    def apply(self, vector: Sequence[RationalLike]) -> list[Fraction]:
        if len(vector) != self.cols:
            raise ValueError(f"vector of length {len(vector)} for {self.cols} columns")
        out = [Fraction(0)] * self.rows
        for (i, j), v in self.entries.items():
            out[i] += v * vector[j]
        return out

    def __matmul__(self, other: "QMatrix") -> "QMatrix":
        if self.cols != other.rows:
            raise ValueError("shape mismatch")
        right = other.row_dicts()
        entries: dict[tuple[int, int], Fraction] = {}
        for (i, k), v in self.entries.items():
            for j, w in right[k].items():
                entries[(i, j)] = entries.get((i, j), 0) + v * w
        return QMatrix(self.rows, other.cols, entries)

    def __eq__(self, other) -> bool:
        if not isinstance(other, QMatrix):
            return NotImplemented
        return (self.rows, self.cols, self.entries) == (other.rows, other.cols, other.entries)

    def __repr__(self) -> str:
        return f"QMatrix({self.rows}x{self.cols}, nnz={len(self.entries)})"


# -- integer row helpers -----------------------------------------------------


def _int_row(row: Mapping[int, RationalLike]) -> IntRow:
    fr = {k: to_rational(v) for k, v in row.items() if v}
    lcm = 1
    for v in fr.values():
        lcm = lcm * v.denominator // math.gcd(lcm, v.denominator)
    return _primitive({k: int(v * lcm) for k, v in fr.items()})


def _primitive(row: IntRow) -> IntRow:
    if not row:
        return row
    g = math.gcd(*row.values())
    if g > 1:
        return {k: v // g for k, v in row.items()}
    return row


def _eliminate(target: IntRow, pivot_row: IntRow, col: int) -> IntRow:
    """Return a*target - b*pivot_row with the entry at ``col`` cancelled."""
    a = pivot_row[col]
    b = target[col]
    g = math.gcd(a, b)
    a //= g
    b //= g
    if a < 0:
        a, b = -a, -b
    out = {k: a * v for k, v in target.items()} if a != 1 else dict(target)
    for k, v in pivot_row.items():
        nv = out.get(k, 0) - b * v
        if nv:
            out[k] = nv
        else:
            out.pop(k, None)
    return _primitive(out)


class EchelonBasis:
    """Incrementally maintained semi-echelon basis of sparse integer rows.

    Each stored row has a distinct pivot (its largest key). ``add`` reports
    whether the new vector was independent of everything seen so far, which
    is all that rank and nullity counting needs.
    """

    def __init__(self):
        self.pivots: dict[int, IntRow] = {}

    def __len__(self) -> int:
        return len(self.pivots)

    def reduce(self, vector: Mapping[int, RationalLike]) -> IntRow:
        v = _int_row(vector)
        pivots = self.pivots
        while v:
            k = max(v)
            row = pivots.get(k)
            if row is None:
                return v
            v = _eliminate(v, row, k)
        return v

    def add(self, vector: Mapping[int, RationalLike]) -> bool:
        v = self.reduce(vector)
        if not v:
            return False
        k = max(v)
        if v[k] < 0:
            v = {i: -x for i, x in v.items()}
        self.pivots[k] = v
        return True


def _rref(rows: Iterable[IntRow]) -> dict[int, IntRow]:
    """Integer reduced row echelon form keyed by pivot column (min key of the row)."""
    pivots: dict[int, IntRow] = {}
    for r in rows:
        r = _primitive(dict(r))
        for c in sorted(k for k in r if k in pivots):
            if c in r:
                r = _eliminate(r, pivots[c], c)
        if not r:
            continue
        pc = min(r)
        if r[pc] < 0:
            r = {k: -v for k, v in r.items()}
        for c2, p in list(pivots.items()):
            if pc in p:
                p = _eliminate(p, r, pc)
                if p[c2] < 0:
                    p = {k: -v for k, v in p.items()}
                pivots[c2] = p
        pivots[pc] = r
    return pivots


def rank(m: QMatrix) -> int:
    basis = EchelonBasis()
    for row in m.row_dicts():
        if row:
            basis.add(row)
    return len(basis)


def nullspace(m: QMatrix) -> list[tuple[Fraction, ...]]:
    """Basis of {v : m v = 0}.

    One vector per free column (ascending); each has integer entries with
    gcd 1 and a positive entry at its free column. Pivoting takes rows in
    order and the smallest surviving column as pivot, so the output is a
    deterministic function of the input.
    """
    pivots = _rref(_int_row(r) for r in m.row_dicts() if r)
    free = [j for j in range(m.cols) if j not in pivots]
    basis = []
    for f in free:
        involved = [(pc, p) for pc, p in pivots.items() if f in p]
        lcm = 1
        for pc, p in involved:
            lcm = lcm * p[pc] // math.gcd(lcm, p[pc])
        vec = [0] * m.cols
        vec[f] = lcm
        for pc, p in involved:
            vec[pc] = -p[f] * (lcm // p[pc])
        g = math.gcd(*vec)
        basis.append(tuple(Fraction(x // g) for x in vec))
    return basis


def solve(m: QMatrix, rhs: Sequence[RationalLike]) -> list[Fraction] | None:
    """A particular solution of m x = rhs (free variables set to 0), or None."""
    if len(rhs) != m.rows:
        raise ValueError("rhs length must equal the number of rows")
    aug = m.cols
    rows = m.row_dicts()
    for i, b in enumerate(rhs):
        b = to_rational(b)
        if b:
            rows[i][aug] = -b
    pivots = _rref(_int_row(r) for r in rows if r)
    if aug in pivots:
        return None
    x = [Fraction(0)] * m.cols
    for pc, p in pivots.items():
        x[pc] = Fraction(-p.get(aug, 0), p[pc])
    return x


def rref_vectors(vectors: Sequence[Mapping[Hashable, RationalLike]], key_order: Sequence[Hashable]) -> list[dict[Hashable, Fraction]]:
    """Canonical RREF of sparse vectors: pivot entries 1, rows sorted by pivot.

    ``key_order`` fixes the column order (the pivot of a row is its
    earliest key in that order).
    """
    index = {k: i for i, k in enumerate(key_order)}
    keys = list(key_order)
    int_rows = []
    for v in vectors:
        int_rows.append(_int_row({index[k]: c for k, c in v.items() if c}))
    pivots = _rref(int_rows)
    out = []
    for pc in sorted(pivots):
        p = pivots[pc]
        lead = p[pc]
        out.append({keys[j]: Fraction(v, lead) for j, v in sorted(p.items())})
    return out
