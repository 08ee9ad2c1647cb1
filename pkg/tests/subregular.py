"""The four fields on the traceless subregular slice, coordinates (a, b, c, d)."""
from fractions import Fraction

from orbitdist.exact import MultiPoly
from orbitdist.fields import PolyVectorField

V = ("a", "b", "c", "d")


def _p(terms):
    return MultiPoly(V, terms)


ZERO = {}
v1 = PolyVectorField(V, [_p(ZERO), _p(ZERO), _p({(0, 0, 1, 0): 1}), _p({(0, 0, 0, 1): -1})])
v2 = PolyVectorField(V, [_p(ZERO), _p(ZERO), _p({(1, 0, 1, 0): -1}), _p({(1, 0, 0, 1): 1})])
v3 = PolyVectorField(V, [_p({(0, 0, 0, 1): Fraction(1, 2)}), _p({(1, 0, 0, 1): -3}),
                         _p({(2, 0, 0, 0): 9, (0, 1, 0, 0): -1}), _p(ZERO)])
v4 = PolyVectorField(V, [_p({(0, 0, 1, 0): Fraction(-1, 2)}), _p({(1, 0, 1, 0): 3}),
                         _p(ZERO), _p({(0, 1, 0, 0): 1, (2, 0, 0, 0): -9})])
FIELDS = [v1, v2, v3, v4]

# K(2m-1) = m(m+1), K(2m) = (m+1)^2
EXPECTED_DIMS = [(n // 2 + 1) ** 2 if n % 2 == 0 else (n + 1) // 2 * ((n + 1) // 2 + 1) for n in range(11)]
