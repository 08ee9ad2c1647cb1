from .laurent import LaurentPoly, laurent_mul_truncated
from .linalg import EchelonBasis, QMatrix, nullspace, rank, rref_vectors, solve
from .poly import MultiPoly, VariableMismatch, monomials_of_degree, monomials_up_to, poly_mul
from .rational import NonRationalLiteral, Rational, format_rational, to_rational

__all__ = [
    "EchelonBasis",
    "LaurentPoly",
    "MultiPoly",
    "NonRationalLiteral",
    "QMatrix",
    "Rational",
    "VariableMismatch",
    "format_rational",
    "laurent_mul_truncated",
    "monomials_of_degree",
    "monomials_up_to",
    "nullspace",
    "poly_mul",
    "rank",
    "rref_vectors",
    "solve",
    "to_rational",
]
