"""Dimension growth of invariant distributions supported on closed orbits.

Exact computation of the order filtration of point-supported distributions
annihilated by a family of polynomial vector fields, its generating
function, and the matching invariant-theoretic (Molien) side.
"""
from .deltacalc import DeltaDistribution, apply_field, kernel_dimensions
from .fields import PolyVectorField
from .molien import ReductiveSpec, WeightCharacter, invariant_dims, realified_invariant_dims
from .pipeline import run
from .report import Report, emit_report, parse_report
from .scenario import Scenario, load_builtin, parse_scenario
from .series import RationalGF, ddeg, ddim, product_gf, reconstruct_gf
from .tangential import module_contains, tangential_generators

__version__ = "0.1.0"

__all__ = [
    "DeltaDistribution", "PolyVectorField", "RationalGF", "ReductiveSpec", "Report", "Scenario",
    "WeightCharacter", "apply_field", "ddeg", "ddim", "emit_report", "invariant_dims", "kernel_dimensions", "load_builtin",
    "module_contains", "parse_report", "parse_scenario", "product_gf", "realified_invariant_dims",
    "reconstruct_gf", "run", "tangential_generators",
]
