"""Scenario pipeline: validate, tangential fields, kernel series, gf, ddim/ddeg, Molien check."""
from __future__ import annotations

from dataclasses import replace

from . import molien as mol
from .action import slice_validate
from .deltacalc import kernel_dimensions
from .exact.rational import to_rational
from .fields import PolyVectorField
from .report import CONNECTIVITY_WARNING, DominanceFlag, GFError, Report, gf_from_json
from .scenario import Scenario
from .series import DominanceViolated, ReconstructionError, cauchy_product, ddeg, ddim, increments, prefix_sums, reconstruct_gf
from .tangential import tangential_generators


class SliceInvalid(ValueError):
    pass


def scenario_fields(sc: Scenario, degree_bound: int | None = None) -> list[PolyVectorField]:
    """The field set whose joint kernel is computed (explicit or auto-tangential)."""
    if sc.mode == "explicit-fields":
        return list(sc.fields or [])
    if sc.mode == "auto-tangential":
        check = slice_validate(sc.action, sc.slice)
        if not check.ok:
            raise SliceInvalid("; ".join(c.detail for c in check.failures()))
        d = sc.degree_bound if degree_bound is None else degree_bound
        return tangential_generators(sc.action, sc.slice, d)
    raise ValueError(f"mode {sc.mode!r} has no field set")


def molien_increments(sc: Scenario, max_order: int) -> list[int]:
    g, w = sc.molien
    if sc.complex:
        return mol.realified_invariant_dims(g, w, max_order)
    return mol.invariant_dims(g, w, max_order)


def scenario_increments(sc: Scenario, max_order: int) -> list[int]:
    """Filtration increments K(n) - K(n-1) for n <= max_order."""
    if sc.mode == "product":
        a, b = (scenario_increments(f, max_order) for f in sc.factors)
        return cauchy_product(a, b)
    if sc.mode == "molien-only":
        return molien_increments(sc, max_order)
    return increments(kernel_dimensions(scenario_fields(sc), max_order, len(sc.variables)))


def _compare_expected(sc: Scenario, r: Report) -> bool:
    exp = sc.expected
    ok = True
    if "dims" in exp:
        e = exp["dims"]
        n = min(len(e), len(r.dims))
        ok &= list(e[:n]) == r.dims[:n]
    if "increments" in exp:
        e = exp["increments"]
        n = min(len(e), len(r.increments))
        ok &= list(e[:n]) == r.increments[:n]
    if "gf" in exp:
        ok &= gf_from_json(exp["gf"]) == r.gf
    if "ddim" in exp:
        ok &= exp["ddim"] == r.ddim
    if "ddeg" in exp:
        ok &= not isinstance(r.ddeg, DominanceFlag) and r.ddeg is not None and to_rational(exp["ddeg"]) == r.ddeg
    if "molien" in exp and r.molien is not None:
        n = min(len(exp["molien"]), len(r.molien))
        ok &= list(exp["molien"][:n]) == r.molien[:n]
    return bool(ok)


def run(sc: Scenario, *, max_order: int | None = None, degree_bound: int | None = None,
        window: int | None = None) -> Report:
    """Execute the mode-appropriate pipeline; keyword overrides replace scenario defaults."""
    sc = replace(sc, max_order=sc.max_order if max_order is None else max_order,
                 degree_bound=sc.degree_bound if degree_bound is None else degree_bound,
                 window=sc.window if window is None else window)
    n_max = sc.max_order
    warnings: list[str] = []
    tcount = None

    if sc.mode in ("explicit-fields", "auto-tangential"):
        fields = scenario_fields(sc)
        dims = kernel_dimensions(fields, n_max, len(sc.variables))
        if sc.mode == "auto-tangential":
            tcount = len(fields)
            more = scenario_fields(sc, sc.degree_bound + 1)
            if kernel_dimensions(more, n_max, len(sc.variables)) != dims:
                warnings.append(
                    f"tangential fields not stabilized: kernel dims change from degree bound "
                    f"{sc.degree_bound} to {sc.degree_bound + 1}")
        incr = increments(dims)
    else:
        incr = scenario_increments(sc, n_max)
        dims = prefix_sums(incr)

    gf = None
    d_dim = None
    d_deg = None
    try:
        gf = reconstruct_gf(incr, window=sc.window)
    except ReconstructionError as e:
        gf = GFError(type(e).__name__, str(e))
    else:
        d_dim = ddim(gf)
        try:
            d_deg = ddeg(gf)
        except DominanceViolated as e:
            d_deg = DominanceFlag(str(e))

    mol_dims = None
    bound_ok = None
    if sc.molien is not None:
        mol_dims = molien_increments(sc, n_max)
        bound_ok = all(a <= b for a, b in zip(incr, mol_dims))
        if not bound_ok:
            warnings.append("kernel increments exceed the Molien bound")

    if not sc.connectivity_asserted:
        warnings.append(CONNECTIVITY_WARNING)

    r = Report(scenario=sc.name, mode=sc.mode, max_order=n_max, dims=dims, increments=incr, gf=gf,
               ddim=d_dim, ddeg=d_deg, molien=mol_dims, molien_bound_ok=bound_ok, tangential_count=tcount,
               warnings=warnings)
    if sc.expected is not None:
        r.expected_ok = _compare_expected(sc, r)
        if not r.expected_ok:
            r.warnings.append("result differs from the scenario's expected block")
    return r
