"""Scenario files: JSON schema ``orbitdist.scenario/1``.

Polynomials are term lists ``[{"c": "p/q", "e": [..]}, ...]``; in complex
scenarios a term may carry an imaginary part ``"i"``. A vector field is an
object mapping variable names to such term lists (absent names mean 0).
Complex scalars are ``["re", "im"]`` pairs.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from importlib import resources
from pathlib import Path
from typing import Any

from . import action as act
from . import molien as mol
from .action import AffineSlice, ComplexScenario, GaussPoly, LieAction
from .exact.poly import MultiPoly
from .exact.rational import NonRationalLiteral, format_rational, to_rational
from .fields import PolyVectorField

SCHEMA = "orbitdist.scenario/1"
MODES = ("explicit-fields", "auto-tangential", "molien-only", "product")
DEFAULTS = {"max_order": 8, "degree_bound": 2, "window": 4}


class ScenarioError(ValueError):
    """Schema violation; ``path`` names the offending key."""

    def __init__(self, path: str, message: str):
        super().__init__(f"{path}: {message}")
        self.path = path


@dataclass
class Scenario:
    name: str
    mode: str
    variables: tuple[str, ...] = ()
    fields: list[PolyVectorField] | None = None
    action: LieAction | None = None
    slice: AffineSlice | None = None
    complex: bool = False
    max_order: int = DEFAULTS["max_order"]
    degree_bound: int = DEFAULTS["degree_bound"]
    window: int = DEFAULTS["window"]
    connectivity_asserted: bool = False
    molien: tuple[mol.ReductiveSpec, mol.WeightCharacter] | None = None
    factors: list["Scenario"] = field(default_factory=list)
    expected: dict[str, Any] | None = None
    description: str = ""


# -- small typed readers ------------------------------------------------------------


def _get(obj: dict, key: str, path: str, kind, required: bool = True, default=None):
    if key not in obj:
        if required:
            raise ScenarioError(f"{path}.{key}", "missing required key")
        return default
    val = obj[key]
    if kind is int and (isinstance(val, bool) or not isinstance(val, int)):
        raise ScenarioError(f"{path}.{key}", f"expected an integer, got {val!r}")
    if kind is not int and not isinstance(val, kind):
        raise ScenarioError(f"{path}.{key}", f"expected {getattr(kind, '__name__', kind)}, got {type(val).__name__}")
    return val


def _natural(obj: dict, key: str, path: str, default: int) -> int:
    val = _get(obj, key, path, int, required=False, default=default)
    if val < 0:
        raise ScenarioError(f"{path}.{key}", "must be >= 0")
    return val


def _rational(val, path: str) -> Fraction:
    try:
        return to_rational(val)
    except (NonRationalLiteral, TypeError) as e:
        raise ScenarioError(path, str(e)) from None


def _complex_scalar(val, path: str) -> tuple[Fraction, Fraction]:
    if isinstance(val, list):
        if len(val) != 2:
            raise ScenarioError(path, "complex scalar must be a [re, im] pair")
        return _rational(val[0], f"{path}[0]"), _rational(val[1], f"{path}[1]")
    return _rational(val, path), Fraction(0)


def _names(val, path: str) -> tuple[str, ...]:
    if not isinstance(val, list) or not all(isinstance(v, str) for v in val):
        raise ScenarioError(path, "expected a list of variable names")
    if len(set(val)) != len(val):
        raise ScenarioError(path, "duplicate variable name")
    return tuple(val)


def _terms(val, variables: tuple[str, ...], path: str, allow_imag: bool) -> tuple[dict, dict]:
    if not isinstance(val, list):
        raise ScenarioError(path, "expected a list of terms")
    re: dict = {}
    im: dict = {}
    for t, term in enumerate(val):
        tp = f"{path}[{t}]"
        if not isinstance(term, dict):
            raise ScenarioError(tp, "term must be an object with keys c, e")
        unknown = set(term) - {"c", "e", "i"}
        if unknown:
            raise ScenarioError(f"{tp}.{sorted(unknown)[0]}", "unknown key")
        if "i" in term and not allow_imag:
            raise ScenarioError(f"{tp}.i", "imaginary part only allowed in complex scenarios")
        e = _get(term, "e", tp, list)
        if len(e) != len(variables) or not all(isinstance(x, int) and not isinstance(x, bool) and x >= 0 for x in e):
            raise ScenarioError(f"{tp}.e", f"expected {len(variables)} nonnegative integers")
        e = tuple(e)
        c = _rational(term.get("c", "0"), f"{tp}.c")
        ci = _rational(term.get("i", "0"), f"{tp}.i")
        re[e] = re.get(e, 0) + c
        im[e] = im.get(e, 0) + ci
    return re, im


def _field_obj(val, variables: tuple[str, ...], path: str, complex_: bool):
    """A field object -> list of GaussPoly (complex) or a PolyVectorField (real)."""
    if not isinstance(val, dict):
        raise ScenarioError(path, "field must map variable names to term lists")
    for name in val:
        if name not in variables:
            raise ScenarioError(f"{path}.{name}", "not a scenario variable")
    comps = []
    for name in variables:
        re, im = _terms(val.get(name, []), variables, f"{path}.{name}", complex_)
        if complex_:
            comps.append(GaussPoly(MultiPoly(variables, re), MultiPoly(variables, im)))
        else:
            comps.append(MultiPoly(variables, re))
    return comps if complex_ else PolyVectorField(variables, comps)


def _field_list(val, variables, path: str, complex_: bool) -> list:
    if not isinstance(val, list):
        raise ScenarioError(path, "expected a list of fields")
    return [_field_obj(f, variables, f"{path}[{i}]", complex_) for i, f in enumerate(val)]


# -- blocks ---------------------------------------------------------------------------

ACTION_PRESETS = {
    "adjoint-gl2": lambda: act.adjoint_gl(2),
    "adjoint-gl3": lambda: act.adjoint_gl(3),
    "adjoint-sl2": lambda: act.adjoint_sl(2),
    "adjoint-sl3": lambda: act.adjoint_sl(3),
}


def _action_block(obj, path: str, complex_: bool):
    if not isinstance(obj, dict):
        raise ScenarioError(path, "expected an object")
    if "preset" in obj:
        name = _get(obj, "preset", path, str)
        if name not in ACTION_PRESETS:
            raise ScenarioError(f"{path}.preset", f"unknown preset; known: {sorted(ACTION_PRESETS)}")
        if complex_:
            a = ACTION_PRESETS[name]()
            gens = [[GaussPoly(p) for p in g.components] for g in a.generators]
            return a.variables, gens
        return ACTION_PRESETS[name]()
    variables = _names(_get(obj, "variables", path, list), f"{path}.variables")
    gens = _field_list(_get(obj, "generators", path, list), variables, f"{path}.generators", complex_)
    return (variables, gens) if complex_ else LieAction(variables, gens)


def _slice_block(obj, path: str, action, complex_: bool) -> AffineSlice:
    if not isinstance(obj, dict):
        raise ScenarioError(path, "expected an object")
    if "preset" in obj:
        name = _get(obj, "preset", path, str)
        if name != "slodowy-subregular-sl3" or complex_:
            raise ScenarioError(f"{path}.preset", "only the real preset 'slodowy-subregular-sl3' is available")
        return act.slodowy_subregular_sl3()[1]
    amb_vars = action[0] if complex_ else action.variables
    n = len(amb_vars)
    base_raw = _get(obj, "base", path, list)
    if len(base_raw) != n:
        raise ScenarioError(f"{path}.base", f"expected {n} coordinates")
    names = obj.get("variables")
    if names is not None:
        names = _names(names, f"{path}.variables")
    if obj.get("construct", False):
        if complex_:
            raise ScenarioError(f"{path}.construct", "not supported for complex scenarios")
        base = [_rational(x, f"{path}.base[{i}]") for i, x in enumerate(base_raw)]
        try:
            return act.slice_construct(action, base, names)
        except ValueError as e:
            raise ScenarioError(path, str(e)) from None
    dirs = _get(obj, "directions", path, list)
    for j, d in enumerate(dirs):
        if not isinstance(d, list) or len(d) != n:
            raise ScenarioError(f"{path}.directions[{j}]", f"expected {n} coordinates")
    if names is not None and len(names) != len(dirs):
        raise ScenarioError(f"{path}.variables", "one name per direction expected")
    try:
        if complex_:
            base = [_complex_scalar(x, f"{path}.base[{i}]") for i, x in enumerate(base_raw)]
            cols = [[_complex_scalar(x, f"{path}.directions[{j}][{i}]") for i, x in enumerate(d)]
                    for j, d in enumerate(dirs)]
            basis = [[cols[j][i] for j in range(len(cols))] for i in range(n)]
            cs = ComplexScenario(action[0], action[1], base, basis, names)
            return act.realify(cs)
        base = [_rational(x, f"{path}.base[{i}]") for i, x in enumerate(base_raw)]
        basis = [[_rational(dirs[j][i], f"{path}.directions[{j}][{i}]") for j in range(len(dirs))] for i in range(n)]
        return AffineSlice.from_basis(base, basis, names)
    except ScenarioError:
        raise
    except ValueError as e:
        raise ScenarioError(path, str(e)) from None


def _int_vectors(val, path: str, length: int | None) -> tuple[tuple[int, ...], ...]:
    if not isinstance(val, list):
        raise ScenarioError(path, "expected a list of integer vectors")
    out = []
    for i, v in enumerate(val):
        ok = isinstance(v, list) and all(isinstance(x, int) and not isinstance(x, bool) for x in v)
        if not ok or (length is not None and len(v) != length):
            raise ScenarioError(f"{path}[{i}]", f"expected {length} integers")
        out.append(tuple(v))
    return tuple(out)


def _molien_block(obj, path: str):
    if not isinstance(obj, dict):
        raise ScenarioError(path, "expected an object")
    if "preset" in obj:
        try:
            return mol.preset(_get(obj, "preset", path, str))
        except KeyError as e:
            raise ScenarioError(f"{path}.preset", e.args[0]) from None
    r = _get(obj, "torus_rank", path, int)
    try:
        spec = mol.ReductiveSpec(r, _get(obj, "weyl_group_order", path, int, required=False, default=1),
                                 _int_vectors(obj.get("roots", []), f"{path}.roots", r))
    except ValueError as e:
        raise ScenarioError(path, str(e)) from None
    return spec, mol.WeightCharacter(_int_vectors(_get(obj, "weights", path, list), f"{path}.weights", r))


# -- entry points ----------------------------------------------------------------------

_TOP_KEYS = {"schema", "name", "description", "mode", "variables", "complex", "fields", "action", "slice",
             "molien", "factors", "max_order", "degree_bound", "window", "connectivity_asserted", "expected"}


def scenario_from_dict(data: Any, base_dir: Path | None = None, _depth: int = 0) -> Scenario:
    p = "$"
    if not isinstance(data, dict):
        raise ScenarioError(p, "scenario must be a JSON object")
    unknown = set(data) - _TOP_KEYS
    if unknown:
        raise ScenarioError(f"{p}.{sorted(unknown)[0]}", "unknown key")
    if data.get("schema") != SCHEMA:
        raise ScenarioError(f"{p}.schema", f"expected {SCHEMA!r}")
    name = _get(data, "name", p, str)
    mode = _get(data, "mode", p, str)
    if mode not in MODES:
        raise ScenarioError(f"{p}.mode", f"expected one of {list(MODES)}")
    complex_ = _get(data, "complex", p, bool, required=False, default=False)
    sc = Scenario(
        name=name,
        mode=mode,
        complex=complex_,
        description=_get(data, "description", p, str, required=False, default=""),
        max_order=_natural(data, "max_order", p, DEFAULTS["max_order"]),
        degree_bound=_natural(data, "degree_bound", p, DEFAULTS["degree_bound"]),
        window=_natural(data, "window", p, DEFAULTS["window"]),
        connectivity_asserted=_get(data, "connectivity_asserted", p, bool, required=False, default=False),
        expected=_get(data, "expected", p, dict, required=False),
    )
    if "variables" in data:
        sc.variables = _names(data["variables"], f"{p}.variables")

    if mode == "explicit-fields":
        if "fields" not in data:
            raise ScenarioError(f"{p}.fields", "required in explicit-fields mode")
        if "variables" not in data:
            raise ScenarioError(f"{p}.variables", "required in explicit-fields mode")
        fl = _field_list(data["fields"], sc.variables, f"{p}.fields", complex_)
        if complex_:
            sc.variables, sc.fields = act.realify_fields(sc.variables, fl)
        else:
            sc.fields = fl
    elif mode == "auto-tangential":
        for key in ("action", "slice"):
            if key not in data:
                raise ScenarioError(f"{p}.{key}", "required in auto-tangential mode")
        a = _action_block(data["action"], f"{p}.action", complex_)
        if complex_:
            sc.action, sc.slice = _slice_block(data["slice"], f"{p}.slice", a, True)
        else:
            sc.action = a
            sc.slice = _slice_block(data["slice"], f"{p}.slice", a, False)
        sc.variables = sc.slice.variables
    elif mode == "product":
        refs = _get(data, "factors", p, list)
        if len(refs) != 2:
            raise ScenarioError(f"{p}.factors", "product mode needs exactly two factors")
        if _depth > 8:
            raise ScenarioError(f"{p}.factors", "product nesting too deep")
        for i, ref in enumerate(refs):
            sc.factors.append(_resolve_ref(ref, f"{p}.factors[{i}]", base_dir, _depth + 1))
    if "molien" in data:
        sc.molien = _molien_block(data["molien"], f"{p}.molien")
    elif mode == "molien-only":
        raise ScenarioError(f"{p}.molien", "required in molien-only mode")
    return sc


def _resolve_ref(ref, path: str, base_dir: Path | None, depth: int) -> Scenario:
    if not isinstance(ref, dict) or len(ref) != 1 or not ({"builtin", "path"} & set(ref)):
        raise ScenarioError(path, 'factor must be {"builtin": name} or {"path": file}')
    if "builtin" in ref:
        return load_builtin(ref["builtin"], _depth=depth)
    fp = Path(ref["path"])
    if base_dir is not None and not fp.is_absolute():
        fp = base_dir / fp
    return load_file(fp, _depth=depth)


def load_file(path: str | Path, _depth: int = 0) -> Scenario:
    path = Path(path)
    with open(path, encoding="utf-8") as fh:
        try:
            data = json.load(fh)
        except json.JSONDecodeError as e:
            raise ScenarioError("$", f"malformed JSON: {e}") from None
    return scenario_from_dict(data, path.parent, _depth)


def builtin_names() -> list[str]:
    root = resources.files("orbitdist") / "scenarios"
    return sorted(p.name[:-5] for p in root.iterdir() if p.name.endswith(".json"))


def builtin_text(name: str) -> str:
    res = resources.files("orbitdist") / "scenarios" / f"{name}.json"
    if not res.is_file():
        raise ScenarioError("$", f"unknown builtin {name!r}; known: {builtin_names()}")
    return res.read_text(encoding="utf-8")


def load_builtin(name: str, _depth: int = 0) -> Scenario:
    try:
        data = json.loads(builtin_text(name))
    except json.JSONDecodeError as e:
        raise ScenarioError("$", f"malformed JSON in builtin {name!r}: {e}") from None
    return scenario_from_dict(data, None, _depth)


def parse_scenario(source: str | Path) -> Scenario:
    """Load a scenario from a file path, or from a builtin name when no such file exists."""
    p = Path(source)
    if p.suffix == ".json" or p.exists():
        return load_file(p)
    return load_builtin(str(source))


def poly_to_json(p: MultiPoly) -> list[dict]:
    return [{"c": format_rational(c), "e": list(e)} for e, c in p.items()]


def field_to_json(v: PolyVectorField) -> dict[str, list[dict]]:
    """Inverse of the scenario field encoding (zero components omitted)."""
    return {name: poly_to_json(p) for name, p in zip(v.variables, v.components) if not p.is_zero()}
