"""Report objects and their canonical JSON / CSV encodings (``orbitdist.report/1``)."""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any

from .exact.rational import format_rational, to_rational
from .series import RationalGF

SCHEMA = "orbitdist.report/1"

CONNECTIVITY_WARNING = (
    "connectivity of {g : g.x in S} not asserted: the reported dimensions are an upper bound "
    "(only the canonical embedding into distributions on the slice is guaranteed)"
)


@dataclass
class GFError:
    kind: str
    message: str


@dataclass
class DominanceFlag:
    message: str


@dataclass
class Report:
    scenario: str
    mode: str
    max_order: int
    dims: list[int]
    increments: list[int]
    gf: RationalGF | GFError | None = None
    ddim: int | None = None
    ddeg: Fraction | DominanceFlag | None = None
    molien: list[int] | None = None
    molien_bound_ok: bool | None = None
    tangential_count: int | None = None
    expected_ok: bool | None = None
    warnings: list[str] = field(default_factory=list)

    def __post_init__(self):
        if any(b < a for a, b in zip(self.dims, self.dims[1:])):
            raise ValueError("dims must be nondecreasing")


def gf_to_json(gf: RationalGF) -> dict:
    num = [int(c) if c.denominator == 1 else format_rational(c) for c in gf.numerator]
    return {"num": num, "den": [[k, m] for k, m in gf.denominator]}


def gf_from_json(obj: dict) -> RationalGF:
    return RationalGF.make([to_rational(c) for c in obj["num"]], [tuple(x) for x in obj["den"]])


def report_to_dict(r: Report) -> dict[str, Any]:
    if isinstance(r.gf, RationalGF):
        gf: Any = gf_to_json(r.gf)
    elif isinstance(r.gf, GFError):
        gf = {"error": r.gf.kind, "message": r.gf.message}
    else:
        gf = None
    if isinstance(r.ddeg, DominanceFlag):
        ddeg: Any = {"flag": "DominanceViolated", "message": r.ddeg.message}
    elif r.ddeg is None:
        ddeg = None
    else:
        ddeg = format_rational(r.ddeg)
    return {
        "schema": SCHEMA,
        "scenario": r.scenario,
        "mode": r.mode,
        "max_order": r.max_order,
        "dims": list(r.dims),
        "increments": list(r.increments),
        "gf": gf,
        "ddim": r.ddim,
        "ddeg": ddeg,
        "molien": r.molien,
        "molien_bound_ok": r.molien_bound_ok,
        "tangential_count": r.tangential_count,
        "expected_ok": r.expected_ok,
        "warnings": list(r.warnings),
    }


def report_from_dict(d: dict[str, Any]) -> Report:
    if d.get("schema") != SCHEMA:
        raise ValueError(f"not a {SCHEMA} document")
    gf = d["gf"]
    if gf is not None:
        gf = GFError(gf["error"], gf["message"]) if "error" in gf else gf_from_json(gf)
    ddeg = d["ddeg"]
    if isinstance(ddeg, dict):
        ddeg = DominanceFlag(ddeg["message"])
    elif ddeg is not None:
        ddeg = to_rational(ddeg)
    return Report(
        scenario=d["scenario"], mode=d["mode"], max_order=d["max_order"], dims=d["dims"],
        increments=d["increments"], gf=gf, ddim=d["ddim"], ddeg=ddeg, molien=d["molien"],
        molien_bound_ok=d["molien_bound_ok"], tangential_count=d["tangential_count"],
        expected_ok=d["expected_ok"], warnings=d["warnings"],
    )


def dims_csv(dims: list[int]) -> str:
    return "order,dim\n" + "".join(f"{n},{d}\n" for n, d in enumerate(dims))


def emit_report(r: Report, fmt: str = "json") -> str:
    if fmt == "json":
        return json.dumps(report_to_dict(r), indent=2, sort_keys=True) + "\n"
    if fmt == "csv":
        return dims_csv(r.dims)
    raise ValueError(f"unknown format {fmt!r} (expected json or csv)")


def parse_report(text: str) -> Report:
    return report_from_dict(json.loads(text))
