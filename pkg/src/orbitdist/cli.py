"""Command line entry point: ``orbitdist <subcommand> (--scenario PATH | --builtin NAME) [options]``.

Exit codes: 0 success, 1 input or schema error, 2 reconstruction failure,
3 internal assertion (inconsistent group data, expected-block mismatch).
"""
from __future__ import annotations

import argparse
import json
import sys
from dataclasses import replace

from .action import slice_validate
from .deltacalc import kernel_dimensions
from .exact.poly import VariableMismatch
from .exact.rational import NonRationalLiteral, format_rational
from .molien import NonIntegerResult
from .pipeline import SliceInvalid, molien_increments, run, scenario_fields, scenario_increments
from .report import dims_csv, emit_report, gf_to_json
from .scenario import Scenario, ScenarioError, builtin_names, field_to_json, load_builtin, load_file
from .series import DominanceViolated, ReconstructionError, ddeg, ddim, increments, prefix_sums, reconstruct_gf

EXIT_OK, EXIT_INPUT, EXIT_RECONSTRUCTION, EXIT_INTERNAL = 0, 1, 2, 3


class UsageError(ValueError):
    pass


def _dump(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def _load(args) -> list[Scenario]:
    out = [load_file(p) for p in args.scenario or []]
    out += [load_builtin(n) for n in args.builtin or []]
    if not out:
        raise UsageError("give --scenario PATH or --builtin NAME")
    return out


def _one(args) -> Scenario:
    scs = _load(args)
    if len(scs) != 1:
        raise UsageError(f"{args.command} takes exactly one scenario")
    sc = scs[0]
    if args.max_order is not None:
        sc = replace(sc, max_order=args.max_order)
    if args.degree_bound is not None:
        sc = replace(sc, degree_bound=args.degree_bound)
    if args.window is not None:
        sc = replace(sc, window=args.window)
    return sc


def cmd_validate(args) -> tuple[str, int]:
    sc = _one(args)
    doc = {"scenario": sc.name, "mode": sc.mode, "variables": list(sc.variables), "valid": True}
    if sc.action is not None and sc.slice is not None:
        rep = slice_validate(sc.action, sc.slice)
        doc["slice"] = rep.as_dict()
        doc["valid"] = rep.ok
    return _dump(doc), EXIT_OK if doc["valid"] else EXIT_INPUT


def cmd_tangential(args) -> tuple[str, int]:
    sc = _one(args)
    fields = scenario_fields(sc)
    if args.format == "csv":
        rows = ["field,variable,c,e"]
        for i, v in enumerate(fields):
            for name, terms in field_to_json(v).items():
                rows += [f"{i},{name},{t['c']},{' '.join(map(str, t['e']))}" for t in terms]
        return "\n".join(rows) + "\n", EXIT_OK
    doc = {"scenario": sc.name, "degree_bound": sc.degree_bound, "variables": list(sc.variables),
           "fields": [field_to_json(v) for v in fields]}
    return _dump(doc), EXIT_OK


def _dims(sc: Scenario) -> list[int]:
    if sc.mode in ("explicit-fields", "auto-tangential"):
        return kernel_dimensions(scenario_fields(sc), sc.max_order, len(sc.variables))
    return prefix_sums(scenario_increments(sc, sc.max_order))


def cmd_dims(args) -> tuple[str, int]:
    sc = _one(args)
    dims = _dims(sc)
    if args.format == "csv":
        return dims_csv(dims), EXIT_OK
    return _dump({"scenario": sc.name, "dims": dims, "increments": increments(dims)}), EXIT_OK


def cmd_gf(args) -> tuple[str, int]:
    sc = _one(args)
    incr = increments(_dims(sc))
    gf = reconstruct_gf(incr, window=sc.window)
    doc = {"scenario": sc.name, "increments": incr, "gf": gf_to_json(gf), "ddim": ddim(gf)}
    try:
        doc["ddeg"] = format_rational(ddeg(gf))
    except DominanceViolated as e:
        doc["ddeg"] = {"flag": "DominanceViolated", "message": str(e)}
    if args.format == "csv":
        return "k,mult\n" + "".join(f"{k},{m}\n" for k, m in gf.denominator), EXIT_OK
    return _dump(doc), EXIT_OK


def cmd_molien(args) -> tuple[str, int]:
    sc = _one(args)
    if sc.molien is None:
        raise ScenarioError("$.molien", "scenario has no molien block")
    dims = molien_increments(sc, sc.max_order)
    if args.format == "csv":
        return "order,dim\n" + "".join(f"{i},{d}\n" for i, d in enumerate(dims)), EXIT_OK
    return _dump({"scenario": sc.name, "realified": sc.complex, "invariant_dims": dims}), EXIT_OK


def _report(sc: Scenario, args) -> tuple[str, int]:
    r = run(sc)
    code = EXIT_OK
    if r.expected_ok is False:
        code = EXIT_INTERNAL
    elif r.gf is not None and not hasattr(r.gf, "numerator"):
        code = EXIT_RECONSTRUCTION
    return emit_report(r, args.format), code


def cmd_product(args) -> tuple[str, int]:
    scs = _load(args)
    if len(scs) == 1 and scs[0].mode == "product":
        sc = scs[0]
    elif len(scs) == 2:
        a, b = scs
        sc = Scenario(name=f"{a.name} x {b.name}", mode="product", factors=[a, b],
                      connectivity_asserted=a.connectivity_asserted and b.connectivity_asserted)
    else:
        raise UsageError("product takes a product-mode scenario or exactly two factor scenarios")
    if args.max_order is not None:
        sc = replace(sc, max_order=args.max_order)
    if args.window is not None:
        sc = replace(sc, window=args.window)
    return _report(sc, args)


def cmd_run(args) -> tuple[str, int]:
    return _report(_one(args), args)


COMMANDS = {
    "validate": (cmd_validate, "parse a scenario and check its slice"),
    "tangential": (cmd_tangential, "list the strongly tangential fields"),
    "dims": (cmd_dims, "kernel dimensions K(0..N)"),
    "gf": (cmd_gf, "reconstruct the generating function of the increments"),
    "molien": (cmd_molien, "invariant dims of the scenario's Molien block"),
    "product": (cmd_product, "report for the product of two scenarios"),
    "run": (cmd_run, "full pipeline report"),
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="orbitdist", description=__doc__.splitlines()[0])
    parser.add_argument("--list-builtins", action="store_true", help="print builtin scenario names and exit")
    sub = parser.add_subparsers(dest="command")
    for name, (_, help_text) in COMMANDS.items():
        p = sub.add_parser(name, help=help_text)
        p.add_argument("--scenario", action="append", metavar="PATH", help="scenario JSON file")
        p.add_argument("--builtin", action="append", metavar="NAME", help="builtin scenario name")
        p.add_argument("--max-order", type=int, metavar="N")
        p.add_argument("--degree-bound", type=int, metavar="D")
        p.add_argument("--window", type=int, metavar="W")
        p.add_argument("--format", choices=("json", "csv"), default="json")
        p.add_argument("--out", metavar="PATH", help="write output here instead of stdout")
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.list_builtins:
        print("\n".join(builtin_names()))
        return EXIT_OK
    if args.command is None:
        parser.print_help(sys.stderr)
        return EXIT_INPUT
    for opt in ("max_order", "degree_bound", "window"):
        val = getattr(args, opt)
        if val is not None and val < 0:
            print(f"error: --{opt.replace('_', '-')} must be >= 0", file=sys.stderr)
            return EXIT_INPUT
    try:
        text, code = COMMANDS[args.command][0](args)
    except (ScenarioError, UsageError, NonRationalLiteral, VariableMismatch, SliceInvalid, OSError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INPUT
    except ReconstructionError as e:
        print(f"reconstruction failed ({type(e).__name__}): {e}", file=sys.stderr)
        return EXIT_RECONSTRUCTION
    except (NonIntegerResult, AssertionError) as e:
        print(f"internal check failed ({type(e).__name__}): {e}", file=sys.stderr)
        return EXIT_INTERNAL
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
