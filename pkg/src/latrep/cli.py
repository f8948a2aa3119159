"""Command-line surface: validate, build, check, repair, export.

Every command prints a machine-readable JSON report to stdout and a short
human summary to stderr.  Exit codes: 0 success, 1 a mathematical
hypothesis or search failed (witness in the report), 2 I/O or format error.
Set LATREP_BUDGET to override the enumeration budgets.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from . import fileio, maps, oracles
from .builders import boolean_algebra, chain, divisor_lattice, product
from .core import Check
from .errors import FileFormatError, LatticeError
from .stabilize import ErrorPair
from .monotone import (
    check_eps_decreasing,
    check_eps_increasing,
    check_pal,
    repair_decreasing,
    repair_increasing,
    repair_quasi_monotone,
    sup_error,
)
from .neighborhoods import stabilize_with_neighborhoods
from .sandwich import sandwich_join, sandwich_lattice_hom
from .stabilize import stabilize_join

_CHECKERS = {
    "join-hom": maps.check_join_hom,
    "meet-hom": maps.check_meet_hom,
    "monotone": maps.check_monotone,
    "sub-join": maps.check_sub_join,
    "super-join": maps.check_super_join,
    "sub-meet": maps.check_sub_meet,
    "super-meet": maps.check_super_meet,
}


def _budget(default: int = oracles.DEFAULT_BUDGET) -> int:
    raw = os.environ.get("LATREP_BUDGET")
    if raw is None:
        return default
    try:
        return int(raw)
    except ValueError:
        raise FileFormatError(f"LATREP_BUDGET={raw!r} is not an integer") from None


def _check_json(chk: Check) -> dict:
    return {"ok": chk.ok, "which": chk.which,
            "witness": list(chk.witness) if chk.witness is not None else None}


def _cmd_validate(args) -> dict:
    lat = fileio.load_lattice(args.lattice)
    return {
        "elements": lat.n,
        "distributive": lat.is_distributive,
        "has_bottom": lat.has_bottom,
        "has_top": lat.has_top,
        "bottom": lat.labels[lat.bottom] if lat.has_bottom else None,
        "top": lat.labels[lat.top] if lat.has_top else None,
    }


def _cmd_make(args) -> dict:
    if args.kind == "boolean":
        lat = boolean_algebra(int(args.params[0]))
    elif args.kind == "divisor":
        lat = divisor_lattice(int(args.params[0]))
    elif args.kind == "chain":
        lat = chain(int(args.params[0]))
    else:
        l1 = fileio.resolve_lattice(args.params[0], "factor 1")
        l2 = fileio.resolve_lattice(args.params[1], "factor 2")
        lat = product(l1, l2)
    fileio.save_lattice(lat, args.output)
    reread = fileio.load_lattice(args.output)
    return {"elements": lat.n, "distributive": lat.is_distributive,
            "output": str(args.output), "roundtrip": reread == lat}


def _cmd_check_map(args) -> dict:
    m = fileio.load_map(args.map)
    chk = _CHECKERS[args.property](m)
    witness_labels = None
    if chk.witness is not None:
        witness_labels = [m.domain.labels[x] for x in chk.witness]
    return {"property": args.property, "holds": chk.ok, "witness": witness_labels}


def _rebase(base: maps.LatticeMap, other: maps.LatticeMap, name: str) -> maps.LatticeMap:
    """Re-anchor a structurally equal map onto the base map's lattice instances."""
    if other.domain != base.domain or other.codomain != base.codomain:
        raise FileFormatError(f"{name}: describes different spaces than the first map")
    return maps.LatticeMap(base.domain, base.codomain, other.values)


def _cmd_sandwich(args) -> dict:
    phi = fileio.load_map(args.phi)
    psi = _rebase(phi, fileio.load_map(args.psi), args.psi)
    result = sandwich_join(phi, psi)
    fileio.save_map(result, args.output)
    reread = fileio.load_map(args.output)
    return {
        "output": str(args.output),
        "join_hom": _check_json(maps.check_join_hom(result)),
        "phi_le_F": _check_json(maps.pointwise_leq(phi, result)),
        "F_le_psi": _check_json(maps.pointwise_leq(result, psi)),
        "roundtrip": reread.values == result.values,
    }


def _cmd_sandwich4(args) -> dict:
    names = (args.psi2, args.phi2, args.phi1, args.psi1)
    loaded = [fileio.load_map(p) for p in names]
    rebased = [loaded[0]] + [_rebase(loaded[0], m, n) for m, n in zip(loaded[1:], names[1:])]
    found = sandwich_lattice_hom(*rebased, budget=_budget())
    report = {"found": found is not None}
    if found is not None:
        fileio.save_map(found, args.output)
        report["output"] = str(args.output)
    return report


def _cmd_stabilize(args) -> dict:
    f = fileio.load_map(args.map)
    if args.errors is not None:
        ep = fileio.load_error_pair(args.errors, f.domain, f.codomain)
    elif args.phi is not None and args.psi is not None:
        ep = ErrorPair(f.domain, f.codomain,
                       fileio.load_error_table(args.phi, "phi", f.domain, f.codomain),
                       fileio.load_error_table(args.psi, "psi", f.domain, f.codomain))
    else:
        raise FileFormatError("stabilize needs --errors FILE or both --phi and --psi")
    result = stabilize_join(f, ep)
    fileio.save_map(result, args.output)
    y = f.codomain
    margins = {}
    for x in f.domain.elements:
        lo = y.meet(ep.phi[x][x], f.values[x])
        hi = y.join(f.values[x], ep.psi[x][x])
        margins[f.domain.labels[x]] = {
            "lower": y.labels[lo], "F": y.labels[result.values[x]], "upper": y.labels[hi]}
    reread = fileio.load_map(args.output)
    return {
        "output": str(args.output),
        "join_hom": _check_json(maps.check_join_hom(reread)),
        "margins": margins,
        "roundtrip": reread.values == result.values,
    }


def _cmd_stabilize_nbhd(args) -> dict:
    f = fileio.load_map(args.map)
    ns = fileio.load_neighborhood(args.neighborhood, f.codomain)
    result = stabilize_with_neighborhoods(f, ns)
    fileio.save_map(result, args.output)
    membership = {
        f.domain.labels[x]: {
            "F": f.codomain.labels[result.values[x]],
            "class_of": f.codomain.labels[f.values[x]],
            "inside": ns.contains(f.values[x], result.values[x]),
        }
        for x in f.domain.elements
    }
    reread = fileio.load_map(args.output)
    return {
        "output": str(args.output),
        "join_hom": _check_json(maps.check_join_hom(reread)),
        "membership": membership,
        "roundtrip": reread.values == result.values,
    }


def _cmd_monotone(args) -> dict:
    f = fileio.load_finite_function(args.data, args.eps)
    report: dict = {
        "eps": str(f.epsilon),
        "eps_increasing": _check_fraction_json(check_eps_increasing(f)),
        "eps_decreasing": _check_fraction_json(check_eps_decreasing(f)),
        "pal": _check_fraction_json(check_pal(f)),
    }
    if args.direction == "inc":
        direction, g = "increasing", repair_increasing(f)
    elif args.direction == "dec":
        direction, g = "decreasing", repair_decreasing(f)
    else:
        direction, g = repair_quasi_monotone(f)
    err = sup_error(f, g)
    binding = [str(x) for x, fv, gv in zip(f.points, f.values, g) if abs(fv - gv) == err]
    report.update({
        "direction": direction,
        "repair": {str(x): str(v) for x, v in zip(f.points, g)},
        "sup_error": str(err),
        "bound": str(f.epsilon / 2),
        "binding_points": binding,
    })
    return report


def _check_fraction_json(chk: Check) -> dict:
    return {"ok": chk.ok, "which": chk.which,
            "witness": [str(x) for x in chk.witness] if chk.witness is not None else None}


def _cmd_hasse(args) -> dict:
    lat = fileio.load_lattice(args.lattice)
    dot = fileio.lattice_to_dot(lat, Path(args.output).stem or "hasse")
    Path(args.output).write_text(dot, encoding="utf-8")
    return {"output": str(args.output), "elements": lat.n, "edges": len(lat.covers())}


def _cmd_oracle(args) -> dict:
    budget = _budget()
    if args.oracle == "envelope":
        f = fileio.load_map(args.inputs[0])
        env = oracles.brute_force_envelope(f, args.mode)
        return {"mode": args.mode,
                "values": {f.domain.labels[x]: f.codomain.labels[v]
                           for x, v in enumerate(env.values)}}
    if args.oracle == "join-homs":
        x_lat = fileio.resolve_lattice(args.inputs[0], "domain")
        y_lat = fileio.resolve_lattice(args.inputs[1], "codomain")
        count = sum(1 for _ in oracles.iter_join_homs(x_lat, y_lat, budget))
        return {"count": count}
    if args.oracle == "sandwich-exists":
        phi = fileio.load_map(args.inputs[0])
        psi_raw = fileio.load_map(args.inputs[1])
        psi = maps.LatticeMap(phi.domain, phi.codomain, psi_raw.values)
        found = oracles.sandwich_exists_brute(phi, psi, budget)
        return {"found": found is not None,
                "values": None if found is None else
                {phi.domain.labels[x]: phi.codomain.labels[v]
                 for x, v in enumerate(found.values)}}
    f = fileio.load_map(args.inputs[0])  # naive-boolean
    if args.eps_label is None:
        raise FileFormatError("oracle naive-boolean needs --eps-label")
    g, report = oracles.naive_boolean_correction(f, f.codomain.id_of(args.eps_label))
    return {
        "g": {f.domain.labels[x]: f.codomain.labels[v] for x, v in enumerate(g.values)},
        "join_hom": _check_json(report["join_hom"]),
        "meet_hom": _check_json(report["meet_hom"]),
        "max_symmetric_difference": report["max_symmetric_difference_label"],
        "within_eps": report["within_eps"],
    }


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="latrep",
                                     description="Finite-lattice repair toolkit.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="validate a lattice file")
    p.add_argument("lattice")
    p.set_defaults(func=_cmd_validate)

    p = sub.add_parser("make", help="build a standard lattice")
    p.add_argument("kind", choices=["boolean", "divisor", "chain", "product"])
    p.add_argument("params", nargs="+")
    p.add_argument("-o", "--output", required=True)
    p.set_defaults(func=_cmd_make)

    p = sub.add_parser("check-map", help="check a property of a map file")
    p.add_argument("map")
    p.add_argument("--property", required=True, choices=sorted(_CHECKERS))
    p.set_defaults(func=_cmd_check_map)

    p = sub.add_parser("sandwich", help="join homomorphism between phi and psi")
    p.add_argument("phi")
    p.add_argument("psi")
    p.add_argument("-o", "--output", required=True)
    p.set_defaults(func=_cmd_sandwich)

    p = sub.add_parser("sandwich4", help="lattice homomorphism between four maps")
    p.add_argument("psi2")
    p.add_argument("phi2")
    p.add_argument("phi1")
    p.add_argument("psi1")
    p.add_argument("-o", "--output", required=True)
    p.set_defaults(func=_cmd_sandwich4)

    p = sub.add_parser("stabilize", help="repair an approximate join homomorphism")
    p.add_argument("map")
    p.add_argument("--errors", default=None, help="JSON file with both phi and psi tables")
    p.add_argument("--phi", default=None, help="JSON file with the phi table")
    p.add_argument("--psi", default=None, help="JSON file with the psi table")
    p.add_argument("-o", "--output", required=True)
    p.set_defaults(func=_cmd_stabilize)

    p = sub.add_parser("stabilize-nbhd", help="repair within a neighborhood system")
    p.add_argument("map")
    p.add_argument("--nbhd", dest="neighborhood", required=True)
    p.add_argument("-o", "--output", required=True)
    p.set_defaults(func=_cmd_stabilize_nbhd)

    p = sub.add_parser("monotone-repair", help="ε/2 repair of a finite real function")
    p.add_argument("data", help="CSV x,f(x) or JSON input")
    p.add_argument("--eps", default=None, help="tolerance as p/q (required for CSV)")
    p.add_argument("--direction", choices=["inc", "dec", "auto"], default="auto")
    p.set_defaults(func=_cmd_monotone)

    p = sub.add_parser("hasse-dot", help="export the Hasse diagram as DOT")
    p.add_argument("lattice")
    p.add_argument("-o", "--output", required=True)
    p.set_defaults(func=_cmd_hasse)

    p = sub.add_parser("oracle", help="brute-force oracles (debugging)")
    p.add_argument("oracle", choices=["envelope", "join-homs", "sandwich-exists",
                                      "naive-boolean"])
    p.add_argument("inputs", nargs="+")
    p.add_argument("--mode", choices=["lower", "upper"], default="lower")
    p.add_argument("--eps-label", default=None)
    p.set_defaults(func=_cmd_oracle)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    report = {"command": args.command, "ok": True, "error": None}
    try:
        report.update(args.func(args))
    except FileFormatError as e:
        report.update(ok=False, error={"type": type(e).__name__, "message": str(e)})
        _emit(report)
        print(f"error: {e}", file=sys.stderr)
        return 2
    except OSError as e:
        report.update(ok=False, error={"type": "IOError", "message": str(e)})
        _emit(report)
        print(f"error: {e}", file=sys.stderr)
        return 2
    except LatticeError as e:
        payload = {"type": type(e).__name__, "message": str(e)}
        for attr in ("which", "witness", "axiom", "label", "bound"):
            if hasattr(e, attr):
                value = getattr(e, attr)
                payload[attr] = list(value) if isinstance(value, tuple) else value
        report.update(ok=False, error=payload)
        _emit(report)
        print(f"hypothesis failure: {e}", file=sys.stderr)
        return 1
    _emit(report)
    print(f"{args.command}: ok", file=sys.stderr)
    return 0


def _emit(report: dict) -> None:
    print(json.dumps(report, indent=2, sort_keys=True, default=str))


if __name__ == "__main__":
    sys.exit(main())
