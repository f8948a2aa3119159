"""JSON interchange formats and the DOT export.

One canonical parse path: the CLI and tests both go through these loaders.
Lattices are {"labels": [...], "covers": [[child, parent], ...]}; maps are
{"domain": ..., "codomain": ..., "values": {label: label}} where a lattice
reference is an inline object, a file path, or a builder spec such as
"chain:4", "boolean:2", "divisor:12".  Rational numbers travel as "p/q"
strings.
"""
from __future__ import annotations

import json
from fractions import Fraction
from pathlib import Path

from .builders import boolean_algebra, chain, divisor_lattice
from .core import Lattice, validate_lattice
from .errors import FileFormatError
from .maps import LatticeMap
from .monotone import FiniteRealFunction
from .neighborhoods import Congruence, NeighborhoodSystem, congruence_system, \
    principal_ideal_system, prime_support_system
from .stabilize import ErrorPair


def _load_json(path: str | Path) -> dict:
    try:
        with open(path, encoding="utf-8") as fh:
            data = json.load(fh)
    except json.JSONDecodeError as e:
        raise FileFormatError(f"{path}: invalid JSON at line {e.lineno}, column {e.colno}") from None
    if not isinstance(data, dict):
        raise FileFormatError(f"{path}: top-level value must be an object")
    return data


def lattice_from_dict(data: dict, where: str = "lattice") -> Lattice:
    if "labels" not in data or "covers" not in data:
        raise FileFormatError(f"{where}: expected keys 'labels' and 'covers'")
    labels = [str(x) for x in data["labels"]]
    known = set(labels)
    covers = []
    for k, pair in enumerate(data["covers"]):
        if not isinstance(pair, (list, tuple)) or len(pair) != 2:
            raise FileFormatError(f"{where}: covers[{k}] is not a pair")
        c, p = str(pair[0]), str(pair[1])
        for lab in (c, p):
            if lab not in known:
                raise FileFormatError(f"{where}: covers[{k}] uses unknown label {lab!r}")
        covers.append((c, p))
    return validate_lattice(labels, covers)


def _builder_spec(spec: str) -> Lattice | None:
    head, sep, arg = spec.partition(":")
    if not sep:
        return None
    builders = {"chain": chain, "boolean": boolean_algebra, "divisor": divisor_lattice}
    if head not in builders:
        raise FileFormatError(f"unknown builder {head!r}; use chain:, boolean: or divisor:")
    try:
        k = int(arg)
    except ValueError:
        raise FileFormatError(f"builder argument {arg!r} is not an integer") from None
    return builders[head](k)


def resolve_lattice(ref, where: str = "lattice") -> Lattice:
    """A lattice reference: inline dict, builder spec string, or file path."""
    if isinstance(ref, dict):
        return lattice_from_dict(ref, where)
    if isinstance(ref, str):
        built = _builder_spec(ref)
        if built is not None:
            return built
        if Path(ref).exists():
            return load_lattice(ref)
        raise FileFormatError(f"{where}: {ref!r} is neither a file nor a builder spec")
    raise FileFormatError(f"{where}: expected object or string, got {type(ref).__name__}")


def load_lattice(path: str | Path) -> Lattice:
    return lattice_from_dict(_load_json(path), str(path))


def lattice_to_dict(lattice: Lattice) -> dict:
    return {
        "labels": list(lattice.labels),
        "covers": [[lattice.labels[c], lattice.labels[p]] for c, p in lattice.covers()],
    }


def save_lattice(lattice: Lattice, path: str | Path) -> None:
    Path(path).write_text(json.dumps(lattice_to_dict(lattice), indent=2) + "\n", encoding="utf-8")


def map_from_dict(data: dict, where: str = "map") -> LatticeMap:
    for key in ("domain", "codomain", "values"):
        if key not in data:
            raise FileFormatError(f"{where}: missing key {key!r}")
    dom = resolve_lattice(data["domain"], f"{where}.domain")
    cod = resolve_lattice(data["codomain"], f"{where}.codomain")
    raw = data["values"]
    if not isinstance(raw, dict):
        raise FileFormatError(f"{where}: 'values' must be an object")
    values = [-1] * dom.n
    for xl, yl in raw.items():
        if xl not in dom._id_of:
            raise FileFormatError(f"{where}: values key {xl!r} is not a domain label")
        if str(yl) not in cod._id_of:
            raise FileFormatError(f"{where}: values[{xl!r}] = {yl!r} is not a codomain label")
        values[dom.id_of(xl)] = cod.id_of(str(yl))
    for x, v in enumerate(values):
        if v == -1:
            raise FileFormatError(f"{where}: no value for domain label {dom.labels[x]!r}")
    return LatticeMap(dom, cod, tuple(values))


def load_map(path: str | Path) -> LatticeMap:
    return map_from_dict(_load_json(path), str(path))


def map_to_dict(m: LatticeMap) -> dict:
    return {
        "domain": lattice_to_dict(m.domain),
        "codomain": lattice_to_dict(m.codomain),
        "values": {m.domain.labels[x]: m.codomain.labels[v] for x, v in enumerate(m.values)},
    }


def save_map(m: LatticeMap, path: str | Path) -> None:
    Path(path).write_text(json.dumps(map_to_dict(m), indent=2) + "\n", encoding="utf-8")


def _split_pair_key(key: str, lattice: Lattice, where: str) -> tuple[int, int]:
    """Split "xlabel,ylabel" at the unique comma yielding two valid labels."""
    hits = []
    for i, ch in enumerate(key):
        if ch != ",":
            continue
        a, b = key[:i], key[i + 1:]
        if a in lattice._id_of and b in lattice._id_of:
            hits.append((lattice.id_of(a), lattice.id_of(b)))
    if len(hits) != 1:
        kind = "no" if not hits else "an ambiguous"
        raise FileFormatError(f"{where}: key {key!r} has {kind} split into two labels")
    return hits[0]


def binary_table_from_dict(entries: dict, domain: Lattice, codomain: Lattice,
                           where: str) -> tuple[tuple[int, ...], ...]:
    """Parse a total X×X -> Y table keyed "xlabel,ylabel"."""
    if not isinstance(entries, dict):
        raise FileFormatError(f"{where}: expected an object of pair entries")
    table = [[-1] * domain.n for _ in range(domain.n)]
    for key, val in entries.items():
        x, y = _split_pair_key(key, domain, where)
        if str(val) not in codomain._id_of:
            raise FileFormatError(f"{where}[{key!r}]: unknown value label {val!r}")
        table[x][y] = codomain.id_of(str(val))
    for x in range(domain.n):
        for y in range(domain.n):
            if table[x][y] == -1:
                raise FileFormatError(f"{where}: missing entry for "
                                      f"({domain.labels[x]},{domain.labels[y]})")
    return tuple(tuple(row) for row in table)


def error_pair_from_dict(data: dict, domain: Lattice, codomain: Lattice,
                         where: str = "error-pair") -> ErrorPair:
    tables = {}
    for name in ("phi", "psi"):
        if name not in data or not isinstance(data[name], dict):
            raise FileFormatError(f"{where}: missing table {name!r}")
        tables[name] = binary_table_from_dict(data[name], domain, codomain,
                                              f"{where}.{name}")
    return ErrorPair(domain, codomain, tables["phi"], tables["psi"])


def load_error_pair(path: str | Path, domain: Lattice, codomain: Lattice) -> ErrorPair:
    return error_pair_from_dict(_load_json(path), domain, codomain, str(path))


def load_error_table(path: str | Path, name: str, domain: Lattice,
                     codomain: Lattice) -> tuple[tuple[int, ...], ...]:
    """One error table from its own file: either {"phi": {...}} or the bare table."""
    data = _load_json(path)
    entries = data.get(name, data)
    return binary_table_from_dict(entries, domain, codomain, f"{path}:{name}")


def neighborhood_from_dict(data: dict, lattice: Lattice,
                           where: str = "neighborhood") -> NeighborhoodSystem:
    if "builtin" in data:
        builtin = data["builtin"]
        if builtin == "principal-ideal":
            return principal_ideal_system(lattice)
        if builtin == "prime-support":
            if not all(lab.isdigit() for lab in lattice.labels) or not lattice.has_top:
                raise FileFormatError(f"{where}: prime-support needs a divisor lattice codomain")
            n = int(lattice.labels[lattice.top])
            if n < 1 or divisor_lattice(n) != lattice:
                raise FileFormatError(f"{where}: codomain is not the divisor lattice of {n}")
            return prime_support_system(n)
        if builtin == "congruence":
            if "classes" not in data:
                raise FileFormatError(f"{where}: congruence builtin needs 'classes'")
            classes = [[lattice.id_of(str(lab)) for lab in group] for group in data["classes"]]
            return congruence_system(Congruence.from_classes(lattice, classes))
        raise FileFormatError(f"{where}: unknown builtin {builtin!r}")
    if "classes" not in data or not isinstance(data["classes"], dict):
        raise FileFormatError(f"{where}: expected 'builtin' or a 'classes' object")
    sets = {}
    for zl, members in data["classes"].items():
        if zl not in lattice._id_of:
            raise FileFormatError(f"{where}: unknown class label {zl!r}")
        sets[lattice.id_of(zl)] = [lattice.id_of(str(m)) for m in members]
    missing = [lattice.labels[z] for z in lattice.elements if z not in sets]
    if missing:
        raise FileFormatError(f"{where}: no class for label {missing[0]!r}")
    return NeighborhoodSystem.from_sets(lattice, sets)


def load_neighborhood(path: str | Path, lattice: Lattice) -> NeighborhoodSystem:
    return neighborhood_from_dict(_load_json(path), lattice, str(path))


def _parse_fraction(text: str, where: str) -> Fraction:
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError):
        raise FileFormatError(f"{where}: {text!r} is not a rational p/q") from None


def fraction_str(q: Fraction) -> str:
    return str(q)


def load_finite_function(path: str | Path, epsilon=None) -> FiniteRealFunction:
    """CSV rows "x,f(x)" or JSON {"points": [[x, v], ...], "epsilon": "p/q"}."""
    path = Path(path)
    if path.suffix.lower() == ".json":
        data = _load_json(path)
        if "points" not in data:
            raise FileFormatError(f"{path}: missing 'points'")
        pairs = [(_parse_fraction(str(x), f"{path}:points[{i}]"),
                  _parse_fraction(str(v), f"{path}:points[{i}]"))
                 for i, (x, v) in enumerate(data["points"])]
        eps = epsilon if epsilon is not None else data.get("epsilon")
        if eps is None:
            raise FileFormatError(f"{path}: no epsilon given (file key or --eps)")
        return FiniteRealFunction.from_pairs(pairs, _parse_fraction(str(eps), str(path)))
    pairs = []
    for lineno, line in enumerate(path.read_text(encoding="utf-8").splitlines(), start=1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split(",")
        if len(parts) != 2:
            raise FileFormatError(f"{path}:{lineno}: expected 'x,f(x)'")
        pairs.append((_parse_fraction(parts[0], f"{path}:{lineno}"),
                      _parse_fraction(parts[1], f"{path}:{lineno}")))
    if epsilon is None:
        raise FileFormatError(f"{path}: CSV input needs --eps")
    return FiniteRealFunction.from_pairs(pairs, _parse_fraction(str(epsilon), str(path)))


def lattice_to_dot(lattice: Lattice, name: str = "hasse") -> str:
    """Hasse diagram in DOT format, bottom-up rank direction."""
    lines = [f"digraph {name} {{", "  rankdir=BT;"]
    for x in lattice.elements:
        lines.append(f'  n{x} [label="{lattice.labels[x]}"];')
    for c, p in lattice.covers():
        lines.append(f"  n{c} -> n{p};")
    lines.append("}")
    return "\n".join(lines) + "\n"
