"""JSON formats for semigroups, partial injections and generator sets."""

from __future__ import annotations

import hashlib
import json
from pathlib import Path

from .errors import ParamOutOfRange, ParseError, SemigroupError
from .families import build_family, compose_maps, transformation_name
from .partial import PartialInjection, compose
from .semigroup import Closure, FiniteSemigroup, closure_from_generators, make_from_table

# largest parameter accepted without --force, per family
SIZE_GUARDS = {"is": 4, "t": 4, "sym": 5, "cyclic": 200, "monogenic": 500}
FORCED_LIMITS = {"is": 5, "t": 5, "sym": 5, "cyclic": 2000, "monogenic": 5000}


def semigroup_to_json(S: FiniteSemigroup, provenance: dict | None = None) -> dict:
    out = {
        "order": S.order,
        "table": S.table.tolist(),
        "names": list(S.names) if S.names is not None else None,
        "identity": S.identity,
    }
    if provenance is not None:
        out["provenance"] = provenance
    return out


def dumps_semigroup(S: FiniteSemigroup, provenance: dict | None = None) -> str:
    """Deterministic text: header keys first, one table row per line."""
    d = semigroup_to_json(S, provenance)
    rows = ",\n  ".join(json.dumps(row) for row in d["table"])
    parts = [f'"order": {d["order"]}', f'"table": [\n  {rows}\n]']
    parts.append(f'"names": {json.dumps(d["names"])}')
    parts.append(f'"identity": {json.dumps(d["identity"])}')
    if provenance is not None:
        parts.append(f'"provenance": {json.dumps(provenance, sort_keys=True)}')
    return "{" + ",\n".join(parts) + "}\n"


def semigroup_from_json(d: dict, *, validate: bool = True) -> FiniteSemigroup:
    try:
        order = int(d["order"])
        table = d["table"]
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError(f"semigroup JSON needs 'order' and 'table': {exc}") from exc
    if not isinstance(table, list) or not all(isinstance(r, list) for r in table):
        raise ParseError("'table' must be a list of rows")
    S = make_from_table(order, table, d.get("names"), validate=validate)
    if d.get("identity") is not None and d["identity"] != S.identity:
        raise ParseError(f"declared identity {d['identity']} is not an identity")
    return S


def digest(S: FiniteSemigroup) -> str:
    canon = json.dumps(semigroup_to_json(S), sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(canon.encode()).hexdigest()


def partial_injection_from_json(d: dict) -> PartialInjection:
    try:
        images = tuple(d["images"])
        degree = int(d.get("degree", len(images)))
    except (KeyError, TypeError) as exc:
        raise ParseError(f"bad partial injection: {exc}") from exc
    if len(images) != degree:
        raise ParseError(f"{len(images)} images for degree {degree}")
    try:
        return PartialInjection(images)
    except ValueError as exc:
        raise ParseError(str(exc)) from exc


def closure_from_generator_json(d: dict) -> Closure:
    """Generator-set JSON: {"degree": n, "kind": ..., "generators": [[...], ...]}."""
    kind = d.get("kind", "partial_injection")
    try:
        degree = int(d["degree"])
        gens = d["generators"]
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError(f"generator JSON needs 'degree' and 'generators': {exc}") from exc
    for g in gens:
        if len(g) != degree:
            raise ParseError(f"generator {g} does not have degree {degree}")
    if kind == "partial_injection":
        elems = [partial_injection_from_json({"degree": degree, "images": g}) for g in gens]
        return closure_from_generators(elems, compose)
    if kind == "transformation":
        maps = [tuple(int(v) for v in g) for g in gens]
        if any(not 0 <= v < degree for g in maps for v in g):
            raise ParseError("transformation image out of range")
        return closure_from_generators(maps, compose_maps, names=transformation_name)
    raise ParseError(f"unknown generator kind {kind!r}")


def parse_family_token(text: str) -> tuple[str, list[int]] | None:
    """'is:3' -> ('is', [3]); 'monogenic:2,1' -> ('monogenic', [2, 1]); paths -> None."""
    if ":" not in text or Path(text).exists():
        return None
    name, _, rest = text.partition(":")
    try:
        params = [int(p) for p in rest.split(",") if p]
    except ValueError as exc:
        raise ParamOutOfRange(f"bad family parameters in {text!r}") from exc
    return name.lower(), params


def check_size(name: str, params: list[int], force: bool) -> None:
    if name not in SIZE_GUARDS:
        raise ParamOutOfRange(f"unknown family {name!r}")
    size = sum(params) if name == "monogenic" else (params[0] if params else 0)
    limit = FORCED_LIMITS[name] if force else SIZE_GUARDS[name]
    if size > limit:
        hint = "" if force or size > FORCED_LIMITS[name] else " (use --force)"
        raise ParamOutOfRange(f"{name} {params} exceeds the size guard {limit}{hint}")


def load_semigroup(text: str, *, force: bool = False) -> FiniteSemigroup:
    """Load a semigroup from a JSON file (table or generator set) or a family token."""
    token = parse_family_token(text)
    if token is not None:
        name, params = token
        check_size(name, params, force)
        return build_family(name, params)
    try:
        data = json.loads(Path(text).read_text())
    except OSError as exc:
        raise SemigroupError(f"cannot read {text}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ParseError(f"{text}: {exc}") from exc
    if isinstance(data, dict) and "generators" in data:
        return closure_from_generator_json(data).semigroup
    if not isinstance(data, dict):
        raise ParseError(f"{text}: expected a JSON object")
    return semigroup_from_json(data)
