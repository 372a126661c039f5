"""Built-in semigroup families: T(n), S_n, C_n and IS(n) as table semigroups."""

from __future__ import annotations

import itertools

from .errors import ParamOutOfRange
from .partial import symmetric_inverse_monoid
from .semigroup import FiniteSemigroup, Realization, make_from_table, monogenic, realize

Transformation = tuple[int, ...]


def compose_maps(a: Transformation, b: Transformation) -> Transformation:
    """(a*b)(t) = a(b(t)), matching the partial-injection convention."""
    return tuple(a[v] for v in b)


def transformation_name(a: Transformation) -> str:
    return "[" + ",".join(map(str, a)) + "]"


def full_transformation_monoid(n: int) -> Realization:
    """T(n), ordered by image size descending then lexicographically."""
    if n < 1:
        raise ParamOutOfRange("degree must be positive")
    maps = sorted(itertools.product(range(n), repeat=n), key=lambda a: (-len(set(a)), a))
    return realize(maps, compose_maps, names=transformation_name)


def symmetric_group(n: int) -> Realization:
    if n < 1:
        raise ParamOutOfRange("degree must be positive")
    perms = list(itertools.permutations(range(n)))
    return realize(perms, compose_maps, names=transformation_name)


def cyclic_group(n: int) -> FiniteSemigroup:
    if n < 1:
        raise ParamOutOfRange("order must be positive")
    return make_from_table(n, [[(a + b) % n for b in range(n)] for a in range(n)],
                           [f"g^{k}" for k in range(n)], validate=False)


def symmetric_inverse(n: int) -> Realization:
    return symmetric_inverse_monoid(n)


def build_family(name: str, params: list[int]) -> FiniteSemigroup:
    """Resolve a family token such as ``is 3`` or ``monogenic 2 1``."""
    arity = {"is": 1, "t": 1, "sym": 1, "cyclic": 1, "monogenic": 2}
    if name not in arity:
        raise ParamOutOfRange(f"unknown family {name!r}")
    if len(params) != arity[name]:
        raise ParamOutOfRange(f"family {name!r} takes {arity[name]} parameter(s)")
    if name == "is":
        return symmetric_inverse(params[0]).semigroup
    if name == "t":
        return full_transformation_monoid(params[0]).semigroup
    if name == "sym":
        return symmetric_group(params[0]).semigroup
    if name == "cyclic":
        return cyclic_group(params[0])
    return monogenic(*params)


__all__ = [
    "compose_maps",
    "full_transformation_monoid",
    "symmetric_group",
    "cyclic_group",
    "symmetric_inverse",
    "build_family",
]
