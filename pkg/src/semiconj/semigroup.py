"""Finite semigroups given by multiplication tables.

Elements are dense integer ids ``0..n-1``; ``S.table[a, b]`` is the product
``a*b``.  Derived data (Green's relations, power data, inverses, ...) is
computed on demand and memoised on the semigroup object, which is otherwise
immutable.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Callable, Hashable, Sequence

import numpy as np

from .errors import (
    AssociativityViolation,
    ClosureBudgetExceeded,
    IndexOutOfRange,
    IrregularDClass,
    NotIdempotent,
    NotInverse,
)
from .partition import Partition, partition_by_rows


@dataclass(frozen=True, eq=False)
class FiniteSemigroup:
    table: np.ndarray
    names: tuple[str, ...] | None = None
    identity: int | None = None
    _memo: dict = field(default_factory=dict, repr=False)

    @property
    def order(self) -> int:
        return self.table.shape[0]

    def __len__(self) -> int:
        return self.order

    def mul(self, *xs: int) -> int:
        out = xs[0]
        for x in xs[1:]:
            out = int(self.table[out, x])
        return int(out)

    def name(self, x: int) -> str:
        return self.names[x] if self.names is not None else str(x)

    def memo(self, key: Hashable, factory: Callable):
        if key not in self._memo:
            self._memo[key] = factory()
        return self._memo[key]

    def __eq__(self, other) -> bool:
        if not isinstance(other, FiniteSemigroup):
            return NotImplemented
        return (
            np.array_equal(self.table, other.table)
            and self.names == other.names
            and self.identity == other.identity
        )

    def __hash__(self) -> int:
        return hash((self.table.tobytes(), self.names))

    def __repr__(self) -> str:
        return f"FiniteSemigroup(order={self.order}, identity={self.identity})"


def check_associativity(table: np.ndarray) -> None:
    """Raise AssociativityViolation with the least failing triple, if any."""
    for a in range(table.shape[0]):
        left = table[table[a]]  # (a*b)*c indexed [b, c]
        right = table[a][table]  # a*(b*c) indexed [b, c]
        bad = np.argwhere(left != right)
        if len(bad):
            b, c = (int(v) for v in bad[0])
            raise AssociativityViolation(a, b, c, int(left[b, c]), int(right[b, c]))


def find_identity(table: np.ndarray) -> int | None:
    n = table.shape[0]
    ids = np.arange(n)
    for e in range(n):
        if np.array_equal(table[e], ids) and np.array_equal(table[:, e], ids):
            return e
    return None


def make_from_table(
    order: int,
    table: Sequence[Sequence[int]],
    names: Sequence[str] | None = None,
    *,
    validate: bool = True,
) -> FiniteSemigroup:
    """Build a semigroup from an ``order x order`` table; identity is auto-detected.

    ``validate=False`` skips the cubic associativity check and is meant for
    families that are associative by construction.
    """
    arr = np.asarray(table, dtype=np.int64)
    if order < 1 or arr.shape != (order, order):
        raise IndexOutOfRange(f"expected a {order}x{order} table, got shape {arr.shape}")
    if arr.min() < 0 or arr.max() >= order:
        bad = tuple(int(v) for v in np.argwhere((arr < 0) | (arr >= order))[0])
        raise IndexOutOfRange(f"table entry at {bad} is {arr[bad]}, outside [0, {order})")
    if names is not None:
        names = tuple(str(s) for s in names)
        if len(names) != order:
            raise IndexOutOfRange(f"{len(names)} names for {order} elements")
    if validate:
        check_associativity(arr)
    arr.setflags(write=False)
    return FiniteSemigroup(arr, names, find_identity(arr))


def monogenic(index: int, period: int) -> FiniteSemigroup:
    """The monogenic semigroup <x : x^index = x^(index+period)>.

    Element id k stands for x^(k+1).
    """
    if index < 1 or period < 1:
        raise ValueError("index and period must be positive")
    n = index + period - 1

    def reduce(e):
        return e if e < index + period else index + (e - index) % period

    table = [[reduce(a + b + 2) - 1 for b in range(n)] for a in range(n)]
    names = ["x" if k == 0 else f"x^{k + 1}" for k in range(n)]
    return make_from_table(n, table, names, validate=False)


@dataclass(frozen=True)
class Realization:
    """A table semigroup together with the concrete objects it was built from."""

    semigroup: FiniteSemigroup
    elements: tuple
    index: dict

    def id_of(self, element) -> int:
        return self.index[element]

    def element(self, i: int):
        return self.elements[i]


def realize(
    elements: Sequence,
    mult: Callable,
    *,
    names: Callable[[object], str] = str,
    validate: bool = False,
    on_missing: Callable | None = None,
) -> Realization:
    """Cayley table of a finite list of concrete elements closed under ``mult``."""
    elements = tuple(elements)
    index = {el: i for i, el in enumerate(elements)}
    n = len(elements)
    table = np.empty((n, n), dtype=np.int64)
    for i, a in enumerate(elements):
        for j, b in enumerate(elements):
            p = mult(a, b)
            k = index.get(p)
            if k is None:
                if on_missing is not None:
                    on_missing(a, b, p)
                raise KeyError(p)
            table[i, j] = k
    S = make_from_table(n, table, [names(el) for el in elements], validate=validate)
    return Realization(S, elements, index)


@dataclass(frozen=True)
class Closure:
    realization: Realization
    words: tuple[tuple[int, ...], ...]

    @property
    def semigroup(self) -> FiniteSemigroup:
        return self.realization.semigroup


def closure_from_generators(
    generators: Sequence,
    mult: Callable,
    *,
    budget: int = 10**6,
    names: Callable[[object], str] = str,
) -> Closure:
    """Enumerate the semigroup generated by ``generators`` breadth first.

    Ids follow discovery order, ``words[i]`` lists generator indices whose
    product is element i.  The table is filled from the right Cayley graph, so
    ``mult`` is only called ``n * len(generators)`` times.
    """
    if not generators:
        raise ValueError("need at least one generator")
    elements: list = []
    index: dict = {}
    words: list[tuple[int, ...]] = []
    queue: deque[int] = deque()

    def add(el, word):
        if el in index:
            return
        if len(elements) >= budget:
            raise ClosureBudgetExceeded(f"more than {budget} elements")
        index[el] = len(elements)
        elements.append(el)
        words.append(word)
        queue.append(index[el])

    for g, gen in enumerate(generators):
        add(gen, (g,))
    right: list[list[int]] = []
    while queue:
        i = queue.popleft()  # ids leave the queue in increasing order
        row = []
        for g, gen in enumerate(generators):
            p = mult(elements[i], gen)
            add(p, words[i] + (g,))
            row.append(index[p])
        right.append(row)
    graph = np.asarray(right, dtype=np.int64)
    n = len(elements)
    table = np.empty((n, n), dtype=np.int64)
    for j, word in enumerate(words):
        col = np.arange(n)
        for g in word:
            col = graph[col, g]
        table[:, j] = col
    S = make_from_table(n, table, [names(el) for el in elements], validate=False)
    return Closure(Realization(S, tuple(elements), index), tuple(words))


@dataclass(frozen=True)
class MonoidHull:
    """S^1: S itself if it has an identity, otherwise S with a fresh identity adjoined."""

    base: FiniteSemigroup
    semigroup: FiniteSemigroup
    one: int
    embed: tuple[int, ...]

    @property
    def adjoined(self) -> bool:
        return self.semigroup is not self.base


def monoid_hull(S: FiniteSemigroup) -> MonoidHull:
    def build():
        n = S.order
        if S.identity is not None:
            return MonoidHull(S, S, S.identity, tuple(range(n)))
        table = np.empty((n + 1, n + 1), dtype=np.int64)
        table[:n, :n] = S.table
        table[n, :] = np.arange(n + 1)
        table[:, n] = np.arange(n + 1)
        names = None if S.names is None else S.names + ("1",)
        hull = make_from_table(n + 1, table, names, validate=False)
        return MonoidHull(S, hull, n, tuple(range(n)))

    return S.memo("hull", build)


# ---------------------------------------------------------------------------
# Green's relations


@dataclass(frozen=True)
class DClassInfo:
    index: int
    members: tuple[int, ...]
    idempotents: tuple[int, ...]
    is_regular: bool
    rows: tuple[int, ...]  # R-class ids, by least member
    cols: tuple[int, ...]  # L-class ids, by least member
    grid: tuple[tuple[int, ...], ...]  # H-class id at [row][col]


@dataclass(frozen=True)
class GreensStructure:
    R: Partition
    L: Partition
    J: Partition
    H: Partition
    D: Partition
    dclasses: tuple[DClassInfo, ...]

    def dclass_of(self, x: int) -> DClassInfo:
        return self.dclasses[self.D.labels[x]]


def ideal_matrices(S: FiniteSemigroup) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Boolean membership matrices of xS^1, S^1x and S^1xS^1 (row x)."""
    n = S.order
    T = S.table
    rows = np.arange(n)[:, None]
    right = np.zeros((n, n), dtype=bool)
    right[rows, T] = True
    left = np.zeros((n, n), dtype=bool)
    left[rows, T.T] = True
    np.fill_diagonal(right, True)
    np.fill_diagonal(left, True)
    # z in S^1 x S^1  iff  z in S^1 y for some y in x S^1
    two = (right.astype(np.float64) @ left.astype(np.float64)) > 0
    return right, left, two


def greens(S: FiniteSemigroup) -> GreensStructure:
    return S.memo("greens", lambda: _greens(S))


def _greens(S: FiniteSemigroup) -> GreensStructure:
    right, left, two = ideal_matrices(S)
    R = partition_by_rows(right)
    L = partition_by_rows(left)
    J = partition_by_rows(two)
    H = R.meet(L)
    D = R.join(L)
    diag = np.diagonal(S.table)
    dinfo = []
    for k, members in enumerate(D.classes):
        idem = tuple(x for x in members if diag[x] == x)
        rows = tuple(sorted({R.labels[x] for x in members}))
        cols = tuple(sorted({L.labels[x] for x in members}))
        cell = {(R.labels[x], L.labels[x]): H.labels[x] for x in members}
        grid = tuple(tuple(cell[r, c] for c in cols) for r in rows)
        dinfo.append(DClassInfo(k, tuple(members), idem, bool(idem), rows, cols, grid))
    return GreensStructure(R, L, J, H, D, tuple(dinfo))


# ---------------------------------------------------------------------------
# powers, idempotents, regularity


@dataclass(frozen=True)
class PowerData:
    index: tuple[int, ...]
    period: tuple[int, ...]
    idempotent: tuple[int, ...]  # e_x


def power_data(S: FiniteSemigroup) -> PowerData:
    return S.memo("powers", lambda: _power_data(S))


def _power_data(S: FiniteSemigroup) -> PowerData:
    T = S.table
    index, period, idem = [], [], []
    for x in range(S.order):
        seen = {x: 1}
        powers = [x]
        cur = x
        # pigeonhole: a repeat occurs within n + 1 powers
        for k in range(2, S.order + 2):
            cur = int(T[cur, x])
            if cur in seen:
                i, p = seen[cur], k - seen[cur]
                break
            seen[cur] = k
            powers.append(cur)
        else:  # pragma: no cover - impossible for a valid table
            raise RuntimeError(f"no repeated power of {x}")
        cycle = powers[i - 1 : i - 1 + p]
        e = [y for y in cycle if T[y, y] == y]
        index.append(i)
        period.append(p)
        idem.append(e[0])
    return PowerData(tuple(index), tuple(period), tuple(idem))


def idempotents(S: FiniteSemigroup) -> np.ndarray:
    return np.flatnonzero(np.diagonal(S.table) == np.arange(S.order))


def is_idempotent(S: FiniteSemigroup, e: int) -> bool:
    return int(S.table[e, e]) == e


def is_regular(S: FiniteSemigroup) -> bool:
    def check():
        T = S.table
        return all(bool(np.any(T[T[x], x] == x)) for x in range(S.order))

    return S.memo("regular", check)


def is_inverse(S: FiniteSemigroup) -> bool:
    def check():
        if not is_regular(S):
            return False
        E = idempotents(S)
        block = S.table[np.ix_(E, E)]
        return bool(np.array_equal(block, block.T))

    return S.memo("inverse", check)


def inverses_of(S: FiniteSemigroup, a: int) -> list[int]:
    """All b with aba = a and bab = b, in id order."""
    T = S.table
    b = np.arange(S.order)
    ab = T[a, b]
    ok = (T[ab, a] == a) & (T[T[b, a], b] == b)
    return [int(v) for v in np.flatnonzero(ok)]


def inverse_map(S: FiniteSemigroup) -> tuple[int, ...]:
    """a -> a^{-1} for an inverse semigroup."""
    if not is_inverse(S):
        raise NotInverse("semigroup is not inverse")

    def build():
        out = []
        for a in range(S.order):
            inv = inverses_of(S, a)
            if len(inv) != 1:  # pragma: no cover - excluded by is_inverse
                raise NotInverse(f"element {a} has {len(inv)} inverses")
            out.append(inv[0])
        return tuple(out)

    return S.memo("inverse_map", build)


def unique_inverse(S: FiniteSemigroup, a: int) -> int:
    return inverse_map(S)[a]


@dataclass(frozen=True)
class MaximalSubgroup:
    group: FiniteSemigroup
    embed: tuple[int, ...]  # group id -> S id
    index: dict  # S id -> group id


def maximal_subgroup(S: FiniteSemigroup, e: int) -> MaximalSubgroup:
    if not is_idempotent(S, e):
        raise NotIdempotent(f"element {e} is not idempotent")

    def build():
        members = tuple(greens(S).H.class_of(e))
        index = {x: i for i, x in enumerate(members)}
        sub = S.table[np.ix_(members, members)]
        table = [[index[int(v)] for v in row] for row in sub]
        names = None if S.names is None else [S.names[x] for x in members]
        G = make_from_table(len(members), table, names, validate=False)
        return MaximalSubgroup(G, members, index)

    return S.memo(("maxsub", e), build)


def natural_order_leq(S: FiniteSemigroup, a: int, b: int) -> bool:
    """True iff a >= b in the natural partial order, i.e. b = a*e for an idempotent e."""
    if not is_inverse(S):
        raise NotInverse("the natural partial order is only defined here for inverse semigroups")
    E = idempotents(S)
    return bool(np.any(S.table[a, E] == b))


def require_regular_dclass(S: FiniteSemigroup, e: int) -> DClassInfo:
    d = greens(S).dclass_of(e)
    if not d.is_regular:
        raise IrregularDClass(f"D-class of {e} contains no idempotent")
    return d
