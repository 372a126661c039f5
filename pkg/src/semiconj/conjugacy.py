"""Conjugacy relations on finite semigroups.

All quantifiers over conjugating elements range over S^1 (the monoid hull);
witnesses therefore carry hull ids, where the adjoined identity (if any) has
id ``S.order``.  Resulting partitions are reported on S.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Literal

import numpy as np

from .errors import NoIdentity, NotInverse
from .partition import Partition, UnionFind
from .semigroup import (
    FiniteSemigroup,
    greens,
    idempotents,
    inverse_map,
    is_inverse,
    monoid_hull,
    power_data,
)

Relation = Literal["primary-closure", "action", "character", "group-units"]

WITNESS_LIMIT = 300


@dataclass(frozen=True)
class ConjugacyPartition:
    relation: str
    partition: Partition
    witnesses: dict = field(default_factory=dict, compare=False, repr=False)

    @property
    def classes(self) -> list[list[int]]:
        return self.partition.classes

    def same(self, x: int, y: int) -> bool:
        return self.partition.same(x, y)

    def to_json(self) -> dict:
        out = {"relation": self.relation, "classes": self.classes}
        if self.witnesses:
            out["witnesses"] = [
                {"pair": list(pair), "witness": list(w)} for pair, w in sorted(self.witnesses.items())
            ]
        return out


def _want_witnesses(S: FiniteSemigroup, witnesses: bool | None) -> bool:
    return S.order <= WITNESS_LIMIT if witnesses is None else witnesses


# ---------------------------------------------------------------------------
# primary conjugacy and its transitive closure


def primary_related(S: FiniteSemigroup, x: int, y: int) -> tuple[int, int] | None:
    """Least (u, v) in S^1 x S^1 with x = uv and y = vu, or None."""
    hull = monoid_hull(S)
    if x == y:
        return (hull.one, x)
    T = hull.semigroup.table
    hits = np.argwhere((T == x) & (T.T == y))
    if len(hits) == 0:
        return None
    u, v = hits[0]
    return int(u), int(v)


def primary_pairs(S: FiniteSemigroup) -> np.ndarray:
    """All pairs (uv, vu) for u, v in S^1 with both products in S, as a k x 2 array."""
    hull = monoid_hull(S)
    T = hull.semigroup.table
    pairs = np.stack([T.ravel(), T.T.ravel()], axis=1)
    n = S.order
    pairs = pairs[(pairs[:, 0] < n) & (pairs[:, 1] < n)]
    return np.unique(pairs, axis=0)


def tilde_classes(S: FiniteSemigroup, *, witnesses: bool | None = None) -> ConjugacyPartition:
    """Transitive closure of primary conjugacy."""
    keep = _want_witnesses(S, witnesses)

    def build():
        hull = monoid_hull(S)
        T = hull.semigroup.table
        uf = UnionFind(S.order)
        store = {}
        h = hull.semigroup.order
        for u in range(h):
            for v in range(h):
                x, y = int(T[u, v]), int(T[v, u])
                if x >= S.order or y >= S.order:
                    continue
                if uf.union(x, y) and keep:
                    store[(x, y)] = (u, v)
        return ConjugacyPartition("primary-closure", uf.partition(), store)

    return S.memo(("tilde", keep), build)


def primary_is_transitive(S: FiniteSemigroup) -> tuple[int, int, int] | None:
    """A triple with x ~p y, y ~p z but not x ~p z, or None if ~p is transitive."""
    n = S.order
    rel = np.zeros((n, n), dtype=bool)
    p = primary_pairs(S)
    rel[p[:, 0], p[:, 1]] = True
    np.fill_diagonal(rel, True)
    two = (rel.astype(np.int64) @ rel.astype(np.int64)) > 0
    bad = np.argwhere(two & ~rel)
    if len(bad) == 0:
        return None
    x, z = (int(v) for v in bad[0])
    y = int(np.flatnonzero(rel[x] & rel[:, z])[0])
    return x, y, z


# ---------------------------------------------------------------------------
# the partial conjugation action of S^1 on an inverse semigroup S


@dataclass(frozen=True)
class _ActionData:
    hull_table: np.ndarray
    inv: tuple[int, ...]  # inverses in the hull
    below: tuple[frozenset, ...]  # for each hull element f: {f*e : e idempotent}
    e_of: tuple[int, ...]


def _action_data(S: FiniteSemigroup) -> _ActionData:
    if not is_inverse(S):
        raise NotInverse("the conjugation action needs an inverse semigroup")

    def build():
        H = monoid_hull(S).semigroup
        T = H.table
        E = idempotents(H)
        below = tuple(frozenset(int(v) for v in T[f, E]) for f in range(H.order))
        return _ActionData(T, inverse_map(H), below, power_data(S).idempotent)

    return S.memo("action", build)


def act(S: FiniteSemigroup, a: int, x: int) -> int | None:
    """a . x = a x a^{-1} for a in S^1 (hull id), defined iff a^{-1}a >= e_x."""
    d = _action_data(S)
    T = d.hull_table
    if d.e_of[x] not in d.below[T[d.inv[a], a]]:
        return None
    return int(T[T[a, x], d.inv[a]])


def action_orbit_step(S: FiniteSemigroup, x: int) -> dict[int, int]:
    """{a.x: least a} over all a in S^1 for which the action is defined."""
    out: dict[int, int] = {}
    for a in range(monoid_hull(S).semigroup.order):
        z = act(S, a, x)
        if z is not None and z not in out:
            out[z] = a
    return out


def action_classes(S: FiniteSemigroup, *, witnesses: bool | None = None) -> ConjugacyPartition:
    """Transitive closure of x ~ a.x (conjugacy in the action sense)."""
    _action_data(S)
    keep = _want_witnesses(S, witnesses)

    def build():
        uf = UnionFind(S.order)
        store = {}
        for x in range(S.order):
            for z, a in action_orbit_step(S, x).items():
                if uf.union(x, z) and keep:
                    store[(x, z)] = (a,)
        return ConjugacyPartition("action", uf.partition(), store)

    return S.memo(("action_classes", keep), build)


def one_step_witness(S: FiniteSemigroup, x: int, y: int) -> tuple[int, int, int] | None:
    """(z, a, b) with a.x = b.y = z, or None if no such triple exists.

    The constructive route is tried first: z = x e_x reached by a = e_x, and
    b = t e_y with t in L_{e_y} and R_{e_x}.  Otherwise every pair is scanned.
    """
    hull = monoid_hull(S)
    if x == y:
        return (x, hull.one, hull.one)
    _action_data(S)
    ex, ey = power_data(S).idempotent[x], power_data(S).idempotent[y]
    z = S.mul(x, ex)
    if act(S, ex, x) == z:
        g = greens(S)
        for t in range(S.order):
            if g.L.same(t, ey) and g.R.same(t, ex):
                b = S.mul(t, ey)
                if act(S, b, y) == z:
                    return (z, ex, b)
    from_x = action_orbit_step(S, x)
    from_y = action_orbit_step(S, y)
    common = sorted(set(from_x) & set(from_y))
    if not common:
        return None
    z = common[0]
    return (z, from_x[z], from_y[z])


def one_step_matrix(S: FiniteSemigroup) -> np.ndarray:
    """Boolean matrix M[x, y]: some z is reachable from both x and y in one action step."""
    n = S.order
    reach = np.zeros((n, n), dtype=np.float64)
    for x in range(n):
        reach[x, list(action_orbit_step(S, x))] = 1.0
    return (reach @ reach.T) > 0


# ---------------------------------------------------------------------------
# conjugacy by the group of units


def unit_group(S: FiniteSemigroup) -> list[int]:
    if S.identity is None:
        raise NoIdentity("G-conjugacy needs a monoid")
    return greens(S).H.class_of(S.identity)


def g_conjugacy_classes(S: FiniteSemigroup) -> ConjugacyPartition:
    """Orbits of x -> g x g^{-1}, g ranging over the units."""
    units = unit_group(S)
    T = S.table
    uf = UnionFind(S.order)
    store = {}
    for g in units:
        ginv = next(h for h in units if T[g, h] == S.identity)
        for x in range(S.order):
            y = int(T[T[g, x], ginv])
            if uf.union(x, y):
                store[(x, y)] = (g,)
    return ConjugacyPartition("group-units", uf.partition(), store)


# ---------------------------------------------------------------------------
# verification


@dataclass
class VerificationReport:
    claim: str
    passed: bool
    hypotheses: dict = field(default_factory=dict)
    checks: dict = field(default_factory=dict)
    details: dict = field(default_factory=dict)
    counterexample: dict | None = None

    def to_json(self) -> dict:
        return {
            "claim": self.claim,
            "passed": self.passed,
            "hypotheses": self.hypotheses,
            "checks": self.checks,
            "details": self.details,
            "counterexample": self.counterexample,
        }


def check_witnesses(S: FiniteSemigroup, cp: ConjugacyPartition) -> list:
    """Return the stored witnesses that fail to recompute (empty when all hold)."""
    T = monoid_hull(S).semigroup.table
    bad = []
    for (x, y), w in cp.witnesses.items():
        if cp.relation == "primary-closure":
            u, v = w
            ok = T[u, v] == x and T[v, u] == y
        elif cp.relation == "action":
            ok = act(S, w[0], x) == y
        elif cp.relation == "group-units":
            g = w[0]
            ginv = next(h for h in unit_group(S) if T[g, h] == S.identity)
            ok = T[T[g, x], ginv] == y
        else:
            ok = True
        if not ok or not cp.same(x, y):
            bad.append(((x, y), w))
    return bad


def verify_theorem2(S: FiniteSemigroup) -> VerificationReport:
    """~ equals the action relation, and ~ holds iff a one-step witness exists."""
    if not is_inverse(S):
        raise NotInverse("Theorem 2 needs an inverse semigroup")
    tilde = tilde_classes(S)
    action = action_classes(S)
    report = VerificationReport("theorem2", True, hypotheses={"inverse": True})
    report.checks["tilde_equals_action"] = tilde.partition == action.partition
    if not report.checks["tilde_equals_action"]:
        report.counterexample = {"tilde": tilde.classes, "action": action.classes}
    one_step = one_step_matrix(S)
    same = tilde.partition.as_array()
    same = same[:, None] == same[None, :]
    mismatch = np.argwhere(one_step != same)
    report.checks["one_step_iff_tilde"] = len(mismatch) == 0
    if len(mismatch) and report.counterexample is None:
        x, y = (int(v) for v in mismatch[0])
        report.counterexample = {
            "pair": [x, y],
            "tilde": bool(same[x, y]),
            "one_step": bool(one_step[x, y]),
        }
    report.details = {"order": S.order, "classes": len(tilde.partition)}
    report.passed = all(report.checks.values())
    return report
