import itertools

import pytest

from semiconj.conjugacy import (
    act,
    action_classes,
    action_orbit_step,
    check_witnesses,
    g_conjugacy_classes,
    one_step_matrix,
    one_step_witness,
    primary_is_transitive,
    primary_pairs,
    primary_related,
    tilde_classes,
    unit_group,
    verify_theorem2,
)
from semiconj.errors import NoIdentity, NotInverse
from semiconj.families import cyclic_group
from semiconj.partial import PartialInjection, compose, conj_action, cycles
from semiconj.partition import Partition
from semiconj.semigroup import monogenic, monoid_hull


def closure_oracle(n, related):
    """Equivalence generated by a relation: symmetrise, then Warshall."""
    R = [[x == y or related(x, y) or related(y, x) for y in range(n)] for x in range(n)]
    for k in range(n):
        for i in range(n):
            if R[i][k]:
                for j in range(n):
                    R[i][j] = R[i][j] or R[k][j]
    labels = [min(j for j in range(n) if R[i][j]) for i in range(n)]
    return Partition.from_labels(labels)


def primary_oracle(S):
    h = monoid_hull(S).semigroup
    n = S.order
    m = h.order
    rel = set()
    for u in range(m):
        for v in range(m):
            x, y = h.mul(u, v), h.mul(v, u)
            if x < n and y < n:
                rel.add((x, y))
    return rel


def concrete_action_partition(R):
    els = R.elements
    n = len(els)
    return closure_oracle(
        n,
        lambda x, y: any(conj_action(a, els[x]) == els[y] for a in els),
    )


# ---- primary conjugacy -------------------------------------------------------

@pytest.mark.parametrize("family,n", [("is", 2), ("is", 3), ("t", 2), ("t", 3)])
def test_primary_pairs_match_oracle(IS, T, family, n):
    S = (IS if family == "is" else T)(n).semigroup
    got = {tuple(p) for p in primary_pairs(S).tolist()}
    assert got == primary_oracle(S)


def test_primary_related_is2(IS):
    R = IS(2)
    S = R.semigroup
    id0 = R.id_of(PartialInjection((0, None)))
    id1 = R.id_of(PartialInjection((None, 1)))
    u, v = primary_related(S, id0, id1)
    h = monoid_hull(S).semigroup
    assert h.mul(u, v) == id0 and h.mul(v, u) == id1
    # least lexicographic valid pair
    pairs = [(a, b) for a in range(h.order) for b in range(h.order)
             if h.mul(a, b) == id0 and h.mul(b, a) == id1]
    assert (u, v) == min(pairs)
    assert primary_related(S, id0, id0) == (S.identity, id0)


def test_primary_related_none_across_ranks(IS):
    R = IS(2)
    S = R.semigroup
    assert primary_related(S, S.identity, R.id_of(PartialInjection((0, None)))) is None


def test_primary_related_uses_adjoined_one():
    S = monogenic(2, 1)
    assert primary_related(S, 0, 0) == (2, 0)
    assert primary_related(S, 0, 1) is None


def test_primary_transitivity():
    from semiconj.families import symmetric_inverse

    assert primary_is_transitive(symmetric_inverse(2).semigroup) is None
    S = symmetric_inverse(3).semigroup
    w = primary_is_transitive(S)
    assert w is not None
    x, y, z = w
    rel = primary_oracle(S)
    assert (x, y) in rel and (y, z) in rel and (x, z) not in rel


# ---- tilde --------------------------------------------------------------------

@pytest.mark.parametrize("family,n", [("is", 2), ("is", 3), ("t", 2), ("t", 3)])
def test_tilde_matches_closure_oracle(IS, T, family, n):
    S = (IS if family == "is" else T)(n).semigroup
    rel = primary_oracle(S)
    cp = tilde_classes(S)
    assert cp.partition == closure_oracle(S.order, lambda x, y: (x, y) in rel)
    assert check_witnesses(S, cp) == []


def test_tilde_is2_classes(IS):
    R = IS(2)
    cp = tilde_classes(R.semigroup)
    named = sorted(sorted(str(R.element(x)) for x in c) for c in cp.classes)
    expected = [["[0,1]"], ["[1,0]"], ["[-,0]", "[-,-]", "[1,-]"], ["[-,1]", "[0,-]"]]
    assert named == sorted(sorted(c) for c in expected)


def test_tilde_is_partial_cycle_type(IS):
    """In IS(n), x ~ y iff x and y have the same cycle type on the stable image."""
    R = IS(3)
    S = R.semigroup
    cp = tilde_classes(S)
    key = [tuple(sorted(map(len, cycles(el)))) for el in R.elements]
    assert cp.partition == Partition.from_labels(key)


def test_tilde_monogenic_trivial():
    cp = tilde_classes(monogenic(2, 1))
    assert cp.classes == [[0], [1]]


def test_tilde_group_is_conjugacy(Sym):
    R = Sym(3)
    S = R.semigroup
    cp = tilde_classes(S)
    assert len(cp.classes) == 3
    conj = closure_oracle(6, lambda x, y: any(S.mul(g, x) == S.mul(y, g) for g in range(6)))
    assert cp.partition == conj


def test_conjugacy_json_shape(IS):
    d = tilde_classes(IS(2).semigroup).to_json()
    assert set(d) == {"relation", "classes", "witnesses"}
    assert all(set(w) == {"pair", "witness"} for w in d["witnesses"])


# ---- the action ------------------------------------------------------------

@pytest.mark.parametrize("n", [2, 3])
def test_abstract_action_matches_concrete(IS, n):
    R = IS(n)
    S = R.semigroup
    for a, x in itertools.product(range(S.order), repeat=2):
        want = conj_action(R.element(a), R.element(x))
        got = act(S, a, x)
        assert (got is None) == (want is None)
        if want is not None:
            assert R.element(got) == want


@pytest.mark.parametrize("n", [2, 3])
def test_action_classes_match_concrete(IS, n):
    R = IS(n)
    cp = action_classes(R.semigroup)
    assert cp.partition == concrete_action_partition(R)
    assert check_witnesses(R.semigroup, cp) == []


def test_action_orbit_step(IS):
    R = IS(2)
    S = R.semigroup
    id0 = R.id_of(PartialInjection((0, None)))
    step = action_orbit_step(S, id0)
    assert R.id_of(PartialInjection((None, 1))) in step
    for z, a in step.items():
        assert act(S, a, id0) == z
        assert all(act(S, b, id0) != z for b in range(a))


def test_action_requires_inverse(T):
    with pytest.raises(NotInverse):
        action_classes(T(2).semigroup)


# ---- one-step witnesses ------------------------------------------------------

def test_one_step_witness_example(IS):
    R = IS(2)
    S = R.semigroup
    x = R.id_of(PartialInjection((0, None)))
    y = R.id_of(PartialInjection((None, 1)))
    z, a, b = one_step_witness(S, x, y)
    assert act(S, a, x) == z == act(S, b, y)
    assert one_step_witness(S, S.identity, x) is None


@pytest.mark.parametrize("n", [2, 3])
def test_one_step_iff_tilde(IS, n):
    R = IS(n)
    S = R.semigroup
    M = one_step_matrix(S)
    tilde = tilde_classes(S).partition
    els = R.elements
    for x in range(S.order):
        for y in range(S.order):
            assert bool(M[x, y]) == tilde.same(x, y)
    # exhaustive concrete check that different classes share no common image
    for x, y in [(0, 1), (1, 2), (2, 3)]:
        if tilde.same(x, y):
            continue
        images_x = {conj_action(a, els[x]) for a in els} - {None}
        images_y = {conj_action(b, els[y]) for b in els} - {None}
        assert not images_x & images_y


def test_theorem2_report(IS):
    rep = verify_theorem2(IS(3).semigroup)
    assert rep.passed and rep.checks == {"tilde_equals_action": True, "one_step_iff_tilde": True}


# ---- G-conjugacy ---------------------------------------------------------------

def test_unit_group(IS):
    R = IS(3)
    units = unit_group(R.semigroup)
    assert len(units) == 6
    assert all(R.element(u).rank == 3 for u in units)
    with pytest.raises(NoIdentity):
        unit_group(monogenic(2, 1))


def test_g_conjugacy_is2(IS):
    R = IS(2)
    S = R.semigroup
    cp = g_conjugacy_classes(S)
    assert len(cp.classes) == 5
    tilde = tilde_classes(S).partition
    assert cp.partition.refines(tilde) and cp.partition != tilde
    assert check_witnesses(S, cp) == []


def test_g_conjugacy_abelian_group_discrete():
    cp = g_conjugacy_classes(cyclic_group(6))
    assert len(cp.classes) == 6


@pytest.mark.parametrize("n", [2, 3])
def test_g_conjugacy_concrete(IS, n):
    R = IS(n)
    els = R.elements
    perms = [a for a in els if a.rank == n]
    want = closure_oracle(
        len(els),
        lambda x, y: any(compose(compose(g, els[x]), g.__class__(tuple(
            g.images.index(t) for t in range(n)))) == els[y] for g in perms),
    )
    assert g_conjugacy_classes(R.semigroup).partition == want


def test_tilde_classes_no_witnesses_when_disabled(IS):
    cp = tilde_classes(IS(2).semigroup, witnesses=False)
    assert not cp.witnesses
