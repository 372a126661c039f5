import itertools

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from semiconj.errors import DegreeMismatch, DegreeTooLarge, EmbeddingError, NotClosed
from semiconj.partial import (
    PartialInjection,
    compose,
    conj_action,
    cycles,
    dom,
    e_of,
    full_IS,
    im,
    inverse,
    lemma1_holds,
    preston_wagner,
    random_elements,
    stim,
    symmetric_inverse_monoid,
    symmetric_inverse_order,
    to_abstract,
)
from semiconj.semigroup import greens, idempotents, inverse_map, power_data


def pinj(n):
    """Strategy for partial injections of degree n."""
    return st.permutations(range(n)).flatmap(
        lambda perm: st.lists(st.booleans(), min_size=n, max_size=n).map(
            lambda keep: PartialInjection(tuple(p if k else None for p, k in zip(perm, keep)))
        )
    )


degrees = st.integers(1, 5)


def as_relation(a):
    return {(t, v) for t, v in enumerate(a.images) if v is not None}


def rel_compose(a, b):
    """Oracle: relational composition, b first then a."""
    return {(s, u) for s, t in b for t2, u in a if t == t2}


def stim_oracle(a):
    # points returned to themselves by some power: iterate the map until it leaves
    out = set()
    for t in range(a.degree):
        cur = t
        for _ in range(a.degree):
            cur = a(cur)
            if cur is None:
                break
            if cur == t:
                out.add(t)
                break
    return out


# ---- construction ------------------------------------------------------------

def test_constructors_and_str():
    assert str(PartialInjection.identity(3)) == "[0,1,2]"
    assert str(PartialInjection.empty(2)) == "[-,-]"
    assert PartialInjection.from_pairs(3, {0: 2}) == PartialInjection((2, None, None))
    assert PartialInjection.partial_identity(3, [1]).images == (None, 1, None)
    assert PartialInjection((1, None, 0)).rank == 2
    assert PartialInjection((1, 0)).to_json() == {"degree": 2, "images": [1, 0]}


@pytest.mark.parametrize("images", [(0, 0), (2, None), (-1, 0)])
def test_non_injective_rejected(images):
    with pytest.raises(ValueError):
        PartialInjection(images)


def test_degree_mismatch():
    with pytest.raises(DegreeMismatch):
        compose(PartialInjection((0,)), PartialInjection((0, 1)))


# ---- composition, inverse, stim -------------------------------------------

@settings(max_examples=200, deadline=None)
@given(degrees.flatmap(lambda n: st.tuples(pinj(n), pinj(n), pinj(n))))
def test_compose_matches_relations_and_associates(abc):
    a, b, c = abc
    assert as_relation(compose(a, b)) == rel_compose(as_relation(a), as_relation(b))
    assert compose(compose(a, b), c) == compose(a, compose(b, c))


@settings(max_examples=200, deadline=None)
@given(degrees.flatmap(pinj))
def test_inverse_laws(a):
    ai = inverse(a)
    assert compose(compose(a, ai), a) == a
    assert compose(compose(ai, a), ai) == ai
    assert inverse(ai) == a
    assert compose(ai, a) == PartialInjection.partial_identity(a.degree, dom(a))
    assert compose(a, ai) == PartialInjection.partial_identity(a.degree, im(a))


@settings(max_examples=200, deadline=None)
@given(degrees.flatmap(pinj))
def test_stim_and_e_of(a):
    s = stim(a)
    assert s == stim_oracle(a)
    assert {t for cyc in cycles(a) for t in cyc} == s
    e = e_of(a)
    assert compose(e, e) == e and dom(e) == s
    # e is the idempotent power of a
    powers = [a]
    for _ in range(2 * a.degree + 2):
        powers.append(compose(powers[-1], a))
    assert e in powers
    assert compose(a, e) == compose(e, a)


def test_stim_examples():
    assert stim(PartialInjection((1, None))) == frozenset()
    assert stim(PartialInjection((1, 0, None))) == {0, 1}
    assert stim(PartialInjection((0, 2, None))) == {0}
    assert e_of(PartialInjection((1, 0))) == PartialInjection.identity(2)


# ---- the action ------------------------------------------------------------

def test_conj_action_examples():
    swap = PartialInjection((1, 0))
    id0 = PartialInjection((0, None))
    id1 = PartialInjection((None, 1))
    assert conj_action(swap, id0) == id1
    assert conj_action(id0, swap) is None
    # undefined x with empty stim is always acted on
    nil = PartialInjection((1, None))
    assert conj_action(PartialInjection.empty(2), nil) == PartialInjection.empty(2)


@settings(max_examples=300, deadline=None)
@given(degrees.flatmap(lambda n: st.tuples(pinj(n), pinj(n))))
def test_conj_action_definedness(ax):
    a, x = ax
    r = conj_action(a, x)
    assert (r is not None) == (stim(x) <= dom(a))
    if r is not None:
        assert r == compose(compose(a, x), inverse(a))
        # the action preserves the cycle type on the stable image
        assert sorted(map(len, cycles(r))) == sorted(map(len, cycles(x)))


@settings(max_examples=500, deadline=None)
@given(degrees.flatmap(lambda n: st.tuples(pinj(n), pinj(n), pinj(n))))
def test_lemma1_property(abx):
    assert lemma1_holds(*abx)


def test_lemma1_exhaustive_is2():
    els = full_IS(2)
    assert all(lemma1_holds(a, b, x) for a, b, x in itertools.product(els, repeat=3))


# ---- enumeration -------------------------------------------------------------

@pytest.mark.parametrize("n,order", [(0, 1), (1, 2), (2, 7), (3, 34), (4, 209), (5, 1546)])
def test_full_is_order(n, order):
    assert symmetric_inverse_order(n) == order
    if n <= 4:
        els = full_IS(n)
        assert len(els) == len(set(els)) == order
        assert [a.rank for a in els] == sorted((a.rank for a in els), reverse=True)


def test_full_is_order_is2_ids():
    names = [str(a) for a in full_IS(2)]
    assert names == ["[0,1]", "[1,0]", "[-,0]", "[-,1]", "[0,-]", "[1,-]", "[-,-]"]


def test_full_is_degree_limit():
    with pytest.raises(DegreeTooLarge):
        full_IS(6)


def test_to_abstract_not_closed():
    with pytest.raises(NotClosed):
        to_abstract([PartialInjection((1, None))])


@pytest.mark.parametrize("n", [2, 3])
def test_abstract_is_n_structure(n):
    R = symmetric_inverse_monoid(n)
    S = R.semigroup
    assert S.identity == R.id_of(PartialInjection.identity(n))
    E = [int(e) for e in idempotents(S)]
    assert len(E) == 2 ** n
    g = greens(S)
    # L = same domain, R = same image, D = same rank
    for x in range(S.order):
        for y in range(S.order):
            a, b = R.element(x), R.element(y)
            assert g.L.same(x, y) == (dom(a) == dom(b))
            assert g.R.same(x, y) == (im(a) == im(b))
            assert g.D.same(x, y) == (a.rank == b.rank)
    pd = power_data(S)
    for x in range(S.order):
        assert R.element(pd.idempotent[x]) == e_of(R.element(x))


def test_random_elements_seeded():
    a = random_elements(4, 10, np.random.default_rng(1))
    b = random_elements(4, 10, np.random.default_rng(1))
    assert a == b and all(x.degree == 4 for x in a)


# ---- Preston-Wagner --------------------------------------------------------

@pytest.mark.parametrize("n", [1, 2, 3])
def test_preston_wagner_properties(n):
    R = symmetric_inverse_monoid(n)
    S = R.semigroup
    rho = preston_wagner(S)
    inv = inverse_map(S)
    assert len(set(rho)) == S.order
    assert all(r.degree == S.order for r in rho)
    for a in range(S.order):
        assert rho[inv[a]] == inverse(rho[a])
        for b in range(S.order):
            assert compose(rho[a], rho[b]) == rho[S.mul(a, b)]
    pd = power_data(S)
    for x in range(S.order):
        assert rho[pd.idempotent[x]] == e_of(rho[x])


def test_preston_wagner_is1():
    R = symmetric_inverse_monoid(1)
    rho = preston_wagner(R.semigroup)
    empty = R.id_of(PartialInjection.empty(1))
    assert rho[empty].rank == 1
    assert rho[R.semigroup.identity] == PartialInjection.identity(2)


def test_preston_wagner_rejects_non_inverse(T):
    from semiconj.errors import NotInverse

    with pytest.raises((NotInverse, EmbeddingError)):
        preston_wagner(T(2).semigroup)
