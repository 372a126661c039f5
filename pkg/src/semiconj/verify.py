"""Machine checks of the comparison theorems, one report per claim."""

from __future__ import annotations

import itertools

import numpy as np

from . import partial as pi
from .conjugacy import (
    VerificationReport,
    act,
    action_classes,
    tilde_classes,
    verify_theorem2,
)
from .errors import HypothesisNotMet, NotGroup, NotInverse
from .representations import (
    DEFAULT_SEED,
    MATRIX_TOL,
    CharacterVector,
    Verdict,
    char_equal_decision,
    character_table,
    eq_a_chain,
    family_partition,
    induced_character,
    induced_rep_matrices,
    lclass_frame,
    orthogonality_errors,
    regular_representation,
    related_group_pairs,
    snap,
    translate,
    trivial_representation,
    verify_theorem1,
    witness_family,
)
from .semigroup import (
    FiniteSemigroup,
    idempotents,
    is_inverse,
    is_regular,
    maximal_subgroup,
    monoid_hull,
    power_data,
)

LEMMA1_SAMPLES = 10_000


def verify_lemma1_concrete(n: int, samples: int | None = None, seed: int = DEFAULT_SEED) -> VerificationReport:
    """Lemma 1 on partial injections of degree n, exhaustive unless ``samples`` is given."""
    if samples is None:
        elems = pi.full_IS(n)
        triples = itertools.product(elems, repeat=3)
        mode = "exhaustive"
    else:
        rng = np.random.default_rng(seed)
        a, b, x = (pi.random_elements(n, samples, rng) for _ in range(3))
        triples = zip(a, b, x)
        mode = f"random({samples})"
    count = 0
    defined = 0
    failure = None
    for a, b, x in triples:
        count += 1
        if pi.conj_action(pi.compose(b, a), x) is not None:
            defined += 1
        if not pi.lemma1_holds(a, b, x):
            failure = {"a": str(a), "b": str(b), "x": str(x)}
            break
    return VerificationReport(
        "lemma1",
        failure is None,
        hypotheses={"inverse": True},
        checks={"definedness_and_values": failure is None},
        details={"degree": n, "mode": mode, "triples": count, "defined": defined},
        counterexample=failure,
    )


def verify_lemma1(S: FiniteSemigroup) -> VerificationReport:
    """Lemma 1 over the abstract action: a, b in S^1, x in S."""
    if not is_inverse(S):
        raise NotInverse("Lemma 1 needs an inverse semigroup")
    T = monoid_hull(S).semigroup.table
    h = T.shape[0]
    count = defined = 0
    failure = None
    for a in range(h):
        for b in range(h):
            ba = int(T[b, a])
            for x in range(S.order):
                count += 1
                whole = act(S, ba, x)
                first = act(S, a, x)
                second = None if first is None else act(S, b, first)
                defined += whole is not None
                if whole != second:
                    failure = {"a": a, "b": b, "x": x, "ba.x": whole, "b.(a.x)": second}
                    break
            if failure:
                break
        if failure:
            break
    return VerificationReport(
        "lemma1",
        failure is None,
        hypotheses={"inverse": True},
        checks={"definedness_and_values": failure is None},
        details={"order": S.order, "mode": "abstract", "triples": count, "defined": defined},
        counterexample=failure,
    )


def verify_example1(S: FiniteSemigroup, seed: int = DEFAULT_SEED) -> VerificationReport:
    """~ is trivial yet some x, y in distinct ~-classes are certified character-equivalent."""
    regular = is_regular(S)
    tilde = tilde_classes(S).partition
    certified = []
    for x in range(S.order):
        for y in range(x + 1, S.order):
            if tilde.same(x, y):
                continue
            d = char_equal_decision(S, x, y, seed)
            if d.verdict is Verdict.EQUIVALENT:
                certified.append({"pair": [x, y], "names": [S.name(x), S.name(y)], **d.to_json()})
    checks = {
        "not_regular": not regular,
        "tilde_trivial": len(tilde) == S.order,
        "mismatch_certified": bool(certified),
    }
    return VerificationReport(
        "example1",
        all(checks.values()),
        hypotheses={"regular": regular},
        checks=checks,
        details={"order": S.order, "tilde_classes": tilde.classes, "equivalent_pairs": certified},
        counterexample=None if all(checks.values()) else {"checks": checks},
    )


def verify_corollaries(S: FiniteSemigroup, seed: int = DEFAULT_SEED) -> VerificationReport:
    regular = is_regular(S)
    inverse = is_inverse(S)
    if not regular:
        raise HypothesisNotMet("the corollaries need a regular semigroup")
    tilde = tilde_classes(S).partition
    checks = {"tilde_equals_character": tilde == family_partition(S, seed)}
    if inverse:
        checks["tilde_equals_action"] = tilde == action_classes(S).partition
    passed = all(checks.values())
    return VerificationReport(
        "corollaries",
        passed,
        hypotheses={"regular": regular, "inverse": inverse},
        checks=checks,
        details={"order": S.order, "classes": tilde.classes},
        counterexample=None if passed else {"checks": checks},
    )


def verify_preston_wagner(S: FiniteSemigroup) -> VerificationReport:
    if not is_inverse(S):
        raise NotInverse("the Preston-Wagner embedding needs an inverse semigroup")
    rho = pi.preston_wagner(S)  # raises on non-injective / non-multiplicative / inverse mismatch
    e = power_data(S).idempotent
    bad = [x for x in range(S.order) if rho[e[x]] != pi.e_of(rho[x])]
    return VerificationReport(
        "preston-wagner",
        not bad,
        hypotheses={"inverse": True},
        checks={"injective_homomorphism": True, "inverse_compatible": True, "idempotent_power": not bad},
        details={"order": S.order, "degree": S.order, "images": [str(r) for r in rho]},
        counterexample={"element": bad[0]} if bad else None,
    )


def _frames(S: FiniteSemigroup):
    for e in idempotents(S):
        yield int(e), lclass_frame(S, int(e))


def verify_trace_identity(S: FiniteSemigroup, seed: int = DEFAULT_SEED) -> VerificationReport:
    """chi(uv) = chi(vu) for every constructed character vector."""
    vectors = list(witness_family(S, seed))
    for e, frame in _frames(S):
        G = maximal_subgroup(S, e).group
        for phi in (trivial_representation(G), regular_representation(G)):
            rep = induced_rep_matrices(S, frame, phi)
            vectors.append(CharacterVector(rep.character(), f"matrices:e={e}:dim={phi.dim}"))
    errs = {v.provenance: v.trace_identity_error(S) for v in vectors}
    worst = max(errs.values())
    return VerificationReport(
        "trace-identity",
        worst <= MATRIX_TOL,
        checks={"uv_vu": worst <= MATRIX_TOL},
        details={"vectors": len(vectors), "max_error": worst},
        counterexample=None if worst <= MATRIX_TOL else {"errors": errs},
    )


def verify_induced(S: FiniteSemigroup, seed: int = DEFAULT_SEED) -> VerificationReport:
    """Block matrices against the trace formula, and the values on H_e.

    ``scaling_by_m`` asserts chi-bar = m chi on H_e.  ``subgroup_columns``
    asserts that for s in H_e exactly the idempotent columns a_i stay in L_e
    and land in block 1 with s' = s; ``restriction_equals_chi`` asserts the
    resulting trace chi-bar = chi on H_e.
    """
    worst = 0.0
    scaling_failures = []
    columns_ok = restriction_ok = True
    frames = 0
    for e, frame in _frames(S):
        frames += 1
        G = maximal_subgroup(S, e).group
        for phi in (trivial_representation(G), regular_representation(G)):
            rep = induced_rep_matrices(S, frame, phi)
            chi = induced_character(S, frame, phi.character())
            worst = max(worst, float(np.abs(rep.character() - chi.values).max()))
        diag = S.table.diagonal()
        for s in frame.subgroup:
            for i, a in enumerate(frame.reps):
                hit = translate(S, frame, s, i)
                expect = (0, s) if diag[a] == a else None
                columns_ok &= hit == expect
        ct = character_table(G, seed)
        for i in range(ct.table.shape[0]):
            base = ct.on_elements(i)
            chi = induced_character(S, frame, base)
            lhs = snap(chi.values[list(frame.subgroup)])
            restriction_ok &= bool(np.array_equal(lhs, snap(base)))
            if not np.array_equal(lhs, snap(frame.idempotent_count * base)):
                scaling_failures.append({"idempotent": e, "m": frame.idempotent_count, "character": i})
    checks = {
        "matrices_match_character": worst <= MATRIX_TOL,
        "scaling_by_m": not scaling_failures,
        "subgroup_columns": bool(columns_ok),
        "restriction_equals_chi": bool(restriction_ok),
    }
    return VerificationReport(
        "induced",
        all(checks.values()),
        checks=checks,
        details={"frames": frames, "max_error": worst, "scaling_failures": len(scaling_failures)},
        counterexample=scaling_failures[0] if scaling_failures else None,
    )


def verify_character_table(G: FiniteSemigroup, seed: int = DEFAULT_SEED) -> VerificationReport:
    try:
        ct = character_table(G, seed)
    except NotGroup as exc:
        raise HypothesisNotMet(str(exc)) from exc
    row, col = orthogonality_errors(ct)
    checks = {
        "row_orthogonality": row <= 1e-9,
        "column_orthogonality": col <= 1e-9,
        "degree_sum": sum(d * d for d in ct.degrees) == G.order,
    }
    return VerificationReport(
        "character-table",
        all(checks.values()),
        hypotheses={"group": True},
        checks=checks,
        details={"order": G.order, "degrees": ct.degrees, "row_error": row, "column_error": col},
    )


def verify_eq_a(S: FiniteSemigroup, count: int = 20, seed: int = DEFAULT_SEED) -> VerificationReport:
    chains = [eq_a_chain(S, a, b, seed) for a, b in related_group_pairs(S)[:count]]
    bad = [c for c in chains if not c["ok"]]
    return VerificationReport(
        "eq-a",
        bool(chains) and not bad,
        checks={"chains": not bad, "enough_pairs": len(chains) == count},
        details={"pairs": len(chains), "max_error": max((c.get("max_error", 0.0) for c in chains), default=0.0)},
        counterexample=bad[0] if bad else None,
    )


CLAIMS = {
    "theorem1": lambda S, seed, **kw: verify_theorem1(S, seed),
    "theorem2": lambda S, seed, **kw: verify_theorem2(S),
    "lemma1": lambda S, seed, **kw: verify_lemma1(S),
    "example1": lambda S, seed, **kw: verify_example1(S, seed),
    "corollaries": lambda S, seed, **kw: verify_corollaries(S, seed),
    "preston-wagner": lambda S, seed, **kw: verify_preston_wagner(S),
    "trace-identity": lambda S, seed, **kw: verify_trace_identity(S, seed),
    "induced": lambda S, seed, **kw: verify_induced(S, seed),
    "character-table": lambda S, seed, **kw: verify_character_table(S, seed),
    "eq-a": lambda S, seed, count=20, **kw: verify_eq_a(S, count, seed),
}
