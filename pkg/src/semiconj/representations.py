"""Characters of finite semigroups built from their maximal subgroups.

Group character tables come from the Burnside-Dixon class-sum method in
floating point.  A character of a maximal subgroup H_e is induced to the
whole semigroup through the H-classes of the L-class of e; these induced
characters, one family per regular D-class, separate conjugacy classes of
regular semigroups and drive the character-sense conjugacy decision.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field

import numpy as np

from .conjugacy import VerificationReport, g_conjugacy_classes, tilde_classes
from .errors import (
    DegenerateEigenvalues,
    IrregularDClass,
    MultiplicativityViolation,
    NonUniqueSolution,
    NoSolution,
    NotGroup,
    NotIdempotent,
    NotRegular,
)
from .partition import Partition, UnionFind
from .semigroup import (
    FiniteSemigroup,
    greens,
    inverses_of,
    is_idempotent,
    is_regular,
    maximal_subgroup,
    monoid_hull,
    power_data,
)

DEFAULT_SEED = 0xC0FFEE
MATRIX_TOL = 1e-8
ORTHO_TOL = 1e-9
SNAP_TOL = 1e-6
MAX_GROUP_ORDER = 200
DIXON_ATTEMPTS = 10


def snap(values, tol: float = SNAP_TOL):
    """Round real and imaginary parts that lie within tol of an integer."""
    v = np.asarray(values, dtype=complex)
    re, imag = v.real.copy(), v.imag.copy()
    for part in (re, imag):
        r = np.round(part)
        close = np.abs(part - r) < tol
        part[close] = r[close]
    return re + 1j * imag


# ---------------------------------------------------------------------------
# group character tables


@dataclass(frozen=True)
class GroupCharacterTable:
    group_order: int
    classes: tuple[tuple[int, ...], ...]
    table: np.ndarray  # rows: irreducible characters, columns: classes
    labels: tuple[int, ...]  # class index of each group element
    identity: int

    @property
    def class_sizes(self) -> list[int]:
        return [len(c) for c in self.classes]

    @property
    def degrees(self) -> list[int]:
        col = self.labels[self.identity]
        return [int(round(v.real)) for v in self.table[:, col]]

    def on_elements(self, i: int) -> np.ndarray:
        """Character i as a vector over group element ids."""
        return self.table[i][list(self.labels)]

    def to_json(self) -> dict:
        t = snap(self.table)
        return {
            "group_order": self.group_order,
            "classes": self.class_sizes,
            "table": [[[float(v.real), float(v.imag)] for v in row] for row in t],
        }


def _require_group(G: FiniteSemigroup) -> list[int]:
    if G.identity is None:
        raise NotGroup("no identity element")
    T = G.table
    inv = []
    for g in range(G.order):
        hits = np.flatnonzero(T[g] == G.identity)
        if len(hits) == 0 or T[hits[0], g] != G.identity:
            raise NotGroup(f"element {g} has no inverse")
        inv.append(int(hits[0]))
    return inv


def character_table(G: FiniteSemigroup, seed: int = DEFAULT_SEED) -> GroupCharacterTable:
    """Irreducible characters of a group given as a table semigroup."""
    return G.memo(("chartable", seed), lambda: _character_table(G, seed))


def _character_table(G: FiniteSemigroup, seed: int) -> GroupCharacterTable:
    inv = _require_group(G)
    order = G.order
    if order > MAX_GROUP_ORDER:
        raise NotGroup(f"group order {order} exceeds {MAX_GROUP_ORDER}")
    conj = g_conjugacy_classes(G).partition
    labels = conj.as_array()
    classes = [tuple(c) for c in conj.classes]
    r = len(classes)
    sizes = np.array([len(c) for c in classes], dtype=float)
    T = G.table

    # consts[j, k, l] = #{(x, y) in C_j x C_k : xy = z_l} for a fixed z_l in C_l
    consts = np.zeros((r, r, r))
    xs = np.arange(order)
    for l, block in enumerate(classes):
        z = block[0]
        ys = T[np.asarray(inv)[xs], z]  # y = x^{-1} z
        np.add.at(consts, (labels[xs], labels[ys], l), 1.0)

    ident_class = int(labels[G.identity])
    rng = np.random.default_rng(seed)
    for _ in range(DIXON_ATTEMPTS):
        weights = rng.standard_normal(r)
        M = np.tensordot(weights, consts, axes=1)
        eigvals, vecs = np.linalg.eig(M)
        gaps = np.abs(eigvals[:, None] - eigvals[None, :])
        np.fill_diagonal(gaps, np.inf)
        if r == 1 or gaps.min() > 1e-6 * max(1.0, np.abs(eigvals).max()):
            break
    else:
        raise DegenerateEigenvalues(f"no simple spectrum after {DIXON_ATTEMPTS} attempts")

    rows = []
    for i in range(r):
        omega = vecs[:, i] / vecs[ident_class, i]  # central character, omega(1) = 1
        degree = np.sqrt(order / np.sum(np.abs(omega) ** 2 / sizes))
        degree = float(np.round(degree))
        rows.append(omega * degree / sizes)
    table = snap(np.array(rows), 1e-10)

    def key(row):
        return (round(row[ident_class].real), tuple((-round(v.real, 6), -round(v.imag, 6)) for v in row))

    table = np.array(sorted(table, key=key))
    out = GroupCharacterTable(order, tuple(classes), table, tuple(int(v) for v in labels), G.identity)
    _check_orthogonality(out)
    return out


def orthogonality_errors(ct: GroupCharacterTable) -> tuple[float, float]:
    """Max deviations of the normalised row and column orthogonality relations."""
    X = ct.table
    sizes = np.array(ct.class_sizes, dtype=float)
    g = ct.group_order
    rows = (X * sizes) @ X.conj().T / g
    cols = X.conj().T @ X * sizes[:, None] / g
    r = X.shape[0]
    return float(np.abs(rows - np.eye(r)).max()), float(np.abs(cols - np.eye(r)).max())


def _check_orthogonality(ct: GroupCharacterTable) -> None:
    row_err, col_err = orthogonality_errors(ct)
    if max(row_err, col_err) > ORTHO_TOL or sum(d * d for d in ct.degrees) != ct.group_order:
        raise DegenerateEigenvalues(
            f"character table failed validation (row {row_err:.2g}, column {col_err:.2g})"
        )


# ---------------------------------------------------------------------------
# representations and characters


@dataclass(frozen=True)
class Representation:
    dim: int
    matrices: np.ndarray  # shape (n, dim, dim)

    def character(self) -> np.ndarray:
        return np.trace(self.matrices, axis1=1, axis2=2)

    def multiplicativity_error(self, S: FiniteSemigroup) -> tuple[float, tuple[int, int]]:
        M = self.matrices
        worst, where = 0.0, (0, 0)
        for s in range(S.order):
            prod = np.einsum("ij,tjk->tik", M[s], M)
            err = np.abs(prod - M[S.table[s]]).max(axis=(1, 2))
            t = int(np.argmax(err))
            if err[t] > worst:
                worst, where = float(err[t]), (s, t)
        return worst, where

    def check(self, S: FiniteSemigroup, tol: float = MATRIX_TOL) -> None:
        err, (s, t) = self.multiplicativity_error(S)
        if err > tol:
            raise MultiplicativityViolation(s, t, err)


def trivial_representation(G: FiniteSemigroup) -> Representation:
    return Representation(1, np.ones((G.order, 1, 1), dtype=complex))


def regular_representation(G: FiniteSemigroup) -> Representation:
    """Translation representation s -> (e_h -> e_{sh}) on the basis of G."""
    n = G.order
    M = np.zeros((n, n, n), dtype=complex)
    for s in range(n):
        M[s, G.table[s], np.arange(n)] = 1.0
    return Representation(n, M)


def right_regular_representation(S: FiniteSemigroup) -> Representation:
    """Right translations of S^1, transposed so that the result is multiplicative.

    Its character at s counts the h in S^1 with h*s = h.
    """
    hull = monoid_hull(S)
    T = hull.semigroup.table
    m = hull.semigroup.order
    M = np.zeros((S.order, m, m), dtype=complex)
    for s in range(S.order):
        # right translation sends e_h to e_{hs}; store its transpose
        M[s, np.arange(m), T[:, s]] = 1.0
    return Representation(m, M)


@dataclass(frozen=True)
class CharacterVector:
    values: np.ndarray
    provenance: str

    def __getitem__(self, s: int) -> complex:
        return self.values[s]

    def trace_identity_error(self, S: FiniteSemigroup) -> float:
        """max |chi(uv) - chi(vu)| over u, v in S."""
        chi = self.values
        return float(np.abs(chi[S.table] - chi[S.table.T]).max())

    def to_json(self) -> dict:
        v = snap(self.values)
        return {
            "provenance": self.provenance,
            "values": {str(s): [float(z.real), float(z.imag)] for s, z in enumerate(v)},
        }


# ---------------------------------------------------------------------------
# L-class frames and induced characters


@dataclass(frozen=True)
class LClassFrame:
    idempotent: int
    hclasses: tuple[tuple[int, ...], ...]  # H_1 = H_e first
    reps: tuple[int, ...]  # a_i
    rep_inverses: tuple[int, ...]  # a'_i
    idempotent_count: int  # m
    subgroup: tuple[int, ...]  # members of H_e, in the order of its standalone group

    @property
    def k(self) -> int:
        return len(self.hclasses)


def lclass_frame(S: FiniteSemigroup, e: int, rng: np.random.Generator | None = None) -> LClassFrame:
    """Frame over the H-classes of L_e.

    Deterministically H_2..H_k are ordered by least member, a_i is the least
    idempotent of H_i (or its least member) and a'_i the least inverse of
    a_i.  Passing ``rng`` randomises the order and every choice while keeping
    a_1 = e and idempotent representatives for group H-classes.
    """
    if not is_idempotent(S, e):
        raise NotIdempotent(f"element {e} is not idempotent")
    g = greens(S)
    if not g.dclass_of(e).is_regular:  # pragma: no cover - e is an idempotent
        raise IrregularDClass(f"D-class of {e} is not regular")
    lclass = g.L.class_of(e)
    diag = np.diagonal(S.table)
    by_h: dict[int, list[int]] = {}
    for x in lclass:
        by_h.setdefault(g.H.labels[x], []).append(x)
    he = g.H.labels[e]
    others = [h for h in sorted(by_h, key=lambda h: by_h[h][0]) if h != he]
    if rng is not None:
        others = [others[i] for i in rng.permutation(len(others))]
    hclasses = [tuple(by_h[he])] + [tuple(by_h[h]) for h in others]

    def pick(options):
        options = list(options)
        return options[int(rng.integers(len(options)))] if rng is not None else options[0]

    reps, rep_inv = [], []
    for i, block in enumerate(hclasses):
        idem = [x for x in block if diag[x] == x]
        a = e if i == 0 else pick(idem or block)
        reps.append(a)
        rep_inv.append(pick(inverses_of(S, a)))
    m = sum(1 for x in lclass if diag[x] == x)
    sub = maximal_subgroup(S, e).embed
    return LClassFrame(e, tuple(hclasses), tuple(reps), tuple(rep_inv), m, sub)


def translate(S: FiniteSemigroup, frame: LClassFrame, s: int, i: int) -> tuple[int, int] | None:
    """For s*a_i in L_e return (j, s') with s*a_i = a_j*s' and s' in H_e (0-based j).

    s' is returned as an id of S; None means s*a_i falls outside L_e.
    """
    sa = S.mul(s, frame.reps[i])
    for j, block in enumerate(frame.hclasses):
        if sa in block:
            break
    else:
        return None
    T = S.table
    aj = frame.reps[j]
    sols = [h for h in frame.subgroup if T[aj, h] == sa]
    if not sols:
        raise NoSolution(f"no s' with a_{j + 1} s' = {sa}")
    if len(sols) > 1:
        raise NonUniqueSolution(f"several s' with a_{j + 1} s' = {sa}: {sols}")
    return j, sols[0]


def translation_table(S: FiniteSemigroup, frame: LClassFrame) -> list[list[tuple[int, int] | None]]:
    return [[translate(S, frame, s, i) for i in range(frame.k)] for s in range(S.order)]


def induced_character(
    S: FiniteSemigroup, frame: LClassFrame, chi, provenance: str = "induced"
) -> CharacterVector:
    """Trace of the induced representation: sum of chi(s') over diagonal blocks.

    ``chi`` is indexed by the standalone ids of H_e (``frame.subgroup`` order).
    """
    chi = np.asarray(chi, dtype=complex)
    pos = {x: p for p, x in enumerate(frame.subgroup)}
    values = np.zeros(S.order, dtype=complex)
    for s in range(S.order):
        for i in range(frame.k):
            hit = translate(S, frame, s, i)
            if hit is not None and hit[0] == i:
                values[s] += chi[pos[hit[1]]]
    return CharacterVector(values, provenance)


def induced_rep_matrices(S: FiniteSemigroup, frame: LClassFrame, phi: Representation) -> Representation:
    """Block matrices on k copies of the H_e-module; block (j, i) holds phi(s')."""
    d, k = phi.dim, frame.k
    pos = {x: p for p, x in enumerate(frame.subgroup)}
    M = np.zeros((S.order, k * d, k * d), dtype=complex)
    for s in range(S.order):
        for i in range(k):
            hit = translate(S, frame, s, i)
            if hit is not None:
                j, sp = hit
                M[s, j * d : (j + 1) * d, i * d : (i + 1) * d] = phi.matrices[pos[sp]]
    rep = Representation(k * d, M)
    rep.check(S)
    return rep


def schutzenberger_family(S: FiniteSemigroup, seed: int = DEFAULT_SEED) -> list[CharacterVector]:
    """Induced irreducible characters, for the least idempotent of every regular D-class."""

    def build():
        out = []
        for d in greens(S).dclasses:
            if not d.is_regular:
                continue
            e = min(d.idempotents)
            frame = lclass_frame(S, e)
            ct = character_table(maximal_subgroup(S, e).group, seed)
            for i in range(ct.table.shape[0]):
                out.append(
                    induced_character(S, frame, ct.on_elements(i), f"D{d.index}:e={e}:chi{i}")
                )
        return out

    return S.memo(("family", seed), build)


def witness_family(S: FiniteSemigroup, seed: int = DEFAULT_SEED) -> list[CharacterVector]:
    """The induced family plus the right regular character of S^1."""
    reg = right_regular_representation(S).character()
    return schutzenberger_family(S, seed) + [CharacterVector(reg, "right-regular")]


def reduce_to_group_part(S: FiniteSemigroup, x: int) -> int:
    return S.mul(x, power_data(S).idempotent[x])


# ---------------------------------------------------------------------------
# the character-sense decision


class Verdict(enum.Enum):
    EQUIVALENT = "EQUIVALENT"
    DISTINCT = "DISTINCT"
    UNKNOWN = "UNKNOWN"


@dataclass(frozen=True)
class CharDecision:
    verdict: Verdict
    reason: str
    evidence: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {"verdict": self.verdict.value, "reason": self.reason, "evidence": self.evidence}


def char_equal_decision(S: FiniteSemigroup, x: int, y: int, seed: int = DEFAULT_SEED) -> CharDecision:
    if x == y:
        return CharDecision(Verdict.EQUIVALENT, "identical")
    for chi in witness_family(S, seed):
        if abs(chi[x] - chi[y]) > MATRIX_TOL:
            vx, vy = snap([chi[x], chi[y]])
            return CharDecision(
                Verdict.DISTINCT,
                "separating character",
                {"character": chi.provenance, "values": [_cjson(vx), _cjson(vy)]},
            )
    rx, ry = reduce_to_group_part(S, x), reduce_to_group_part(S, y)
    if rx == ry:
        return CharDecision(Verdict.EQUIVALENT, "reduction", {"x*e_x": rx, "y*e_y": ry})
    if is_regular(S):
        return CharDecision(Verdict.EQUIVALENT, "regular: family agrees", {})
    return CharDecision(Verdict.UNKNOWN, "non-regular: family agrees, reductions differ", {})


def _cjson(z: complex) -> float | list[float]:
    return float(z.real) if z.imag == 0 else [float(z.real), float(z.imag)]


def family_partition(S: FiniteSemigroup, seed: int = DEFAULT_SEED, tol: float = MATRIX_TOL) -> Partition:
    """Elements grouped by agreement on every character of the witness family."""
    chars = np.array([c.values for c in witness_family(S, seed)])  # (f, n)
    uf = UnionFind(S.order)
    for x in range(S.order):
        close = np.all(np.abs(chars - chars[:, [x]]) <= tol, axis=0)
        for y in np.flatnonzero(close):
            uf.union(x, int(y))
    return uf.partition()


def character_classes_partition(S: FiniteSemigroup, seed: int = DEFAULT_SEED) -> Partition:
    return family_partition(S, seed)


def group_elements(S: FiniteSemigroup) -> list[int]:
    """Elements lying in a subgroup, i.e. x = x e_x."""
    e = power_data(S).idempotent
    return [x for x in range(S.order) if S.mul(x, e[x]) == x]


def conjugating_pair(S: FiniteSemigroup, a: int, b: int) -> tuple[int, int] | None:
    """Least mutually inverse (t, t') with t t' = e_a, t' t = e_b and t b t' H a.

    a and b are group elements; the side conditions make b t' t = b.
    """
    g = greens(S)
    e = power_data(S).idempotent
    for t in g.dclass_of(a).members:
        for tp in inverses_of(S, t):
            if S.mul(t, tp) != e[a] or S.mul(tp, t) != e[b]:
                continue
            if g.H.same(S.mul(t, b, tp), a):
                return t, tp
    return None


def eq_a_chain(S: FiniteSemigroup, a: int, b: int, seed: int = DEFAULT_SEED) -> dict:
    """Check equal family characters along t b t', b t' t, b for ~-related group elements a, b."""
    pair = conjugating_pair(S, a, b)
    if pair is None:
        return {"a": a, "b": b, "found": False, "ok": False}
    t, tp = pair
    chain = [S.mul(t, b, tp), S.mul(b, tp, t), b, a]
    errs = [
        max(abs(c[u] - c[v]) for u, v in zip(chain, chain[1:]))
        for c in witness_family(S, seed)
    ]
    return {
        "a": a,
        "b": b,
        "t": t,
        "t_inv": tp,
        "chain": chain,
        "absorbs": S.mul(b, tp, t) == b,
        "max_error": float(max(errs)),
        "found": True,
        "ok": S.mul(b, tp, t) == b and max(errs) <= MATRIX_TOL,
    }


def verify_theorem1(S: FiniteSemigroup, seed: int = DEFAULT_SEED, spot_checks: int = 20) -> VerificationReport:
    if not is_regular(S):
        raise NotRegular("Theorem 1 needs a regular semigroup")
    report = VerificationReport("theorem1", True, hypotheses={"regular": True})
    tilde = tilde_classes(S).partition
    fam = family_partition(S, seed)
    report.checks["tilde_equals_family"] = tilde == fam
    if tilde != fam:
        report.counterexample = {"tilde": tilde.classes, "family": fam.classes}
    unknown = []
    inconsistent = []
    for x in range(S.order):
        for y in range(x + 1, S.order):
            v = char_equal_decision(S, x, y, seed).verdict
            if v is Verdict.UNKNOWN:
                unknown.append((x, y))
            elif (v is Verdict.EQUIVALENT) != tilde.same(x, y):
                inconsistent.append((x, y))
    report.checks["no_unknown"] = not unknown
    report.checks["decision_matches_tilde"] = not inconsistent
    if (unknown or inconsistent) and report.counterexample is None:
        report.counterexample = {"unknown": unknown[:5], "inconsistent": inconsistent[:5]}
    chains = [eq_a_chain(S, a, b, seed) for a, b in related_group_pairs(S)[:spot_checks]]
    report.checks["eq_a_chains"] = all(c["ok"] for c in chains)
    report.details = {
        "order": S.order,
        "classes": len(tilde),
        "family_size": len(witness_family(S, seed)),
        "chains_checked": len(chains),
    }
    report.passed = all(report.checks.values())
    return report


def related_group_pairs(S: FiniteSemigroup) -> list[tuple[int, int]]:
    """Ordered pairs a != b of ~-related group elements, lexicographically."""
    tilde = tilde_classes(S).partition
    grp = group_elements(S)
    return [(a, b) for a in grp for b in grp if a != b and tilde.same(a, b)]
