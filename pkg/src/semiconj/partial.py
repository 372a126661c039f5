"""The symmetric inverse monoid IS(n) of partial injections on ``{0..n-1}``.

Products use the convention ``(a*b)(t) = a(b(t))``: the right factor acts
first.  Under this convention, inside IS(n), elements are L-related iff they
have the same domain and R-related iff they have the same image.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .errors import DegreeMismatch, DegreeTooLarge, EmbeddingError, NotClosed
from .semigroup import FiniteSemigroup, Realization, inverse_map, realize

MAX_FULL_DEGREE = 5


@dataclass(frozen=True)
class PartialInjection:
    """``images[t]`` is the image of t, or None where undefined."""

    images: tuple[int | None, ...]

    def __post_init__(self):
        n = len(self.images)
        seen = set()
        for t, v in enumerate(self.images):
            if v is None:
                continue
            if not 0 <= v < n:
                raise ValueError(f"image {v} of {t} outside degree {n}")
            if v in seen:
                raise ValueError(f"{v} is the image of two points")
            seen.add(v)

    @classmethod
    def identity(cls, n: int) -> PartialInjection:
        return cls(tuple(range(n)))

    @classmethod
    def empty(cls, n: int) -> PartialInjection:
        return cls((None,) * n)

    @classmethod
    def from_pairs(cls, n: int, pairs: dict[int, int]) -> PartialInjection:
        return cls(tuple(pairs.get(t) for t in range(n)))

    @classmethod
    def partial_identity(cls, n: int, points: Iterable[int]) -> PartialInjection:
        pts = set(points)
        return cls(tuple(t if t in pts else None for t in range(n)))

    @property
    def degree(self) -> int:
        return len(self.images)

    @property
    def rank(self) -> int:
        return sum(v is not None for v in self.images)

    def __call__(self, t: int) -> int | None:
        return self.images[t]

    def __str__(self) -> str:
        return "[" + ",".join("-" if v is None else str(v) for v in self.images) + "]"

    def to_json(self) -> dict:
        return {"degree": self.degree, "images": list(self.images)}


def _check_degree(a: PartialInjection, b: PartialInjection) -> None:
    if a.degree != b.degree:
        raise DegreeMismatch(f"degrees {a.degree} and {b.degree} differ")


def compose(a: PartialInjection, b: PartialInjection) -> PartialInjection:
    """The product a*b: apply b, then a."""
    _check_degree(a, b)
    ai = a.images
    return PartialInjection(tuple(None if v is None else ai[v] for v in b.images))


def inverse(a: PartialInjection) -> PartialInjection:
    out: list[int | None] = [None] * a.degree
    for t, v in enumerate(a.images):
        if v is not None:
            out[v] = t
    return PartialInjection(tuple(out))


def dom(a: PartialInjection) -> frozenset[int]:
    return frozenset(t for t, v in enumerate(a.images) if v is not None)


def im(a: PartialInjection) -> frozenset[int]:
    return frozenset(v for v in a.images if v is not None)


def stim(a: PartialInjection) -> frozenset[int]:
    """Stable image: the points lying on cycles of a."""
    out = set()
    for t in range(a.degree):
        cur = a.images[t]
        for _ in range(a.degree):
            if cur is None:
                break
            if cur == t:
                out.add(t)
                break
            cur = a.images[cur]
    return frozenset(out)


def cycles(a: PartialInjection) -> list[tuple[int, ...]]:
    """Cycles of a, each starting at its least point, sorted."""
    out = []
    done: set[int] = set()
    for t in sorted(stim(a)):
        if t in done:
            continue
        cyc = [t]
        cur = a.images[t]
        while cur != t:
            cyc.append(cur)
            cur = a.images[cur]
        done.update(cyc)
        out.append(tuple(cyc))
    return out


def e_of(x: PartialInjection) -> PartialInjection:
    """The idempotent power of x: the identity on stim(x)."""
    return PartialInjection.partial_identity(x.degree, stim(x))


def conj_action(a: PartialInjection, x: PartialInjection) -> PartialInjection | None:
    """a . x = a x a^{-1} when dom(a) contains stim(x); None where undefined."""
    _check_degree(a, x)
    if not stim(x) <= dom(a):
        return None
    return compose(compose(a, x), inverse(a))


def _order_key(a: PartialInjection) -> tuple:
    return (-a.rank, tuple(-1 if v is None else v for v in a.images))


def full_IS(n: int) -> list[PartialInjection]:
    """All partial injections of degree n, by rank descending then images."""
    if n < 0:
        raise ValueError("degree must be non-negative")
    if n > MAX_FULL_DEGREE:
        raise DegreeTooLarge(f"IS({n}) is beyond the supported degree {MAX_FULL_DEGREE}")
    out = []
    for k in range(n, -1, -1):
        for domain in itertools.combinations(range(n), k):
            for image in itertools.permutations(range(n), k):
                out.append(PartialInjection.from_pairs(n, dict(zip(domain, image))))
    out.sort(key=_order_key)
    return out


def symmetric_inverse_order(n: int) -> int:
    from math import comb, factorial

    return sum(comb(n, k) ** 2 * factorial(k) for k in range(n + 1))


def to_abstract(elems: Sequence[PartialInjection], *, validate: bool = False) -> Realization:
    """Cayley table of a list of partial injections closed under composition."""

    def missing(a, b, p):
        raise NotClosed(str(a), str(b), str(p))

    return realize(elems, compose, validate=validate, on_missing=missing)


def symmetric_inverse_monoid(n: int) -> Realization:
    return to_abstract(full_IS(n))


def random_elements(n: int, count: int, rng: np.random.Generator) -> list[PartialInjection]:
    """Uniform samples from IS(n)."""
    pool = full_IS(n)
    return [pool[i] for i in rng.integers(0, len(pool), size=count)]


def lemma1_holds(a: PartialInjection, b: PartialInjection, x: PartialInjection) -> bool:
    """(b*a).x is defined iff a.x and b.(a.x) are, and then the two agree."""
    whole = conj_action(compose(b, a), x)
    first = conj_action(a, x)
    second = None if first is None else conj_action(b, first)
    if whole is None:
        return second is None
    return second is not None and whole == second


def preston_wagner(S: FiniteSemigroup) -> list[PartialInjection]:
    """Faithful representation of an inverse semigroup by partial injections of S.

    a maps to the left translation x -> a*x restricted to a^{-1}aS, which is a
    homomorphism for the right-factor-first product used here.  Injectivity,
    the homomorphism property and compatibility with inverses are asserted.
    """
    inv = inverse_map(S)
    T = S.table
    n = S.order
    rho = []
    for a in range(n):
        proj = T[inv[a], a]
        images = tuple(int(T[a, x]) if T[proj, x] == x else None for x in range(n))
        rho.append(PartialInjection(images))
    if len(set(rho)) != n:
        raise EmbeddingError("representation is not injective")
    for a in range(n):
        if rho[inv[a]] != inverse(rho[a]):
            raise EmbeddingError(f"image of the inverse of {a} is not the inverse image")
        for b in range(n):
            if compose(rho[a], rho[b]) != rho[T[a, b]]:
                raise EmbeddingError(f"not multiplicative at ({a}, {b})")
    return rho


__all__ = [
    "PartialInjection",
    "compose",
    "inverse",
    "dom",
    "im",
    "stim",
    "cycles",
    "e_of",
    "conj_action",
    "full_IS",
    "to_abstract",
    "symmetric_inverse_monoid",
    "symmetric_inverse_order",
    "random_elements",
    "lemma1_holds",
    "preston_wagner",
]
