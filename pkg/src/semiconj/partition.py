"""Union-find and canonical set partitions of ``{0, ..., n-1}``."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np


class UnionFind:
    """Disjoint sets over ``0..n-1`` whose representative is always the least member."""

    def __init__(self, n: int):
        self.parent = list(range(n))

    def find(self, x: int) -> int:
        root = x
        parent = self.parent
        while parent[root] != root:
            root = parent[root]
        while parent[x] != root:
            parent[x], x = root, parent[x]
        return root

    def union(self, x: int, y: int) -> bool:
        """Merge the classes of x and y; return True if they were distinct."""
        rx, ry = self.find(x), self.find(y)
        if rx == ry:
            return False
        if rx < ry:
            self.parent[ry] = rx
        else:
            self.parent[rx] = ry
        return True

    def partition(self) -> Partition:
        return Partition.from_labels([self.find(x) for x in range(len(self.parent))])


@dataclass(frozen=True)
class Partition:
    """A partition stored as per-element class labels.

    Labels are canonical: classes are numbered 0, 1, ... in order of their
    least member, so two partitions are equal iff their label tuples are.
    """

    labels: tuple[int, ...]

    @classmethod
    def from_labels(cls, labels: Iterable) -> Partition:
        relabel: dict = {}
        out = []
        for lab in labels:
            if lab not in relabel:
                relabel[lab] = len(relabel)
            out.append(relabel[lab])
        return cls(tuple(out))

    @classmethod
    def from_classes(cls, n: int, classes: Iterable[Iterable[int]]) -> Partition:
        labels = [-1] * n
        for k, block in enumerate(classes):
            for x in block:
                if labels[x] != -1:
                    raise ValueError(f"element {x} appears in two classes")
                labels[x] = k
        if -1 in labels:
            raise ValueError(f"element {labels.index(-1)} is in no class")
        return cls.from_labels(labels)

    @classmethod
    def discrete(cls, n: int) -> Partition:
        return cls(tuple(range(n)))

    @property
    def size(self) -> int:
        return len(self.labels)

    def __len__(self) -> int:
        return max(self.labels) + 1 if self.labels else 0

    @property
    def classes(self) -> list[list[int]]:
        out: list[list[int]] = [[] for _ in range(len(self))]
        for x, lab in enumerate(self.labels):
            out[lab].append(x)
        return out

    def class_of(self, x: int) -> list[int]:
        lab = self.labels[x]
        return [y for y, l in enumerate(self.labels) if l == lab]

    def same(self, x: int, y: int) -> bool:
        return self.labels[x] == self.labels[y]

    def sizes(self) -> list[int]:
        return [len(c) for c in self.classes]

    def meet(self, other: Partition) -> Partition:
        return Partition.from_labels(zip(self.labels, other.labels))

    def join(self, other: Partition) -> Partition:
        uf = UnionFind(self.size)
        for part in (self, other):
            for block in part.classes:
                for y in block[1:]:
                    uf.union(block[0], y)
        return uf.partition()

    def refines(self, other: Partition) -> bool:
        """True if every class of self lies inside a class of other."""
        return self.meet(other) == self

    def restrict(self, ids: Sequence[int]) -> Partition:
        return Partition.from_labels(self.labels[i] for i in ids)

    def as_array(self) -> np.ndarray:
        return np.asarray(self.labels, dtype=np.int64)


def partition_by_rows(mat: np.ndarray) -> Partition:
    """Group row indices whose rows are identical."""
    if mat.shape[0] == 0:
        return Partition(())
    _, inverse = np.unique(mat, axis=0, return_inverse=True)
    return Partition.from_labels(inverse.ravel().tolist())
