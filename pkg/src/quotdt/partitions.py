"""Plane partitions, colored tuples of them, and partition pairs.

A plane partition of n is a downward-closed set of n boxes in the octant
Z_{>=0}^3.  It is generated here layer by layer: the k-th horizontal slice is
an ordinary Young diagram contained in the slice below it.  Colored variants
are r-tuples of plane partitions; partition pairs (lambda, mu) have mu a
sub-multiset of lambda of length at most r.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator, Tuple

Box = Tuple[int, int, int]
Partition = Tuple[int, ...]


@dataclass(frozen=True)
class PlanePartition:
    """A downward-closed finite set of boxes, stored as a sorted tuple."""

    boxes: tuple[Box, ...]

    def __post_init__(self):
        object.__setattr__(self, "boxes", tuple(sorted(self.boxes)))
        box_set = frozenset(self.boxes)
        if len(box_set) != len(self.boxes):
            raise ValueError("duplicate boxes")
        for (i, j, k) in box_set:
            if min(i, j, k) < 0:
                raise ValueError("boxes must lie in the nonnegative octant")
            for pred in ((i - 1, j, k), (i, j - 1, k), (i, j, k - 1)):
                if min(pred) >= 0 and pred not in box_set:
                    raise ValueError(f"box {(i, j, k)} is missing predecessor {pred}")

    @property
    def size(self) -> int:
        return len(self.boxes)

    def __len__(self) -> int:
        return len(self.boxes)

    def __iter__(self) -> Iterator[Box]:
        return iter(self.boxes)


EMPTY_PLANE_PARTITION = PlanePartition(())


@dataclass(frozen=True)
class ColoredPlanePartition:
    """An r-tuple of plane partitions, one per color."""

    parts: tuple[PlanePartition, ...]

    @property
    def rank(self) -> int:
        return len(self.parts)

    @property
    def total_size(self) -> int:
        return sum(p.size for p in self.parts)


def partitions_of(n: int, max_part: int | None = None) -> tuple[Partition, ...]:
    """All partitions of n with parts bounded by max_part, largest part first."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    bound = n if max_part is None else min(max_part, n)

    def gen(rest: int, cap: int) -> Iterator[Partition]:
        if rest == 0:
            yield ()
            return
        for part in range(min(cap, rest), 0, -1):
            for tail in gen(rest - part, part):
                yield (part, *tail)

    return tuple(gen(n, bound))


def _subdiagrams(shape: Partition) -> Iterator[Partition]:
    """Young diagrams contained in shape, including the empty one."""
    if not shape:
        yield ()
        return

    def gen(row: int, cap: int) -> Iterator[Partition]:
        if row == len(shape):
            yield ()
            return
        top = min(cap, shape[row])
        for length in range(top, -1, -1):
            if length == 0:
                yield ()
                return
            for tail in gen(row + 1, length):
                yield (length, *tail)

    yield from gen(0, shape[0])


@lru_cache(maxsize=None)
def enum_plane_partitions(n: int) -> tuple[PlanePartition, ...]:
    """All plane partitions of n in a fixed deterministic order."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    if n == 0:
        return (EMPTY_PLANE_PARTITION,)

    results: list[PlanePartition] = []

    def extend(layers: list[Partition], budget: int) -> None:
        if budget == 0:
            boxes = [
                (i, j, k)
                for k, diagram in enumerate(layers)
                for i, row in enumerate(diagram)
                for j in range(row)
            ]
            results.append(PlanePartition(tuple(boxes)))
            return
        for nxt in _subdiagrams(layers[-1]):
            size = sum(nxt)
            if 0 < size <= budget:
                layers.append(nxt)
                extend(layers, budget - size)
                layers.pop()

    for first_size in range(n, 0, -1):
        for first in partitions_of(first_size):
            extend([first], n - first_size)

    return tuple(results)


def count_plane_partitions(n: int) -> int:
    return len(enum_plane_partitions(n))


def compositions(n: int, k: int) -> Iterator[tuple[int, ...]]:
    """Weak compositions of n into k ordered parts, lexicographically largest first."""
    if k == 0:
        if n == 0:
            yield ()
        return
    if k == 1:
        yield (n,)
        return
    for head in range(n, -1, -1):
        for tail in compositions(n - head, k - 1):
            yield (head, *tail)


@lru_cache(maxsize=None)
def enum_colored(n: int, r: int) -> tuple[ColoredPlanePartition, ...]:
    """All r-tuples of plane partitions with total size n."""
    if r < 1:
        raise ValueError("rank must be at least 1")
    results = []
    for sizes in compositions(n, r):
        pools = [enum_plane_partitions(m) for m in sizes]
        stack: list[tuple[PlanePartition, ...]] = [()]
        for pool in pools:
            stack = [(*partial, p) for partial in stack for p in pool]
        results.extend(ColoredPlanePartition(parts) for parts in stack)
    return tuple(results)


@dataclass(frozen=True)
class PartitionPair:
    """A partition lambda with a sub-multiset mu of its parts."""

    lam: Partition
    mu: Partition

    def __post_init__(self):
        if not _is_submultiset(self.mu, self.lam):
            raise ValueError(f"{self.mu} is not a sub-multiset of {self.lam}")


def _is_submultiset(mu: Partition, lam: Partition) -> bool:
    available = list(lam)
    for part in mu:
        if part in available:
            available.remove(part)
        else:
            return False
    return True


def _submultisets(lam: Partition) -> Iterator[Partition]:
    distinct = sorted(set(lam), reverse=True)
    counts = [lam.count(p) for p in distinct]

    def gen(idx: int) -> Iterator[Partition]:
        if idx == len(distinct):
            yield ()
            return
        for take in range(counts[idx] + 1):
            for tail in gen(idx + 1):
                yield (distinct[idx],) * take + tail

    yield from gen(0)


def enum_partition_pairs(n: int, r: int) -> tuple[PartitionPair, ...]:
    """All pairs (lambda, mu) with |lambda| = n, mu a sub-multiset, len(mu) <= r."""
    if r < 0:
        raise ValueError("rank must be nonnegative")
    pairs = []
    for lam in partitions_of(n):
        for mu in _submultisets(lam):
            if len(mu) <= r:
                pairs.append(PartitionPair(lam, mu))
    return tuple(pairs)
