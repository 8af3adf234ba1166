"""Integer partitions with bounded parts and the dominance order.

Partitions are stored as weakly decreasing tuples of positive integers.  The
public :class:`Partition` wraps such a tuple; the sweep code works directly on
bare tuples through the underscore-free helpers ``bounded_tuples`` and
``lower_neighbor_tuples`` to avoid object overhead in hot loops.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from itertools import accumulate
from typing import Callable, Iterable, Iterator

from .errors import InvalidPartition, WeightMismatch


@dataclass(frozen=True, order=True)
class Partition:
    """A weakly decreasing tuple of positive integers."""

    parts: tuple[int, ...]

    def __init__(self, parts: Iterable[int] = ()):
        parts = tuple(int(p) for p in parts)
        for p in parts:
            if p < 1:
                raise InvalidPartition(f"parts must be positive, got {parts}")
        for a, b in zip(parts, parts[1:]):
            if a < b:
                raise InvalidPartition(f"parts must be weakly decreasing, got {parts}")
        object.__setattr__(self, "parts", parts)

    @classmethod
    def sorted(cls, parts: Iterable[int]) -> "Partition":
        """Build a partition from parts in any order."""
        return cls(sorted(parts, reverse=True))

    @property
    def weight(self) -> int:
        return sum(self.parts)

    def __len__(self) -> int:
        return len(self.parts)

    def __iter__(self) -> Iterator[int]:
        return iter(self.parts)

    def __getitem__(self, i):
        return self.parts[i]

    def __repr__(self) -> str:
        return f"Partition({self.parts})"

    def __str__(self) -> str:
        return "(" + ",".join(map(str, self.parts)) + ")"


def bounded_tuples(r: int, q: int) -> Iterator[tuple[int, ...]]:
    """Partitions of ``r`` with parts ``<= q`` as tuples, descending lex order."""
    if r == 0:
        yield ()
        return
    for first in range(min(q, r), 0, -1):
        for rest in bounded_tuples(r - first, first):
            yield (first,) + rest


def enumerate_bounded(r: int, q: int) -> Iterator[Partition]:
    """Yield every partition of ``r`` with all parts at most ``q``.

    The order is descending lexicographic, so the first partition yielded is
    the dominance-maximal ``(q, ..., q, r mod q)``.

    >>> [p.parts for p in enumerate_bounded(4, 2)]
    [(2, 2), (2, 1, 1), (1, 1, 1, 1)]
    """
    if r < 0 or q < 1:
        raise ValueError(f"need r >= 0 and q >= 1, got r={r}, q={q}")
    for parts in bounded_tuples(r, q):
        yield Partition(parts)


def top_tuple(r: int, q: int) -> tuple[int, ...]:
    """The dominance-maximal partition of ``r`` with parts at most ``q``."""
    m, k = divmod(r, q)
    return (q,) * m + ((k,) if k else ())


def _dominates(a: tuple[int, ...], b: tuple[int, ...]) -> bool:
    n = max(len(a), len(b))
    pa = accumulate(a + (0,) * (n - len(a)))
    pb = accumulate(b + (0,) * (n - len(b)))
    return all(x >= y for x, y in zip(pa, pb))


def dominates(lhs: Partition, rhs: Partition) -> bool:
    """Prefix-sum dominance, reflexive.

    Strict dominance is ``dominates(a, b) and a != b``.
    """
    if lhs.weight != rhs.weight:
        raise WeightMismatch(f"weights differ: {lhs.weight} vs {rhs.weight}")
    return _dominates(lhs.parts, rhs.parts)


def lower_neighbor_tuples(parts: tuple[int, ...]) -> list[tuple[int, ...]]:
    """All partitions reachable from ``parts`` by a single Young-diagram move.

    A move takes one box from a row of length ``a`` and drops it onto a row of
    length ``b <= a - 2`` (``b = 0`` opens a new row).  Taking the last row of
    length ``a`` and the first row of length ``b`` keeps the result sorted, and
    distinct ``(a, b)`` pairs give distinct results.
    """
    last: dict[int, int] = {}
    first: dict[int, int] = {}
    for i, p in enumerate(parts):
        last[p] = i
        first.setdefault(p, i)
    values = sorted(first, reverse=True)
    out = []
    for a in values:
        if a < 2:
            continue
        j = last[a]
        for b in values:
            if b > a - 2:
                continue
            new = list(parts)
            new[j] -= 1
            new[first[b]] += 1
            out.append(tuple(new))
        new = list(parts)
        new[j] -= 1
        new.append(1)
        out.append(tuple(new))
    return out


def lower_neighbors(p: Partition) -> set[Partition]:
    """Partitions covered by ``p`` via one move of either type."""
    return {Partition(t) for t in lower_neighbor_tuples(p.parts)}


def explore_down(
    start: tuple[int, ...],
    score: Callable[[tuple[int, ...]], int],
    cutoff: int | None = None,
) -> dict[tuple[int, ...], int]:
    """Breadth-first walk down the dominance order from ``start``.

    Returns ``{partition: score}`` for every visited partition whose score is
    at most ``cutoff``; children of a partition scoring above the cutoff are
    not expanded.  This is exhaustive below ``start`` whenever ``score`` is
    weakly decreasing in dominance.  With ``cutoff=None`` everything below
    ``start`` is returned.
    """
    seen = {start}
    kept: dict[tuple[int, ...], int] = {}
    queue = deque([start])
    while queue:
        node = queue.popleft()
        s = score(node)
        if cutoff is not None and s > cutoff:
            continue
        kept[node] = s
        for child in lower_neighbor_tuples(node):
            if child not in seen:
                seen.add(child)
                queue.append(child)
    return kept
