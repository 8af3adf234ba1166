"""General-linear configurations and their box dimension.

A configuration splits an ``r x r`` square into three columns of widths
``q1 >= q2 >= q3`` (summing to ``r``) and packs into column ``i`` the squares
of a partition of ``r`` with parts at most ``q_i``.  The box dimension counts
the empty unit boxes; the character variety has dimension ``delta + 2``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .errors import AllWidthsOne, ArityMismatch, InvalidConfiguration, PartExceedsWidth, WeightMismatch
from .partitions import Partition, top_tuple


@dataclass(frozen=True)
class ColumnResidue:
    """``r = n*q + c`` with ``-q/2 < c <= q/2``; ``k = r mod q``."""

    n: int
    c: int
    k: int


def column_residue(r: int, q: int) -> ColumnResidue:
    if not 1 <= q <= r:
        raise ValueError(f"need 1 <= q <= r, got q={q}, r={r}")
    m, k = divmod(r, q)
    if 2 * k <= q:
        return ColumnResidue(m, k, k)
    return ColumnResidue(m + 1, k - q, k)


def _check_column(r: int, q: int, col: Sequence[int]) -> None:
    if sum(col) != r:
        raise WeightMismatch(f"column {tuple(col)} has weight {sum(col)}, expected {r}")
    if col and max(col) > q:
        raise PartExceedsWidth(f"column {tuple(col)} has a part larger than its width {q}")


def gl_column_dimension(r: int, q: int, col: Partition | Sequence[int]) -> int:
    """Empty boxes in an ``r x q`` column: ``r*q - sum(parts^2)``."""
    parts = tuple(col)
    _check_column(r, q, parts)
    return r * q - sum(p * p for p in parts)


def _sorted_widths(widths, columns, points):
    order = sorted(range(3), key=lambda i: -widths[i])
    return (
        tuple(widths[i] for i in order),
        tuple(columns[i] for i in order),
        tuple(points[i] for i in order),
    )


@dataclass(frozen=True)
class GlConfiguration:
    """Rank, three column widths and three column partitions.

    Widths are normalised to weakly decreasing order on construction;
    ``points`` keeps the original 1-based point label of each column so that
    diagrams can be labelled the way the input was written.
    """

    rank: int
    widths: tuple[int, int, int]
    columns: tuple[Partition, Partition, Partition]
    points: tuple[int, int, int] = (1, 2, 3)

    def __post_init__(self):
        if len(self.widths) != 3 or len(self.columns) != 3 or len(self.points) != 3:
            raise InvalidConfiguration("a configuration has exactly three columns")
        cols = tuple(c if isinstance(c, Partition) else Partition.sorted(c) for c in self.columns)
        widths, cols, points = _sorted_widths(tuple(self.widths), cols, tuple(self.points))
        object.__setattr__(self, "widths", widths)
        object.__setattr__(self, "columns", cols)
        object.__setattr__(self, "points", points)
        r = self.rank
        if r < 3:
            raise InvalidConfiguration(f"rank must be at least 3, got {r}")
        if any(q < 1 for q in widths):
            raise InvalidConfiguration(f"widths must be positive, got {widths}")
        if sum(widths) != r:
            raise InvalidConfiguration(f"widths {widths} must sum to the rank {r}")
        for q, col in zip(widths, cols):
            _check_column(r, q, col.parts)

    def column_dimensions(self) -> tuple[int, int, int]:
        return tuple(gl_column_dimension(self.rank, q, c) for q, c in zip(self.widths, self.columns))


def gl_dimension(cfg: GlConfiguration) -> int:
    """Box dimension ``r^2 - sum of all squared parts``."""
    return sum(cfg.column_dimensions())


def charvar_dimension(cfg: GlConfiguration) -> int:
    return gl_dimension(cfg) + 2


def defect(r: int, k: int, tops: Sequence[int]) -> int:
    """``(k - 2) r - sum(tops)``; non-negative exactly for MC-minimal data."""
    if len(tops) != k:
        raise ArityMismatch(f"expected {k} top multiplicities, got {len(tops)}")
    return (k - 2) * r - sum(tops)


def min_gl_column(r: int, q: int) -> tuple[Partition, int]:
    """The unique minimiser ``(q,...,q,k)`` of a column and its dimension ``k(q-k)``."""
    if not 1 <= q <= r:
        raise ValueError(f"need 1 <= q <= r, got q={q}, r={r}")
    k = r % q
    return Partition(top_tuple(r, q)), k * (q - k)


def min_gl_config_dimension(r: int, q1: int, q2: int, q3: int) -> int:
    return sum(min_gl_column(r, q)[1] for q in (q1, q2, q3))


def min_nonzero_gl_config_dimension(r: int, q1: int, q2: int, q3: int) -> int:
    widths = (q1, q2, q3)
    if any(r % q for q in widths):
        return min_gl_config_dimension(r, *widths)
    non_unit = [q for q in widths if q != 1]
    if not non_unit:
        raise AllWidthsOne("every width is 1, so every configuration has dimension 0")
    # next partition below (q,...,q) is (q,...,q,q-1,1)
    return 2 * min(non_unit) - 2


def zero_dimension_triples(r: int) -> set[tuple[int, int, int]]:
    """Width triples whose minimal configuration leaves no empty box."""
    if r < 3:
        raise ValueError(f"need r >= 3, got {r}")
    out = set()
    for m1, m2, m3 in ((3, 3, 3), (2, 4, 4), (2, 3, 6)):
        if r % m1 == 0 and r % m2 == 0 and r % m3 == 0:
            out.add((r // m1, r // m2, r // m3))
    return out
