"""Quadratic (orthogonal / symplectic) configurations.

Each square in a column carries a type: ``e`` and ``f`` for the two
half-unital eigenvalues and ``m`` for a member of a pair ``z, 1/z``.  Both
members of an ``m`` pair are stored as separate squares.  The dimension of a
configuration is ``beta - epsilon * l`` where ``beta`` counts empty boxes and
``l`` is the linear correction built from alternating sums of the ``e`` and
``f`` sizes.

Column-level routines take a width ``q`` and a partition of sizes; the sweep
helpers at the bottom operate on bare tuples.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from itertools import permutations
from typing import Iterable, Sequence

from .errors import InvalidConfiguration, InvalidOverlap, PartExceedsWidth, UnpairedM, ZeroPart
from .partitions import Partition, explore_down, top_tuple

KINDS = ("e", "f", "m")
_KIND_ORDER = {k: i for i, k in enumerate(KINDS)}


@dataclass(frozen=True)
class TypedPart:
    size: int
    kind: str

    def __post_init__(self):
        if self.size < 1:
            raise InvalidConfiguration(f"part sizes must be positive, got {self.size}")
        if self.kind not in _KIND_ORDER:
            raise InvalidConfiguration(f"part type must be one of e, f, m, got {self.kind!r}")

    @classmethod
    def parse(cls, token: str | int) -> "TypedPart":
        """``"5e"`` / ``"5^f"`` / ``5`` (untyped parts default to ``e``)."""
        if isinstance(token, int):
            return cls(token, "e")
        text = str(token).strip().replace("^", "")
        if text and text[-1] in _KIND_ORDER:
            return cls(int(text[:-1]), text[-1])
        return cls(int(text), "e")

    def __str__(self) -> str:
        return f"{self.size}{self.kind}"


def typed(text: str) -> tuple[TypedPart, ...]:
    """Shorthand: ``typed("5e 5f")`` -> two typed parts."""
    return tuple(TypedPart.parse(tok) for tok in text.replace(",", " ").split())


@dataclass(frozen=True)
class QuadColumn:
    """A column width and its typed squares, kept in canonical order.

    The width bound on sizes is checked by the enclosing configuration, since
    overlapping configurations let one square hang over its column.
    """

    width: int
    parts: tuple[TypedPart, ...]

    def __post_init__(self):
        parts = tuple(p if isinstance(p, TypedPart) else TypedPart.parse(p) for p in self.parts)
        parts = tuple(sorted(parts, key=lambda p: (-p.size, _KIND_ORDER[p.kind])))
        object.__setattr__(self, "parts", parts)
        if self.width < 1:
            raise InvalidConfiguration(f"column width must be positive, got {self.width}")
        odd = [s for s, n in Counter(p.size for p in parts if p.kind == "m").items() if n % 2]
        if odd:
            raise UnpairedM(f"type m squares must come in pairs; unpaired sizes {sorted(odd)}")

    @property
    def sizes(self) -> tuple[int, ...]:
        return tuple(p.size for p in self.parts)

    @property
    def weight(self) -> int:
        return sum(self.sizes)

    def of_kind(self, kind: str) -> list[int]:
        return [p.size for p in self.parts if p.kind == kind]

    def m_pairs(self) -> list[int]:
        """Pair multiplicities ``m^0 >= m^1 >= ...`` (one entry per pair)."""
        return self.of_kind("m")[::2]


def _sort_columns(columns, points):
    order = sorted(range(3), key=lambda i: -columns[i].width)
    return tuple(columns[i] for i in order), tuple(points[i] for i in order)


def _check_epsilon(eps: int) -> None:
    if eps not in (1, -1):
        raise InvalidConfiguration(f"epsilon must be +1 or -1, got {eps}")


@dataclass(frozen=True)
class QuadConfiguration:
    """Non-overlapping quadratic configuration; widths sorted on construction."""

    rank: int
    epsilon: int
    columns: tuple[QuadColumn, QuadColumn, QuadColumn]
    points: tuple[int, int, int] = (1, 2, 3)

    def __post_init__(self):
        _check_epsilon(self.epsilon)
        if len(self.columns) != 3 or len(self.points) != 3:
            raise InvalidConfiguration("a configuration has exactly three columns")
        cols, points = _sort_columns(tuple(self.columns), tuple(self.points))
        object.__setattr__(self, "columns", cols)
        object.__setattr__(self, "points", points)
        r = self.rank
        widths = self.widths
        if sum(widths) != r:
            raise InvalidConfiguration(f"widths {widths} must sum to the rank {r}")
        for col in cols:
            if col.weight != r:
                raise InvalidConfiguration(f"column sizes {col.sizes} must sum to the rank {r}")
            if max(col.sizes) > col.width:
                raise PartExceedsWidth(f"column {col.sizes} has a part wider than {col.width}")

    @property
    def widths(self) -> tuple[int, int, int]:
        return tuple(c.width for c in self.columns)


@dataclass(frozen=True)
class OverlappingConfiguration:
    """Configuration in which the top ``e`` squares of two columns overlap by ``mu``.

    ``overlap`` holds the 0-based indices of the two overlapping columns; their
    stored width is ``e0 - mu``.  The remaining column has width ``m0``, the
    size of its top ``m`` pair.
    """

    rank: int
    epsilon: int
    columns: tuple[QuadColumn, QuadColumn, QuadColumn]
    mu: int
    overlap: tuple[int, int] = (1, 2)
    _free: int = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        _check_epsilon(self.epsilon)
        if len(self.columns) != 3:
            raise InvalidConfiguration("a configuration has exactly three columns")
        pair = tuple(self.overlap)
        if len(pair) != 2 or len(set(pair)) != 2 or not set(pair) <= {0, 1, 2}:
            raise InvalidOverlap(f"overlap must name two distinct columns, got {pair}")
        object.__setattr__(self, "overlap", pair)
        free = ({0, 1, 2} - set(pair)).pop()
        object.__setattr__(self, "_free", free)
        r, mu = self.rank, self.mu
        if mu < 1:
            raise InvalidOverlap(f"mu must be at least 1, got {mu}")
        for col in self.columns:
            if col.weight != r:
                raise InvalidOverlap(f"column sizes {col.sizes} must sum to the rank {r}")

        first = self.columns[free]
        m0 = max(first.of_kind("m"), default=0)
        e0 = max(first.of_kind("e"), default=0)
        if m0 <= e0:
            raise InvalidOverlap(f"free column needs its top m pair above its top e part ({m0} <= {e0})")
        if m0 - mu <= 0:
            raise ZeroPart(f"m0 - mu = {m0 - mu} would not be a positive part")
        if first.width != m0 or max(first.sizes) > m0:
            raise InvalidOverlap(f"free column must have width m0 = {m0} and fit inside it")

        tops = []
        for i in pair:
            col = self.columns[i]
            top = max(col.of_kind("e"), default=0)
            if top <= max(col.of_kind("m"), default=0):
                raise InvalidOverlap(f"column {i} needs its top e part above its m parts")
            if top - mu <= 0:
                raise ZeroPart(f"e0 - mu = {top - mu} would not be a positive part in column {i}")
            if col.width != top - mu:
                raise InvalidOverlap(f"column {i} width must be e0 - mu = {top - mu}, got {col.width}")
            rest = list(col.sizes)
            rest.remove(top)
            if rest and max(rest) > col.width:
                raise InvalidOverlap(f"column {i} parts besides e0 must fit in width {col.width}")
            tops.append(top)
        if r != first.width + sum(tops) - mu:
            raise InvalidOverlap(f"rank {r} != q1 + e2^0 + e3^0 - mu = {first.width + sum(tops) - mu}")
        nu = r - sum(tops)
        if nu < 1 or nu != m0 - mu:
            raise InvalidOverlap(f"nu = r - e2^0 - e3^0 = {nu} must be positive and equal m0 - mu")

    @property
    def nu(self) -> int:
        return self.rank - sum(max(self.columns[i].of_kind("e")) for i in self.overlap)


# --- dimension bookkeeping -------------------------------------------------


def alternating_sum(sizes: Iterable[int]) -> int:
    """``s0 - s1 + s2 - ...`` over the sizes sorted descending."""
    return sum(s if j % 2 == 0 else -s for j, s in enumerate(sorted(sizes, reverse=True)))


def _alt_total(col: QuadColumn) -> int:
    return alternating_sum(col.of_kind("e")) + alternating_sum(col.of_kind("f"))


def linear_correction(col: QuadColumn) -> int:
    """Column linear correction ``q - alt(e) - alt(f)``; ``m`` squares do not enter."""
    return col.width - _alt_total(col)


def column_box_dimension(r: int, col: QuadColumn) -> int:
    return r * col.width - sum(s * s for s in col.sizes)


def box_dimension(cfg: QuadConfiguration | OverlappingConfiguration) -> int:
    """``r^2`` minus the area of every listed square."""
    return cfg.rank ** 2 - sum(s * s for col in cfg.columns for s in col.sizes)


def total_linear_correction(cfg: QuadConfiguration | OverlappingConfiguration) -> int:
    """``r - sum of alternating sums``; equals the sum of column corrections when widths sum to r."""
    return cfg.rank - sum(_alt_total(col) for col in cfg.columns)


def quad_dimension(cfg: QuadConfiguration | OverlappingConfiguration) -> int:
    """``beta - epsilon * l``; twice the character-variety dimension when non-empty."""
    return box_dimension(cfg) - cfg.epsilon * total_linear_correction(cfg)


def column_dimensions(cfg: QuadConfiguration) -> tuple[int, int, int]:
    return tuple(
        column_box_dimension(cfg.rank, col) - cfg.epsilon * linear_correction(col) for col in cfg.columns
    )


def eliminate_m_pairs(cfg: QuadConfiguration) -> QuadConfiguration:
    """Retype every ``m`` square as ``e``; beta, l and the dimension are unchanged."""
    cols = tuple(
        QuadColumn(col.width, tuple(TypedPart(p.size, "e" if p.kind == "m" else p.kind) for p in col.parts))
        for col in cfg.columns
    )
    return QuadConfiguration(cfg.rank, cfg.epsilon, cols, cfg.points)


def to_non_overlapping(cfg: OverlappingConfiguration) -> QuadConfiguration:
    """Associated non-overlapping configuration of rank ``r - mu``.

    The free column's top ``m`` pair becomes ``e`` parts ``m0`` and
    ``m0 - mu``; each overlapping column's top ``e`` part shrinks by ``mu``.
    Box dimension and linear correction are both preserved.
    """
    mu = cfg.mu
    cols: list[QuadColumn] = [None, None, None]
    free = cfg.columns[cfg._free]
    m0 = max(free.of_kind("m"))
    parts = list(free.parts)
    for _ in range(2):
        parts.remove(TypedPart(m0, "m"))
    parts += [TypedPart(m0, "e"), TypedPart(m0 - mu, "e")]
    cols[cfg._free] = QuadColumn(m0, tuple(parts))
    for i in cfg.overlap:
        col = cfg.columns[i]
        e0 = max(col.of_kind("e"))
        parts = list(col.parts)
        parts.remove(TypedPart(e0, "e"))
        parts.append(TypedPart(e0 - mu, "e"))
        cols[i] = QuadColumn(e0 - mu, tuple(parts))
    return QuadConfiguration(cfg.rank - mu, cfg.epsilon, tuple(cols))


# --- column calculus ---------------------------------------------------------


def _as_sizes(q: int, sizes) -> tuple[int, ...]:
    parts = tuple(sorted((int(s) for s in sizes), reverse=True))
    if parts and parts[0] > q:
        raise PartExceedsWidth(f"part {parts[0]} exceeds width {q}")
    return parts


def _pair_gaps(parts: tuple[int, ...]) -> list[int]:
    """Gaps ``lam^j - lam^{j+1}`` for ``j = 1, 3, 5, ...`` after padding to odd length."""
    if len(parts) % 2 == 0:
        parts = parts + (0,)
    return [parts[j] - parts[j + 1] for j in range(1, len(parts) - 1, 2)]


def _signed_sums(gaps: Sequence[int]) -> list[int]:
    """Every value of ``sum(+-g)``, by bitset reachability over ``[-G, G]``."""
    total = sum(gaps)
    mask = 1 << total
    for g in gaps:
        if g:
            mask = (mask << g) | (mask >> g)
    return [i - total for i in range(2 * total + 1) if mask >> i & 1]


def possible_linear_corrections(q: int, sizes: Partition | Sequence[int]) -> set[int]:
    """Every linear correction reachable by typing the column's squares ``e`` or ``f``.

    With the parts sorted and padded to odd length, the top part always
    contributes ``-lam^0`` and each later pair contributes
    ``+-(lam^j - lam^{j+1})`` independently.
    """
    parts = _as_sizes(q, sizes)
    if not parts:
        return {q}
    base = q - parts[0]
    return {base + s for s in _signed_sums(_pair_gaps(parts))}


def typed_linear_corrections(q: int, sizes: Partition | Sequence[int]) -> set[int]:
    """Same set as :func:`possible_linear_corrections`, by walking the type assignments.

    Squares are visited largest first while tracking the parity of how many
    ``e`` and ``f`` squares came before; this is the exhaustive enumeration
    with identical states merged, so it does not rely on the pairing argument.
    """
    parts = _as_sizes(q, sizes)
    states: dict[tuple[int, int], set[int]] = {(0, 0): {0}}
    for s in parts:
        nxt: dict[tuple[int, int], set[int]] = {}
        for (pe, pf), sums in states.items():
            se = s if pe == 0 else -s
            sf = s if pf == 0 else -s
            nxt.setdefault((pe ^ 1, pf), set()).update(a + se for a in sums)
            nxt.setdefault((pe, pf ^ 1), set()).update(a + sf for a in sums)
        states = nxt
    return {q - a for sums in states.values() for a in sums}


def assign_types(q: int, sizes: Partition | Sequence[int], target: int) -> tuple[str, ...] | None:
    """A typing (``"e"``/``"f"`` per part, sizes descending) with linear correction ``target``."""
    parts = _as_sizes(q, sizes)
    need = q - target
    dead: set = set()

    def walk(i, pe, pf, acc):
        if i == len(parts):
            return () if acc == need else None
        key = (i, pe, pf, acc)
        if key in dead:
            return None
        s = parts[i]
        for kind, sign, npe, npf in (("e", pe, pe ^ 1, pf), ("f", pf, pe, pf ^ 1)):
            rest = walk(i + 1, npe, npf, acc + (s if sign == 0 else -s))
            if rest is not None:
                return (kind,) + rest
        dead.add(key)
        return None

    return walk(0, 0, 0, 0)


def possible_column_dimensions(q: int, sizes: Partition | Sequence[int], epsilon: int) -> set[int]:
    """``{beta_col - epsilon * l}`` over every achievable linear correction ``l``."""
    _check_epsilon(epsilon)
    parts = _as_sizes(q, sizes)
    beta = sum(parts) * q - sum(s * s for s in parts)
    return {beta - epsilon * l for l in possible_linear_corrections(q, parts)}


def min_column_dimension(q: int, parts: tuple[int, ...], epsilon: int) -> int:
    """Smallest achievable column dimension of a sorted tuple, in closed form."""
    r = sum(parts)
    beta = r * q - sum(s * s for s in parts)
    padded = parts + (0,) if len(parts) % 2 == 0 else parts
    spread = sum(padded[j] - padded[j + 1] for j in range(1, len(padded) - 1, 2))
    centre = q - parts[0]
    return beta - epsilon * centre - spread


def min_quad_column(r: int, q: int) -> tuple[int, set[Partition]]:
    """Minimal column dimension for width ``q`` and the partitions achieving it.

    ``r = m q + k``: the value is ``k(q-k) - q + k`` for even ``m`` and
    ``k(q-k) - k`` for odd ``m``, attained at ``(q,...,q,k)`` and additionally
    at ``(q,...,q,1,1)`` when ``k = 2``, ``m`` even, and at
    ``(q,...,q,q-1,q-1)`` when ``k = q - 2``, ``m`` odd.
    """
    if not 1 <= q <= r:
        raise ValueError(f"need 1 <= q <= r, got q={q}, r={r}")
    m, k = divmod(r, q)
    if m % 2 == 0:
        value = k * (q - k) - q + k
    else:
        value = k * (q - k) - k
    minimisers = {Partition(top_tuple(r, q))}
    if k == 2 and m % 2 == 0:
        minimisers.add(Partition((q,) * m + (1, 1)))
    if k == q - 2 and m % 2 == 1:
        minimisers.add(Partition((q,) * (m - 1) + (q - 1, q - 1)))
    return value, minimisers


def column_search(r: int, q: int, epsilon: int | None, cutoff: int | None) -> dict[tuple[int, ...], int]:
    """Partitions of ``r`` (parts ``<= q``) whose minimal column dimension is ``<= cutoff``.

    ``epsilon=None`` scores by the general-linear box dimension instead.
    Minimal dimensions only grow going down the dominance order, so the walk
    from ``(q,...,q,k)`` skips the region below any partition over the cutoff.
    """
    if epsilon is None:
        def score(parts):
            return r * q - sum(s * s for s in parts)
    else:
        def score(parts):
            return min_column_dimension(q, parts, epsilon)
    return explore_down(top_tuple(r, q), score, cutoff)


def low_dimension_columns(r: int, q: int, epsilon: int, threshold: int) -> set[tuple[Partition, int]]:
    """``(partition, minimal column dimension)`` pairs with dimension at most ``threshold``."""
    _check_epsilon(epsilon)
    return {(Partition(p), d) for p, d in column_search(r, q, epsilon, threshold).items()}


# --- numerical MC-minimality -----------------------------------------------------


def _tops(col) -> dict:
    parts = col.parts if isinstance(col, QuadColumn) else tuple(col)
    e = sorted((p.size for p in parts if p.kind == "e"), reverse=True)
    f = sorted((p.size for p in parts if p.kind == "f"), reverse=True)
    m = sorted((p.size for p in parts if p.kind == "m"), reverse=True)[::2]
    return {"e": e + [0, 0], "f": f + [0], "m": m}


def is_numerically_mc_minimal(rank: int, columns: Sequence[QuadColumn | Sequence[TypedPart]]) -> bool:
    """Whether some ordering of the three points satisfies all five inequality families.

    Half-integer terms are compared after doubling, so no rounding occurs.
    """
    if len(columns) != 3:
        raise InvalidConfiguration("numerical MC-minimality is defined for three points")
    data = [_tops(c) for c in columns]
    r = rank
    for a, b, c in permutations(data):
        depth = max(len(a["m"]), len(b["m"]), len(c["m"]), 1)

        def m(x, j):
            return x["m"][j] if j < len(x["m"]) else 0

        if any(m(a, j) + m(b, j) + m(c, j) > r for j in range(depth)):
            continue
        if a["e"][0] + b["e"][0] + c["e"][0] > r:
            continue
        if any(m(a, j) + m(b, j) + c["e"][0] > r for j in range(depth)):
            continue
        if 2 * (m(a, 0) + b["e"][0]) + c["e"][0] + c["f"][0] > 2 * r:
            continue
        if 2 * (m(a, 0) + b["e"][0]) + c["e"][0] + c["e"][1] > 2 * r:
            continue
        return True
    return False
