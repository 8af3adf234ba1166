"""Rank-one middle convolution on local monodromy data.

Eigenvalues are modelled by their exponents: an exact rational taken modulo 1,
so multiplication of eigenvalues is addition of exponents.  Each point carries
blocks ``(eigenvalue, dual partition)``; for a semisimple eigenvalue the dual
partition is the single part equal to its multiplicity.

The new size of a distinguished part is ``delta_i + delta`` so that every point
still sums to the new rank ``r + delta``.  The trace of :func:`katz_reduce`
also records ``delta_i + delta_i`` for comparison.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import Iterable, Sequence

from .errors import (
    ArityMismatch,
    ConvolutionError,
    DegenerateKernel,
    EigenvalueCollision,
    InvalidConfiguration,
    InvalidConvolution,
    NegativePart,
)
from .partitions import Partition


class EigenExp:
    """Exponent of a unit-circle eigenvalue, reduced to ``[0, 1)``.

    Stored as a reduced pair ``num/den``; plain integer arithmetic keeps the
    randomized sweeps fast.
    """

    __slots__ = ("num", "den")

    def __init__(self, value: Fraction | int = 0):
        v = Fraction(value)
        self._set(v.numerator % v.denominator, v.denominator)

    def _set(self, num: int, den: int) -> None:
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "den", den)

    def __setattr__(self, name, value):
        raise AttributeError("EigenExp is immutable")

    @classmethod
    def _make(cls, num: int, den: int) -> "EigenExp":
        g = gcd(num, den)
        out = object.__new__(cls)
        out._set((num // g) % (den // g), den // g)
        return out

    @classmethod
    def parse(cls, text: str | int | Fraction) -> "EigenExp":
        try:
            return cls(Fraction(text))
        except (ValueError, ZeroDivisionError, TypeError) as exc:
            raise InvalidConfiguration(f"not an exact fraction: {text!r}") from exc

    @property
    def value(self) -> Fraction:
        return Fraction(self.num, self.den)

    def __add__(self, other: "EigenExp") -> "EigenExp":
        return EigenExp._make(self.num * other.den + other.num * self.den, self.den * other.den)

    def __sub__(self, other: "EigenExp") -> "EigenExp":
        return EigenExp._make(self.num * other.den - other.num * self.den, self.den * other.den)

    def __neg__(self) -> "EigenExp":
        return EigenExp._make(-self.num, self.den)

    def __eq__(self, other) -> bool:
        if not isinstance(other, EigenExp):
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __lt__(self, other: "EigenExp") -> bool:
        return self.num * other.den < other.num * self.den

    def __le__(self, other: "EigenExp") -> bool:
        return self.num * other.den <= other.num * self.den

    def __gt__(self, other: "EigenExp") -> bool:
        return other < self

    def __ge__(self, other: "EigenExp") -> bool:
        return other <= self

    def __hash__(self) -> int:
        return hash((self.num, self.den))

    def __bool__(self) -> bool:
        return self.num != 0

    def __str__(self) -> str:
        return str(self.num) if self.den == 1 else f"{self.num}/{self.den}"

    def __repr__(self) -> str:
        return f"EigenExp({str(self)!r})"

    def __reduce__(self):
        return EigenExp, (self.value,)


ZERO = EigenExp(Fraction(0))


def _exp(x) -> EigenExp:
    return x if isinstance(x, EigenExp) else EigenExp.parse(x)


def exp_sum(values: Iterable[EigenExp]) -> EigenExp:
    total = ZERO
    for v in values:
        total = total + v
    return total


@dataclass(frozen=True)
class EigenBlock:
    eigenvalue: EigenExp
    dual_parts: Partition

    def __post_init__(self):
        object.__setattr__(self, "eigenvalue", _exp(self.eigenvalue))
        parts = self.dual_parts
        if not isinstance(parts, Partition):
            parts = Partition(parts)
        if not parts.parts:
            raise InvalidConfiguration("an eigenvalue block needs at least one part")
        object.__setattr__(self, "dual_parts", parts)

    @property
    def multiplicity(self) -> int:
        return self.dual_parts.weight


Point = tuple[EigenBlock, ...]


@dataclass(frozen=True)
class MonodromyTuple:
    """Rank and per-point eigenvalue blocks; blocks are kept sorted by eigenvalue."""

    rank: int
    points: tuple[Point, ...]

    def __post_init__(self):
        if self.rank < 1:
            raise InvalidConfiguration(f"rank must be positive, got {self.rank}")
        if len(self.points) < 3:
            raise InvalidConfiguration(f"need at least three points, got {len(self.points)}")
        pts = []
        for i, blocks in enumerate(self.points):
            blocks = tuple(sorted(blocks, key=lambda b: b.eigenvalue))
            seen = [b.eigenvalue for b in blocks]
            if len(set(seen)) != len(seen):
                raise InvalidConfiguration(f"point {i} repeats an eigenvalue")
            total = sum(b.multiplicity for b in blocks)
            if total != self.rank:
                raise InvalidConfiguration(f"point {i} multiplicities sum to {total}, expected {self.rank}")
            pts.append(blocks)
        object.__setattr__(self, "points", tuple(pts))

    @property
    def k(self) -> int:
        return len(self.points)

    @classmethod
    def semisimple(cls, points: Sequence[dict]) -> "MonodromyTuple":
        """Build from ``[{eigenvalue: multiplicity, ...}, ...]``."""
        blocks = [tuple(EigenBlock(_exp(a), (n,)) for a, n in pt.items()) for pt in points]
        rank = sum(n for n in points[0].values())
        return cls(rank, tuple(blocks))


@dataclass(frozen=True)
class ConvolutionKernel:
    """Rank-one kernel exponents.

    Construction checks both product relations; ``betaT = 0`` is accepted here
    and refused by :func:`mc_step`.
    """

    betaH: tuple[EigenExp, ...]
    betaV: tuple[EigenExp, ...]
    betaT: EigenExp

    def __post_init__(self):
        h = tuple(_exp(x) for x in self.betaH)
        v = tuple(_exp(x) for x in self.betaV)
        t = _exp(self.betaT)
        object.__setattr__(self, "betaH", h)
        object.__setattr__(self, "betaV", v)
        object.__setattr__(self, "betaT", t)
        if len(h) != len(v):
            raise ArityMismatch(f"betaH has {len(h)} entries but betaV has {len(v)}")
        if exp_sum(h) + t:
            raise InvalidConvolution("betaH entries and betaT must sum to 0 mod 1")
        if exp_sum(v) + t:
            raise InvalidConvolution("betaV entries and betaT must sum to 0 mod 1")

    @property
    def k(self) -> int:
        return len(self.betaH)

    @property
    def alpha(self) -> tuple[EigenExp, ...]:
        """Distinguished eigenvalue at each point."""
        return tuple(-h for h in self.betaH)


def derive_betaU(kernel: ConvolutionKernel) -> list[EigenExp]:
    return [h + v + kernel.betaT for h, v in zip(kernel.betaH, kernel.betaV)]


def distinguished_part(point: Sequence[EigenBlock], alpha: EigenExp) -> tuple[int, int] | None:
    """``(block index, part index)`` of the part that convolution resizes, or ``None``."""
    for b, block in enumerate(point):
        if block.eigenvalue == alpha:
            return b, 0
    return None


def distinguished_sizes(tup: MonodromyTuple, kernel: ConvolutionKernel) -> list[int]:
    if kernel.k != tup.k:
        raise ArityMismatch(f"kernel has {kernel.k} points, tuple has {tup.k}")
    sizes = []
    for point, alpha in zip(tup.points, kernel.alpha):
        hit = distinguished_part(point, alpha)
        sizes.append(0 if hit is None else point[hit[0]].dual_parts[hit[1]])
    return sizes


def mc_delta(tup: MonodromyTuple, kernel: ConvolutionKernel) -> int:
    """``(k - 2) r - sum(delta_i)``."""
    return (tup.k - 2) * tup.rank - sum(distinguished_sizes(tup, kernel))


def mc_step(tup: MonodromyTuple, kernel: ConvolutionKernel) -> MonodromyTuple:
    """Apply one rank-one middle convolution."""
    if not kernel.betaT:
        raise DegenerateKernel("betaT is 0 mod 1; middle convolution needs a nontrivial betaT")
    delta = mc_delta(tup, kernel)
    new_rank = tup.rank + delta
    betaU = derive_betaU(kernel)
    points = []
    for i, (point, alpha) in enumerate(zip(tup.points, kernel.alpha)):
        hit = distinguished_part(point, alpha)
        out: list[EigenBlock] = []
        for b, block in enumerate(point):
            if hit is not None and b == hit[0]:
                size = block.dual_parts[0] + delta
                if size < 0:
                    raise NegativePart(f"point {i}: distinguished part {block.dual_parts[0]} + delta {delta} < 0")
                if size:
                    out.append(EigenBlock(kernel.betaV[i], (size,)))
                rest = block.dual_parts.parts[1:]
                if rest:
                    out.append(EigenBlock(block.eigenvalue + betaU[i], rest))
            else:
                out.append(EigenBlock(block.eigenvalue + betaU[i], block.dual_parts))
        if hit is None:
            if delta < 0:
                raise InvalidConvolution(f"point {i}: alpha = {alpha} is not an eigenvalue but delta = {delta} < 0")
            if delta > 0:
                out.append(EigenBlock(kernel.betaV[i], (delta,)))
        values = [b.eigenvalue for b in out]
        if len(set(values)) != len(values):
            raise EigenvalueCollision(f"point {i}: two blocks land on the same eigenvalue")
        points.append(tuple(out))
    return MonodromyTuple(new_rank, tuple(points))


def default_kernel(tup: MonodromyTuple) -> ConvolutionKernel:
    """Kernel distinguishing the eigenvalue with the largest top dual part at each point.

    Ties go to the first block (smallest exponent).  ``betaV`` is ``-betaT`` at
    the first point and 0 elsewhere.
    """
    betaH = []
    for point in tup.points:
        top = max(point, key=lambda b: b.dual_parts[0])
        betaH.append(-top.eigenvalue)
    betaT = -exp_sum(betaH)
    betaV = [-betaT] + [ZERO] * (tup.k - 1)
    return ConvolutionKernel(tuple(betaH), tuple(betaV), betaT)


@dataclass(frozen=True)
class TraceStep:
    index: int
    kernel: ConvolutionKernel
    delta: int
    rank_before: int
    rank_after: int
    distinguished: tuple[int, ...]
    sizes: tuple[int, ...]
    literal_sizes: tuple[int, ...]
    result: MonodromyTuple = field(repr=False)


def katz_reduce(tup: MonodromyTuple) -> tuple[MonodromyTuple, list[TraceStep]]:
    """Convolve with the default kernel while ``delta < 0``.

    Stops at ``delta >= 0`` or at rank 1, where every three-point tuple has
    ``delta = -2`` but no smaller rank exists.  Errors are re-raised with the
    index of the failing step.
    """
    if tup.k != 3:
        raise ArityMismatch(f"reduction is defined for three points, got {tup.k}")
    trace: list[TraceStep] = []
    while tup.rank > 1:
        step = len(trace)
        try:
            kernel = default_kernel(tup)
            delta = mc_delta(tup, kernel)
            if delta >= 0:
                break
            new = mc_step(tup, kernel)
        except ConvolutionError as exc:
            raise type(exc)(f"step {step}: {exc}") from exc
        dist = tuple(distinguished_sizes(tup, kernel))
        trace.append(
            TraceStep(
                index=step,
                kernel=kernel,
                delta=delta,
                rank_before=tup.rank,
                rank_after=new.rank,
                distinguished=dist,
                sizes=tuple(d + delta for d in dist),
                literal_sizes=tuple(2 * d for d in dist),
                result=new,
            )
        )
        tup = new
    return tup, trace
