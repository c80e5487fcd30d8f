"""Exact building blocks: rationals, intervals, regions, piecewise-constant
measures, division instances, and allocations.

Every quantity is an arbitrary-precision rational; no floats appear anywhere.
All types are immutable values, so they are safe to share across threads.
"""

from __future__ import annotations

from bisect import bisect_right
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable

from .errors import TargetExceedsRemainder

Rational = Fraction

ZERO = Fraction(0)
ONE = Fraction(1)

TOPOLOGIES = ("interval", "pie")


def as_rational(value) -> Fraction:
    """Coerce an int or Fraction; floats are rejected to keep the core exact."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    raise TypeError(f"expected an exact rational, got {type(value).__name__}")


def parse_rational(text: str) -> Fraction:
    """Parse 'p/q' or an integer string. Float syntax is rejected."""
    if not isinstance(text, str):
        raise ValueError(f"rational must be a string, got {type(text).__name__}")
    num, sep, den = text.strip().partition("/")
    try:
        if sep:
            return Fraction(int(num), int(den))
        return Fraction(int(num))
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"invalid rational {text!r}: {exc}") from None


def format_rational(value: Fraction) -> str:
    """Canonical 'p/q' (or bare integer) form; inverse of parse_rational."""
    return str(value)


@dataclass(frozen=True, order=True)
class Interval:
    """Closed cake interval [lo, hi] with 0 <= lo <= hi <= 1."""

    lo: Fraction
    hi: Fraction

    def __post_init__(self):
        object.__setattr__(self, "lo", as_rational(self.lo))
        object.__setattr__(self, "hi", as_rational(self.hi))
        if not (ZERO <= self.lo <= self.hi <= ONE):
            raise ValueError(f"interval needs 0 <= lo <= hi <= 1, got [{self.lo}, {self.hi}]")

    @property
    def length(self) -> Fraction:
        return self.hi - self.lo


@dataclass(frozen=True, init=False)
class Region:
    """Canonical union of disjoint intervals.

    Construction sorts the intervals, drops zero-length ones, and merges any
    that touch or overlap, so equal point-sets always compare equal.
    """

    intervals: tuple[Interval, ...]

    def __init__(self, intervals: Iterable[Interval] = ()):
        merged: list[Interval] = []
        for iv in sorted(intervals):
            if iv.lo == iv.hi:
                continue
            if merged and iv.lo <= merged[-1].hi:
                if iv.hi > merged[-1].hi:
                    merged[-1] = Interval(merged[-1].lo, iv.hi)
            else:
                merged.append(iv)
        object.__setattr__(self, "intervals", tuple(merged))

    @property
    def is_empty(self) -> bool:
        return not self.intervals

    @property
    def length(self) -> Fraction:
        return sum((iv.length for iv in self.intervals), ZERO)

    def union(self, other: "Region") -> "Region":
        return Region(self.intervals + other.intervals)

    def intersect(self, other: "Region") -> "Region":
        out = []
        for a in self.intervals:
            for b in other.intervals:
                lo, hi = max(a.lo, b.lo), min(a.hi, b.hi)
                if lo < hi:
                    out.append(Interval(lo, hi))
        return Region(out)

    def difference(self, other: "Region") -> "Region":
        out = []
        for a in self.intervals:
            cursor = a.lo
            for b in other.intervals:
                if b.hi <= cursor:
                    continue
                if b.lo >= a.hi:
                    break
                if b.lo > cursor:
                    out.append(Interval(cursor, b.lo))
                cursor = max(cursor, b.hi)
                if cursor >= a.hi:
                    break
            if cursor < a.hi:
                out.append(Interval(cursor, a.hi))
        return Region(out)

    def contains(self, other: "Region") -> bool:
        return other.difference(self).is_empty


FULL_CAKE = Region((Interval(ZERO, ONE),))


@dataclass(frozen=True)
class Valuation:
    """Nonatomic measure given by a piecewise-constant density.

    ``breakpoints`` are strictly increasing and start at 0; ``densities[j]``
    is the (nonnegative) value per unit length on cell
    [breakpoints[j], breakpoints[j+1]].  The total value must be positive.

    Cake valuations end at 1.  Internal code (the flattener) also builds
    valuations on [0, L] for L < 1; Instance enforces the full-cake domain.
    """

    breakpoints: tuple[Fraction, ...]
    densities: tuple[Fraction, ...]
    _prefix: tuple[Fraction, ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        bps = tuple(as_rational(b) for b in self.breakpoints)
        dens = tuple(as_rational(d) for d in self.densities)
        object.__setattr__(self, "breakpoints", bps)
        object.__setattr__(self, "densities", dens)
        if len(bps) != len(dens) + 1:
            raise ValueError("need exactly one more breakpoint than densities")
        if len(dens) == 0:
            raise ValueError("valuation needs at least one cell")
        if bps[0] != ZERO:
            raise ValueError("first breakpoint must be 0")
        if any(b >= c for b, c in zip(bps, bps[1:])):
            raise ValueError("breakpoints must be strictly increasing")
        if any(d < ZERO for d in dens):
            raise ValueError("densities must be nonnegative")
        acc = ZERO
        prefix = [ZERO]
        for (b, c), d in zip(zip(bps, bps[1:]), dens):
            acc += d * (c - b)
            prefix.append(acc)
        if acc <= ZERO:
            raise ValueError("total value must be positive")
        object.__setattr__(self, "_prefix", tuple(prefix))

    @property
    def extent(self) -> Fraction:
        """Right end of the domain (1 for cake valuations)."""
        return self.breakpoints[-1]

    @property
    def total(self) -> Fraction:
        return self._prefix[-1]

    def cumulative(self, x: Fraction) -> Fraction:
        """Exact value of [0, x]."""
        if not (ZERO <= x <= self.extent):
            raise ValueError(f"coordinate {x} outside [0, {self.extent}]")
        j = bisect_right(self.breakpoints, x) - 1
        if j >= len(self.densities):
            return self.total
        return self._prefix[j] + self.densities[j] * (x - self.breakpoints[j])

    def value_between(self, lo: Fraction, hi: Fraction) -> Fraction:
        return self.cumulative(hi) - self.cumulative(lo)

    def density_at(self, x: Fraction) -> Fraction:
        """Density of the cell whose left edge is at or before x."""
        j = min(bisect_right(self.breakpoints, x) - 1, len(self.densities) - 1)
        return self.densities[j]

    @classmethod
    def uniform(cls) -> "Valuation":
        return cls((ZERO, ONE), (ONE,))


def measure_of(valuation: Valuation, region: Region) -> Fraction:
    """Exact measure of a region; additive over disjoint regions, 0 on empty."""
    return sum((valuation.value_between(iv.lo, iv.hi) for iv in region.intervals), ZERO)


def mark_right(valuation: Valuation, start: Fraction, target: Fraction) -> Fraction:
    """Leftmost x >= start with value exactly ``target`` on [start, x].

    Well defined because the cumulative function is continuous and
    nondecreasing; on zero-density plateaus the leftmost point is returned.
    """
    start = as_rational(start)
    target = as_rational(target)
    if not (ZERO <= start <= valuation.extent):
        raise ValueError(f"start {start} outside [0, {valuation.extent}]")
    if target < ZERO:
        raise ValueError("target must be nonnegative")
    remainder = valuation.total - valuation.cumulative(start)
    if target > remainder:
        raise TargetExceedsRemainder(f"target {target} exceeds remaining value {remainder}")
    if target == ZERO:
        return start
    bps, dens = valuation.breakpoints, valuation.densities
    j = min(bisect_right(bps, start) - 1, len(dens) - 1)
    acc = ZERO
    for cell in range(j, len(dens)):
        a = max(bps[cell], start)
        b = bps[cell + 1]
        d = dens[cell]
        if d == ZERO or b <= a:
            continue
        cell_value = d * (b - a)
        if acc + cell_value >= target:
            return a + (target - acc) / d
        acc += cell_value
    raise AssertionError("unreachable: remainder check guarantees the scan succeeds")


def equal_marks(valuation: Valuation, parts: int) -> list[Fraction]:
    """Marks m_1 <= ... <= m_{parts-1} splitting the cake into ``parts``
    pieces of exactly equal value; each mark is the leftmost valid one."""
    if parts < 1:
        raise ValueError("parts must be >= 1")
    total = valuation.total
    return [mark_right(valuation, ZERO, total * j / parts) for j in range(1, parts)]


@dataclass(frozen=True)
class Instance:
    """A cake division problem: topology, one valuation per agent, and
    positive entitlements summing to exactly 1."""

    topology: str
    valuations: tuple[Valuation, ...]
    entitlements: tuple[Fraction, ...]

    def __post_init__(self):
        object.__setattr__(self, "valuations", tuple(self.valuations))
        object.__setattr__(self, "entitlements", tuple(as_rational(t) for t in self.entitlements))
        if self.topology not in TOPOLOGIES:
            raise ValueError(f"topology must be one of {TOPOLOGIES}, got {self.topology!r}")
        if len(self.valuations) < 1:
            raise ValueError("need at least one agent")
        if len(self.valuations) != len(self.entitlements):
            raise ValueError("one entitlement per valuation required")
        if any(t <= ZERO for t in self.entitlements):
            raise ValueError("entitlements must be positive")
        if sum(self.entitlements) != ONE:
            raise ValueError(f"entitlements must sum to 1, got {sum(self.entitlements)}")
        for v in self.valuations:
            if v.extent != ONE:
                raise ValueError("instance valuations must cover [0, 1]")

    @property
    def n(self) -> int:
        return len(self.valuations)


@dataclass(frozen=True)
class Allocation:
    """One region per agent (indexed by position).

    Deliberately permissive: malformed allocations can be represented so the
    verifier can report on them instead of rejecting them at construction.
    """

    pieces: tuple[Region, ...]

    def __post_init__(self):
        object.__setattr__(self, "pieces", tuple(self.pieces))


def boundary_points(allocation: Allocation) -> tuple[Fraction, ...]:
    """Distinct interior endpoints of the pieces' maximal intervals.

    0 and 1 never count, so a pie cake glued at 0 == 1 gets that boundary
    for free.
    """
    points = set()
    for region in allocation.pieces:
        for iv in region.intervals:
            points.add(iv.lo)
            points.add(iv.hi)
    points.discard(ZERO)
    points.discard(ONE)
    return tuple(sorted(points))


def cut_count(allocation: Allocation) -> int:
    """Number of cuts needed to realize the allocation on an interval cake."""
    return len(boundary_points(allocation))
