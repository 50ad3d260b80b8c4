"""Exact rational interval sets.

Every measurable set in this package is a finite union of half-open
intervals ``[lo, hi)`` with :class:`fractions.Fraction` endpoints.  An
:class:`IntervalSet` is always stored in canonical form (sorted, disjoint,
maximally merged), so two sets describing the same points compare equal.
"""

from __future__ import annotations

import bisect
import math
from fractions import Fraction
from typing import Iterable, Iterator, NamedTuple, Sequence, Union

RationalLike = Union[Fraction, int, str]

MAX_EXPONENT = 64


class ExponentOverflowError(ValueError):
    """Raised when a dyadic exponent leaves ``[-MAX_EXPONENT, MAX_EXPONENT]``."""


class LogDomainError(ValueError):
    """Raised when ``1/|x|`` is integrated over a set touching zero."""


def as_rational(value: RationalLike) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, float):
        raise TypeError("floats are not accepted; pass a string such as '1/3'")
    return Fraction(value)


def format_rational(q: Fraction) -> str:
    """Serialize as ``"p/q"``, or ``"p"`` when the denominator is one."""
    q = Fraction(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def parse_rational(text: Union[str, int]) -> Fraction:
    return Fraction(text)


def pow2(e: int) -> Fraction:
    if abs(e) > MAX_EXPONENT:
        raise ExponentOverflowError(f"exponent {e} outside [-{MAX_EXPONENT}, {MAX_EXPONENT}]")
    return Fraction(1 << e) if e >= 0 else Fraction(1, 1 << -e)


def floor_log2(q: Fraction) -> int:
    """Largest ``n`` with ``2**n <= q`` for positive rational ``q``."""
    if q <= 0:
        raise ValueError("floor_log2 needs a positive argument")
    n = q.numerator.bit_length() - q.denominator.bit_length()
    # 2**(n-1) < q < 2**(n+1)
    if (Fraction(2) ** n) > q:
        n -= 1
    return n


class Interval(NamedTuple):
    lo: Fraction
    hi: Fraction

    @property
    def length(self) -> Fraction:
        return self.hi - self.lo

    def __contains__(self, x: object) -> bool:
        return self.lo <= x < self.hi  # type: ignore[operator]


def make_interval(lo: RationalLike, hi: RationalLike) -> Interval:
    lo, hi = as_rational(lo), as_rational(hi)
    if not lo < hi:
        raise ValueError(f"malformed interval [{lo}, {hi}): need lo < hi")
    return Interval(lo, hi)


class IntervalSet:
    """A canonical finite union of half-open rational intervals."""

    __slots__ = ("_ivs", "_los")

    def __init__(self, intervals: Iterable[Union[Interval, Sequence[RationalLike]]] = ()):
        raw = [iv if isinstance(iv, Interval) else make_interval(*iv) for iv in intervals]
        for iv in raw:
            if not iv.lo < iv.hi:
                raise ValueError(f"malformed interval [{iv.lo}, {iv.hi}): need lo < hi")
        self._ivs: tuple[Interval, ...] = _merge(raw)
        self._los: list[Fraction] | None = None

    @classmethod
    def _trusted(cls, ivs: Sequence[Interval]) -> IntervalSet:
        # caller guarantees canonical form
        obj = cls.__new__(cls)
        obj._ivs = tuple(ivs)
        obj._los = None
        return obj

    @property
    def intervals(self) -> tuple[Interval, ...]:
        return self._ivs

    def __iter__(self) -> Iterator[Interval]:
        return iter(self._ivs)

    def __len__(self) -> int:
        return len(self._ivs)

    def __bool__(self) -> bool:
        return bool(self._ivs)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, IntervalSet):
            return NotImplemented
        return self._ivs == other._ivs

    def __hash__(self) -> int:
        return hash(self._ivs)

    def __repr__(self) -> str:
        body = ", ".join(f"[{format_rational(a)}, {format_rational(b)})" for a, b in self._ivs)
        return f"IntervalSet({body or '∅'})"

    def __contains__(self, x: object) -> bool:
        if self._los is None:
            self._los = [iv.lo for iv in self._ivs]
        i = bisect.bisect_right(self._los, x) - 1  # type: ignore[arg-type]
        return i >= 0 and x < self._ivs[i].hi  # type: ignore[operator]

    @property
    def lo(self) -> Fraction:
        return self._ivs[0].lo

    @property
    def hi(self) -> Fraction:
        return self._ivs[-1].hi

    def measure(self) -> Fraction:
        return measure(self)

    def __or__(self, other: IntervalSet) -> IntervalSet:
        return union(self, other)

    def __and__(self, other: IntervalSet) -> IntervalSet:
        return intersect(self, other)

    def __sub__(self, other: IntervalSet) -> IntervalSet:
        return difference(self, other)

    def __xor__(self, other: IntervalSet) -> IntervalSet:
        return symdiff(self, other)

    def issubset(self, other: IntervalSet) -> bool:
        return not difference(self, other)

    def isdisjoint(self, other: IntervalSet) -> bool:
        return not intersect(self, other)

    def to_json(self) -> list[list[str]]:
        return [[format_rational(a), format_rational(b)] for a, b in self._ivs]

    @classmethod
    def from_json(cls, data: Iterable[Sequence[Union[str, int]]]) -> IntervalSet:
        return cls((parse_rational(a), parse_rational(b)) for a, b in data)


def _merge(raw: list[Interval]) -> tuple[Interval, ...]:
    if not raw:
        return ()
    raw = sorted(raw)
    out = [raw[0]]
    for lo, hi in raw[1:]:
        last = out[-1]
        if lo <= last.hi:
            if hi > last.hi:
                out[-1] = Interval(last.lo, hi)
        else:
            out.append(Interval(lo, hi))
    return tuple(out)


EMPTY = IntervalSet()
UNIT = IntervalSet([(0, 1)])


def normalize(raw: Iterable[Union[Interval, Sequence[RationalLike]]]) -> IntervalSet:
    """Canonical IntervalSet for the union of ``raw``; rejects ``lo >= hi``."""
    return IntervalSet(raw)


def union(a: IntervalSet, b: IntervalSet) -> IntervalSet:
    if not a:
        return b
    if not b:
        return a
    return IntervalSet._trusted(_merge(list(a.intervals) + list(b.intervals)))


def union_all(sets: Iterable[IntervalSet]) -> IntervalSet:
    ivs: list[Interval] = []
    for s in sets:
        ivs.extend(s.intervals)
    return IntervalSet._trusted(_merge(ivs))


def intersect(a: IntervalSet, b: IntervalSet) -> IntervalSet:
    out = []
    x, y = a.intervals, b.intervals
    i = j = 0
    while i < len(x) and j < len(y):
        lo = max(x[i].lo, y[j].lo)
        hi = min(x[i].hi, y[j].hi)
        if lo < hi:
            out.append(Interval(lo, hi))
        if x[i].hi < y[j].hi:
            i += 1
        else:
            j += 1
    return IntervalSet._trusted(out)


def difference(a: IntervalSet, b: IntervalSet) -> IntervalSet:
    out = []
    y = b.intervals
    j = 0
    for lo, hi in a.intervals:
        while j < len(y) and y[j].hi <= lo:
            j += 1
        k = j
        cur = lo
        while k < len(y) and y[k].lo < hi:
            if y[k].lo > cur:
                out.append(Interval(cur, y[k].lo))
            cur = max(cur, y[k].hi)
            if cur >= hi:
                break
            k += 1
        if cur < hi:
            out.append(Interval(cur, hi))
    return IntervalSet._trusted(out)


def symdiff(a: IntervalSet, b: IntervalSet) -> IntervalSet:
    return union(difference(a, b), difference(b, a))


def set_algebra(a: IntervalSet, b: IntervalSet, op: str) -> IntervalSet:
    ops = {"union": union, "intersect": intersect, "difference": difference, "symdiff": symdiff}
    try:
        return ops[op](a, b)
    except KeyError:
        raise ValueError(f"unknown set operation {op!r}; expected one of {sorted(ops)}") from None


def measure(s: IntervalSet) -> Fraction:
    return sum((iv.hi - iv.lo for iv in s.intervals), Fraction(0))


def affine_image(s: IntervalSet, e: int, m: RationalLike) -> IntervalSet:
    """Exact image of ``s`` under ``x -> 2**e * x + m``."""
    scale = pow2(e)
    m = as_rational(m)
    # positive scale keeps canonical order
    return IntervalSet._trusted([Interval(scale * lo + m, scale * hi + m) for lo, hi in s.intervals])


def affine_preimage(s: IntervalSet, e: int, m: RationalLike) -> IntervalSet:
    """Exact preimage of ``s`` under ``x -> 2**e * x + m``."""
    scale = pow2(-e)
    m = as_rational(m)
    return IntervalSet._trusted([Interval((lo - m) * scale, (hi - m) * scale) for lo, hi in s.intervals])


def scale(s: IntervalSet, factor: RationalLike) -> IntervalSet:
    factor = as_rational(factor)
    if factor <= 0:
        raise ValueError("scale factor must be positive")
    return IntervalSet._trusted([Interval(lo * factor, hi * factor) for lo, hi in s.intervals])


def translate(s: IntervalSet, shift: RationalLike) -> IntervalSet:
    shift = as_rational(shift)
    return IntervalSet._trusted([Interval(lo + shift, hi + shift) for lo, hi in s.intervals])


def log_integral(s: IntervalSet) -> float:
    """Integral of ``1/|x|`` over ``s``.

    Each interval must lie strictly on one side of zero.  Terms are summed
    as ``log1p(length/|near end|)`` so tiny intervals keep full precision.
    """
    total = 0.0
    for lo, hi in s.intervals:
        if lo > 0:
            near, length = lo, hi - lo
        elif hi < 0:
            near, length = -hi, hi - lo
        else:
            raise LogDomainError(f"interval [{lo}, {hi}) touches 0")
        total += math.log1p(length / near)
    return total


def split_at(s: IntervalSet, points: Iterable[Fraction]) -> list[Interval]:
    """Pieces of ``s`` cut at every point strictly inside an interval."""
    pts = sorted(set(points))
    out = []
    for lo, hi in s.intervals:
        a = bisect.bisect_right(pts, lo)
        b = bisect.bisect_left(pts, hi)
        cur = lo
        for p in pts[a:b]:
            out.append(Interval(cur, p))
            cur = p
        out.append(Interval(cur, hi))
    return out
