"""Piecewise dyadic-affine maps of the unit interval.

A map is a finite list of :class:`AffinePiece` objects, each acting as
``x -> 2**e * x + m`` on a half-open domain interval.  The exponent is the
literal affine exponent: a contraction by one half has ``e = -1``.

Three classes of maps matter here:

* WI: bijections of ``[0,1)`` whose pieces are fractional-part branches
  ``frac(2**e x)`` on ``[1/2,1)`` and ``frac(2**e (x-1))`` on ``[0,1/2)``.
  Equivalently ``m`` is an integer on the right half and ``m + 2**e`` is an
  integer on the left half.
* WI1: injections built from ``x/2**k`` on ``[1/2,1)`` and
  ``(x-1)/2**k + 1`` on ``[0,1/2)`` with ``k >= 1`` (so ``e = -k``).
* WI2: injections built from ``(x+l)/2**k`` with ``k, l >= 0``.
"""

from __future__ import annotations

import bisect
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, NamedTuple, Optional, Sequence, Union

from .intervals import (
    EMPTY,
    UNIT,
    Interval,
    IntervalSet,
    RationalLike,
    as_rational,
    difference,
    format_rational,
    intersect,
    measure,
    parse_rational,
    pow2,
    union_all,
)

HALF = Fraction(1, 2)
LEFT_HALF = IntervalSet([(0, HALF)])
RIGHT_HALF = IntervalSet([(HALF, 1)])


class UndefinedPointError(ValueError):
    """Raised when a map is evaluated outside its domain."""


class NotInjectiveError(ValueError):
    pass


class ClassificationError(ValueError):
    """Raised when a map does not belong to the class an operation requires."""


@dataclass(frozen=True, order=True)
class AffinePiece:
    lo: Fraction
    hi: Fraction
    e: int
    m: Fraction

    def __post_init__(self):
        if not self.lo < self.hi:
            raise ValueError(f"empty piece domain [{self.lo}, {self.hi})")

    @classmethod
    def make(cls, lo: RationalLike, hi: RationalLike, e: int, m: RationalLike = 0) -> AffinePiece:
        return cls(as_rational(lo), as_rational(hi), int(e), as_rational(m))

    @property
    def dom(self) -> Interval:
        return Interval(self.lo, self.hi)

    @property
    def coeffs(self) -> tuple[int, Fraction]:
        return self.e, self.m

    def __call__(self, x: Fraction) -> Fraction:
        return pow2(self.e) * x + self.m

    def image(self) -> Interval:
        s = pow2(self.e)
        return Interval(s * self.lo + self.m, s * self.hi + self.m)

    def inverse(self) -> AffinePiece:
        lo, hi = self.image()
        return AffinePiece(lo, hi, -self.e, -self.m * pow2(-self.e))

    def restrict(self, lo: Fraction, hi: Fraction) -> Optional[AffinePiece]:
        lo, hi = max(lo, self.lo), min(hi, self.hi)
        if lo < hi:
            return AffinePiece(lo, hi, self.e, self.m)
        return None

    def to_json(self) -> dict:
        return {"dom": [format_rational(self.lo), format_rational(self.hi)], "e": self.e, "m": format_rational(self.m)}

    @classmethod
    def from_json(cls, data: dict) -> AffinePiece:
        lo, hi = data["dom"]
        return cls(parse_rational(lo), parse_rational(hi), int(data["e"]), parse_rational(data.get("m", "0")))


class Classification(NamedTuple):
    in_WI: bool
    in_WI1: bool
    in_WI2: bool


def _canonical(pieces: Iterable[AffinePiece]) -> tuple[AffinePiece, ...]:
    ps = sorted(pieces)
    out: list[AffinePiece] = []
    for p in ps:
        if out and p.lo < out[-1].hi:
            raise ValueError(f"overlapping piece domains near {format_rational(p.lo)}")
        if out and out[-1].hi == p.lo and out[-1].coeffs == p.coeffs:
            q = out[-1]
            out[-1] = AffinePiece(q.lo, p.hi, q.e, q.m)
        else:
            out.append(p)
    return tuple(out)


class PiecewiseMap:
    """A finite, possibly partial, dyadic-affine map on ``[0,1)``.

    Pieces are kept sorted by domain and adjacent pieces with identical
    coefficients are merged, so equal point-functions compare equal.
    """

    __slots__ = ("pieces", "_los")

    def __init__(self, pieces: Iterable[AffinePiece] = ()):
        self.pieces: tuple[AffinePiece, ...] = _canonical(pieces)
        for p in self.pieces:
            if p.lo < 0 or p.hi > 1:
                raise ValueError(f"piece domain [{p.lo}, {p.hi}) leaves [0,1)")
            lo, hi = p.image()
            if lo < 0 or hi > 1:
                raise ValueError(
                    f"piece on [{p.lo}, {p.hi}) has image [{lo}, {hi}) outside [0,1); split wrapping pieces"
                )
        self._los = [p.lo for p in self.pieces]

    @classmethod
    def from_triples(cls, triples: Iterable[Sequence]) -> PiecewiseMap:
        """Build from ``(lo, hi, e, m)`` tuples."""
        return cls(AffinePiece.make(*t) for t in triples)

    @classmethod
    def identity(cls) -> PiecewiseMap:
        return cls([AffinePiece.make(0, 1, 0, 0)])

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, PiecewiseMap):
            return NotImplemented
        return self.pieces == other.pieces

    def __hash__(self) -> int:
        return hash(self.pieces)

    def __len__(self) -> int:
        return len(self.pieces)

    def __repr__(self) -> str:
        parts = [
            f"[{format_rational(p.lo)},{format_rational(p.hi)}): 2^{p.e}x{'+' if p.m >= 0 else '-'}{format_rational(abs(p.m))}"
            for p in self.pieces
        ]
        return "PiecewiseMap(" + "; ".join(parts) + ")"

    def _locate(self, x: Fraction) -> Optional[AffinePiece]:
        i = bisect.bisect_right(self._los, x) - 1
        if i >= 0 and x < self.pieces[i].hi:
            return self.pieces[i]
        return None

    def __call__(self, x: RationalLike) -> Fraction:
        x = as_rational(x)
        p = self._locate(x)
        if p is None:
            raise UndefinedPointError(f"map undefined at {format_rational(x)}")
        return p(x)

    def domain(self) -> IntervalSet:
        return IntervalSet(p.dom for p in self.pieces)

    def range(self) -> IntervalSet:
        return IntervalSet(p.image() for p in self.pieces)

    def is_total(self) -> bool:
        return self.domain() == UNIT

    def is_injective(self) -> bool:
        images = [p.image() for p in self.pieces]
        total = sum((hi - lo for lo, hi in images), Fraction(0))
        return total == measure(IntervalSet(images))

    def restrict(self, s: IntervalSet) -> PiecewiseMap:
        out = []
        ivs = s.intervals
        los = [iv.lo for iv in ivs]
        for p in self.pieces:
            i = max(bisect.bisect_right(los, p.lo) - 1, 0)
            while i < len(ivs) and ivs[i].lo < p.hi:
                q = p.restrict(ivs[i].lo, ivs[i].hi)
                if q is not None:
                    out.append(q)
                i += 1
        return PiecewiseMap(out)

    def image(self, s: IntervalSet) -> IntervalSet:
        return IntervalSet(p.image() for p in self.restrict(s).pieces)

    def preimage(self, s: IntervalSet) -> IntervalSet:
        out = []
        for p in self.pieces:
            lo, hi = p.image()
            for iv in intersect(s, IntervalSet([(lo, hi)])):
                scale = pow2(-p.e)
                out.append(Interval((iv.lo - p.m) * scale, (iv.hi - p.m) * scale))
        return IntervalSet(out)

    def compose(self, inner: PiecewiseMap) -> PiecewiseMap:
        """Return ``self o inner``, defined where ``inner`` lands in ``self``'s domain."""
        out = []
        for p in inner.pieces:
            img_lo, img_hi = p.image()
            i = max(bisect.bisect_right(self._los, img_lo) - 1, 0)
            inv = pow2(-p.e)
            while i < len(self.pieces) and self.pieces[i].lo < img_hi:
                q = self.pieces[i]
                lo, hi = max(img_lo, q.lo), min(img_hi, q.hi)
                if lo < hi:
                    out.append(
                        AffinePiece((lo - p.m) * inv, (hi - p.m) * inv, q.e + p.e, pow2(q.e) * p.m + q.m)
                    )
                i += 1
        return PiecewiseMap(out)

    def inverse(self) -> PiecewiseMap:
        if not self.is_injective():
            raise NotInjectiveError("cannot invert a map whose piece images overlap")
        return PiecewiseMap(p.inverse() for p in self.pieces)

    def union(self, other: PiecewiseMap) -> PiecewiseMap:
        """Glue two maps with disjoint domains."""
        return PiecewiseMap(self.pieces + other.pieces)

    def split_at_half(self) -> list[AffinePiece]:
        out = []
        for p in self.pieces:
            if p.lo < HALF < p.hi:
                out.append(AffinePiece(p.lo, HALF, p.e, p.m))
                out.append(AffinePiece(HALF, p.hi, p.e, p.m))
            else:
                out.append(p)
        return out

    def classify(self) -> Classification:
        return classify(self)

    def branches(self) -> dict[tuple[int, int], IntervalSet]:
        """Group the domain by fractional-part branch.

        Keys are ``(e, shift)`` meaning ``frac(2**e * (x - shift))``; for
        ``e >= 0`` the two shifts coincide and ``shift`` is always 0.
        Only meaningful for maps passing the WI congruences.
        """
        groups: dict[tuple[int, int], list[Interval]] = {}
        for p in self.split_at_half():
            shift = 1 if (p.e < 0 and p.hi <= HALF) else 0
            groups.setdefault((p.e, shift), []).append(p.dom)
        return {k: IntervalSet(v) for k, v in sorted(groups.items())}

    def to_json(self) -> list[dict]:
        return [p.to_json() for p in self.pieces]

    @classmethod
    def from_json(cls, data: Iterable[dict]) -> PiecewiseMap:
        return cls(AffinePiece.from_json(d) for d in data)


def frac_branch(e: int, shift: int, domain: IntervalSet) -> list[AffinePiece]:
    """Pieces of ``x -> frac(2**e * (x - shift))`` restricted to ``domain``.

    The domain is cut wherever the integer part jumps, so every returned
    piece is affine.
    """
    s = pow2(e)
    out = []
    for lo, hi in domain:
        a, b = s * (lo - shift), s * (hi - shift)
        n = a.__floor__()
        while n < b:
            seg_lo = max(a, Fraction(n))
            seg_hi = min(b, Fraction(n + 1))
            out.append(AffinePiece(seg_lo / s + shift, seg_hi / s + shift, e, -s * shift - n))
            n += 1
    return out


def map_from_branches(branches: Iterable[tuple[int, int, Iterable[Sequence[RationalLike]]]]) -> PiecewiseMap:
    """Build a map from ``(e, shift, intervals)`` fractional-part branches."""
    pieces = []
    for e, shift, ivs in branches:
        pieces.extend(frac_branch(e, shift, IntervalSet(ivs)))
    return PiecewiseMap(pieces)


def is_integer(q: Fraction) -> bool:
    return q.denominator == 1


def _wi_piece(p: AffinePiece) -> bool:
    if p.hi <= HALF:
        return is_integer(p.m + pow2(p.e))
    return is_integer(p.m)


def _wi1_piece(p: AffinePiece) -> bool:
    if p.e > -1:
        return False
    if p.hi <= HALF:
        return p.m == 1 - pow2(p.e)
    return p.m == 0


def _wi2_piece(p: AffinePiece) -> bool:
    if p.e > 0:
        return False
    l = p.m * pow2(-p.e)
    return is_integer(l) and l >= 0


def classify(f: Union[PiecewiseMap, "PartialMap"]) -> Classification:
    """Membership of ``f`` in WI, WI1 and WI2.

    Every class requires a total injective map on ``[0,1)``; WI also needs
    surjectivity.  The empty map belongs to none of them.
    """
    if isinstance(f, PartialMap):
        f = f.map
    if not f.pieces or not f.is_total() or not f.is_injective():
        return Classification(False, False, False)
    parts = f.split_at_half()
    in_wi = f.range() == UNIT and all(_wi_piece(p) for p in parts)
    in_wi1 = all(_wi1_piece(p) for p in parts)
    in_wi2 = all(_wi2_piece(p) for p in parts)
    return Classification(in_wi, in_wi1, in_wi2)


def wi1_shaped(f: PiecewiseMap) -> bool:
    return all(_wi1_piece(p) for p in f.split_at_half())


def wi2_shaped(f: PiecewiseMap) -> bool:
    return all(_wi2_piece(p) for p in f.pieces)


@dataclass(frozen=True)
class PartialMap:
    """A map defined on ``[0,1)`` minus an explicitly tracked ``undefined`` set."""

    map: PiecewiseMap
    undefined: IntervalSet = EMPTY
    tol: Fraction = Fraction(0)

    def __post_init__(self):
        dom = self.map.domain()
        if union_all([dom, self.undefined]) != UNIT or intersect(dom, self.undefined):
            raise ValueError("domain and undefined set must partition [0,1)")
        if measure(self.undefined) > self.tol:
            raise ValueError(
                f"undefined set has measure {measure(self.undefined)} > tol {self.tol}"
            )

    @classmethod
    def total(cls, f: PiecewiseMap) -> PartialMap:
        return cls(f, EMPTY, Fraction(0))

    @classmethod
    def wrap(cls, f: PiecewiseMap, tol: Fraction = Fraction(0)) -> PartialMap:
        undefined = difference(UNIT, f.domain())
        return cls(f, undefined, max(Fraction(tol), measure(undefined)))

    def __call__(self, x: RationalLike) -> Fraction:
        return self.map(x)

    @property
    def pieces(self) -> tuple[AffinePiece, ...]:
        return self.map.pieces

    def missing_range(self) -> IntervalSet:
        """Part of ``[0,1)`` not hit by the defined part of the map."""
        return difference(UNIT, self.map.range())

    def to_json(self) -> dict:
        return {
            "pieces": self.map.to_json(),
            "undefined": self.undefined.to_json(),
            "tol": format_rational(self.tol),
        }

    @classmethod
    def from_json(cls, data: dict) -> PartialMap:
        return cls(
            PiecewiseMap.from_json(data["pieces"]),
            IntervalSet.from_json(data.get("undefined", [])),
            parse_rational(data.get("tol", "0")),
        )


MapLike = Union[PiecewiseMap, PartialMap]


def as_map(f: MapLike) -> PiecewiseMap:
    return f.map if isinstance(f, PartialMap) else f


def agreement_set(f: MapLike, g: MapLike) -> IntervalSet:
    """Where two maps share a piece with identical coefficients.

    Distinct affine maps meet in at most one point, which is dropped.
    """
    f, g = as_map(f), as_map(g)
    out = []
    gp = g.pieces
    j = 0
    for p in f.pieces:
        while j < len(gp) and gp[j].hi <= p.lo:
            j += 1
        k = j
        while k < len(gp) and gp[k].lo < p.hi:
            q = gp[k]
            if p.coeffs == q.coeffs:
                lo, hi = max(p.lo, q.lo), min(p.hi, q.hi)
                if lo < hi:
                    out.append(Interval(lo, hi))
            k += 1
    return IntervalSet(out)


def disagreement_set(f: MapLike, g: MapLike) -> IntervalSet:
    """``[0,1)`` minus the agreement set; points where either map is undefined count."""
    return difference(UNIT, agreement_set(f, g))
