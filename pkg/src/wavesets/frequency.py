"""The frequency line, measured in units of pi.

A frequency ``x`` is stored as the rational ``x/pi``, so translation by
``2*pi`` is ``+2`` and every endpoint that appears in the classical
examples is exact.  The Littlewood-Paley set is ``E = [-2,-1) u [1,2)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Union

from .intervals import (
    EMPTY,
    UNIT,
    Interval,
    IntervalSet,
    affine_image,
    difference,
    floor_log2,
    intersect,
    log_integral,
    measure,
    pow2,
    split_at,
    symdiff,
    union_all,
)


class FrequencyDomainError(ValueError):
    """Raised for frequency sets that contain or accumulate at zero."""


@dataclass(frozen=True)
class FreqSet:
    """An interval set on the frequency line in pi-units."""

    body: IntervalSet

    @classmethod
    def of(cls, intervals) -> FreqSet:
        return cls(IntervalSet(intervals))

    def __len__(self) -> int:
        return len(self.body)

    def __iter__(self):
        return iter(self.body)

    def measure(self) -> Fraction:
        """Measure in pi-units; the Lebesgue measure is ``pi`` times this."""
        return measure(self.body)

    def to_json(self) -> dict:
        return {"pi_units": self.body.to_json()}

    @classmethod
    def from_json(cls, data: dict) -> FreqSet:
        return cls(IntervalSet.from_json(data["pi_units"]))

    def __repr__(self) -> str:
        return f"FreqSet({self.body!r}[pi])"


SetLike = Union[FreqSet, IntervalSet]


def body(s: SetLike) -> IntervalSet:
    return s.body if isinstance(s, FreqSet) else s


E_NEG = IntervalSet([(-2, -1)])
E_POS = IntervalSet([(1, 2)])
LITTLEWOOD_PALEY = FreqSet(IntervalSet([(-2, -1), (1, 2)]))
E = LITTLEWOOD_PALEY
TRANSLATION_CELL = IntervalSet([(0, 2)])


def tau_point(x) -> tuple[Fraction, int]:
    """Return ``(x + 2j, j)`` with ``x + 2j`` in E."""
    x = Fraction(x)
    r = x % 2
    value = r - 2 if r < 1 else r
    return value, int((value - x) / 2)


def delta_point(x) -> tuple[Fraction, int]:
    """Return ``(2**k * x, k)`` with ``2**k * x`` in E."""
    x = Fraction(x)
    if x == 0:
        raise FrequencyDomainError("delta is undefined at 0")
    if x > 0:
        k = -floor_log2(x)
    else:
        # |x| in (2**n, 2**(n+1)] lands in [-2, -1)
        n = floor_log2(-x)
        k = -n + 1 if -x == pow2(n) else -n
    return pow2(k) * x, k


def xi(s: SetLike) -> IntervalSet:
    """Identify a subset of E with a subset of [0,1)."""
    s = body(s)
    if not s.issubset(E.body):
        raise FrequencyDomainError(f"{s!r} is not contained in E")
    neg = affine_image(intersect(s, E_NEG), -1, 1)
    pos = affine_image(intersect(s, E_POS), -1, 0)
    return union_all([neg, pos])


def xi_inv(s: IntervalSet) -> IntervalSet:
    """Inverse of :func:`xi`: ``[0,1/2)`` goes to ``[-2,-1)`` and ``[1/2,1)`` to ``[1,2)``."""
    if not s.issubset(UNIT):
        raise FrequencyDomainError(f"{s!r} is not contained in [0,1)")
    half = Fraction(1, 2)
    left = affine_image(intersect(s, IntervalSet([(0, half)])), 1, -2)
    right = affine_image(intersect(s, IntervalSet([(half, 1)])), 1, 0)
    return union_all([left, right])


def xi_point(y) -> Fraction:
    y = Fraction(y)
    return y / 2 + 1 if y < 0 else y / 2


def xi_inv_point(z) -> Fraction:
    z = Fraction(z)
    return 2 * z - 2 if z < Fraction(1, 2) else 2 * z


# -- fragmenting -------------------------------------------------------------


def _check_away_from_zero(s: IntervalSet) -> None:
    for lo, hi in s:
        if lo <= 0 <= hi:
            raise FrequencyDomainError(f"interval [{lo}, {hi}) contains or accumulates at 0")


def dyadic_cuts(s: IntervalSet) -> list[Fraction]:
    """All points ``+-2**n`` strictly inside intervals of ``s``."""
    pts = []
    for lo, hi in s:
        a, b = (lo, hi) if lo > 0 else (-hi, -lo)
        sign = 1 if lo > 0 else -1
        n = floor_log2(a) + 1
        while pow2(n) < b:
            pts.append(sign * pow2(n))
            n += 1
    return pts


def integer_cuts(s: IntervalSet, step: int = 1) -> list[Fraction]:
    pts = []
    for lo, hi in s:
        k = math.floor(lo / step) + 1
        while k * step < hi:
            pts.append(Fraction(k * step))
            k += 1
    return pts


def dilation_fragments(s: SetLike) -> list[tuple[Interval, int]]:
    """Cut ``s`` so each fragment is carried into E by one scaling ``2**k``."""
    s = body(s)
    _check_away_from_zero(s)
    return [(iv, delta_point(iv.lo)[1]) for iv in split_at(s, dyadic_cuts(s))]


def translation_fragments(s: SetLike) -> list[tuple[Interval, int]]:
    """Cut ``s`` at even integers; each fragment is shifted by ``2j`` into ``[0,2)``."""
    s = body(s)
    out = []
    for iv in split_at(s, integer_cuts(s, 2)):
        j = -math.floor(iv.lo / 2)
        out.append((iv, j))
    return out


def _cover_report(pieces: list[Interval], target: IntervalSet) -> tuple[IntervalSet, IntervalSet]:
    """Return ``(overlap, gap)`` for a family of intervals meant to tile ``target``.

    ``overlap`` is the set covered at least twice, ``gap`` the part of
    ``target`` covered zero times.  Coverage outside ``target`` counts as
    overlap with the exterior and is reported with it.
    """
    pieces = sorted(pieces)
    overlaps = []
    reach: Optional[Fraction] = None
    for lo, hi in pieces:
        if reach is not None and lo < reach:
            overlaps.append(Interval(lo, min(hi, reach)))
        reach = hi if reach is None else max(reach, hi)
    covered = IntervalSet(pieces)
    overlap = union_all([IntervalSet(overlaps), difference(covered, target)])
    gap = difference(target, covered)
    return overlap, gap


# -- verification ------------------------------------------------------------


@dataclass(frozen=True)
class TilingCertificate:
    ok: bool
    translation_witness: Optional[FreqSet] = None
    dilation_witness: Optional[FreqSet] = None

    def to_json(self) -> dict:
        return {
            "ok": self.ok,
            "translation_witness": None if self.translation_witness is None else self.translation_witness.to_json(),
            "dilation_witness": None if self.dilation_witness is None else self.dilation_witness.to_json(),
        }


@dataclass(frozen=True)
class TilingReport:
    translation_overlap: IntervalSet
    translation_gap: IntervalSet
    dilation_overlap: IntervalSet
    dilation_gap: IntervalSet

    @property
    def defect(self) -> Fraction:
        """Total tiling defect, normalized so that E has measure 1."""
        parts = (self.translation_overlap, self.translation_gap, self.dilation_overlap, self.dilation_gap)
        return sum((measure(p) for p in parts), Fraction(0)) / 2


def tiling_report(w: SetLike) -> TilingReport:
    s = body(w)
    t_pieces = [Interval(lo + 2 * j, hi + 2 * j) for (lo, hi), j in translation_fragments(s)]
    d_pieces = [Interval(pow2(k) * lo, pow2(k) * hi) for (lo, hi), k in dilation_fragments(s)]
    t_over, t_gap = _cover_report(t_pieces, TRANSLATION_CELL)
    d_over, d_gap = _cover_report(d_pieces, E.body)
    return TilingReport(t_over, t_gap, d_over, d_gap)


def tiling_defect(w: SetLike) -> Fraction:
    return tiling_report(w).defect


def verify_wavelet_set(w: SetLike) -> TilingCertificate:
    """Check that ``{W + 2k}`` tiles the line and ``{2**k W}`` tiles the line minus 0.

    Translation witnesses live in ``[0,2)``; dilation witnesses live in E.
    Only the first failure of each kind is reported (overlap before gap).
    """
    rep = tiling_report(w)

    def first(over: IntervalSet, gap: IntervalSet) -> Optional[FreqSet]:
        bad = over if over else gap
        if not bad:
            return None
        return FreqSet(IntervalSet([bad.intervals[0]]))

    tw = first(rep.translation_overlap, rep.translation_gap)
    dw = first(rep.dilation_overlap, rep.dilation_gap)
    return TilingCertificate(tw is None and dw is None, tw, dw)


def dilation_preimage(w: SetLike, target: IntervalSet) -> IntervalSet:
    """Points of ``w`` whose dilation into E lands in ``target``."""
    out = []
    for (lo, hi), k in dilation_fragments(w):
        frag = IntervalSet([(lo, hi)])
        out.append(intersect(frag, affine_image(target, -k, 0)))
    return union_all(out)


# -- metric ------------------------------------------------------------------


def metric_d(w1: SetLike, w2: SetLike) -> float:
    """``mu(W1 ^ W2)**(1/2) + (integral of 1/|x| over W1 ^ W2)**(1/2)``.

    The first term is in true Lebesgue units (pi times the pi-unit measure);
    the logarithmic integral is scale invariant.
    """
    diff = symdiff(body(w1), body(w2))
    if not diff:
        return 0.0
    return math.sqrt(math.pi * float(measure(diff))) + math.sqrt(log_integral(diff))
