"""Paths of wavelet sets and the metric expressed through induced maps.

A wavelet set ``W`` is joined to the Littlewood-Paley set by factoring
its induced map as ``u <> v`` and sliding ``v`` to the identity through
WI2 maps ``v_t``; ``W_t`` is the wavelet set of ``u <> v_t``.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from functools import cached_property
from fractions import Fraction

from .correspondence import induced_isomorphism, wavelet_set_from_isomorphism
from .frequency import FreqSet, SetLike, body, tiling_defect
from .intervals import UNIT, IntervalSet, difference, intersect, measure, union_all
from .maps import HALF, ClassificationError, MapLike, PartialMap, PiecewiseMap, as_map, classify, disagreement_set
from .scb import DEFAULT_TOL, Factorization, ScbTrace, combine, complete_residual, factorize

DEFAULT_MAX_STAGE = 32


class ChainTruncationWarning(UserWarning):
    """``t`` fell beyond the last allocated stage; completed stages were used."""


@dataclass(frozen=True)
class ChainParams:
    """A WI2 map to be deformed into the identity.

    Stage ``n`` switches ``v0^(n-1)(V)`` to the identity, where ``V`` is the
    complement of the range of ``v0``.  Each stage gets a slice of ``[0,1]``
    proportional to the measure it switches, so the switched set grows at a
    constant rate in ``t``.  Stages past ``max_stage`` form the tail slice.
    """

    v0: PiecewiseMap
    max_stage: int = DEFAULT_MAX_STAGE

    def __post_init__(self):
        if not classify(self.v0).in_WI2:
            raise ClassificationError("v0 is not in WI2")
        if self.max_stage < 1:
            raise ValueError("max_stage must be at least 1")

    @cached_property
    def stage_sets(self) -> tuple[IntervalSet, ...]:
        """``V, v0(V), ..., v0^(max_stage-1)(V)``."""
        sets = [difference(UNIT, self.v0.range())]
        for _ in range(self.max_stage - 1):
            if not sets[-1]:
                break
            sets.append(self.v0.image(sets[-1]))
        return tuple(sets)

    @cached_property
    def moved_measure(self) -> Fraction:
        """Measure of the points not fixed by ``v0``, i.e. of all stages together."""
        fixed = PiecewiseMap(p for p in self.v0.pieces if p.e == 0 and p.m == 0).domain()
        return 1 - measure(fixed)

    @cached_property
    def stage_allocation(self) -> tuple[Fraction, ...]:
        """Length of the ``t``-slice of each stage; the tail takes what is left."""
        total = self.moved_measure
        if total == 0:
            return ()
        return tuple(measure(s) / total for s in self.stage_sets)

    def stage_window(self, n: int) -> tuple[Fraction, Fraction]:
        alloc = self.stage_allocation
        if not 1 <= n <= len(alloc):
            raise IndexError(f"stage {n} out of range")
        lo = sum(alloc[: n - 1], Fraction(0))
        return lo, lo + alloc[n - 1]


def _leftmost(s: IntervalSet, amount: Fraction) -> IntervalSet:
    """The initial part ``s n [0,c)`` of measure ``amount``."""
    out = []
    for lo, hi in s:
        if amount <= 0:
            break
        take = min(amount, hi - lo)
        out.append((lo, lo + take))
        amount -= take
    return IntervalSet(out)


def chain_v(params: ChainParams, t) -> PiecewiseMap:
    """The WI2 map ``v_t``: ``v0`` at ``t = 0``, the identity at ``t = 1``.

    Inside stage ``n`` the map is the identity on ``V u ... u v0^(n-2)(V)``
    and on ``v0^(n-1)(V) n [0,c)``, and ``v0`` everywhere else; the cut
    ``c`` moves so that the switched measure is ``t`` times the measure of
    all points moved by ``v0``.  Hence ``mu{v_t != v_s} <= |t - s|``.
    """
    t = Fraction(t)
    if not 0 <= t <= 1:
        raise ValueError(f"t = {t} outside [0,1]")
    if t == 1 or params.moved_measure == 0:
        return PiecewiseMap.identity()
    v0 = params.v0
    amount = t * params.moved_measure
    switched = []
    for s in params.stage_sets:
        m = measure(s)
        if amount < m:
            switched.append(_leftmost(s, amount))
            amount = Fraction(0)
            break
        switched.append(s)
        amount -= m
    if amount > 0:
        warnings.warn(
            f"t = {t} lies past stage {params.max_stage}; using completed stages only",
            ChainTruncationWarning,
            stacklevel=2,
        )
    done = union_all(switched)
    ident = PiecewiseMap.identity().restrict(done)
    return ident.union(v0.restrict(difference(UNIT, done)))


@dataclass(frozen=True)
class PathPoint:
    t: Fraction
    h: PartialMap
    wavelet_set: FreqSet
    defect: Fraction
    trace: ScbTrace


class WaveletPath:
    """The path ``t -> W_t`` from a wavelet set ``W`` (at 0) to E (at 1).

    The factorization of the induced map is computed once; evaluating
    distinct ``t`` values is independent and may run concurrently.
    """

    def __init__(self, w: SetLike, tol=DEFAULT_TOL, max_stage: int = DEFAULT_MAX_STAGE):
        self.start = FreqSet(body(w))
        self.tol = Fraction(tol)
        self.h = induced_isomorphism(self.start)
        self.factorization: Factorization = factorize(self.h, self.tol)
        v = self.factorization.v
        if v.undefined:
            raise NotImplementedError("partial WI2 factor; lower tol or raise the stage budget")
        self.params = ChainParams(v.map, max_stage)

    def at(self, t) -> PathPoint:
        t = Fraction(t)
        v_t = chain_v(self.params, t)
        pm, trace = combine(self.factorization.u, v_t, self.tol)
        pm = complete_residual(pm)
        ws = wavelet_set_from_isomorphism(pm, strict=False)
        return PathPoint(t, pm, ws, tiling_defect(ws), trace)


def path_wavelet_set(w: SetLike, t, tol=DEFAULT_TOL) -> FreqSet:
    return WaveletPath(w, tol).at(t).wavelet_set


def nu_measure(s: IntervalSet) -> float:
    """Measure with density ``1/(1-x)`` on ``[0,1/2)`` and ``1/x`` on ``[1/2,1)``."""
    if not s.issubset(UNIT):
        raise ValueError(f"{s!r} is not contained in [0,1)")
    total = 0.0
    for lo, hi in intersect(s, IntervalSet([(0, HALF)])):
        total += math.log1p((hi - lo) / (1 - hi))
    for lo, hi in intersect(s, IntervalSet([(HALF, 1)])):
        total += math.log1p((hi - lo) / lo)
    return total


def metric_via_isomorphisms(h1: MapLike, h2: MapLike) -> float:
    """Wavelet-set distance computed from the induced maps alone.

    ``sqrt(4*pi*mu(w')) + sqrt(2*nu(w))`` where ``w`` is the disagreement
    set of the maps and ``w'`` that of their inverses.
    """
    f, g = as_map(h1), as_map(h2)
    if not (classify(f).in_WI and classify(g).in_WI):
        raise ClassificationError("both maps must be wavelet induced isomorphisms")
    omega = disagreement_set(f, g)
    omega_inv = disagreement_set(f.inverse(), g.inverse())
    return math.sqrt(4 * math.pi * float(measure(omega_inv))) + math.sqrt(2 * nu_measure(omega))
