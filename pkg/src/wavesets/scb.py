"""Schroeder-Cantor-Bernstein combination of a WI1 map and a WI2 map.

Given injections ``u`` (WI1) and ``v`` (WI2) of ``[0,1)`` into itself, the
combined bijection ``u <> v`` uses ``u`` on the forward orbits of
``[0,1) \\ v([0,1))`` under ``v o u`` and ``v^-1`` everywhere else.  The
orbits are countable unions, so they are followed until the unresolved
remainder ``(v o u)^K([0,1))`` and the unhit part of the range are both
below a tolerance.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, NamedTuple, Optional

from .intervals import EMPTY, UNIT, IntervalSet, difference, intersect, measure, union_all
from .maps import (
    HALF,
    AffinePiece,
    ClassificationError,
    MapLike,
    NotInjectiveError,
    PartialMap,
    PiecewiseMap,
    as_map,
    classify,
    wi1_shaped,
    wi2_shaped,
)

DEFAULT_TOL = Fraction(1, 2**40)

ProgressHook = Callable[[int, Fraction], None]


class ExtensionBudgetError(RuntimeError):
    """Raised when a greedy extension runs out of stages before reaching its tolerance."""

    def __init__(self, message: str, residual: Fraction):
        super().__init__(f"{message} (residual measure {residual})")
        self.residual = residual


@dataclass(frozen=True)
class ScbTrace:
    seed_S: IntervalSet
    seed_N: IntervalSet
    orbit_depth: int
    residual: IntervalSet
    orbits_S: tuple[IntervalSet, ...] = field(default=(), repr=False)
    orbits_N: tuple[IntervalSet, ...] = field(default=(), repr=False)

    def to_json(self) -> dict:
        return {
            "seed_S": self.seed_S.to_json(),
            "seed_N": self.seed_N.to_json(),
            "depth": self.orbit_depth,
            "residual": self.residual.to_json(),
        }


def _check_tol(tol) -> Fraction:
    tol = Fraction(tol)
    if tol <= 0:
        raise ValueError("tol must be positive")
    return tol


def combine(
    u: MapLike,
    v: MapLike,
    tol=DEFAULT_TOL,
    depth: Optional[int] = None,
    progress: Optional[ProgressHook] = None,
) -> tuple[PartialMap, ScbTrace]:
    """Compute ``u <> v`` up to an explicit unresolved residual.

    Iteration stops once both the residual and the unhit part of the range
    have measure at most ``tol``, or after ``depth`` orbit levels when
    ``depth`` is given.  The returned :class:`PartialMap` records the
    residual as its undefined set.  ``v`` may be partial (as produced by
    :func:`extend_to_wi2`); its missing part then leaks into the residual
    accuracy.  ``progress`` is called as ``progress(level, residual)`` and
    may raise to abort.
    """
    tol = _check_tol(tol)
    uf, vf = as_map(u), as_map(v)
    if not classify(uf).in_WI1:
        raise ClassificationError("u is not in WI1")
    if isinstance(v, PartialMap) and v.undefined:
        if not (vf.is_injective() and wi2_shaped(vf)):
            raise ClassificationError("v is not a WI2-shaped injection")
    elif not classify(vf).in_WI2:
        raise ClassificationError("v is not in WI2")

    return scb_bijection(uf, vf, tol, depth, progress)


def scb_bijection(
    f: PiecewiseMap,
    g: PiecewiseMap,
    tol=DEFAULT_TOL,
    depth: Optional[int] = None,
    progress: Optional[ProgressHook] = None,
) -> tuple[PartialMap, ScbTrace]:
    """Schroeder-Cantor-Bernstein bijection from injections ``f`` and ``g`` of ``[0,1)``.

    ``f`` is used on the forward orbits of ``[0,1) \\ g([0,1))`` under
    ``g o f`` and ``g^-1`` on those of ``g([0,1)) \\ (g o f)([0,1))``.
    No class checks are made; :func:`combine` is the checked entry point.
    Termination relies on ``g o f`` shrinking measure.
    """
    tol = _check_tol(tol)
    g_range = g.range()
    g_inv = g.inverse()
    seed_S = difference(UNIT, g_range)
    if not seed_S:
        # g onto: every point lies on a g^-1 orbit or in the limit set
        pm = PartialMap.wrap(g_inv, tol)
        trace = ScbTrace(EMPTY, difference(g_range, g.compose(f).range()), 1, EMPTY, (EMPTY,), (EMPTY,))
        return pm, trace

    w = g.compose(f)
    seed_N = difference(g_range, w.range())
    orbits_S, orbits_N = [seed_S], [seed_N]
    residual = w.range()
    hit = [f.image(seed_S), g_inv.image(seed_N)]
    level = 1
    while True:
        gap = difference(UNIT, union_all(hit))
        if progress is not None:
            progress(level, measure(residual))
        if measure(residual) <= tol and measure(gap) <= tol:
            break
        if depth is not None and level >= depth:
            break
        if not residual:
            break
        s_next, n_next = w.image(orbits_S[-1]), w.image(orbits_N[-1])
        orbits_S.append(s_next)
        orbits_N.append(n_next)
        hit.append(f.image(s_next))
        hit.append(g_inv.image(n_next))
        residual = w.image(residual)
        level += 1

    on_f = union_all(orbits_S)
    on_g = union_all(orbits_N)
    resolved = f.restrict(on_f).union(g_inv.restrict(on_g))
    undefined = difference(UNIT, resolved.domain())
    pm = PartialMap(resolved, undefined, max(tol, measure(undefined)))
    trace = ScbTrace(seed_S, seed_N, level, residual, tuple(orbits_S), tuple(orbits_N))
    return pm, trace


def simplest_between(a: Fraction, b: Fraction) -> Fraction:
    """The rational with the smallest denominator in the closed interval ``[a, b]``."""
    a, b = Fraction(a), Fraction(b)
    if a > b:
        raise ValueError("empty interval")
    fl = a.__floor__()
    if fl == a:
        return a
    if fl + 1 <= b:
        return Fraction(fl + 1)
    return fl + 1 / simplest_between(1 / (b - fl), 1 / (a - fl))


def complete_residual(pm: PartialMap) -> PartialMap:
    """Try to close the residual gaps of a combined map exactly.

    Each gap is cut at its simplest rational point; the left part continues
    the piece ending at the gap and the right part continues the piece
    starting there.  The completion is kept only if the resulting total map
    is a wavelet induced isomorphism (checked exactly); otherwise ``pm`` is
    returned unchanged.  The completion differs from ``pm`` only on the
    residual, so it is always within ``pm.tol`` of the truncated map.
    """
    if not pm.undefined:
        return pm
    f = pm.map
    by_hi = {p.hi: p for p in f.pieces}
    by_lo = {p.lo: p for p in f.pieces}
    added = []
    for lo, hi in pm.undefined:
        left, right = by_hi.get(lo), by_lo.get(hi)
        if left is None and right is None:
            return pm
        cut = simplest_between(lo, hi)
        if left is None:
            cut = lo
        elif right is None:
            cut = hi
        if cut > lo:
            added.append(AffinePiece(lo, cut, left.e, left.m))
        if cut < hi:
            added.append(AffinePiece(cut, hi, right.e, right.m))
    try:
        g = PiecewiseMap(f.pieces + tuple(added))
    except ValueError:
        return pm
    if not classify(g).in_WI:
        return pm
    return PartialMap.total(g)


# -- extensions --------------------------------------------------------------


def _wi1_candidate(k: int, right: bool, domain: IntervalSet) -> PiecewiseMap:
    e = -k
    m = Fraction(0) if right else 1 - Fraction(1, 2**k)
    return PiecewiseMap(AffinePiece(lo, hi, e, m) for lo, hi in domain)


def extend_to_wi1(partial: PiecewiseMap, max_stages: int = 256) -> PiecewiseMap:
    """Greedy total WI1 extension of an injective WI1-shaped partial map.

    Stage ``k`` (``k = 1, 2, ...``) handles the left half, then the right
    half: the still uncovered points whose ``2**-k`` contraction lands in
    the unused range are assigned that contraction.
    """
    if not partial.is_injective():
        raise NotInjectiveError("partial map is not injective")
    if not wi1_shaped(partial):
        raise ClassificationError("partial map has pieces outside the WI1 shapes")
    pieces = list(partial.pieces)
    uncovered = difference(UNIT, partial.domain())
    free = difference(UNIT, partial.range())
    halves = ((False, IntervalSet([(0, HALF)])), (True, IntervalSet([(HALF, 1)])))
    k = 0
    while uncovered:
        k += 1
        if k > max_stages:
            raise ExtensionBudgetError("WI1 extension did not terminate", measure(uncovered))
        for right, half in halves:
            todo = intersect(uncovered, half)
            if not todo:
                continue
            cand = _wi1_candidate(k, right, todo)
            ok = cand.preimage(free)
            if not ok:
                continue
            new = cand.restrict(ok)
            pieces.extend(new.pieces)
            uncovered = difference(uncovered, ok)
            free = difference(free, new.range())
    return PiecewiseMap(pieces)


def diagonal_pairs():
    """Enumerate ``(l, k)`` pairs of non-negative integers along anti-diagonals, ``l`` ascending."""
    s = 0
    while True:
        for l in range(s + 1):
            yield l, s - l
        s += 1


def extend_to_wi2(
    partial: PiecewiseMap,
    tol=DEFAULT_TOL,
    max_stages: int = 20000,
    progress: Optional[ProgressHook] = None,
) -> PartialMap:
    """Greedy WI2 extension along a fixed enumeration of ``(l, k)``.

    At each stage the still undefined points ``x`` with ``(x + l)/2**k`` in
    the unused range are assigned that value.  Stages with ``l >= 2**k``
    cannot land in ``[0,1)`` and are skipped without counting.
    """
    tol = _check_tol(tol)
    if not partial.is_injective():
        raise NotInjectiveError("partial map is not injective")
    if not wi2_shaped(partial):
        raise ClassificationError("partial map has pieces outside the WI2 shapes")
    pieces = list(partial.pieces)
    uncovered = difference(UNIT, partial.domain())
    free = difference(UNIT, partial.range())
    stages = 0
    for l, k in diagonal_pairs():
        if measure(uncovered) <= tol:
            break
        if l >= 2**k:
            continue
        stages += 1
        if stages > max_stages:
            raise ExtensionBudgetError("WI2 extension budget exhausted", measure(uncovered))
        e, m = -k, Fraction(l, 2**k)
        cand = PiecewiseMap(AffinePiece(lo, hi, e, m) for lo, hi in uncovered)
        ok = cand.preimage(free)
        if ok:
            new = cand.restrict(ok)
            pieces.extend(new.pieces)
            uncovered = difference(uncovered, ok)
            free = difference(free, new.range())
        if progress is not None:
            progress(stages, measure(uncovered))
    return PartialMap(PiecewiseMap(pieces), uncovered, tol)


# -- factorization -----------------------------------------------------------


class Factorization(NamedTuple):
    u: PiecewiseMap
    v: PartialMap
    d1: IntervalSet


def factorize(h: MapLike, tol=DEFAULT_TOL, max_stages: int = 20000) -> Factorization:
    """Split a WI map as ``h = u <> v`` with ``u`` in WI1 and ``v`` (up to ``tol``) in WI2.

    ``D1`` collects the pieces of ``h`` that contract (negative exponent);
    ``u`` copies ``h`` there and is extended greedily, ``v`` is ``h^-1`` on
    the complement of ``u(D1)`` and is extended greedily as well.
    """
    tol = _check_tol(tol)
    hf = as_map(h)
    if not classify(hf).in_WI:
        raise ClassificationError("h is not a wavelet induced isomorphism")
    contracting = PiecewiseMap(p for p in hf.pieces if p.e <= -1)
    d1 = contracting.domain()
    u = extend_to_wi1(contracting)
    r2 = difference(UNIT, u.image(d1))
    v_part = hf.inverse().restrict(r2)
    v = extend_to_wi2(v_part, tol, max_stages=max_stages)
    return Factorization(u, v, d1)
