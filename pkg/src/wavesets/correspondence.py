"""Passing between wavelet sets and their induced isomorphisms of [0,1)."""

from __future__ import annotations

from .frequency import (
    FreqSet,
    SetLike,
    body,
    delta_point,
    dyadic_cuts,
    integer_cuts,
    tau_point,
    verify_wavelet_set,
    xi_inv,
    xi_point,
)
from .intervals import IntervalSet, affine_image, pow2, split_at, union_all
from .maps import (
    AffinePiece,
    ClassificationError,
    MapLike,
    PartialMap,
    PiecewiseMap,
    as_map,
    classify,
)


class NotAWaveletSetError(ValueError):
    def __init__(self, certificate):
        super().__init__(f"not a wavelet set: {certificate}")
        self.certificate = certificate


def induced_isomorphism(w: SetLike) -> PiecewiseMap:
    """The bijection ``xi o tau o delta^-1 o xi^-1`` of ``[0,1)`` induced by ``w``.

    ``w`` is cut at every ``+-2**n`` and every integer, so on each fragment
    dilation into E is one scaling and translation into E is one shift.
    """
    cert = verify_wavelet_set(w)
    if not cert.ok:
        raise NotAWaveletSetError(cert)
    s = body(w)
    pieces = []
    for lo, hi in split_at(s, dyadic_cuts(s) + integer_cuts(s)):
        d_lo, k = delta_point(lo)
        _, j = tau_point(lo)
        z_lo = xi_point(d_lo)
        z_hi = xi_point(pow2(k) * hi)
        value = xi_point(lo + 2 * j)
        e = -k
        pieces.append(AffinePiece(z_lo, z_hi, e, value - pow2(e) * z_lo))
    return PiecewiseMap(pieces)


def _psi(f: PiecewiseMap) -> IntervalSet:
    parts = []
    for p in f.split_at_half():
        parts.append(affine_image(xi_inv(IntervalSet([p.dom])), p.e, 0))
    return union_all(parts)


def wavelet_set_from_isomorphism(h: MapLike, strict: bool = True) -> FreqSet:
    """Rebuild the wavelet set ``W = U 2**e * xi^-1(piece domain)``.

    With ``strict=False`` the input may be partial (for instance a
    truncated combination); the result is then an approximate wavelet set
    whose tiling defect is bounded by the measure left undefined.
    """
    f = as_map(h)
    if strict:
        if isinstance(h, PartialMap) and h.undefined:
            raise ClassificationError("map is partial; pass strict=False for an approximate set")
        if not classify(f).in_WI:
            raise ClassificationError("map is not a wavelet induced isomorphism")
    return FreqSet(_psi(f))


def dilation_lift(h: MapLike, omega: IntervalSet) -> IntervalSet:
    """``(delta restricted to W)^-1 o xi^-1`` applied to ``omega``, computed from ``h``."""
    return _psi(as_map(h).restrict(omega))
