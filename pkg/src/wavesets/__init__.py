"""Exact set-theoretic tools for one-dimensional wavelet sets.

Frequencies are rationals in units of pi.  A wavelet set is handled
through its induced bijection of [0,1), which is piecewise of the form
``x -> 2**e * x + m``.
"""

from .correspondence import NotAWaveletSetError, induced_isomorphism, wavelet_set_from_isomorphism
from .frequency import (
    E,
    LITTLEWOOD_PALEY,
    FreqSet,
    TilingCertificate,
    delta_point,
    metric_d,
    tau_point,
    tiling_defect,
    verify_wavelet_set,
    xi,
    xi_inv,
)
from .gallery import GalleryEntry, gallery_get, gallery_names
from .homotopy import ChainParams, WaveletPath, chain_v, metric_via_isomorphisms, nu_measure
from .intervals import EMPTY, UNIT, Interval, IntervalSet, measure, set_algebra
from .maps import AffinePiece, PartialMap, PiecewiseMap, agreement_set, classify, disagreement_set
from .scb import DEFAULT_TOL, combine, complete_residual, extend_to_wi1, extend_to_wi2, factorize

__all__ = [
    "AffinePiece",
    "ChainParams",
    "DEFAULT_TOL",
    "E",
    "EMPTY",
    "FreqSet",
    "GalleryEntry",
    "Interval",
    "IntervalSet",
    "LITTLEWOOD_PALEY",
    "NotAWaveletSetError",
    "PartialMap",
    "PiecewiseMap",
    "TilingCertificate",
    "UNIT",
    "WaveletPath",
    "agreement_set",
    "chain_v",
    "classify",
    "combine",
    "complete_residual",
    "delta_point",
    "disagreement_set",
    "extend_to_wi1",
    "extend_to_wi2",
    "factorize",
    "gallery_get",
    "gallery_names",
    "induced_isomorphism",
    "measure",
    "metric_d",
    "metric_via_isomorphisms",
    "nu_measure",
    "set_algebra",
    "tau_point",
    "tiling_defect",
    "verify_wavelet_set",
    "wavelet_set_from_isomorphism",
    "xi",
    "xi_inv",
]
