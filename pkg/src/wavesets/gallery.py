"""Built-in wavelet sets and maps of [0,1), transcribed as exact rationals."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from .frequency import FreqSet, verify_wavelet_set
from .intervals import IntervalSet, difference, scale, translate, union_all
from .maps import PiecewiseMap, classify, map_from_branches

F = Fraction


class UnknownEntryError(KeyError):
    def __init__(self, name: str, available: list[str]):
        super().__init__(name)
        self.name = name
        self.available = available

    def __str__(self) -> str:
        return f"unknown gallery entry {self.name!r}; available: {', '.join(self.available)}"


@dataclass(frozen=True)
class GalleryEntry:
    name: str
    kind: str  # "wavelet_set" or "unit_map"
    value: Union[FreqSet, PiecewiseMap]
    provenance: str
    advertised: str = ""  # class a unit_map claims: "WI", "WI1" or "WI2"

    def check(self) -> bool:
        """Does the entry satisfy what it advertises?"""
        if self.kind == "wavelet_set":
            return verify_wavelet_set(self.value).ok
        c = classify(self.value)
        return {"WI": c.in_WI, "WI1": c.in_WI1, "WI2": c.in_WI2}[self.advertised]

    def to_json(self) -> dict:
        out = {"name": self.name, "kind": self.kind, "provenance": self.provenance}
        if self.kind == "unit_map":
            out["class"] = self.advertised
        out["value"] = self.value.to_json()
        return out


def _set(*pairs) -> FreqSet:
    return FreqSet(IntervalSet(pairs))


LITTLEWOOD_PALEY = _set((-2, -1), (1, 2))
S8 = _set(
    (F(-4, 3), F(-5, 4)),
    (-1, F(-2, 3)),
    (F(-5, 8), F(-1, 2)),
    (F(4, 7), F(2, 3)),
    (F(3, 4), 1),
    (F(4, 3), F(11, 8)),
    (4, F(32, 7)),
    (F(11, 2), 6),
)
JOURNE = _set((F(-32, 7), -4), (-1, F(-4, 7)), (F(4, 7), 1), (4, F(32, 7)))
# obtained from the Journe factor u with v = x/2 on [0,2/7) and x elsewhere
SIX_INTERVAL = _set(
    (-4, F(-24, 7)),
    (F(-4, 3), -1),
    (F(-6, 7), F(-2, 3)),
    (F(4, 7), F(2, 3)),
    (1, F(8, 7)),
    (F(4, 3), 2),
)

# branches are (exponent, shift, domain): x -> frac(2**e * (x - shift))
H_S8 = map_from_branches([
    (-1, 1, [(0, F(1, 3)), (F(3, 8), F(1, 2))]),
    (2, 0, [(F(1, 2), F(4, 7)), (F(11, 16), F(3, 4))]),
    (-1, 0, [(F(4, 7), F(2, 3)), (F(3, 4), 1)]),
    (0, 0, [(F(1, 3), F(3, 8)), (F(2, 3), F(11, 16))]),
])
H_JOURNE = map_from_branches([
    (-1, 1, [(0, F(3, 7))]),
    (2, 0, [(F(3, 7), F(4, 7))]),
    (-1, 0, [(F(4, 7), 1)]),
])
# (lo, hi, e, m) for x -> 2**e * x + m
U_HALVES = PiecewiseMap.from_triples([(0, F(1, 2), -1, F(1, 2)), (F(1, 2), 1, -1, 0)])
V_S8 = PiecewiseMap.from_triples([
    (0, F(1, 4), -2, F(3, 4)),
    (F(1, 4), F(1, 2), -1, F(1, 2)),
    (F(1, 2), F(5, 8), 0, 0),
    (F(5, 8), F(3, 4), -1, F(1, 2)),
    (F(3, 4), F(7, 8), -1, 0),
    (F(7, 8), 1, 0, 0),
])
V_JOURNE = PiecewiseMap.from_triples([(0, F(1, 2), -2, F(1, 2)), (F(1, 2), 1, -2, F(1, 4))])
HALVING = PiecewiseMap.from_triples([(0, 1, -1, 0)])
V_SIX_INTERVAL = PiecewiseMap.from_triples([(0, F(2, 7), -1, 0), (F(2, 7), 1, 0, 0)])


def _entries() -> dict[str, GalleryEntry]:
    sets = [
        ("littlewood_paley", LITTLEWOOD_PALEY, "Littlewood-Paley set [-2pi,-pi) u [pi,2pi)"),
        ("S8", S8, "eight-interval wavelet set S"),
        ("journe", JOURNE, "Journe wavelet set J"),
        ("six_interval", SIX_INTERVAL, "six-interval set from the Journe u and a half-identity v"),
    ]
    maps = [
        ("h_S8", H_S8, "WI", "induced map of S8"),
        ("h_journe", H_JOURNE, "WI", "induced map of the Journe set"),
        ("u_S8", U_HALVES, "WI1", "WI1 extension of the contracting part of h_S8"),
        ("v_S8", V_S8, "WI2", "a WI2 map; combined with u_S8 it does not give back h_S8"),
        ("u_journe", U_HALVES, "WI1", "WI1 factor of h_journe: (x+1)/2 then x/2"),
        ("v_journe", V_JOURNE, "WI2", "WI2 factor of h_journe: (x+2)/4 then (x+1)/4"),
        ("halving", HALVING, "WI2", "v(x) = x/2"),
        ("identity", PiecewiseMap.identity(), "WI", "identity of [0,1)"),
        ("v_six_interval", V_SIX_INTERVAL, "WI2", "x/2 on [0,2/7), x on [2/7,1)"),
    ]
    out = {name: GalleryEntry(name, "wavelet_set", w, prov) for name, w, prov in sets}
    for name, f, cls, prov in maps:
        out[name] = GalleryEntry(name, "unit_map", f, prov, cls)
    return out


GALLERY: dict[str, GalleryEntry] = _entries()


def gallery_names() -> list[str]:
    return list(GALLERY)


def gallery_get(name: str) -> GalleryEntry:
    try:
        return GALLERY[name]
    except KeyError:
        raise UnknownEntryError(name, gallery_names()) from None


# -- the infinite-interval set from u_journe and halving -----------------------


def z_seq(n: int) -> Fraction:
    return (1 - F(5, 2 * 4**n)) / 3


def x_seq(n: int) -> Fraction:
    return (1 - F(1, 4 ** (n - 1))) / 3


def a_intervals(count: int) -> IntervalSet:
    """The first ``count`` intervals ``[z_n, x_(n+1))`` of the set where the combined map is ``(x+1)/2``."""
    return IntervalSet([(z_seq(n), x_seq(n + 1)) for n in range(1, count + 1)])


def infinite_set_prefix(count: int) -> FreqSet:
    """``[1/2,1) u [-8/3,-2) u (A-1) u ([-4,-8/3) minus (4A-4))`` with ``A`` cut after ``count`` intervals."""
    a = a_intervals(count)
    return FreqSet(
        union_all([
            IntervalSet([(F(1, 2), 1), (F(-8, 3), -2)]),
            translate(a, -1),
            difference(IntervalSet([(-4, F(-8, 3))]), translate(scale(a, 4), -4)),
        ])
    )
