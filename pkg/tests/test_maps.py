from fractions import Fraction as F

import pytest
from hypothesis import given, strategies as st

from conftest import unit_intervals
from oracles import eval_triples, images_disjoint, random_subset, random_wi1, random_wi2, raw_measure
from wavesets.gallery import H_JOURNE, H_S8, HALVING, U_HALVES
from wavesets.intervals import EMPTY, UNIT, IntervalSet, measure
from wavesets.maps import (
    AffinePiece,
    NotInjectiveError,
    PartialMap,
    PiecewiseMap,
    UndefinedPointError,
    agreement_set,
    classify,
    disagreement_set,
    frac_branch,
    map_from_branches,
)

IDENTITY = PiecewiseMap.identity()


def from_raw(triples):
    return PiecewiseMap(AffinePiece(lo, hi, e, m) for lo, hi, e, m in triples)


class TestEval:
    def test_h_s8_contracting_branch(self):
        assert H_S8(F(9, 10)) == F(9, 20)

    def test_h_s8_identity_branch(self):
        assert H_S8(F(1, 3)) == F(1, 3)

    @pytest.mark.parametrize("x", [F(0), F(1, 7), F(1, 2), F(99, 100)])
    def test_identity(self, x):
        assert IDENTITY(x) == x

    def test_undefined_point(self):
        half = PiecewiseMap.from_triples([(0, F(1, 2), 0, 0)])
        with pytest.raises(UndefinedPointError):
            half(F(3, 4))
        with pytest.raises(UndefinedPointError):
            IDENTITY(1)


class TestPieces:
    def test_image_must_stay_in_unit(self):
        with pytest.raises(ValueError):
            PiecewiseMap.from_triples([(0, 1, 1, 0)])

    def test_overlapping_domains(self):
        with pytest.raises(ValueError):
            PiecewiseMap.from_triples([(0, F(1, 2), 0, 0), (F(1, 4), F(3, 4), -1, 0)])

    def test_adjacent_same_coefficients_merge(self):
        f = PiecewiseMap.from_triples([(0, F(1, 3), 0, 0), (F(1, 3), 1, 0, 0)])
        assert f == IDENTITY and len(f) == 1

    def test_frac_branch_splits_wraparound(self):
        # frac(4x) on [3/7, 4/7) wraps once at 1/2
        pieces = frac_branch(2, 0, IntervalSet([(F(3, 7), F(4, 7))]))
        assert [(p.lo, p.hi, p.e, p.m) for p in pieces] == [
            (F(3, 7), F(1, 2), 2, F(-1)),
            (F(1, 2), F(4, 7), 2, F(-2)),
        ]

    def test_branches_of_h_s8(self):
        br = H_S8.branches()
        assert len(br) == 4
        assert len(H_S8.pieces) == 8
        assert br[(0, 0)] == IntervalSet([(F(1, 3), F(3, 8)), (F(2, 3), F(11, 16))])

    def test_json_round_trip(self):
        assert PiecewiseMap.from_json(H_S8.to_json()) == H_S8
        assert H_JOURNE.to_json()[0] == {"dom": ["0", "3/7"], "e": -1, "m": "1/2"}


class TestSetMaps:
    def test_image_of_halving(self):
        assert HALVING.image(UNIT) == IntervalSet([(0, F(1, 2))])

    def test_compose_first_a_interval(self):
        assert HALVING.compose(U_HALVES).image(IntervalSet([(F(1, 2), 1)])) == IntervalSet([(F(1, 8), F(1, 4))])

    def test_invert_identity(self):
        assert IDENTITY.inverse() == IDENTITY

    def test_invert_requires_injective(self):
        # x on [0,1/2) and x/2 on [1/2,1) both cover [1/4,1/2)
        clash = PiecewiseMap.from_triples([(0, F(1, 2), 0, 0), (F(1, 2), 1, -1, 0)])
        assert not clash.is_injective()
        with pytest.raises(NotInjectiveError):
            clash.inverse()

    def test_preimage(self):
        assert HALVING.preimage(IntervalSet([(F(1, 4), 1)])) == IntervalSet([(F(1, 2), 1)])

    def test_restrict(self):
        r = H_JOURNE.restrict(IntervalSet([(F(1, 4), F(3, 4))]))
        assert r.domain() == IntervalSet([(F(1, 4), F(3, 4))])


class TestClassify:
    def test_h_s8_in_wi(self):
        assert classify(H_S8).in_WI

    def test_u_halves_in_wi1(self):
        c = classify(U_HALVES)
        assert c.in_WI1 and not c.in_WI

    def test_halving_in_wi2(self):
        c = classify(HALVING)
        assert c.in_WI2 and not c.in_WI1 and not c.in_WI

    def test_identity_in_wi_and_wi2(self):
        c = classify(IDENTITY)
        assert c.in_WI and c.in_WI2 and not c.in_WI1

    def test_empty_map_rejected(self):
        assert classify(PiecewiseMap()) == (False, False, False)

    def test_partial_not_classified(self):
        assert classify(HALVING.restrict(IntervalSet([(0, F(1, 2))]))) == (False, False, False)

    def test_bijection_with_wrong_congruence(self):
        # x + 1/2 mod 1 is a bijection but fails the WI congruences
        rot = PiecewiseMap.from_triples([(0, F(1, 2), 0, F(1, 2)), (F(1, 2), 1, 0, F(-1, 2))])
        c = classify(rot)
        assert not c.in_WI


class TestAgreement:
    def test_self(self):
        assert agreement_set(H_S8, H_S8) == UNIT
        assert disagreement_set(H_S8, H_S8) == EMPTY

    def test_h_s8_vs_identity(self):
        assert agreement_set(H_S8, IDENTITY) == IntervalSet([(F(1, 3), F(3, 8)), (F(2, 3), F(11, 16))])

    def test_undefined_counts_as_disagreement(self):
        pm = PartialMap(IDENTITY.restrict(IntervalSet([(0, F(3, 4))])), IntervalSet([(F(3, 4), 1)]), F(1, 4))
        assert disagreement_set(pm, IDENTITY) == IntervalSet([(F(3, 4), 1)])


class TestPartialMap:
    def test_invariants(self):
        with pytest.raises(ValueError):
            PartialMap(IDENTITY.restrict(IntervalSet([(0, F(1, 2))])), IntervalSet([(F(1, 2), 1)]), F(1, 4))
        with pytest.raises(ValueError):
            PartialMap(IDENTITY, IntervalSet([(0, F(1, 8))]), F(1, 4))

    def test_json_round_trip(self):
        pm = PartialMap(HALVING.restrict(IntervalSet([(0, F(7, 8))])), IntervalSet([(F(7, 8), 1)]), F(1, 8))
        assert PartialMap.from_json(pm.to_json()) == pm

    def test_total(self):
        pm = PartialMap.total(H_S8)
        assert pm.undefined == EMPTY and pm(F(9, 10)) == F(9, 20)


# -- properties -------------------------------------------------------------------


@given(st.randoms(use_true_random=False), unit_intervals())
def test_wi1_contraction(rng, sigma_raw):
    triples = random_wi1(rng)
    f = from_raw(triples)
    assert classify(f).in_WI1
    sigma = IntervalSet(sigma_raw)
    assert measure(f.image(sigma)) <= measure(sigma) / 2


@given(st.randoms(use_true_random=False))
def test_wi1_injective(rng):
    triples = random_wi1(rng)
    f = from_raw(triples)
    assert f.is_injective() and images_disjoint(triples)


@given(st.randoms(use_true_random=False))
def test_evaluation_matches_raw_pieces(rng):
    triples = random_wi2(rng)
    f = from_raw(triples)
    for _ in range(20):
        x = F(rng.randrange(10007), 10007)
        assert f(x) == eval_triples(triples, x)


@given(st.randoms(use_true_random=False))
def test_compose_invert_algebra(rng):
    f = from_raw(random_wi2(rng))
    g = from_raw(random_wi1(rng))
    lhs = f.compose(g).inverse()
    rhs = g.inverse().compose(f.inverse())
    assert lhs == rhs


@given(st.randoms(use_true_random=False))
def test_image_measure_is_sum_over_pieces(rng):
    triples = random_wi2(rng)
    f = from_raw(triples)
    sigma = random_subset(rng)
    expected = F(0)
    for lo, hi, e, m in triples:
        part = [(max(a, lo), min(b, hi)) for a, b in sigma if max(a, lo) < min(b, hi)]
        expected += F(2) ** e * raw_measure(part)
    assert measure(f.image(IntervalSet(sigma))) == expected


def test_classified_wi_maps_are_bijections():
    for h in (H_S8, H_JOURNE, IDENTITY):
        assert h.is_injective() and h.range() == UNIT
        assert sum(measure(IntervalSet([p.image()])) for p in h.pieces) == 1


def test_branch_builder_matches_pieces():
    f = map_from_branches([(-1, 1, [(0, F(3, 7))]), (2, 0, [(F(3, 7), F(4, 7))]), (-1, 0, [(F(4, 7), 1)])])
    assert f == H_JOURNE
