import math
from fractions import Fraction as F

import pytest
from hypothesis import given, strategies as st

from conftest import raw_intervals, rationals
from oracles import member, raw_measure, sample_points
from wavesets.intervals import (
    EMPTY,
    ExponentOverflowError,
    IntervalSet,
    LogDomainError,
    affine_image,
    affine_preimage,
    as_rational,
    difference,
    floor_log2,
    format_rational,
    intersect,
    log_integral,
    measure,
    normalize,
    parse_rational,
    pow2,
    set_algebra,
    split_at,
    symdiff,
    union,
)

E = IntervalSet([(-2, -1), (1, 2)])
J = IntervalSet([(F(-32, 7), -4), (-1, F(-4, 7)), (F(4, 7), 1), (4, F(32, 7))])


class TestNormalize:
    def test_adjacent_merge(self):
        assert normalize([(1, 2), (2, 3)]).intervals == ((1, 3),)

    def test_overlap_merge(self):
        assert normalize([(1, 3), (2, 4)]).intervals == ((1, 4),)

    def test_empty(self):
        assert normalize([]) == EMPTY
        assert not EMPTY

    @pytest.mark.parametrize("bad", [(2, 1), (1, 1)])
    def test_malformed_rejected(self, bad):
        with pytest.raises(ValueError):
            normalize([bad])

    def test_floats_rejected(self):
        with pytest.raises(TypeError):
            as_rational(0.5)

    def test_sorted_and_separated(self):
        s = normalize([(5, 6), (0, 1), (F(1, 2), 2)])
        assert s.intervals == ((0, 2), (5, 6))


class TestAlgebra:
    def test_symdiff_identical(self):
        assert symdiff(IntervalSet([(0, 1)]), IntervalSet([(0, 1)])) == EMPTY

    def test_intersect(self):
        assert intersect(IntervalSet([(0, 2)]), IntervalSet([(1, 3)])).intervals == ((1, 2),)

    def test_symdiff_e_j(self):
        expected = IntervalSet([(F(-32, 7), -4), (-2, F(-4, 7)), (F(4, 7), 2), (4, F(32, 7))])
        assert symdiff(E, J) == expected
        assert intersect(E, J) == EMPTY

    @pytest.mark.parametrize("op", ["union", "intersect", "difference", "symdiff"])
    def test_dispatch(self, op):
        a, b = IntervalSet([(0, 2)]), IntervalSet([(1, 3)])
        want = {"union": [(0, 3)], "intersect": [(1, 2)], "difference": [(0, 1)], "symdiff": [(0, 1), (2, 3)]}
        assert set_algebra(a, b, op) == IntervalSet(want[op])

    def test_unknown_op(self):
        with pytest.raises(ValueError):
            set_algebra(EMPTY, EMPTY, "xor")

    def test_operators(self):
        a, b = IntervalSet([(0, 2)]), IntervalSet([(1, 3)])
        assert a | b == union(a, b)
        assert a & b == intersect(a, b)
        assert a - b == difference(a, b)
        assert a ^ b == symdiff(a, b)
        assert (a & b).issubset(a)
        assert IntervalSet([(0, 1)]).isdisjoint(IntervalSet([(1, 2)]))

    def test_membership_half_open(self):
        s = IntervalSet([(0, 1), (2, 3)])
        assert 0 in s and F(1, 2) in s and 2 in s
        assert 1 not in s and 3 not in s and F(3, 2) not in s


class TestMeasure:
    def test_two_intervals(self):
        assert measure(IntervalSet([(1, 2), (3, 4)])) == 2

    def test_empty(self):
        assert measure(EMPTY) == 0

    def test_symdiff_e_j(self):
        assert measure(symdiff(E, J)) == 4


class TestAffine:
    def test_double(self):
        assert affine_image(IntervalSet([(F(1, 3), F(1, 2))]), 1, 0) == IntervalSet([(F(2, 3), 1)])

    def test_halve(self):
        assert affine_image(IntervalSet([(0, 1)]), -1, 0) == IntervalSet([(0, F(1, 2))])

    def test_first_a_interval_branch(self):
        got = affine_image(IntervalSet([(F(1, 8), F(1, 4))]), -1, F(1, 2))
        # endpoint arithmetic: (1/8 + 1)/2 = 9/16, (1/4 + 1)/2 = 5/8
        assert got == IntervalSet([(F(9, 16), F(5, 8))])

    def test_preimage_inverts(self):
        s = IntervalSet([(F(1, 5), F(2, 5))])
        assert affine_preimage(affine_image(s, 3, F(1, 7)), 3, F(1, 7)) == s

    def test_exponent_cap(self):
        with pytest.raises(ExponentOverflowError):
            affine_image(IntervalSet([(0, 1)]), 65, 0)
        assert pow2(64) == 2**64
        with pytest.raises(ExponentOverflowError):
            pow2(-65)


class TestLogIntegral:
    def test_unit_octave(self):
        assert log_integral(IntervalSet([(1, 2)])) == pytest.approx(math.log(2), abs=1e-15)

    def test_negative_octave(self):
        assert log_integral(IntervalSet([(-2, -1)])) == pytest.approx(math.log(2), abs=1e-15)

    def test_symdiff_e_j(self):
        assert log_integral(symdiff(E, J)) == pytest.approx(4 * math.log(2), abs=1e-12)

    def test_symdiff_e_j_quadrature(self):
        # midpoint rule on a fine grid as an independent check
        total = 0.0
        for lo, hi in [(-32 / 7, -4), (-2, -4 / 7), (4 / 7, 2), (4, 32 / 7)]:
            n = 20000
            h = (hi - lo) / n
            total += sum(h / abs(lo + (i + 0.5) * h) for i in range(n))
        assert log_integral(symdiff(E, J)) == pytest.approx(total, abs=1e-7)

    @pytest.mark.parametrize("bad", [[(0, 1)], [(-1, 0)], [(-1, 1)]])
    def test_touching_zero(self, bad):
        with pytest.raises(LogDomainError):
            log_integral(IntervalSet(bad))


class TestScalars:
    def test_format_parse(self):
        assert format_rational(F(3, 1)) == "3"
        assert format_rational(F(-4, 7)) == "-4/7"
        assert parse_rational("-4/7") == F(-4, 7)

    @pytest.mark.parametrize("q,n", [(F(1), 0), (F(2), 1), (F(3), 1), (F(1, 2), -1), (F(3, 8), -2), (F(1, 3), -2)])
    def test_floor_log2(self, q, n):
        assert floor_log2(q) == n

    def test_json_round_trip(self):
        assert IntervalSet.from_json(J.to_json()) == J
        assert J.to_json()[0] == ["-32/7", "-4"]

    def test_split_at(self):
        pieces = split_at(IntervalSet([(0, 4)]), [F(1), F(3), F(5)])
        assert pieces == [(0, 1), (1, 3), (3, 4)]


# -- properties -------------------------------------------------------------------


@given(raw_intervals())
def test_canonical_form(raw):
    s = IntervalSet(raw)
    ivs = s.intervals
    assert all(lo < hi for lo, hi in ivs)
    assert all(a.hi < b.lo for a, b in zip(ivs, ivs[1:]))
    for x in sample_points([raw]):
        assert (x in s) == member(raw, x)


@given(raw_intervals(), st.permutations(range(6)))
def test_canonicality_under_reordering(raw, perm):
    shuffled = [raw[i] for i in perm if i < len(raw)]
    # splitting an interval in two and listing pieces in any order gives the same set
    split = []
    for lo, hi in shuffled:
        mid = (lo + hi) / 2
        split += [(mid, hi), (lo, mid)]
    assert IntervalSet(raw) == IntervalSet(shuffled) == IntervalSet(split)
    assert hash(IntervalSet(raw)) == hash(IntervalSet(split))


@given(raw_intervals(), raw_intervals())
def test_operations_match_pointwise(ra, rb):
    a, b = IntervalSet(ra), IntervalSet(rb)
    ops = {
        "union": lambda p, q: p or q,
        "intersect": lambda p, q: p and q,
        "difference": lambda p, q: p and not q,
        "symdiff": lambda p, q: p != q,
    }
    for name, pred in ops.items():
        result = set_algebra(a, b, name)
        for x in sample_points([ra, rb, result.intervals]):
            assert (x in result) == pred(member(ra, x), member(rb, x)), (name, x)


@given(raw_intervals(), raw_intervals())
def test_measure_additivity(ra, rb):
    a, b = IntervalSet(ra), IntervalSet(rb)
    assert measure(union(a, b)) + measure(intersect(a, b)) == measure(a) + measure(b)
    assert measure(a) == raw_measure(ra)


@given(raw_intervals(), st.integers(-20, 20), rationals(-4, 4))
def test_affine_measure_scaling(raw, e, m):
    s = IntervalSet(raw)
    assert measure(affine_image(s, e, m)) == F(2) ** e * measure(s)


@given(raw_intervals(lo=1, hi=9), st.integers(-20, 20), st.booleans())
def test_log_integral_dilation_invariance(raw, e, negate):
    s = IntervalSet(raw)
    if negate:
        s = IntervalSet([(-hi, -lo) for lo, hi in s])
    assert log_integral(affine_image(s, e, 0)) == pytest.approx(log_integral(s), abs=1e-12)
