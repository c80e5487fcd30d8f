from fractions import Fraction as F

import pytest
from hypothesis import given, strategies as st

from entitled_cuts.errors import TargetExceedsRemainder
from entitled_cuts.model import (
    Allocation,
    Instance,
    Interval,
    Region,
    Valuation,
    boundary_points,
    cut_count,
    equal_marks,
    format_rational,
    mark_right,
    measure_of,
    parse_rational,
)

from conftest import pw


rationals = st.fractions(min_value=0, max_value=1, max_denominator=12)


def region(*pairs):
    return Region([Interval(F(a), F(b)) for a, b in pairs])


class TestRationalStrings:
    @pytest.mark.parametrize("text,value", [
        ("1/3", F(1, 3)), ("2", F(2)), ("-3/4", F(-3, 4)), ("0", F(0)), (" 7/2 ", F(7, 2)),
    ])
    def test_parse(self, text, value):
        assert parse_rational(text) == value

    @pytest.mark.parametrize("bad", ["1.5", "1e3", "nan", "1/0", "", "1/2/3", "0x10"])
    def test_rejects_floats_and_garbage(self, bad):
        with pytest.raises(ValueError):
            parse_rational(bad)

    def test_rejects_non_strings(self):
        with pytest.raises(ValueError):
            parse_rational(0.5)

    @given(st.fractions(max_denominator=1000))
    def test_round_trip(self, q):
        assert parse_rational(format_rational(q)) == q


class TestRegion:
    def test_merges_adjacent_and_overlapping(self):
        assert region((0, F(1, 4)), (F(1, 4), F(1, 2))) == region((0, F(1, 2)))
        assert region((0, F(1, 2)), (F(1, 4), F(3, 4))) == region((0, F(3, 4)))

    def test_drops_degenerate_and_sorts(self):
        r = region((F(1, 2), F(1, 2)), (F(3, 4), 1), (0, F(1, 4)))
        assert r.intervals == (Interval(F(0), F(1, 4)), Interval(F(3, 4), F(1)))

    def test_interval_bounds_validated(self):
        with pytest.raises(ValueError):
            Interval(F(1, 2), F(1, 4))
        with pytest.raises(ValueError):
            Interval(F(-1, 4), F(1, 2))

    def test_set_algebra(self):
        a = region((0, F(1, 2)))
        b = region((F(1, 4), F(3, 4)))
        assert a.intersect(b) == region((F(1, 4), F(1, 2)))
        assert a.difference(b) == region((0, F(1, 4)))
        assert a.union(b) == region((0, F(3, 4)))
        assert a.difference(a).is_empty

    @given(st.lists(st.tuples(rationals, rationals), max_size=6))
    def test_canonicalization_idempotent(self, raw):
        r = Region([Interval(min(a, b), max(a, b)) for a, b in raw])
        assert Region(r.intervals) == r

    @given(st.lists(st.tuples(rationals, rationals), min_size=1, max_size=5),
           st.lists(st.tuples(rationals, rationals), min_size=1, max_size=5))
    def test_difference_disjoint_from_subtrahend(self, raw_a, raw_b):
        a = Region([Interval(min(x, y), max(x, y)) for x, y in raw_a])
        b = Region([Interval(min(x, y), max(x, y)) for x, y in raw_b])
        diff = a.difference(b)
        assert diff.intersect(b).is_empty
        assert diff.union(a.intersect(b)) == a


class TestMeasure:
    def test_total_of_uniform(self, uniform):
        assert measure_of(uniform, region((0, 1))) == 1

    def test_empty_region(self, uniform):
        assert measure_of(uniform, Region()) == 0

    def test_step_density(self):
        v = pw("0 1/2 1", "2 0")
        assert measure_of(v, region((F(1, 4), F(3, 4)))) == F(1, 2)

    @given(rationals, rationals, rationals, rationals)
    def test_additive_over_disjoint_regions(self, a, b, c, d):
        v = pw("0 1/3 2/3 1", "3 0 1")
        r1 = Region([Interval(min(a, b), max(a, b))])
        r2 = Region([Interval(min(c, d), max(c, d))]).difference(r1)
        assert measure_of(v, r1.union(r2)) == measure_of(v, r1) + measure_of(v, r2)

    def test_valuation_validation(self):
        with pytest.raises(ValueError):
            Valuation((F(0), F(1)), (F(-1),))
        with pytest.raises(ValueError):
            Valuation((F(0), F(1)), (F(0),))  # zero total
        with pytest.raises(ValueError):
            Valuation((F(0), F(1, 2), F(1, 2), F(1)), (F(1), F(1), F(1)))
        with pytest.raises(ValueError):
            Valuation((F(1, 4), F(1)), (F(1),))  # must start at 0
        with pytest.raises(TypeError):
            Valuation((0.0, 1.0), (1.0,))  # floats forbidden


class TestMarkRight:
    def test_uniform_third(self, uniform):
        assert mark_right(uniform, F(0), F(1, 3)) == F(1, 3)

    def test_steep_then_flat(self):
        assert mark_right(pw("0 1/2 1", "2 0"), F(0), F(1, 2)) == F(1, 4)

    def test_leftmost_on_zero_plateau(self):
        assert mark_right(pw("0 1/2 1", "0 1"), F(0), F(0)) == F(0)

    def test_target_beyond_remainder(self, uniform):
        with pytest.raises(TargetExceedsRemainder):
            mark_right(uniform, F(1, 2), F(3, 4))

    @given(st.fractions(min_value=0, max_value=1, max_denominator=8),
           st.fractions(min_value=0, max_value=1, max_denominator=8))
    def test_mark_inverse(self, start, frac):
        v = pw("0 1/4 1/2 1", "1 0 2")
        available = v.total - v.cumulative(start)
        target = frac * available
        mark = mark_right(v, start, target)
        assert v.value_between(start, mark) == target


class TestEqualMarks:
    def test_uniform_thirds(self, uniform):
        assert equal_marks(uniform, 3) == [F(1, 3), F(2, 3)]

    def test_steep_halves(self):
        assert equal_marks(pw("0 1/2 1", "2 0"), 2) == [F(1, 4)]

    def test_single_part_has_no_marks(self, uniform):
        assert equal_marks(uniform, 1) == []

    @given(st.integers(min_value=1, max_value=9))
    def test_consecutive_parts_equal(self, parts):
        v = pw("0 1/5 2/5 1", "2 0 1")
        marks = [F(0)] + equal_marks(v, parts) + [F(1)]
        share = v.total / parts
        for lo, hi in zip(marks, marks[1:]):
            assert v.value_between(lo, hi) == share


class TestCutCount:
    def test_whole_cake_is_free(self):
        assert cut_count(Allocation((region((0, 1)),))) == 0

    def test_single_boundary(self):
        assert cut_count(Allocation((region((0, F(1, 2))), region((F(1, 2), 1))))) == 1

    def test_interleaved_pieces(self):
        a = region((0, F(1, 4)), (F(1, 2), F(3, 4)))
        b = region((F(1, 4), F(1, 2)), (F(3, 4), 1))
        assert cut_count(Allocation((a, b))) == 3
        assert boundary_points(Allocation((a, b))) == (F(1, 4), F(1, 2), F(3, 4))

    @given(st.lists(rationals, min_size=0, max_size=6))
    def test_equals_refinement_intervals_minus_one(self, cuts):
        points = sorted(set(cuts) - {F(0), F(1)})
        edges = [F(0)] + points + [F(1)]
        pieces = [region((lo, hi)) for lo, hi in zip(edges, edges[1:])]
        allocation = Allocation(tuple(pieces))
        assert cut_count(allocation) == len(pieces) - 1


class TestInstance:
    def test_entitlements_must_sum_to_one(self, uniform):
        with pytest.raises(ValueError):
            Instance("interval", (uniform, uniform), (F(1), F(1)))

    def test_entitlements_must_be_positive(self, uniform):
        with pytest.raises(ValueError):
            Instance("interval", (uniform, uniform), (F(0), F(1)))

    def test_topology_checked(self, uniform):
        with pytest.raises(ValueError):
            Instance("moebius", (uniform,), (F(1),))

    def test_pie_topology_accepted(self, uniform):
        assert Instance("pie", (uniform,), (F(1),)).topology == "pie"
