"""Lower hulls, slope runs, and certified disk zero counts."""

from fractions import Fraction

import pytest

from qbracket import (
    CertificationFailure,
    TruncatedSeries,
    ctx_new,
    polygon_build,
    root_valuations,
    unit_disk_zero_count,
)


def test_hull_and_segments_by_hand():
    # slopes -2, 0, +1 left to right; only the first two carry roots
    ng = polygon_build([(0, 2), (1, 0), (3, 0), (4, 1)])
    assert ng.hull == ((0, Fraction(2)), (1, Fraction(0)), (3, Fraction(0)), (4, Fraction(1)))
    assert ng.segments == ((Fraction(-2), 1), (Fraction(0), 2), (Fraction(1), 1))
    assert root_valuations(ng) == [(Fraction(2), 1), (Fraction(0), 2)]


def test_collinear_points_merge_into_one_run():
    ng = polygon_build([(0, 3), (1, 2), (2, 1), (3, 0)])
    assert ng.segments == ((Fraction(-1), 3),)
    assert root_valuations(ng) == [(Fraction(1), 3)]


def test_interior_point_above_hull_is_ignored():
    ng = polygon_build([(0, 0), (1, 5), (2, 0)])
    assert ng.hull == ((0, Fraction(0)), (2, Fraction(0)))
    assert ng.segments == ((Fraction(0), 2),)


def test_leading_infinite_run_counts_center_roots():
    ng = polygon_build([(0, None), (1, None), (2, 0), (3, 0)])
    assert ng.segments == ((None, 2), (Fraction(0), 1))
    assert root_valuations(ng) == [(None, 2), (Fraction(0), 1)]


def test_positive_slopes_are_not_roots():
    ng = polygon_build([(0, 0), (1, 2)])
    assert ng.segments == ((Fraction(2), 1),)
    assert root_valuations(ng) == []


def test_fractional_valuations():
    ng = polygon_build([(0, Fraction(1, 3)), (1, 0)])
    assert ng.segments == ((Fraction(-1, 3), 1),)
    assert root_valuations(ng) == [(Fraction(1, 3), 1)]


def test_duplicate_indices_rejected():
    with pytest.raises(ValueError):
        polygon_build([(0, 1), (0, 2)])


def test_all_infinite_rejected():
    with pytest.raises(ValueError):
        polygon_build([(0, None), (1, None)])


def test_to_json_shape():
    ng = polygon_build([(0, None), (1, Fraction(1, 2)), (2, 0)])
    j = ng.to_json()
    assert j == {
        "points": [[0, "inf"], [1, "1/2"], [2, "0/1"]],
        "segments": [["-inf", 1], ["-1/2", 1]],
    }


def _poly(ctx, ints):
    return TruncatedSeries(ctx, ctx.zero(), tuple(ctx.from_int(k) for k in ints), None)


def test_zero_count_on_expanded_product():
    # (X-3)(X-1)(X-9) over the 3-adics: all three roots in the disk
    c = ctx_new(3, 1, 40)
    s = _poly(c, [-27, 39, -13, 1])
    assert unit_disk_zero_count(s) == 3
    ng = polygon_build(s.valuation_points())
    assert sorted(root_valuations(ng)) == [(Fraction(0), 1), (Fraction(1), 1), (Fraction(2), 1)]


def test_zero_count_weierstrass_degree_not_length():
    # X + X^2 + 3X^3: minimum 0 attained last at index 2
    c = ctx_new(3, 1, 40)
    s = _poly(c, [0, 1, 1, 3])
    assert unit_disk_zero_count(s) == 2


def test_zero_count_refuses_weak_tail_bound():
    c = ctx_new(3, 1, 40)
    s = TruncatedSeries(c, c.zero(), (c.from_int(3), c.from_int(1)), Fraction(0))
    with pytest.raises(CertificationFailure):
        unit_disk_zero_count(s)
    ok = TruncatedSeries(c, c.zero(), (c.from_int(3), c.from_int(1)), Fraction(1))
    assert unit_disk_zero_count(ok) == 1


def test_zero_count_refuses_shallow_zero_flag():
    # a zero coefficient known only to O(pi^0) cannot be placed against vmin = 0
    c = ctx_new(3, 1, 40)
    s = TruncatedSeries(c, c.zero(), (c.from_int(1), c.zero(0), c.from_int(1)), None)
    with pytest.raises(CertificationFailure):
        unit_disk_zero_count(s)
    deep = TruncatedSeries(c, c.zero(), (c.from_int(1), c.zero(5), c.from_int(1)), None)
    assert unit_disk_zero_count(deep) == 2


def test_zero_count_refuses_all_zero():
    c = ctx_new(3, 1, 40)
    s = TruncatedSeries(c, c.zero(), (c.zero(5), c.zero(5)), None)
    with pytest.raises(CertificationFailure):
        unit_disk_zero_count(s)


def test_zero_count_respects_ramification():
    # over e = 2 the same integer coefficients sit at doubled pi-valuation
    c = ctx_new(3, 2, 40)
    s = _poly(c, [3, 1])
    assert unit_disk_zero_count(s) == 1
    ng = polygon_build(s.valuation_points())
    assert root_valuations(ng) == [(Fraction(1), 1)]
