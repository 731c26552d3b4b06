"""Lifting, fixed-point fibers, and the local parameter structure.

Square-root digit strings were frozen from an independent big-integer
Hensel oracle; the -1/2 witness facts repeat what direct bracket
evaluation certifies.
"""

from fractions import Fraction
from random import Random

import pytest

from qbracket import (
    DomainError,
    FixedPointRecord,
    LiftFailure,
    TruncatedSeries,
    ctx_new,
    fixed_points_for_q,
    hensel_lift,
    local_Q,
    m0_for_x,
    multiplicity_from_c1,
    multiplicity_of,
    phi1_contains,
    phi2_contains,
    q_bracket,
    q_for_x,
    sample,
)


def _poly(ctx, ints):
    return TruncatedSeries(ctx, ctx.zero(), tuple(ctx.from_int(k) for k in ints), None)


def test_hensel_series_form_sqrt8():
    # oracle: sqrt(8) in Z_7, residue-1 branch, digits 1,4,2,1,3,2,4,2,...
    c = ctx_new(7, 1, 40)
    root = hensel_lift(_poly(c, [-8, 0, 1]), c.from_int(1))
    assert root.val == 0
    assert list(root.digits()[:8]) == [1, 4, 2, 1, 3, 2, 4, 2]
    assert (root * root - c.from_int(8)).is_zero
    assert root.prec >= 38  # default target K - 2e


def test_hensel_callable_form_sqrt2():
    # oracle: sqrt(2) in Z_7, residue-3 branch, digits 3,1,2,6,1,2,1,2,...
    c = ctx_new(7, 1, 40)
    f = lambda x: x * x - c.from_int(2)
    fp = lambda x: x._mul_int(2)
    root = hensel_lift((f, fp), c.from_int(3))
    assert list(root.digits()[:8]) == [3, 1, 2, 6, 1, 2, 1, 2]
    assert (f(root)).is_zero and root.prec >= 38


def test_hensel_rejects_unit_value_at_seed():
    c = ctx_new(7, 1, 40)
    with pytest.raises(LiftFailure):
        hensel_lift(_poly(c, [-2, 0, 1]), c.from_int(1))  # f(1) = -1 is a unit


def test_hensel_rejects_flagged_derivative():
    c = ctx_new(7, 1, 40)
    f = lambda x: x * x - c.from_int(8)
    fp = lambda x: c.zero(5)
    with pytest.raises(LiftFailure):
        hensel_lift((f, fp), c.from_int(1))


def test_hensel_rejects_other_callables():
    c = ctx_new(7, 1, 40)
    with pytest.raises(TypeError):
        hensel_lift(42, c.from_int(1))


def test_hensel_respects_explicit_target():
    c = ctx_new(7, 1, 60)
    root = hensel_lift(_poly(c, [-8, 0, 1]), c.from_int(1), target=20)
    d = root * root - c.from_int(8)
    assert d.is_zero and d.prec >= 20


def test_witness_fiber_at_q4():
    c = ctx_new(3, 1, 60)
    out = fixed_points_for_q(c.from_int(4))
    assert len(out) == 1 and out.predicted == 1 and out.deficit == 0
    assert out.m0 == Fraction(1)
    rec = out[0]
    assert isinstance(rec, FixedPointRecord)
    assert (rec.residue_x, rec.residue_u, rec.multiplicity) == (1, 1, 1)
    assert rec.certified_to >= 56
    gap = rec.x - c.from_rational(-1, 2)
    assert gap.is_zero and gap.prec >= 50
    assert (rec.u - c.one()).is_zero
    assert set(rec.to_json()) == {
        "x", "q", "u", "m0", "residue_x", "residue_u", "multiplicity", "certified_to"}


def test_fiber_is_empty_at_p2():
    c = ctx_new(2, 1, 40)
    out = fixed_points_for_q(c.from_int(5))
    assert len(out) == 0 and out.predicted == 0
    assert out.m0 == Fraction(2)


def test_fiber_is_empty_past_the_upper_cutoff():
    # m0 = 2/5 > 1/(p-2) = 1/3 carries no nontrivial fixed points
    c = ctx_new(5, 5, 150)
    u = sample(c, Random(1), valuation=0)
    out = fixed_points_for_q(c.one() + u.scale_pi(2))
    assert len(out) == 0 and out.predicted == 0 and out.m0 == Fraction(2, 5)


def test_fiber_rejects_q_outside_S():
    c = ctx_new(3, 2, 60)
    with pytest.raises(DomainError):
        fixed_points_for_q(c.one() + sample(c, Random(2), valuation=1))
    with pytest.raises(DomainError):
        fixed_points_for_q(c.one())


def test_parameter_fiber_for_x5_reports_deficit():
    # the polygon certifies 3 disk roots; only the residue-2 one is in
    # the working field, and the count is reported rather than padded
    c = ctx_new(5, 3, 90)
    out = q_for_x(c.from_int(5))
    assert out.m0 == Fraction(1, 3)
    assert out.predicted == 3 and len(out) == 1 and out.deficit == 2
    rec = out[0]
    assert rec.residue_u == 2 and rec.certified_to >= 78
    assert (q_bracket(c.from_int(5), rec.q) - c.from_int(5)).is_zero


def test_parameter_fiber_needs_enough_ramification():
    c = ctx_new(5, 2, 60)
    with pytest.raises(DomainError) as ei:
        q_for_x(c.from_int(5))
    assert ei.value.required_e == 6


def test_m0_for_x_frozen_values():
    c5 = ctx_new(5, 3, 90)
    assert m0_for_x(c5.from_int(5)) == Fraction(1, 3)
    c3 = ctx_new(3, 1, 60)
    assert m0_for_x(c3.from_rational(-1, 2)) == Fraction(1)
    with pytest.raises(DomainError):
        m0_for_x(c5.from_int(7))  # v(A_3(7)) = 1, outside phi1(M)
    with pytest.raises(DomainError):
        m0_for_x(ctx_new(2, 1, 40).from_int(5))


def test_phi1_membership():
    c5 = ctx_new(5, 1, 40)
    assert phi1_contains(c5.from_int(5))
    assert not phi1_contains(c5.from_int(7))
    assert not phi1_contains(c5.from_rational(1, 5))
    assert not phi1_contains(ctx_new(2, 1, 40).from_int(3))
    c3 = ctx_new(3, 1, 60)
    assert phi1_contains(c3.from_rational(-1, 2))
    assert not phi1_contains(c3.from_int(2))  # A_1 = 0 exactly, v = +inf


def test_phi2_membership():
    assert phi2_contains(Fraction(1, 3), 5)
    assert not phi2_contains(Fraction(1, 4), 5)  # lower endpoint excluded
    assert not phi2_contains(Fraction(2, 5), 5)  # above 1/(p-2)
    assert phi2_contains(Fraction(1), 3)         # upper endpoint included
    assert not phi2_contains(Fraction(1, 2), 3)
    assert not phi2_contains(Fraction(1), 2)


def test_multiplicity_on_the_witness():
    c = ctx_new(3, 1, 60)
    q = c.from_int(4)
    x = fixed_points_for_q(q)[0].x
    assert multiplicity_of(x, q) == 1
    with pytest.raises(DomainError):
        multiplicity_of(c.from_int(2), q)  # not a fixed point
    assert multiplicity_from_c1(c.zero(10)) == 2
    assert multiplicity_from_c1(c.from_int(3)) == 1


def test_local_Q_fixes_the_center():
    c = ctx_new(3, 1, 60)
    q = c.from_int(4)
    x = fixed_points_for_q(q)[0].x
    assert (local_Q(x, q, x) - q).is_zero


def test_local_Q_scaling_law():
    # moving x by pi^v displaces q by exactly one level more
    c = ctx_new(3, 1, 60)
    q = c.from_int(4)
    x = fixed_points_for_q(q)[0].x
    rng = Random(3)
    for v in (2, 3, 5):
        xp = x + sample(c, rng, valuation=v)
        q2 = local_Q(x, q, xp)
        assert (q2 - q).val == v + 1
        gap = q_bracket(xp, q2) - xp
        assert gap.is_zero or gap.val >= 40


def test_local_Q_domain_checks():
    c = ctx_new(3, 1, 60)
    q = c.from_int(4)
    x = fixed_points_for_q(q)[0].x
    with pytest.raises(DomainError):
        local_Q(c.from_int(2), q, x)       # (x, q) off the manifold
    with pytest.raises(DomainError):
        local_Q(x, q, x + c.one())         # outside B(x, |A_1(x)|)


def test_round_trip_between_the_two_charts():
    c = ctx_new(3, 1, 60)
    rng = Random(4)
    for _ in range(3):
        q = c.one() + sample(c, rng, valuation=1)
        out = fixed_points_for_q(q)
        assert len(out) == 1
        x = out[0].x
        back = q_for_x(x)
        assert any((r.q - q).is_zero for r in back.records)
