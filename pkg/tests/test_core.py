"""Arithmetic, precision bookkeeping, and literal round-trips."""

import json
from fractions import Fraction
from random import Random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qbracket import (
    ContextMismatch,
    PrecisionExhausted,
    ZeroAtPrecision,
    ctx_new,
    equals_to_precision,
    sample,
)


def test_context_validation():
    with pytest.raises(ValueError):
        ctx_new(4, 1, 40)
    with pytest.raises(ValueError):
        ctx_new(5, 0, 40)
    with pytest.raises(ValueError):
        ctx_new(5, 3, 5)
    c = ctx_new(5, 3, 90)
    assert (c.p, c.e, c.K) == (5, 3, 90)


def test_from_int_valuation_and_digits():
    c = ctx_new(5, 1, 30)
    x = c.from_int(10)
    assert x.val == 1
    assert x.digits()[0] == 2
    assert c.from_int(0).is_zero
    # ramified: v is measured in pi-units, so p itself has valuation e
    c3 = ctx_new(5, 3, 90)
    assert c3.from_int(5).val == 3
    assert c3.from_int(7).val == 0


def test_minus_half_is_all_ones_at_p3():
    # 1 + 3 + 9 + ... = 1/(1-3) = -1/2
    c = ctx_new(3, 1, 40)
    x = c.from_rational(Fraction(-1, 2))
    assert x.val == 0
    assert set(x.digits()) == {1}


def test_from_rational_covers_negative_valuation():
    # the field is all of Q_p(pi); disk membership is checked by the
    # analytic layer, not the representation
    c = ctx_new(3, 1, 40)
    assert c.from_rational(Fraction(1, 3)).val == -1
    assert c.from_rational(Fraction(2, 5)).val == 0


def test_uniformizer_cubes_to_p():
    c = ctx_new(5, 3, 60)
    pi = c.from_digits(1, [1] + [0] * 58)
    d = pi * pi * pi - c.from_int(5)
    assert d.is_zero


def test_precision_rules_add_mul():
    c = ctx_new(3, 1, 50)
    a = c.from_digits(0, [1, 2, 1], prec=3)
    b = c.from_digits(0, [2, 2], prec=2)
    assert (a + b).prec == 2
    # product: valuations add, relative precision is the min of the two
    m = a * b
    assert m.val == 0
    assert m.prec == 2
    v = c.from_digits(2, [1, 1], prec=4)
    assert (a * v).val == 2
    assert (a * v).prec == 2 + min(3, 2)


def test_zero_flag_propagation():
    c = ctx_new(3, 1, 50)
    z = c.zero(10)
    a = c.from_int(7)
    assert (a + z).prec == 10
    assert (a * z).is_zero
    assert not (a + z).is_zero
    with pytest.raises(PrecisionExhausted):
        z.val


def test_subtraction_cancellation_is_zero_flagged():
    c = ctx_new(3, 1, 50)
    a = c.from_int(41)
    d = a - c.from_int(41)
    assert d.is_zero
    assert d.prec == 50


def test_inverse_and_division():
    c = ctx_new(7, 1, 40)
    a = c.from_int(12)
    assert (a * a.inv() - c.one()).is_zero
    with pytest.raises(PrecisionExhausted):
        c.zero(10).inv()


def test_valuation_method_and_zero_marker():
    c = ctx_new(5, 3, 90)
    assert c.from_int(5).valuation() == Fraction(1)
    assert c.from_int(7).valuation() == Fraction(0)
    zv = c.zero(30).valuation()
    assert isinstance(zv, ZeroAtPrecision)


def test_render_parse_round_trip():
    c = ctx_new(5, 3, 45)
    rng = Random(11)
    for _ in range(25):
        x = sample(c, rng, valuation=rng.randrange(0, 5))
        assert c.parse(x.render()) == x
    z = c.zero(17)
    assert c.parse(z.render()) == z


def test_parse_rejects_malformed():
    c = ctx_new(5, 3, 45)
    with pytest.raises(ValueError):
        c.parse("garbage")
    with pytest.raises(ValueError):
        c.parse("p^0*(1; prec=1)")  # wrong uniformizer token for e > 1
    with pytest.raises(ValueError):
        c.parse("pi^inf*(3; prec=9)")  # zero literal with digits


def test_from_digits_guards():
    c = ctx_new(3, 1, 30)
    with pytest.raises(ValueError):
        c.from_digits(0, [0, 1], prec=2)  # leading digit zero
    with pytest.raises(ValueError):
        c.from_digits(0, [3], prec=1)  # digit out of range
    with pytest.raises(ValueError):
        c.from_digits(0, [1, 1], prec=5)  # digit count mismatch


def test_json_round_trip():
    c = ctx_new(3, 1, 40)
    x = c.from_rational(Fraction(7, 5))
    blob = json.dumps(x.to_json())
    assert c.from_json(json.loads(blob)) == x
    with pytest.raises(ValueError):
        ctx_new(5, 1, 40).from_json(x.to_json())


def test_equals_to_precision():
    c = ctx_new(3, 1, 60)
    a = c.from_int(10)
    b = c.from_int(10 + 3 ** 7)
    assert equals_to_precision(a, b, 7)
    assert not equals_to_precision(a, b, 8)
    # undecidable: asking beyond what the operands carry
    with pytest.raises(PrecisionExhausted):
        equals_to_precision(c.zero(5), c.zero(5), 20)


def test_context_mixing_rejected():
    a = ctx_new(3, 1, 40).from_int(2)
    b = ctx_new(3, 2, 80).from_int(2)
    with pytest.raises(ContextMismatch):
        a + b


def test_sample_reproducible_and_valid():
    c = ctx_new(5, 2, 40)
    x1 = sample(c, Random(99), valuation=3)
    x2 = sample(c, Random(99), valuation=3)
    assert x1 == x2
    assert x1.val == 3
    r = sample(c, Random(5), residue=4)
    assert r.residue() == 4
    with pytest.raises(ValueError):
        sample(c, Random(1), residue=0)


@given(a=st.integers(-10 ** 9, 10 ** 9), b=st.integers(-10 ** 9, 10 ** 9))
@settings(max_examples=60, deadline=None)
def test_ring_ops_match_integers(a, b):
    c = ctx_new(3, 1, 80)
    fa, fb = c.from_int(a), c.from_int(b)
    assert ((fa + fb) - c.from_int(a + b)).is_zero
    assert ((fa * fb) - c.from_int(a * b)).is_zero
    assert ((fa - fb) - c.from_int(a - b)).is_zero


@given(num=st.integers(-10 ** 6, 10 ** 6), den=st.integers(1, 10 ** 6))
@settings(max_examples=60, deadline=None)
def test_rational_embedding_is_multiplicative(num, den):
    c = ctx_new(7, 1, 60)
    if den % 7 == 0 or num == 0:
        return
    x = c.from_rational(Fraction(num, den))
    assert (x * c.from_int(den) - c.from_int(num)).is_zero


@given(a=st.integers(1, 10 ** 12))
@settings(max_examples=60, deadline=None)
def test_valuation_is_multiplicative(a):
    c = ctx_new(5, 2, 60)
    x = c.from_int(a)
    y = c.from_int(a + 1)
    assert (x * y).val == x.val + y.val
