from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from thompson_proximal.numerics import (
    Dyadic,
    DyadicParseError,
    dy_arith,
    dy_codec,
    floor_log2_ratio,
    format_dyadic,
    parse,
    pow2_exponent,
)

dyadics = st.builds(Dyadic, st.integers(-(10**30), 10**30), st.integers(0, 80))


def test_add_halves_is_canonical_one():
    r = dy_arith("add", parse("1/2^1"), parse("1/2^1"))
    assert (r.mantissa, r.exponent) == (1, 0)


def test_mul_exponent_arithmetic():
    assert dy_arith("mul", parse("3/2^2"), Dyadic(2)) == parse("3/2^1")


def test_cmp():
    assert dy_arith("cmp", parse("1/2^2"), parse("1/2^1")) == -1
    assert dy_arith("cmp", parse("1/2^1"), parse("1/2^1")) == 0
    assert parse("1/2^2") < parse("1/2^1")


def test_parse_format_examples():
    assert dy_codec("parse", "3/2^2").to_fraction() == Fraction(3, 4)
    assert dy_codec("format", Dyadic(-1)) == "-1"
    assert dy_codec("parse", "2/2^1") == Dyadic(1)
    assert parse("1/4") == parse("1/2^2")
    assert parse("-6/2^3") == parse("-3/2^2")


@pytest.mark.parametrize("text", ["1/3", "", "abc", "1/2^", "1.5", "1/0", "1/2^-1"])
def test_parse_rejects(text):
    with pytest.raises(DyadicParseError):
        parse(text)


def test_zero_is_unique():
    for z in (Dyadic(0, 7), Dyadic(0), parse("0/2^5"), Dyadic(3, 2) - Dyadic(3, 2)):
        assert (z.mantissa, z.exponent) == (0, 0)


def test_unknown_op():
    with pytest.raises(ValueError):
        dy_arith("div", Dyadic(1), Dyadic(1))


@given(dyadics)
def test_canonical_form(p):
    assert p.exponent == 0 or p.mantissa % 2 == 1
    again = Dyadic(p.mantissa, p.exponent)
    assert (again.mantissa, again.exponent) == (p.mantissa, p.exponent)


@given(dyadics)
def test_roundtrip(p):
    assert parse(format_dyadic(p)) == p


@given(dyadics, dyadics)
def test_arithmetic_matches_fractions(p, q):
    fp, fq = p.to_fraction(), q.to_fraction()
    assert (p + q).to_fraction() == fp + fq
    assert (p - q).to_fraction() == fp - fq
    assert (p * q).to_fraction() == fp * fq
    assert (-p).to_fraction() == -fp
    assert dy_arith("cmp", p, q) == (fp > fq) - (fp < fq)
    assert (p == q) == (fp == fq)
    assert hash(p + q) == hash(fp + fq)


def test_arithmetic_oracle_10k(rng):
    """10^4 random pairs against Fraction, including wide exponents."""
    for _ in range(10_000):
        p = Dyadic(rng.randint(-(10**12), 10**12), rng.randint(0, 40))
        q = Dyadic(rng.randint(-(10**12), 10**12), rng.randint(0, 40))
        fp, fq = p.to_fraction(), q.to_fraction()
        for op, expect in (("add", fp + fq), ("sub", fp - fq), ("mul", fp * fq)):
            r = dy_arith(op, p, q)
            assert r.to_fraction() == expect
            assert r.exponent == 0 or r.mantissa % 2
        assert dy_arith("cmp", p, q) == (fp > fq) - (fp < fq)


@given(dyadics)
def test_floor_ceil(p):
    import math

    f = p.to_fraction()
    assert p.floor() == math.floor(f)
    assert p.ceil() == math.ceil(f)


@given(st.integers(1, 10**9), st.integers(0, 30), st.integers(1, 10**9), st.integers(0, 30))
def test_log2_helpers(m1, e1, m2, e2):
    num, den = Dyadic(m1, e1), Dyadic(m2, e2)
    ratio = num.to_fraction() / den.to_fraction()
    t = floor_log2_ratio(num, den)
    assert Fraction(2) ** t <= ratio < Fraction(2) ** (t + 1)
    k = pow2_exponent(num, den)
    if k is None:
        assert ratio != Fraction(2) ** t
    else:
        assert ratio == Fraction(2) ** k


def test_immutable():
    p = Dyadic(1, 1)
    with pytest.raises(AttributeError):
        p.m = 3
