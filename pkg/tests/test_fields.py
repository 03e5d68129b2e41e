import random
from fractions import Fraction

import pytest

from triality.fields import (
    DEFAULT_PRIME,
    FieldError,
    PrimeField,
    QQ,
    field_from_tag,
    is_prime,
    same_field,
)


def test_rational_ops_exact():
    rng = random.Random(11)
    for _ in range(200):
        a = Fraction(rng.randint(-50, 50), rng.randint(1, 30))
        b = Fraction(rng.randint(-50, 50), rng.randint(1, 30))
        assert QQ.sub(QQ.add(a, b), b) == a
    assert QQ.add(1, 2) == 3
    assert isinstance(QQ.div(4, 2), int)
    assert QQ.div(1, 3) == Fraction(1, 3)


def test_rational_parse_format_roundtrip():
    for text in ("3", "-7", "1/2", "-9/4"):
        assert QQ.format(QQ.parse(text)) == text
    assert QQ.format_machine(3) == "3/1"
    with pytest.raises(FieldError):
        QQ.parse("1/0")
    with pytest.raises(FieldError):
        QQ.parse("x")


def test_division_by_zero_is_loud():
    with pytest.raises(ZeroDivisionError):
        QQ.div(1, 0)
    with pytest.raises(ZeroDivisionError):
        PrimeField(7).inv(0)


def test_prime_field_axioms():
    p = PrimeField(101)
    rng = random.Random(3)
    for _ in range(100):
        a, b = rng.randrange(101), rng.randrange(1, 101)
        assert p.mul(p.div(a, b), b) == a % 101
        assert p.add(a, p.neg(a)) == 0
    assert p.coerce(Fraction(1, 2)) == p.inv(2)


def test_small_and_composite_moduli_rejected():
    for bad in (4, 6, 9, 1, 0, -5):
        with pytest.raises(FieldError):
            PrimeField(bad)
    for bad in (2, 3):
        with pytest.raises(FieldError):
            PrimeField(bad)
    assert PrimeField(5).p == 5


def test_default_prime_is_prime():
    assert is_prime(DEFAULT_PRIME)
    assert DEFAULT_PRIME ** 2 < 2 ** 63


def test_field_tags():
    assert field_from_tag("rational") is QQ or field_from_tag("rational") == QQ
    assert field_from_tag("mod 7") == PrimeField(7)
    assert field_from_tag("mod:11") == PrimeField(11)
    with pytest.raises(FieldError):
        field_from_tag("mod six")
    with pytest.raises(FieldError):
        same_field(QQ, PrimeField(7))
