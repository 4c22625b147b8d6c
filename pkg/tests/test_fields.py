from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from bgg.errors import InputError
from bgg.fields import PrimeField, RationalField, default_field, field_from_json

F7 = PrimeField(7)
FP = default_field()
QQ = RationalField()


def test_inverse_examples():
    assert F7.inv(3) == 5
    assert QQ.inv(Fraction(2, 3)) == Fraction(3, 2)
    assert FP.inv(1) == 1


def test_zero_inversion_is_an_error():
    with pytest.raises(ZeroDivisionError):
        F7.inv(0)
    with pytest.raises(ZeroDivisionError):
        QQ.inv(Fraction(0))


def test_primality_checked():
    with pytest.raises(InputError):
        PrimeField(32004)
    with pytest.raises(InputError):
        PrimeField(2)


@given(st.integers(), st.integers(), st.integers())
def test_field_axioms_prime(a, b, c):
    f = F7
    a, b, c = f(a), f(b), f(c)
    assert f.mul(a, f.mul(b, c)) == f.mul(f.mul(a, b), c)
    assert f.mul(a, f.add(b, c)) == f.add(f.mul(a, b), f.mul(a, c))
    assert f.add(a, f.neg(a)) == f.zero
    if not f.is_zero(a):
        assert f.mul(a, f.inv(a)) == f.one


@given(st.fractions(max_denominator=50), st.fractions(max_denominator=50),
       st.fractions(max_denominator=50))
def test_field_axioms_rational(a, b, c):
    f = QQ
    assert f.mul(a, f.add(b, c)) == f.add(f.mul(a, b), f.mul(a, c))
    if not f.is_zero(a):
        assert f.mul(a, f.inv(a)) == f.one


def test_json_round_trip():
    assert field_from_json(FP.to_json()) == FP
    assert field_from_json(QQ.to_json()) == QQ
    assert field_from_json({"field": {"prime": 7}}).p == 7
