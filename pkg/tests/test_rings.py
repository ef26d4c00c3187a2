import pytest

from prismcalc.core.exceptions import CapExceeded, ConfigError, ModelMismatch, NotDivisible, NotNonZeroDivisor
from prismcalc.models.rings import (
    Exponent,
    PrecisionLedger,
    RingModel,
    divide_exact,
    element_from_json,
    element_to_json,
    reduce_modulo,
)
from prismcalc.services.sampling import random_ring_element


def test_exponent_normal_form():
    assert Exponent.of(2, 4, 2) == 1
    assert Exponent.parse(2, "3/4") == Exponent(3, 2, 2)
    assert Exponent.parse(3, "2/p^1").value.denominator == 3
    assert Exponent.parse(2, "1/2") + Exponent.parse(2, "1/2") == 1


def test_exponent_rejects_denominator_prime_to_p():
    with pytest.raises(ValueError):
        Exponent.parse(3, "1/2")


def test_exponent_order():
    half = Exponent.of(2, 1, 1)
    assert half < Exponent.of(2, 1)
    assert half.floor() == 0 and half.ceil() == 1
    assert half.scale(1) == 1


def test_model_validation():
    with pytest.raises(ConfigError):
        RingModel.integers_mod(1)
    with pytest.raises(ConfigError):
        RingModel.prime_field(4)
    with pytest.raises(ConfigError):
        RingModel.trunc_poly(2, 1, 0)


def test_scalar_reduction():
    assert RingModel.integers_mod(9).scalar(10).constant() == 1
    assert RingModel.prime_field(5).scalar(-1).constant() == 4


def test_truncated_polynomials_in_characteristic_p():
    model = RingModel.trunc_poly(2, 2, 3)
    assert model.monomial(1, 3).is_zero()
    root = model.monomial(1, "1/2")
    assert root * root == model.monomial(1, 1)
    assert (root + 1) ** 2 == model.monomial(1, 1) + 1


def test_pmonoid_moves_whole_exponents_into_coefficients():
    model = RingModel.pmonoid_alg(2, 4, 1)
    assert model.monomial(1, "3/2").as_dict() == {Exponent.of(2, 1, 1): 2}


def test_witt_series_caps():
    model = RingModel.witt_series(2, 3, 1, 4)
    with pytest.raises(CapExceeded):
        model.monomial(1, 4)
    with pytest.raises(CapExceeded):
        model.monomial(1, "1/4")


def test_model_mismatch():
    with pytest.raises(ModelMismatch):
        RingModel.integers().scalar(1) + RingModel.prime_field(2).scalar(1)


def test_divide_exact_scalars():
    Z = RingModel.integers()
    assert divide_exact(Z.scalar(12), Z.scalar(4)) == 3
    with pytest.raises(NotDivisible):
        divide_exact(Z.scalar(7), Z.scalar(2))
    with pytest.raises(NotNonZeroDivisor):
        divide_exact(Z.scalar(7), Z.zero())
    F5 = RingModel.prime_field(5)
    assert divide_exact(F5.scalar(3), F5.scalar(2)) == 4


def test_divide_truncated():
    model = RingModel.trunc_poly(2, 1, 4)
    t = model.monomial(1, 1)
    quotient = divide_exact(t ** 2 + t ** 3, t)
    assert quotient == t + t ** 2
    assert quotient.ledger.m == 3
    with pytest.raises(NotDivisible):
        divide_exact(t, t ** 2)


def test_divide_series():
    model = RingModel.witt_series(2, 3, 0, 8)
    t = model.monomial(1, 1)
    assert divide_exact(t * 2 + 2, t + 1) == model.scalar(2)


def test_reduce_modulo():
    Z = RingModel.integers()
    assert reduce_modulo(Z.scalar(17), Z.scalar(5)) == 2
    model = RingModel.trunc_poly(2, 1, 8)
    t = model.monomial(1, 1)
    assert reduce_modulo(t + t ** 3, t ** 2) == t


def test_ledger_meet():
    left = PrecisionLedger(3, None, None)
    right = PrecisionLedger(None, 2, None)
    assert left.meet(right) == PrecisionLedger(3, 2, None)


def test_element_json():
    model = RingModel.witt_series(3, 2, 1, 9)
    x = model.monomial(4, "1/3") + 2
    assert element_from_json(element_to_json(x)) == x


def distinguished_divisors():
    Z = RingModel.integers()
    mod9 = RingModel.integers_mod(9)
    trunc = RingModel.trunc_poly(2, 2, 3)
    monoid = RingModel.pmonoid_alg(2, 4, 1)
    series = RingModel.witt_series(2, 4, 2, 64)
    return [
        (Z, Z.scalar(3)),
        (Z, Z.scalar(-7)),
        (mod9, mod9.scalar(2)),
        (trunc, trunc.monomial(1, "1/2")),
        (monoid, monoid.monomial(1, "1/2")),
        (monoid, monoid.scalar(2)),
        (series, series.scalar(2)),
        (series, series.monomial(1, 1) - 2),
    ]


@pytest.mark.parametrize("model,d", distinguished_divisors())
def test_divide_exact_undoes_multiplication(model, d, rng):
    for _ in range(20):
        a = random_ring_element(model, rng)
        assert divide_exact(a * d, d).agrees_with(a)


def test_pmonoid_without_roots_is_integers_mod_power(rng):
    monoid = RingModel.pmonoid_alg(3, 3, 0)
    mod27 = RingModel.integers_mod(27)

    def transport(x):
        return mod27.scalar(x.constant())

    for _ in range(500):
        a, b = random_ring_element(monoid, rng), random_ring_element(monoid, rng)
        assert a.as_dict().keys() <= {Exponent.of(3, 0)}
        assert transport(a + b) == transport(a) + transport(b)
        assert transport(a * b) == transport(a) * transport(b)
        assert transport(a - b) == transport(a) - transport(b)
    assert transport(monoid.one()) == mod27.one()
