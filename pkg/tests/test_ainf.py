import pytest

from prismcalc.core.exceptions import ExpressionSyntaxError, PrecisionExhausted, UnsupportedModel
from prismcalc.models.ainf import PerfectoidModel
from prismcalc.models.rings import Exponent
from prismcalc.services.ainf import (
    check_fontaine_diagrams,
    frobenius_phi,
    from_witt,
    kernel_check,
    parse_element,
    peel_digits,
    theta,
    theta_r,
    tilt_sharp,
    to_witt,
    xi,
    xi_r,
    xi_tilde_r,
)
from prismcalc.services.sampling import random_ainf


def test_xi_by_characteristic(charp2, mixed2):
    assert xi(charp2) == charp2.scalar(2)
    assert xi(mixed2) == mixed2.teich_t(1) - 2
    assert xi_tilde_r(charp2, 3) == charp2.scalar(8)


def test_frobenius_scales_exponents(charp2):
    half = charp2.teich_t("1/2")
    assert frobenius_phi(half, 1) == charp2.teich_t(1)
    assert frobenius_phi(charp2.teich_t(1), -1) == half


def test_inverse_frobenius_spends_budget(charp2):
    x = charp2.teich_t(1).with_budget(0)
    with pytest.raises(PrecisionExhausted):
        frobenius_phi(x, -1)


def test_theta_in_characteristic_p(charp2):
    assert theta(charp2.teich_t(1)) == charp2.tilt.monomial(1, 1)
    assert theta(charp2.scalar(2)).is_zero()


def test_theta_kills_xi_in_mixed_characteristic(mixed2):
    assert theta(xi(mixed2)).is_zero()
    assert theta_r(xi_r(mixed2, 2), 2).is_zero()


def test_tilt_sharp(mixed2, charp2):
    assert tilt_sharp(mixed2, "1/2").as_dict() == {Exponent.of(2, 1, 1): 1}
    with pytest.raises(UnsupportedModel):
        tilt_sharp(charp2, "1/2")


def test_digits_reconstruct_element(charp2, rng):
    for _ in range(5):
        x = random_ainf(charp2, rng)
        assert len(peel_digits(x)) == charp2.N
        assert from_witt(to_witt(x), charp2).agrees_with(x)


@pytest.mark.parametrize("r", [1, 2, 3])
def test_witt_coordinates_round_trip(fp2, charp2, rng, r):
    assert from_witt(to_witt(fp2.scalar(5), r), fp2) == fp2.scalar(5 % 2 ** r)
    assert from_witt(to_witt(fp2.scalar(7), r), fp2).series.constant() == 7 % 2 ** r
    for _ in range(10):
        x = random_ainf(charp2, rng)
        assert from_witt(to_witt(x, r), charp2).agrees_with(x)


def test_theta_r_on_fp_is_reduction(fp2):
    w = theta_r(fp2.scalar(5), 3)
    assert w == to_witt(fp2.scalar(5), 3)
    assert from_witt(w, fp2) == fp2.scalar(5)


def test_kernel_of_theta_r(charp2, rng):
    for r in (1, 2):
        for _ in range(3):
            x = random_ainf(charp2, rng)
            assert kernel_check(x, r)
            assert kernel_check(x * xi_r(charp2, r), r)


def test_fontaine_squares_commute(charp2, rng):
    report = check_fontaine_diagrams(charp2, 1, 3, rng)
    assert report.passed
    assert report.checked["F_theta"] == 3


def test_diagram_budget_checked_before_sampling(rng):
    shallow = PerfectoidModel.char_p(2, N=6, K=2, M=64)
    state = rng.bit_generator.state
    with pytest.raises(PrecisionExhausted) as info:
        check_fontaine_diagrams(shallow, 2, 5, rng)
    assert info.value.details["budget"] == "k"
    assert rng.bit_generator.state == state
    with pytest.raises(PrecisionExhausted):
        check_fontaine_diagrams(shallow, 6, 5, rng)


def test_parse_element(charp2, mixed2):
    assert parse_element("t^(1/2)*t^(1/2)", charp2) == charp2.teich_t(1)
    assert parse_element("p^2 + 1", charp2) == charp2.scalar(5)
    assert parse_element("phi(t)", charp2) == charp2.teich_t(2)
    assert parse_element("xi_1", mixed2) == xi(mixed2)
    with pytest.raises(ExpressionSyntaxError):
        parse_element("q", charp2)
    with pytest.raises(ExpressionSyntaxError):
        parse_element("d(t)", charp2)


DIAGRAM_MODELS = [
    (PerfectoidModel.char_p(2), 1),
    (PerfectoidModel.char_p(2), 2),
    (PerfectoidModel.char_p(3), 1),
    (PerfectoidModel.char_p(3), 2),
    (PerfectoidModel.mixed(2, N=4, K=2), 1),
]


@pytest.mark.parametrize("model,r", DIAGRAM_MODELS)
def test_fontaine_squares_on_each_model(model, r, rng):
    report = check_fontaine_diagrams(model, r, 8, rng)
    assert report.passed, report.failures
    assert all(count == 8 for count in report.checked.values())


@pytest.mark.slow
@pytest.mark.parametrize("model,r", DIAGRAM_MODELS)
def test_fontaine_squares_full_sample(model, r, rng):
    assert check_fontaine_diagrams(model, r, 300, rng).passed


def assert_kernel_generated(model, r, rng, count):
    generator = xi_r(model, r)
    assert theta_r(generator, r).is_zero()
    for _ in range(count):
        y = random_ainf(model, rng)
        assert theta_r(generator * y, r).is_zero()
        assert kernel_check(generator * y, r)


@pytest.mark.parametrize("r", [1, 2, 3])
def test_kernel_elements_are_multiples(charp2, rng, r):
    assert_kernel_generated(charp2, r, rng, 20)


@pytest.mark.slow
@pytest.mark.parametrize("r", [1, 2, 3])
def test_kernel_elements_full_sample(charp2, rng, r):
    assert_kernel_generated(charp2, r, rng, 200)
