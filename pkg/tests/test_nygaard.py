import pytest

from prismcalc.core.exceptions import (
    ExpressionSyntaxError,
    NotInFiltration,
    NotPerfectBase,
    PrecisionExhausted,
    UnsupportedWeight,
)
from prismcalc.models.ainf import PerfectoidModel
from prismcalc.services.ainf import xi_r
from prismcalc.services.nygaard import (
    AinfPrism,
    ScalarPrism,
    certify_distinguished,
    divided_frobenius,
    exponent_comparison,
    filtration_maps,
    gr0_witt_iso,
    gr_piece,
    hodge_tate_r,
    nygaard_member,
    nygaard_tuple,
    pullback_step,
)
from prismcalc.services.sampling import random_ainf


@pytest.fixture
def zp():
    return ScalarPrism(2, 8)


def test_scalar_membership(zp):
    x = zp.scalar(16)
    assert nygaard_member(zp, x, 2, 2)
    assert not nygaard_member(zp, x, 3, 2)
    assert nygaard_member(zp, zp.scalar(1), 0, 3)
    with pytest.raises(ValueError):
        nygaard_member(zp, x, 1, 0)


def test_divided_frobenius(zp):
    assert divided_frobenius(zp, zp.scalar(48), 2, 2) == zp.scalar(3)
    with pytest.raises(NotInFiltration):
        divided_frobenius(zp, zp.scalar(2), 1, 2)


def test_nygaard_tuple(zp):
    result = nygaard_tuple(zp, zp.scalar(16), 1, 2)
    assert result.coordinates == [zp.scalar(16), zp.scalar(8)]
    with pytest.raises(NotInFiltration):
        nygaard_tuple(zp, zp.scalar(2), 1, 2)


def test_graded_piece(zp):
    piece = gr_piece(zp, 2, 1)
    assert piece.reduce(zp.scalar(12)) == zp.scalar(3)
    assert piece.reduce(zp.scalar(8)).is_zero()
    assert gr_piece(zp, -1, 1).is_zero


def test_scalar_parse(zp):
    assert zp.parse("p^2 + 1") == zp.scalar(5)
    with pytest.raises(ExpressionSyntaxError):
        zp.parse("t")


def test_hodge_tate_classes(zp):
    assert hodge_tate_r(zp, zp.scalar(12), 2).is_zero()
    assert (hodge_tate_r(zp, zp.scalar(3), 2) * hodge_tate_r(zp, zp.scalar(4), 2)).is_zero()
    assert not hodge_tate_r(zp, zp.scalar(5), 2).is_zero()


def test_ainf_membership(charp2):
    prism = AinfPrism(charp2)
    x = prism.parse("4*t")
    assert nygaard_member(prism, x, 2, 1)
    assert not nygaard_member(prism, x, 3, 1)
    assert divided_frobenius(prism, x, 2, 1) == charp2.teich_t(2)


def test_membership_beyond_precision(charp2, zp):
    prism = AinfPrism(charp2)
    x = prism.parse("4*t")
    with pytest.raises(PrecisionExhausted):
        nygaard_member(prism, x, 3, 2)
    with pytest.raises(PrecisionExhausted):
        divided_frobenius(prism, x, 3, 2)
    with pytest.raises(PrecisionExhausted):
        nygaard_member(zp, zp.scalar(1), 4, 2)
    assert nygaard_member(zp, zp.scalar(1), 0, 20)


def test_pullback_identity(zp):
    for value in (1, 4, 16, 64):
        step = pullback_step(zp, zp.scalar(value), 1, 2)
        assert step["agree"]


def test_exponent_comparison_on_scalars(zp):
    result = exponent_comparison(zp, zp.scalar(16), 2, 2)
    assert result["consistent"] and result["phi_r"]


def test_exponents_disagree_in_mixed_characteristic(mixed2):
    prism = AinfPrism(mixed2)
    result = exponent_comparison(prism, prism.d() ** 2, 2, 1)
    assert result["phi_r"] is True
    assert result["phi_ri"] is False
    assert not result["consistent"]


def test_distinguished_certificate(zp, rng):
    assert certify_distinguished(zp, rng)


def test_gr0_is_witt_vectors(fp2, rng):
    report = gr0_witt_iso(AinfPrism(fp2), 2, rng, samples=4)
    assert report.passed
    assert report.details["enumerated"] == 4


def test_gr0_needs_perfect_base(mixed2, rng):
    with pytest.raises(NotPerfectBase):
        gr0_witt_iso(AinfPrism(mixed2), 1, rng)


def test_verschiebung_only_in_weight_zero(fp2):
    prism = AinfPrism(fp2)
    with pytest.raises(UnsupportedWeight):
        filtration_maps(prism, fp2.scalar(1), 1, 1, "V")
    image = filtration_maps(prism, fp2.scalar(1), 0, 1, "V")
    assert image == fp2.scalar(2)


def test_frobenius_map_between_levels(fp2):
    prism = AinfPrism(fp2)
    x = fp2.scalar(16)
    assert filtration_maps(prism, x, 2, 1, "F") == x
    assert filtration_maps(prism, x, 2, 1, "Res") == x


def test_scalar_prism_is_not_perfect(zp, rng):
    with pytest.raises(NotPerfectBase):
        gr0_witt_iso(zp, 1, rng)


@pytest.mark.parametrize("model", [PerfectoidModel.fp(3, 10)])
def test_filtration_is_decreasing(model):
    prism = AinfPrism(model)
    x = model.scalar(27)
    members = [nygaard_member(prism, x, i, 1) for i in range(5)]
    assert members == [True, True, True, True, False]


def assert_closed_form(model, rng, count):
    prism = AinfPrism(model)
    p = model.p
    for r in (1, 2, 3):
        for i in range(4):
            if r * i >= model.N:
                continue
            for _ in range(count):
                x = random_ainf(model, rng) * model.scalar(p ** int(rng.integers(0, model.N)))
                divisible = all(c % p ** (r * i) == 0 for _, c in x.series.terms)
                assert nygaard_member(prism, x, i, r) == divisible
                if divisible:
                    assert (divided_frobenius(prism, x, i, r) * xi_r(model, r) ** i).agrees_with(prism.phi(x, r))


@pytest.mark.parametrize("name", ["fp2", "charp2"])
def test_filtration_is_divisibility_by_xi_r(name, rng, request):
    assert_closed_form(request.getfixturevalue(name), rng, 12)


@pytest.mark.slow
@pytest.mark.parametrize("name", ["fp2", "charp2"])
def test_filtration_closed_form_full_sample(name, rng, request):
    assert_closed_form(request.getfixturevalue(name), rng, 500)
