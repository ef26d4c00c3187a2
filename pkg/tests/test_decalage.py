import pytest

from prismcalc.core.exceptions import NotNonZeroDivisor, TorsionPresent, WindowTooSmall
from prismcalc.models.complexes import FinComplex
from prismcalc.models.rings import RingModel
from prismcalc.services.decalage import (
    bockstein_complex,
    cartier_check,
    class_coordinates,
    cohomology,
    crystalline_basis,
    crystalline_complex,
    eta,
    eta_mod_vs_bockstein,
    eta_multiplicativity,
    form_label,
    random_complex,
    stage_lattices,
    truncate,
)

Z = RingModel.integers()


def two_term(multiplier):
    return FinComplex.free(Z, 0, [1, 1], [[[multiplier]]])


def test_cohomology_of_multiplication():
    report = cohomology(two_term(4))
    assert report.factors(0) == []
    assert report.factors(1) == [4]
    assert report.length(1, 2) == 2
    assert class_coordinates(report, 1, [4]) == [0]


def test_dd_must_vanish():
    with pytest.raises(ValueError):
        FinComplex.free(Z, 0, [1, 1, 1], [[[1]], [[1]]])


def test_eta_divides_torsion():
    result = eta(two_term(4), 2)
    assert result.differential(0) == [[2]]
    assert cohomology(result).factors(1) == [2]


def test_eta_rejects_torsion_and_zero():
    with pytest.raises(NotNonZeroDivisor):
        eta(two_term(4), 0)
    with pytest.raises(TorsionPresent):
        eta(two_term(4).reduce_mod(8), 2)


def test_bockstein_complex():
    beta = bockstein_complex(two_term(4), 2)
    report = cohomology(beta)
    assert report.factors(0) == [2]
    assert report.factors(1) == [2]


def test_eta_mod_f_matches_bockstein():
    assert eta_mod_vs_bockstein(two_term(4), 2).passed
    assert eta_mod_vs_bockstein(two_term(6), 3).passed


def test_eta_mod_f_on_random_complexes(rng):
    for _ in range(3):
        C = random_complex(rng, [2, 3, 2], bound=2, scale=2)
        assert eta_mod_vs_bockstein(C, 2).passed


def test_eta_is_multiplicative():
    assert eta_multiplicativity(two_term(4), 2, 2).passed
    assert eta_multiplicativity(two_term(12), 2, 3).passed


def test_stage_lattices():
    stages = stage_lattices(two_term(1), 2, 0)
    assert stages[0]["exponent"] == 0
    assert stages[0]["relative_index"] == "2"
    assert stages[1]["exponent"] == 1
    assert stage_lattices(two_term(1), 2, 2)[0]["exponent"] == 2


def test_truncations():
    C = FinComplex.free(Z, 0, [1, 1, 1], [[[2]], [[0]]])
    low = truncate(C, "tau_leq", 1)
    assert low.hi == 1
    assert cohomology(low).factors(1) == [2]
    assert truncate(C, "tau_leq", 2) is C
    window = truncate(C, "window", 1, 1)
    assert window.lo == 0 and window.ranks == [1, 1]
    assert cohomology(window).factors(1) == [2]
    with pytest.raises(ValueError):
        truncate(C, "window", 2, 1)


def test_crystalline_basis():
    basis = crystalline_basis(2, 2)
    assert [len(basis[q]) for q in range(3)] == [6, 6, 1]
    assert form_label(((1, 0), (1,))) == "x1 dx2"
    assert form_label(((0,), ())) == "1"
    with pytest.raises(ValueError):
        crystalline_basis(3, 1)


def test_integral_crystalline_cohomology():
    report = cohomology(crystalline_complex(2, 1, 3, 1, integral=True))
    assert report.free_rank(0) == 1
    assert report.factors(1) == [6]


def test_crystalline_mod_p():
    report = cohomology(crystalline_complex(2, 1, 3, 1))
    assert report.factors(0) == [2, 2]
    assert report.factors(1) == [2]


def test_cartier_isomorphism():
    assert cartier_check(2, 1, 3).passed
    assert cartier_check(3, 2, 3).passed
    with pytest.raises(WindowTooSmall):
        cartier_check(2, 1, 1)


def assert_decalage_properties(p, rng, count):
    for _ in range(count):
        C = random_complex(rng, [2, 3, 2], bound=2, scale=p)
        assert eta_mod_vs_bockstein(C, p).passed
        assert eta_multiplicativity(C, p, p).passed
        assert eta_multiplicativity(C, p, p * p).passed


@pytest.mark.parametrize("p", [2, 3])
def test_decalage_on_random_complexes(p, rng):
    assert_decalage_properties(p, rng, 10)


@pytest.mark.slow
@pytest.mark.parametrize("p", [2, 3])
def test_decalage_on_random_complexes_full_sample(p, rng):
    assert_decalage_properties(p, rng, 100)


@pytest.mark.parametrize("p", [2, 3])
def test_cartier_isomorphism_in_wide_window(p):
    report = cartier_check(p, 1, 8)
    assert report.passed, report.counterexamples
    assert report.details["0"]["forms"]
