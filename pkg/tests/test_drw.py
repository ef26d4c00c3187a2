from fractions import Fraction

import pytest

from prismcalc.core.exceptions import CapExceeded, ExpressionSyntaxError, LengthUnderflow, ModelMismatch, WindowTooSmall
from prismcalc.models.drw import DRWElement
from prismcalc.services.drw import (
    drw_axiom_check,
    drw_de_rham_collapse,
    drw_normalize,
    drw_parse,
    drw_piece_length,
    drw_to_witt,
    drw_vs_decalage,
    drw_witt_check,
    frobenius,
    rewrite,
)
from prismcalc.services.sampling import make_rng
from prismcalc.utils.expressions import Num


def x(p, r, coeff=1):
    return DRWElement.monomial(p, r, (1,), coeff)


def test_normal_form_text():
    assert str(drw_normalize("[x]^2 + 3", 2, 2)) == "3 + [x]^2"
    assert drw_normalize("V(1)", 2, 2) == DRWElement.scalar(2, 2, 2)


@pytest.mark.parametrize("strategy", ["innermost", "outermost"])
def test_fv_is_p(strategy):
    assert drw_normalize("F(V([x]))", 2, 2, strategy) == x(2, 2, 2)


@pytest.mark.parametrize("strategy", ["innermost", "outermost"])
def test_dd_vanishes(strategy):
    assert drw_normalize("d(d([x]^3))", 3, 2, strategy).is_zero()


def test_frobenius_of_dx():
    assert drw_normalize("F(d([x]))", 3, 2) == drw_normalize("[x]^2*d([x])", 3, 2)


def test_products_with_verschiebung():
    assert drw_normalize("[x]*V([x])", 2, 2) == drw_normalize("V([x]^3)", 2, 2)
    assert drw_normalize("V([x])*V([x])", 2, 2).is_zero()


def test_invalid_elements():
    with pytest.raises(LengthUnderflow):
        frobenius(DRWElement.scalar(2, 1, 1))
    with pytest.raises(ValueError):
        DRWElement(2, 2, {(1, (0,), 0): 1})
    with pytest.raises(ModelMismatch):
        DRWElement.scalar(2, 2, 1) + DRWElement.scalar(2, 3, 1)


def test_expression_errors():
    with pytest.raises(CapExceeded):
        drw_normalize("[x]^10", 2, 1, cap=8)
    with pytest.raises(ExpressionSyntaxError):
        drw_normalize("y", 2, 1)
    with pytest.raises(ExpressionSyntaxError):
        drw_normalize("phi([x])", 2, 1)


def test_rewrite_reaches_fixpoint():
    assert rewrite(drw_parse("d(d([x]))"), 2) == (Num(0), 1)


def test_term_json():
    term = drw_normalize("V([x])", 2, 2).to_json()["terms"][0]
    assert term == {"label": "V([x])", "degree": 0, "weight": "1/2", "coefficient": "1", "modulus": "2"}


def test_forms_are_not_witt_vectors():
    with pytest.raises(ValueError):
        drw_to_witt(drw_normalize("d([x])", 2, 2))


@pytest.mark.parametrize("p", [2, 3])
def test_degree_zero_matches_witt_vectors(p, rng):
    assert drw_witt_check(p, 2, 3, rng).passed


def test_level_one_is_de_rham():
    assert drw_de_rham_collapse(3, 5).passed


def test_piece_lengths():
    assert drw_piece_length(2, 3, 0, Fraction(1, 2)) == 2
    assert drw_piece_length(2, 3, 1, Fraction(3)) == 3
    assert drw_piece_length(2, 3, 1, Fraction(0)) == 0
    assert drw_piece_length(2, 2, 0, Fraction(0)) == 2


@pytest.mark.parametrize("q", [0, 1])
def test_lengths_match_bockstein(q):
    assert drw_vs_decalage(2, 2, q, 4).passed


def test_decalage_comparison_arguments():
    with pytest.raises(ValueError):
        drw_vs_decalage(2, 2, 2, 4)
    with pytest.raises(WindowTooSmall):
        drw_vs_decalage(2, 2, 0, 0)


@pytest.mark.slow
def test_witt_complex_relations():
    report = drw_axiom_check(2, 2, 4, make_rng(99))
    assert report.passed, report.counterexamples[:3]


@pytest.mark.parametrize("p,r", [(2, 1), (2, 2), (3, 1), (3, 2)])
def test_relations_on_small_samples(p, r):
    report = drw_axiom_check(p, r, 3, make_rng(7))
    assert report.passed, report.counterexamples[:3]


@pytest.mark.slow
@pytest.mark.parametrize("p,r", [(2, 1), (2, 2), (2, 3), (3, 1), (3, 2), (3, 3)])
def test_relations_full_sample(p, r):
    assert drw_axiom_check(p, r, 500, make_rng(p * 10 + r)).passed


# Two variables


def xy(p, r, a, b, coeff=1):
    return DRWElement.monomial(p, r, (a, b), coeff)


def test_unknown_variable_in_one_variable():
    with pytest.raises(ExpressionSyntaxError):
        drw_normalize("[y]", 2, 2)
    assert drw_normalize("[y]", 2, 2, n=2) == xy(2, 2, 0, 1)


@pytest.mark.parametrize("strategy", ["innermost", "outermost"])
def test_two_variable_relations(strategy):
    assert drw_normalize("F(V([x]*[y]))", 2, 2, strategy, n=2) == xy(2, 2, 1, 1, 2)
    assert drw_normalize("F(d([x]*[y]))", 2, 2, strategy, n=2) == drw_normalize("[x]*[y]*d([x]*[y])", 2, 2, n=2)
    assert drw_normalize("F(d([y]))", 3, 2, strategy, n=2) == drw_normalize("[y]^2*d([y])", 3, 2, n=2)
    assert drw_normalize("d(d([x]^2*[y]))", 2, 2, strategy, n=2).is_zero()


def test_leibniz_in_two_variables():
    left = drw_normalize("d([x]*[y])", 3, 2, n=2)
    assert left == drw_normalize("[y]*d([x]) + [x]*d([y])", 3, 2, n=2)
    assert left.degrees == [1]


def test_top_degree_forms():
    form = drw_normalize("d(V([x]))*d([y])", 2, 2, n=2)
    assert form.degrees == [2]
    assert drw_normalize("d([y])*d(V([x]))", 2, 2, n=2) == -form
    assert drw_normalize("d(V([x])*d([y]))", 2, 2, n=2) == form
    assert drw_normalize("d(d(V([x])*d([y])))", 2, 2, n=2).is_zero()
    assert drw_normalize("d([x])*d([x])", 2, 2, n=2).is_zero()


def test_two_variable_labels_parse_back():
    for text in ("V([x]*[y]^2)", "d(V([x]*[y]))", "V([x])*d([y])", "d(V([x]))*d([y])", "F(d([x]^3*[y]))"):
        for r in (2, 3):
            value = drw_normalize(text, 2, r, n=2)
            assert not value.is_zero()
            assert drw_normalize(str(value), 2, r, n=2) == value


def test_two_variable_piece_lengths():
    half = (Fraction(1, 2), Fraction(1))
    assert drw_piece_length(2, 2, 0, half) == 1
    assert drw_piece_length(2, 2, 1, half) == 2
    assert drw_piece_length(2, 2, 2, half) == 1
    assert drw_piece_length(2, 2, 1, (Fraction(3), Fraction(0))) == 2
    assert drw_piece_length(2, 2, 2, (Fraction(3), Fraction(0))) == 0
    assert drw_piece_length(2, 2, 0, (Fraction(1, 4), Fraction(1))) == 0


def test_two_variable_term_json():
    value = drw_normalize("V([x])*[y]", 2, 2, n=2)
    assert value.to_json()["n"] == 2
    term = value.to_json()["terms"][0]
    assert term == {"label": "V([x]*[y]^2)", "degree": 0, "weight": "(1/2, 1)", "coefficient": "1", "modulus": "2"}


def test_forms_outside_the_lattice_are_rejected():
    with pytest.raises(ValueError):
        DRWElement.from_forms(2, 2, 2, {(1, (Fraction(1, 2), Fraction(1))): [0, 1]})
    with pytest.raises(ValueError):
        DRWElement.from_forms(2, 2, 2, {(1, (Fraction(1), Fraction(0))): [0, 1]})


@pytest.mark.parametrize("p", [2, 3])
def test_two_variable_relations_on_samples(p):
    report = drw_axiom_check(p, 2, 2, make_rng(11), n=2)
    assert report.passed, report.counterexamples[:3]


def test_two_variable_degree_zero_matches_witt_vectors(rng):
    assert drw_witt_check(2, 2, 2, rng, n=2).passed


def test_two_variable_level_one_is_de_rham():
    assert drw_de_rham_collapse(2, 4, n=2).passed
    assert drw_de_rham_collapse(3, 3, n=2).passed


@pytest.mark.parametrize("q", [0, 1, 2])
def test_two_variable_lengths_match_bockstein(q):
    comparison = drw_vs_decalage(2, 2, q, 3, n=2)
    assert comparison.passed, comparison.rows


def test_two_variable_window_cap():
    with pytest.raises(CapExceeded):
        drw_vs_decalage(2, 2, 1, 6, n=2)
    with pytest.raises(ValueError):
        drw_vs_decalage(2, 2, 3, 4, n=2)


@pytest.mark.slow
@pytest.mark.parametrize("p", [2, 3])
@pytest.mark.parametrize("r", [1, 2])
@pytest.mark.parametrize("q", [0, 1])
def test_two_variable_comparison_full_window(p, r, q):
    assert drw_vs_decalage(p, r, q, 5, n=2).passed


@pytest.mark.slow
@pytest.mark.parametrize("p", [2, 3])
def test_two_variable_relations_full_sample(p):
    assert drw_axiom_check(p, 2, 100, make_rng(p), n=2).passed
