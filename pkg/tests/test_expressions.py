from fractions import Fraction

import pytest

from prismcalc.core.exceptions import ExpressionSyntaxError
from prismcalc.utils.expressions import Add, Call, Mul, Neg, Num, Pow, Sym, fold, parse_expression, render


def test_parse_tree():
    tree = parse_expression("[x]^2 + d([x])")
    assert tree == Add(Pow(Sym("[x]"), Fraction(2)), Call("d", Sym("[x]")))


def test_fractional_exponents():
    assert parse_expression("t^(1/2)") == Pow(Sym("t"), Fraction(1, 2))
    assert parse_expression("t^(-3/4)") == Pow(Sym("t"), Fraction(-3, 4))


def test_subtraction_and_negation():
    assert parse_expression("1 - 2") == Add(Num(1), Neg(Num(2)))
    assert parse_expression("-[x]*d([x])") == Mul(Neg(Sym("[x]")), Call("d", Sym("[x]")))


def test_unknown_names_are_symbols():
    assert parse_expression("xi_2") == Sym("xi_2")
    with pytest.raises(ExpressionSyntaxError):
        parse_expression("q(1)")


@pytest.mark.parametrize("text", ["", "1 +", "2 $ 3", "(1", "t^(1/0)", "1 2"])
def test_syntax_errors(text):
    with pytest.raises(ExpressionSyntaxError):
        parse_expression(text)


def test_error_carries_position():
    with pytest.raises(ExpressionSyntaxError) as info:
        parse_expression("1 + $")
    assert info.value.details["position"] == 4
    assert info.value.error_code == "EXPRESSION_SYNTAX_ERROR"


def test_render():
    assert render(parse_expression("1+2*[x]")) == "(1 + 2*[x])"
    assert render(parse_expression("t^(1/2)")) == "t^(1/2)"
    assert render(parse_expression("V(F([x]))")) == "V(F([x]))"


def test_fold_with_integers():
    leaf = lambda node: node.value
    assert fold(parse_expression("2^3 + 1"), leaf) == 9
    assert fold(parse_expression("-(4 - 1)*2"), leaf) == -6
    with pytest.raises(ExpressionSyntaxError):
        fold(parse_expression("d(1)"), leaf)
