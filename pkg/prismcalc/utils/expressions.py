"""
Tokenizer and recursive-descent parser for the element mini-language.

    expr   := term (("+" | "-") term)*
    term   := unary ("*" unary)*
    unary  := "-" unary | power
    power  := atom ("^" exponent)?
    atom   := INT | NAME | "[x]" | "[y]" | NAME "(" expr ")" | "(" expr ")"
    exponent := INT | "(" "-"? INT ("/" INT)? ")"

The same tree feeds the A_inf evaluator (p, t, t^(a/b), xi) and the
de Rham-Witt evaluator ([x], [y], t(x^a*y^b), d, F, V, R).
"""

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Callable, List, Optional, Tuple, Union

from ..core.exceptions import ExpressionSyntaxError


TOKEN_RE = re.compile(r"\s*(?:(\d+)|(\[[xy]\])|([A-Za-z_][A-Za-z0-9_]*)|(.))")
FUNCTIONS = frozenset({"d", "F", "V", "R", "t", "phi"})


@dataclass(frozen=True)
class Num:
    value: int


@dataclass(frozen=True)
class Sym:
    name: str


@dataclass(frozen=True)
class Pow:
    base: "Node"
    exponent: Fraction


@dataclass(frozen=True)
class Neg:
    arg: "Node"


@dataclass(frozen=True)
class Add:
    left: "Node"
    right: "Node"


@dataclass(frozen=True)
class Mul:
    left: "Node"
    right: "Node"


@dataclass(frozen=True)
class Call:
    name: str
    arg: "Node"


Node = Union[Num, Sym, Pow, Neg, Add, Mul, Call]


def tokenize(text: str) -> List[Tuple[str, str, int]]:
    tokens = []
    pos = 0
    text = text.rstrip()
    while pos < len(text):
        match = TOKEN_RE.match(text, pos)
        if match is None:
            break
        number, bracket, name, other = match.groups()
        start = match.start(match.lastindex)
        if number is not None:
            tokens.append(("int", number, start))
        elif bracket is not None:
            tokens.append(("sym", bracket, start))
        elif name is not None:
            tokens.append(("name", name, start))
        elif other in "+-*^()/":
            tokens.append(("op", other, start))
        else:
            raise ExpressionSyntaxError(text, start, f"unexpected character {other!r}")
        pos = match.end()
    tokens.append(("end", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens = tokenize(text)
        self.index = 0

    @property
    def current(self) -> Tuple[str, str, int]:
        return self.tokens[self.index]

    def fail(self, reason: str):
        raise ExpressionSyntaxError(self.text, self.current[2], reason)

    def accept(self, kind: str, value: str = None) -> bool:
        k, v, _ = self.current
        if k == kind and (value is None or v == value):
            self.index += 1
            return True
        return False

    def expect(self, kind: str, value: str = None) -> str:
        k, v, _ = self.current
        if k != kind or (value is not None and v != value):
            self.fail(f"expected {value or kind}")
        self.index += 1
        return v

    def parse(self) -> Node:
        if self.current[0] == "end":
            self.fail("empty expression")
        node = self.expr()
        if self.current[0] != "end":
            self.fail("trailing input")
        return node

    def expr(self) -> Node:
        node = self.term()
        while True:
            if self.accept("op", "+"):
                node = Add(node, self.term())
            elif self.accept("op", "-"):
                node = Add(node, Neg(self.term()))
            else:
                return node

    def term(self) -> Node:
        node = self.unary()
        while self.accept("op", "*"):
            node = Mul(node, self.unary())
        return node

    def unary(self) -> Node:
        if self.accept("op", "-"):
            return Neg(self.unary())
        return self.power()

    def power(self) -> Node:
        base = self.atom()
        if self.accept("op", "^"):
            return Pow(base, self.exponent())
        return base

    def exponent(self) -> Fraction:
        if self.current[0] == "int":
            return Fraction(int(self.expect("int")))
        self.expect("op", "(")
        sign = -1 if self.accept("op", "-") else 1
        num = int(self.expect("int"))
        den = int(self.expect("int")) if self.accept("op", "/") else 1
        if den == 0:
            self.fail("zero denominator")
        self.expect("op", ")")
        return Fraction(sign * num, den)

    def atom(self) -> Node:
        kind, value, _ = self.current
        if kind == "int":
            self.index += 1
            return Num(int(value))
        if kind == "sym":
            self.index += 1
            return Sym(value)
        if kind == "name":
            self.index += 1
            if value in FUNCTIONS and self.accept("op", "("):
                arg = self.expr()
                self.expect("op", ")")
                return Call(value, arg)
            return Sym(value)
        if self.accept("op", "("):
            node = self.expr()
            self.expect("op", ")")
            return node
        self.fail("expected a value")


def parse_expression(text: str) -> Node:
    """Parse text into an expression tree; raises ExpressionSyntaxError."""
    return _Parser(text).parse()


def render(node: Node) -> str:
    """Canonical text of a tree (fully parenthesized sums)."""
    if isinstance(node, Num):
        return str(node.value)
    if isinstance(node, Sym):
        return node.name
    if isinstance(node, Pow):
        e = node.exponent
        exponent = str(e.numerator) if e.denominator == 1 and e >= 0 else f"({e.numerator}/{e.denominator})"
        return f"{render(node.base)}^{exponent}"
    if isinstance(node, Neg):
        return f"-{render(node.arg)}"
    if isinstance(node, Add):
        return f"({render(node.left)} + {render(node.right)})"
    if isinstance(node, Mul):
        return f"{render(node.left)}*{render(node.right)}"
    return f"{node.name}({render(node.arg)})"


def fold(node: Node, leaf: Callable[[Node], Any], call: Optional[Callable[[str, Any], Any]] = None, text: str = "") -> Any:
    """Evaluate a tree bottom-up with ring operators.

    `leaf` turns Num, Sym and non-integral Pow nodes into ring values;
    `call` applies named functions to evaluated arguments.
    """
    if isinstance(node, (Num, Sym)):
        return leaf(node)
    if isinstance(node, Pow):
        e = node.exponent
        if e.denominator != 1 or e < 0:
            return leaf(node)
        return fold(node.base, leaf, call, text) ** int(e)
    if isinstance(node, Neg):
        return -fold(node.arg, leaf, call, text)
    if isinstance(node, Add):
        return fold(node.left, leaf, call, text) + fold(node.right, leaf, call, text)
    if isinstance(node, Mul):
        return fold(node.left, leaf, call, text) * fold(node.right, leaf, call, text)
    if call is None:
        raise ExpressionSyntaxError(text, 0, f"function {node.name} is not available here")
    return call(node.name, fold(node.arg, leaf, call, text))
