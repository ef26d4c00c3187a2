"""
de Rham-Witt complex of F_p[x] and F_p[x, y]: products, the operators d, F,
V, R, two independent evaluation strategies and the checks built on them.

Operators act weight by weight on integral forms (see models.drw): d is
k ^ -, F multiplies the weight by p, V divides it by p and multiplies the form
by p, R only lowers the level.

The innermost strategy evaluates an expression bottom-up on normal forms,
tracking the level: V(e) at level r evaluates e at r - 1, F(e) and R(e)
evaluate e at r + 1. The outermost strategy first rewrites the tree with the
Witt complex relations until no rule applies and only then evaluates.
"""

from fractions import Fraction
from itertools import product
from typing import Callable, Dict, List, Optional, Sequence, Tuple, Union

import numpy as np

from ..config import settings
from ..core.exceptions import CapExceeded, ExpressionSyntaxError, LengthUnderflow, WindowTooSmall
from ..core.logging import logger
from ..core.structured_logging import drw_logger
from ..models.drw import DRWElement, Forms, Weight, denominator_exponent, exterior_basis, weight_piece
from ..models.reports import IsoReport, RankComparison
from ..models.rings import RingModel
from ..models.witt import WittVector
from ..utils.expressions import Add, Call, Mul, Neg, Node, Num, Pow, Sym, parse_expression, render
from .decalage import bockstein_complex, crystalline_basis, crystalline_complex, eta_mod_vs_bockstein, form_label
from .sampling import random_drw_expression
from .witt import teichmuller, witt_from_integer, witt_operator

OPERATORS = ("d", "F", "V", "R")
STRATEGIES = ("innermost", "outermost")
VARIABLE_SYMBOLS = {"[x]": 0, "x": 0, "[y]": 1, "y": 1}
TWO_VARIABLE_WINDOW = 5


def _wedge(I: Tuple[int, ...], J: Tuple[int, ...]) -> Optional[Tuple[int, Tuple[int, ...]]]:
    """dlog T_I ^ dlog T_J as (sign, sorted index set), or None when they share an index."""
    if set(I) & set(J):
        return None
    merged = I + J
    inversions = sum(1 for a in range(len(merged)) for b in range(a + 1, len(merged)) if merged[a] > merged[b])
    return (-1) ** inversions, tuple(sorted(merged))


def _accumulate(out: Forms, n: int, q: int, k: Weight, index: Tuple[int, ...], value: int) -> None:
    wedges = exterior_basis(n, q)
    alpha = out.setdefault((q, k), [0] * len(wedges))
    alpha[wedges.index(index)] += value


# Products

def drw_product(x: DRWElement, y: DRWElement) -> DRWElement:
    x._check(y)
    n = x.n
    out: Forms = {}
    for (qa, ka), alpha in x.forms().items():
        for (qb, kb), beta in y.forms().items():
            q = qa + qb
            if q > n:
                continue
            k = tuple(a + b for a, b in zip(ka, kb))
            for I, a in zip(exterior_basis(n, qa), alpha):
                if not a:
                    continue
                for J, b in zip(exterior_basis(n, qb), beta):
                    wedge = _wedge(I, J) if b else None
                    if wedge:
                        sign, K = wedge
                        _accumulate(out, n, q, k, K, sign * a * b)
    return x.like_forms(out)


# Operators

def frobenius(x: DRWElement) -> DRWElement:
    """F : W_r Omega -> W_{r-1} Omega."""
    if x.r < 2:
        raise LengthUnderflow("F", x.r)
    p = x.p
    forms = {(q, tuple(p * c for c in k)): alpha for (q, k), alpha in x.forms().items()}
    return x.like_forms(forms, x.r - 1)


def verschiebung(x: DRWElement) -> DRWElement:
    """V : W_r Omega -> W_{r+1} Omega."""
    p = x.p
    forms = {(q, tuple(c / p for c in k)): [p * a for a in alpha] for (q, k), alpha in x.forms().items()}
    return x.like_forms(forms, x.r + 1)


def restriction(x: DRWElement) -> DRWElement:
    """R : W_r Omega -> W_{r-1} Omega, truncating every coefficient."""
    if x.r < 2:
        raise LengthUnderflow("R", x.r)
    return x.like(x.terms, x.r - 1)


def differential(x: DRWElement) -> DRWElement:
    n = x.n
    out: Forms = {}
    for (q, k), alpha in x.forms().items():
        if q == n:
            continue
        image: Dict[Tuple[int, ...], Fraction] = {}
        for I, a in zip(exterior_basis(n, q), alpha):
            for i in range(n):
                wedge = _wedge((i,), I) if a and k[i] else None
                if wedge:
                    sign, K = wedge
                    image[K] = image.get(K, Fraction(0)) + sign * k[i] * a
        for K, value in image.items():
            if value.denominator != 1:
                raise ArithmeticError(f"d of a non-integral form at weight {k}")
            _accumulate(out, n, q + 1, k, K, int(value))
    return x.like_forms(out)


OPERATOR_MAP: Dict[str, Callable[[DRWElement], DRWElement]] = {
    "d": differential,
    "F": frobenius,
    "V": verschiebung,
    "R": restriction,
}


def drw_operator(x: DRWElement, op: str) -> DRWElement:
    """Apply d, F, V or R; F and R need level at least 2."""
    if op not in OPERATOR_MAP:
        raise ValueError(f"unknown de Rham-Witt operator {op}")
    result = OPERATOR_MAP[op](x)
    drw_logger.debug("drw_operator", op=op, level=x.r, variables=x.n, result=str(result))
    return result


# Innermost evaluation

def drw_parse(text: str) -> Node:
    return parse_expression(text)


def _variable(p: int, r: int, cap: int, n: int, index: int) -> DRWElement:
    exponents = [0] * n
    exponents[index] = 1
    return DRWElement.monomial(p, r, exponents, cap=cap)


def evaluate(node: Node, p: int, r: int, cap: int, text: str = "", n: int = 1) -> DRWElement:
    """Bottom-up evaluation at level r."""

    def walk(node: Node, r: int) -> DRWElement:
        if isinstance(node, Num):
            return DRWElement.scalar(p, r, node.value, cap, n)
        if isinstance(node, Sym):
            index = VARIABLE_SYMBOLS.get(node.name)
            if index is not None and index < n:
                return _variable(p, r, cap, n, index)
            if node.name == "p":
                return DRWElement.scalar(p, r, p, cap, n)
            raise ExpressionSyntaxError(text, 0, f"unknown symbol {node.name}")
        if isinstance(node, Pow):
            e = node.exponent
            if e.denominator != 1 or e < 0:
                raise ExpressionSyntaxError(text, 0, f"exponent {e} is not a non-negative integer")
            if e > cap:
                raise CapExceeded("exponent", e, cap)
            return walk(node.base, r) ** int(e)
        if isinstance(node, Neg):
            return -walk(node.arg, r)
        if isinstance(node, Add):
            return walk(node.left, r) + walk(node.right, r)
        if isinstance(node, Mul):
            return walk(node.left, r) * walk(node.right, r)
        if node.name == "d":
            return differential(walk(node.arg, r))
        if node.name in ("F", "R"):
            return OPERATOR_MAP[node.name](walk(node.arg, r + 1))
        if node.name == "V":
            if r == 1:
                return DRWElement.zero(p, r, cap, n)
            return verschiebung(walk(node.arg, r - 1))
        if node.name == "t":
            value = walk(node.arg, r)
            items = list(value.terms.items())
            if len(items) > 1 or (
                items and (items[0][0][0] != 0 or denominator_exponent(p, items[0][0][1]) or items[0][1] != 1)
            ):
                raise ExpressionSyntaxError(text, 0, "t() takes a monomial in the variables")
            return value
        raise ExpressionSyntaxError(text, 0, f"function {node.name} is not available here")

    return walk(node, r)


# Outermost rewriting

def _p(p: int) -> Num:
    return Num(p)


def _teichmuller_variable(node: Node) -> Optional[str]:
    """Canonical [x] or [y] when the node is a single Teichmüller variable."""
    if isinstance(node, Sym) and node.name in VARIABLE_SYMBOLS:
        return "[x]" if VARIABLE_SYMBOLS[node.name] == 0 else "[y]"
    if isinstance(node, Call) and node.name == "t":
        return _teichmuller_variable(node.arg)
    return None


def _rule(node: Node, p: int) -> Optional[Node]:
    """One rewrite at the root, or None."""
    if not isinstance(node, Call) or node.name not in OPERATORS:
        return None
    g, arg = node.name, node.arg
    inner = arg.name if isinstance(arg, Call) else None
    if g == "F" and inner == "V":
        return Mul(_p(p), arg.arg)
    if g == "F" and inner == "d" and isinstance(arg.arg, Call) and arg.arg.name == "V":
        return Call("d", arg.arg.arg)
    if g == "F" and inner == "d":
        variable = _teichmuller_variable(arg.arg)
        if variable:
            return Mul(Pow(Sym(variable), Fraction(p - 1)), Call("d", Sym(variable)))
    if g == "d" and inner == "d":
        return Num(0)
    if g == "V" and inner == "d":
        return Mul(_p(p), Call("d", Call("V", arg.arg)))
    if g == "d" and inner == "F":
        return Mul(_p(p), Call("F", Call("d", arg.arg)))
    if g == "R" and inner in ("d", "F", "V"):
        return Call(inner, Call("R", arg.arg))
    # linearity
    if isinstance(arg, Add):
        return Add(Call(g, arg.left), Call(g, arg.right))
    if isinstance(arg, Neg):
        return Neg(Call(g, arg.arg))
    if isinstance(arg, Num):
        if g == "d" or arg.value == 0:
            return Num(0)
        return Mul(_p(p), arg) if g == "V" else arg
    if isinstance(arg, Mul) and isinstance(arg.left, Num):
        return Mul(arg.left, Call(g, arg.right))
    if isinstance(arg, Mul):
        left, right = arg.left, arg.right
        if g == "V" and isinstance(right, Call) and right.name == "F":
            return Mul(Call("V", left), right.arg)
        if g == "V" and isinstance(left, Call) and left.name == "F":
            return Mul(left.arg, Call("V", right))
        if g == "d":
            return Add(Mul(Call("d", left), right), Mul(left, Call("d", right)))
        if g in ("F", "R"):
            return Mul(Call(g, left), Call(g, right))
    if isinstance(arg, Pow) and arg.exponent.denominator == 1 and arg.exponent >= 0:
        e = int(arg.exponent)
        if g == "d":
            if e == 0:
                return Num(0)
            if e == 1:
                return Call("d", arg.base)
            return Mul(Mul(Num(e), Pow(arg.base, Fraction(e - 1))), Call("d", arg.base))
        if g in ("F", "R"):
            return Pow(Call(g, arg.base), arg.exponent)
    return None


def _rewrite_once(node: Node, p: int) -> Optional[Node]:
    """Leftmost-outermost single step."""
    new = _rule(node, p)
    if new is not None:
        return new
    if isinstance(node, (Add, Mul)):
        left = _rewrite_once(node.left, p)
        if left is not None:
            return type(node)(left, node.right)
        right = _rewrite_once(node.right, p)
        if right is not None:
            return type(node)(node.left, right)
        return None
    if isinstance(node, Neg):
        arg = _rewrite_once(node.arg, p)
        return None if arg is None else Neg(arg)
    if isinstance(node, Pow):
        base = _rewrite_once(node.base, p)
        return None if base is None else Pow(base, node.exponent)
    if isinstance(node, Call):
        arg = _rewrite_once(node.arg, p)
        return None if arg is None else Call(node.name, arg)
    return None


def rewrite(node: Node, p: int, limit: Optional[int] = None) -> Tuple[Node, int]:
    """Rewrite to a fixpoint of the relation rules; returns the tree and the step count."""
    limit = limit or settings.drw_rewrite_steps
    steps = 0
    while True:
        new = _rewrite_once(node, p)
        if new is None:
            return node, steps
        steps += 1
        if steps > limit:
            raise CapExceeded("rewrite steps", steps, limit)
        node = new


def evaluate_with(
    node: Node, p: int, r: int, strategy: str = "innermost", cap: Optional[int] = None, text: str = "", n: int = 1
) -> DRWElement:
    cap = cap or settings.drw_weight_cap
    if strategy == "innermost":
        return evaluate(node, p, r, cap, text, n)
    if strategy == "outermost":
        rewritten, _ = rewrite(node, p)
        return evaluate(rewritten, p, r, cap, text, n)
    raise ValueError(f"unknown strategy {strategy}")


def drw_normalize(
    text: str, p: int, r: int, strategy: str = "innermost", cap: Optional[int] = None, n: int = 1
) -> DRWElement:
    """Normal form of an expression at level r in n variables."""
    result = evaluate_with(drw_parse(text), p, r, strategy, cap, text, n)
    drw_logger.event(
        "drw_normalized", p=p, r=r, variables=n, strategy=strategy, expression=text, terms=len(result.terms)
    )
    return result


# Checks

def _axioms(p: int, n: int = 1) -> Dict[str, Callable[[Node, Node], Tuple[Node, Node]]]:
    axioms: Dict[str, Callable[[Node, Node], Tuple[Node, Node]]] = {
        "FV=p": lambda z, w: (Call("F", Call("V", z)), Mul(Num(p), z)),
        "FdV=d": lambda z, w: (Call("F", Call("d", Call("V", z))), Call("d", z)),
        "dd=0": lambda z, w: (Call("d", Call("d", z)), Num(0)),
        "Vd=pdV": lambda z, w: (Call("V", Call("d", z)), Mul(Num(p), Call("d", Call("V", z)))),
        "dF=pFd": lambda z, w: (Call("d", Call("F", z)), Mul(Num(p), Call("F", Call("d", z)))),
    }
    for name in ("[x]", "[y]")[:n]:
        v = Sym(name)
        axioms[f"Fd{name}"] = lambda z, w, v=v: (Call("F", Call("d", v)), Mul(Pow(v, Fraction(p - 1)), Call("d", v)))
    axioms.update({
        "V(zFw)=V(z)w": lambda z, w: (Call("V", Mul(z, Call("F", w))), Mul(Call("V", z), w)),
        "leibniz": lambda z, w: (Call("d", Mul(z, w)), Add(Mul(Call("d", z), w), Mul(z, Call("d", w)))),
        "F_multiplicative": lambda z, w: (Call("F", Mul(z, w)), Mul(Call("F", z), Call("F", w))),
        "additive": lambda z, w: (Call("d", Add(z, w)), Add(Call("d", z), Call("d", w))),
        "Rd=dR": lambda z, w: (Call("R", Call("d", z)), Call("d", Call("R", z))),
        "RF=FR": lambda z, w: (Call("R", Call("F", z)), Call("F", Call("R", z))),
        "RV=VR": lambda z, w: (Call("R", Call("V", z)), Call("V", Call("R", z))),
    })
    return axioms


def drw_axiom_check(
    p: int,
    r: int,
    samples: int,
    rng: np.random.Generator,
    include_zero: bool = True,
    cap: Optional[int] = None,
    n: int = 1,
) -> IsoReport:
    """Evaluate every relation on random elements with both strategies.

    A check fails when the two sides differ or when the strategies disagree
    on either side.
    """
    cap = cap or settings.drw_weight_cap
    report = IsoReport(f"drw_axioms p={p} r={r} n={n}")
    pairs = [(Num(0), Num(0))] if include_zero else []
    while len(pairs) < samples:
        pairs.append((random_drw_expression(rng, variables=n), random_drw_expression(rng, variables=n)))
    for name, build in _axioms(p, n).items():
        passed = 0
        for z, w in pairs:
            lhs, rhs = build(z, w)
            left = evaluate_with(lhs, p, r, "innermost", cap, n=n)
            right = evaluate_with(rhs, p, r, "innermost", cap, n=n)
            witness = f"{render(lhs)} -> {left} vs {render(rhs)} -> {right}"
            ok = report.record(name, left == right, witness)
            for side, value in ((lhs, left), (rhs, right)):
                outer = evaluate_with(side, p, r, "outermost", cap, n=n)
                ok = report.record(f"{name}:strategies", outer == value, f"{render(side)}: {outer} vs {value}") and ok
            passed += ok
        report.details[name] = {"samples": len(pairs), "passed": passed}
    drw_logger.event("drw_axioms_checked", p=p, r=r, variables=n, samples=len(pairs), passed=report.passed)
    if not report.passed:
        logger.warning(f"de Rham-Witt axiom check failed for p={p} r={r} n={n}: {report.counterexamples[:3]}")
    return report


def _witt_window(p: int, r: int, *elements: DRWElement) -> int:
    weight = max((e.max_weight() for e in elements), default=Fraction(0))
    return int(weight * p ** r) + 2


def drw_to_witt(x: DRWElement, M: Optional[int] = None) -> WittVector:
    """Degree-zero element as a Witt vector over F_p[t]/(t^(M^n)).

    Two variables are packed as x -> t, y -> t^M, which is injective on the
    monomials of x-degree below M.
    """
    if any(q for q in x.degrees):
        raise ValueError("only degree-zero elements are Witt vectors")
    p, r, n = x.p, x.r, x.n
    window = M or _witt_window(p, r, x)
    base = RingModel.trunc_poly(p, 0, window ** n)
    total = witt_from_integer(0, p, r, base)
    for (_, k, _), c in x.terms.items():
        s = denominator_exponent(p, k)
        exponents = [int(e * p ** s) for e in k]
        packed = sum(e * window ** i for i, e in enumerate(exponents))
        piece = witt_from_integer(c, p, r - s, base) * teichmuller(base.monomial(1, packed), r - s, p)
        for _ in range(s):
            piece = witt_operator(piece, "V")
        total = total + piece
    return total


def drw_witt_check(p: int, r: int, samples: int, rng: np.random.Generator, n: int = 1) -> IsoReport:
    """Degree-zero normal forms against Witt vector arithmetic: +, *, F, V, R."""
    report = IsoReport(f"drw_vs_witt p={p} r={r} n={n}")
    cap = settings.drw_weight_cap
    for _ in range(samples):
        a = evaluate(random_drw_expression(rng, forms=False, variables=n), p, r, cap, n=n)
        b = evaluate(random_drw_expression(rng, forms=False, variables=n), p, r, cap, n=n)
        cases = {"add": (a + b, (a, b), "add"), "mul": (a * b, (a, b), "mul"), "V": (verschiebung(a), (a,), "V")}
        if r >= 2:
            cases["F"] = (frobenius(a), (a,), "F")
            cases["R"] = (restriction(a), (a,), "R")
        for name, (result, inputs, op) in cases.items():
            M = _witt_window(p, r, result, *inputs)
            witts = [drw_to_witt(e, M) for e in inputs]
            if op == "add":
                expected = witts[0] + witts[1]
            elif op == "mul":
                expected = witts[0] * witts[1]
            else:
                expected = witt_operator(witts[0], op)
            report.record(name, drw_to_witt(result, M) == expected, f"{inputs} -> {result}")
    return report


def drw_de_rham_collapse(p: int, D: int, n: int = 1) -> IsoReport:
    """At level 1, d on every form x^a dx_I of weight <= D matches the de Rham differential of F_p[x_1..x_n]."""
    report = IsoReport(f"drw_level_one p={p} D={D} n={n}")
    basis = crystalline_basis(n, D)
    C = crystalline_complex(p, n, D, 1)
    for q in range(n):
        d = C.differential(q)
        rows = {form: row for row, form in enumerate(basis[q + 1])}
        for col, (exponents, wedge) in enumerate(basis[q]):
            weight = tuple(Fraction(e + (1 if i in wedge else 0)) for i, e in enumerate(exponents))
            alpha = [1 if I == wedge else 0 for I in exterior_basis(n, q)]
            image = differential(DRWElement.from_forms(p, 1, n, {(q, weight): alpha}))
            found = {}
            for (_, k), beta in image.forms().items():
                for J, b in zip(exterior_basis(n, q + 1), beta):
                    if b % p:
                        form = (tuple(int(e) - (1 if i in J else 0) for i, e in enumerate(k)), J)
                        found[rows.get(form, -1)] = b % p
            expected = {row: d[row][col] % p for row in range(len(d)) if d[row][col] % p}
            report.record(f"d {form_label((exponents, wedge))}", found == expected, f"{image} vs {expected}")
    return report


def drw_piece_length(p: int, r: int, q: int, weight: Union[Fraction, Sequence[Fraction]]) -> int:
    """Length of the weight piece of W_r Omega^q, summed over the orders of its basis terms."""
    k = (Fraction(weight),) if isinstance(weight, (Fraction, int)) else tuple(Fraction(c) for c in weight)
    n = len(k)
    length = 0
    for j in range(weight_piece(p, n, q, k).rank):
        generator = DRWElement(p, r, {(q, k, j): 1}, n=n)
        while not generator.is_zero():
            generator = generator * p
            length += 1
    return length


def _p_length(factors: List[int], p: int) -> int:
    total = 0
    for f in factors:
        while f and f % p == 0:
            f //= p
            total += 1
    return total


def drw_vs_decalage(p: int, r: int, q: int, D: int, n: int = 1) -> RankComparison:
    """Weight-by-weight lengths of W_r Omega^q against H^q of the de Rham complex of Z_p[x_1..x_n] mod p^r.

    Total weight m of the crystalline side corresponds to the weights k / p^r
    of W_r Omega with |k| = m; the eta column is the length of
    H^q(eta_{p^r} C / p^r) on the same weight piece.
    """
    if D < 1:
        raise WindowTooSmall(D, 1)
    if n not in (1, 2):
        raise ValueError("de Rham-Witt comparison is built for one or two variables")
    if not 0 <= q <= n:
        raise ValueError(f"form degree must be between 0 and {n}")
    if n == 2 and D > TWO_VARIABLE_WINDOW:
        raise CapExceeded("window", D, TWO_VARIABLE_WINDOW)
    comparison = RankComparison(f"drw_vs_decalage p={p} r={r} q={q} D={D} n={n}")
    f = p ** r
    for m in range(D + 1):
        C = crystalline_complex(p, n, D, 1, integral=True, weight=m)
        bockstein = bockstein_complex(C, f)
        right = _p_length(list(bockstein.module(q)), p)
        left = sum(
            drw_piece_length(p, r, q, tuple(Fraction(e, f) for e in exponents))
            for exponents in product(range(m + 1), repeat=n)
            if sum(exponents) == m
        )
        eta = eta_mod_vs_bockstein(C, f)
        eta_factors = [int(x) for x in eta.details[str(q)]["eta_mod_f"]]
        comparison.add(f"{m}/{f}", left, right, eta=_p_length(eta_factors, p), eta_check=eta.passed)
    drw_logger.event("drw_compared", p=p, r=r, q=q, variables=n, window=D, passed=comparison.passed)
    return comparison
