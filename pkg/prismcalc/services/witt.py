"""
Witt vector service.

Universal addition, multiplication, negation and Frobenius polynomials are
solved once per (p, r) from the ghost equations over ZZ and evaluated over
any base model, including bases with p-torsion where the ghost map is not
injective.
"""

from typing import Dict, List, Optional, Sequence, Tuple

from sympy import ZZ, isprime
from sympy.polys.rings import ring

from ..core.cache import cached_computation
from ..core.exceptions import (
    IntegralityViolation,
    InvalidPrime,
    LengthUnderflow,
    ModelMismatch,
    NonWittGhost,
    NotDivisible,
    SizeCapExceeded,
)
from ..core.logging import logger
from ..core.structured_logging import witt_logger
from ..models.rings import RingElement, RingKind, RingModel, divide_exact
from ..models.witt import GhostVector, TermList, WittPolynomialTable, WittVector

# Largest supported length per prime
SIZE_CAPS: Dict[int, int] = {2: 4, 3: 4, 5: 3}

ARITH_OPS = ("add", "sub", "mul")
OPERATORS = ("F", "V", "R")


def check_size(p: int, r: int) -> None:
    if not isprime(p):
        raise InvalidPrime(p)
    if p not in SIZE_CAPS or not 1 <= r <= SIZE_CAPS[p]:
        raise SizeCapExceeded(p, r)


def _ghost_polynomial(variables, n: int, p: int):
    return sum((p ** i * variables[i] ** (p ** (n - i)) for i in range(n + 1)), variables[0] * 0)


def _solve_family(name: str, targets, p: int, poly_ring) -> list:
    """Solve w_n(P) = targets[n] recursively, asserting integrality."""
    polys = []
    for n, target in enumerate(targets):
        rest = target - sum((p ** i * polys[i] ** (p ** (n - i)) for i in range(n)), poly_ring.zero)
        q = p ** n
        coeffs = dict(rest.terms())
        if any(int(c) % q for c in coeffs.values()):
            raise IntegralityViolation(name, n)
        polys.append(poly_ring.from_dict({m: int(c) // q for m, c in coeffs.items()}))
    return polys


@cached_computation("witt_table")
def witt_polynomials(p: int, r: int) -> WittPolynomialTable:
    """Universal polynomial table for W_r with prime p."""
    check_size(p, r)
    names = [f"X{i}" for i in range(r)] + [f"Y{i}" for i in range(r)]
    poly_ring, *gens = ring(",".join(names), ZZ)
    X, Y = gens[:r], gens[r:]
    wx = [_ghost_polynomial(X, n, p) for n in range(r)]
    wy = [_ghost_polynomial(Y, n, p) for n in range(r)]

    solved = {
        "add": _solve_family("add", [wx[n] + wy[n] for n in range(r)], p, poly_ring),
        "mul": _solve_family("mul", [wx[n] * wy[n] for n in range(r)], p, poly_ring),
        "neg": _solve_family("neg", [-wx[n] for n in range(r)], p, poly_ring),
        "F": _solve_family("F", [wx[n + 1] for n in range(r - 1)], p, poly_ring),
    }
    table = WittPolynomialTable(p, r)
    for name, polys in solved.items():
        table.families[name] = [[(tuple(m), int(c)) for m, c in sorted(poly.terms())] for poly in polys]
        table.printed[name] = [str(poly.as_expr()) for poly in polys]

    witt_logger.event("witt_table_built", p=p, r=r, mul_terms=table.term_count("mul"))
    logger.debug(f"Built Witt polynomial table p={p} r={r}")
    return table


def _evaluate(family: List[TermList], inputs: Sequence[RingElement], base: RingModel) -> Tuple[RingElement, ...]:
    """Evaluate each polynomial of a family at the given component list."""
    if base.is_scalar:
        return _evaluate_scalar(family, inputs, base)
    powers: Dict[Tuple[int, int], RingElement] = {}

    def power(k: int, e: int) -> RingElement:
        key = (k, e)
        if key not in powers:
            powers[key] = inputs[k] if e == 1 else power(k, e - 1) * inputs[k]
        return powers[key]

    out = []
    for poly in family:
        total = base.zero()
        for monom, coeff in poly:
            term: Optional[RingElement] = None
            for k, e in enumerate(monom):
                if e:
                    term = power(k, e) if term is None else term * power(k, e)
            total = total + (base.scalar(coeff) if term is None else term * coeff)
        # carry the inputs' precision even when the value is zero
        ledger = total.ledger
        for x in inputs:
            ledger = ledger.meet(x.ledger)
        out.append(total.with_ledger(ledger))
    return tuple(out)


def _evaluate_scalar(family: List[TermList], inputs: Sequence[RingElement], base: RingModel):
    modulus = base.coefficient_modulus(base.default_ledger())
    values = [x.constant() for x in inputs]
    out = []
    for poly in family:
        total = 0
        for monom, coeff in poly:
            term = coeff
            for k, e in enumerate(monom):
                if e:
                    term *= pow(values[k], e, modulus) if modulus else values[k] ** e
            total += term
        out.append(base.scalar(total))
    return tuple(out)


def _check_pair(x: WittVector, y: WittVector) -> None:
    if x.p != y.p or x.length != y.length or x.base != y.base:
        raise ModelMismatch(f"W_{x.length}({x.base}) p={x.p}", f"W_{y.length}({y.base}) p={y.p}")


def witt_arith(x: WittVector, y: WittVector, op: str) -> WittVector:
    """add, sub or mul of Witt vectors by universal polynomials."""
    _check_pair(x, y)
    if op not in ARITH_OPS:
        raise ValueError(f"unknown Witt operation {op}")
    if op == "sub":
        y, op = witt_neg(y), "add"
    table = witt_polynomials(x.p, x.length)
    comps = _evaluate(table.families[op], list(x.components) + list(y.components), x.base)
    return WittVector(x.p, x.base, comps)


def witt_neg(x: WittVector) -> WittVector:
    table = witt_polynomials(x.p, x.length)
    zeros = [x.base.zero()] * x.length
    return WittVector(x.p, x.base, _evaluate(table.families["neg"], list(x.components) + zeros, x.base))


def witt_operator(x: WittVector, op: str) -> WittVector:
    """Frobenius F, Verschiebung V or restriction R."""
    if op == "R":
        if x.length < 2:
            raise LengthUnderflow("R", x.length)
        return WittVector(x.p, x.base, x.components[:-1])
    if op == "V":
        return WittVector(x.p, x.base, (x.base.zero(),) + x.components)
    if op == "F":
        if x.length < 2:
            raise LengthUnderflow("F", x.length)
        table = witt_polynomials(x.p, x.length)
        zeros = [x.base.zero()] * x.length
        return WittVector(x.p, x.base, _evaluate(table.families["F"], list(x.components) + zeros, x.base))
    raise ValueError(f"unknown Witt operator {op}")


def teichmuller(a: RingElement, r: int, p: Optional[int] = None) -> WittVector:
    """Teichmüller representative (a, 0, ..., 0)."""
    p = p or a.model.p
    return WittVector(p, a.model, (a,) + tuple(a.model.zero() for _ in range(r - 1)))


def ghost(x: WittVector) -> GhostVector:
    """Ghost components of x."""
    p = x.p
    out = []
    for n in range(x.length):
        total = x.base.zero()
        for i in range(n + 1):
            total = total + x.components[i] ** (p ** (n - i)) * p ** i
        out.append(total)
    return GhostVector(tuple(out))


def unghost(w: GhostVector, p: int) -> WittVector:
    """Solve ghost equations; each step divides exactly by p^n."""
    if not w.components:
        raise ValueError("empty ghost vector")
    model = w.components[0].model
    xs: List[RingElement] = []
    for n, wn in enumerate(w.components):
        rest = wn
        for i in range(n):
            rest = rest - xs[i] ** (p ** (n - i)) * p ** i
        if n == 0:
            xs.append(rest)
            continue
        try:
            xs.append(divide_exact(rest, model.scalar(p ** n)))
        except NotDivisible as exc:
            raise NonWittGhost(n) from exc
    return WittVector(p, model, tuple(xs))


def witt_from_integer(c: int, p: int, r: int, base: RingModel) -> WittVector:
    """Image of the integer c in W_r(base)."""
    integers = RingModel.integers()
    over_z = unghost(GhostVector(tuple(integers.scalar(c) for _ in range(r))), p)
    return WittVector(p, base, tuple(base.scalar(x.constant()) for x in over_z.components))


def witt_scale(x: WittVector, c: int) -> WittVector:
    """c * x for an integer c."""
    return witt_arith(witt_from_integer(c, x.p, x.length, x.base), x, "mul")


def frobenius_char_p(x: WittVector) -> WittVector:
    """Componentwise p-th power followed by R; valid when p = 0 in the base."""
    if x.base.kind not in (RingKind.PRIME_FIELD, RingKind.TRUNC_POLY):
        raise ValueError("componentwise Frobenius needs a characteristic p base")
    if x.length < 2:
        raise LengthUnderflow("F", x.length)
    return WittVector(x.p, x.base, tuple(c ** x.p for c in x.components[:-1]))
