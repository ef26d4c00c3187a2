"""
Seeded random samplers for property checks.

Every sampler takes an explicit numpy Generator; sampled values are turned
into Python ints before they touch exact arithmetic.
"""

from fractions import Fraction
from typing import List, Optional

import numpy as np

from ..config import settings
from ..models.ainf import AinfElement, PerfectoidModel
from ..models.rings import Exponent, PrecisionLedger, RingElement, RingKind, RingModel
from ..models.witt import WittVector
from ..utils.expressions import Add, Call, Mul, Node, Num, Pow, Sym


def make_rng(seed: Optional[int] = None) -> np.random.Generator:
    """Generator for a seed, falling back to the configured default."""
    return np.random.default_rng(settings.default_seed if seed is None else seed)


def random_int(rng: np.random.Generator, low: int, high: int) -> int:
    """Uniform integer in [low, high)."""
    return int(rng.integers(low, high))


def random_padic(rng: np.random.Generator, p: int, digits: int) -> int:
    """Uniform residue modulo p^digits, built digit by digit."""
    return sum(random_int(rng, 0, p) * p ** i for i in range(digits))


def random_exponent(rng: np.random.Generator, p: int, depth: int, bound: int) -> Exponent:
    """Exponent in [0, bound) with denominator dividing p^depth."""
    scale = p ** depth
    return Exponent.of(p, random_int(rng, 0, bound * scale), depth)


def random_ring_element(model: RingModel, rng: np.random.Generator, terms: int = 3, bound: int = 3) -> RingElement:
    """Random element of any ring model."""
    p = model.p
    if model.kind == RingKind.INTEGERS:
        return model.scalar(random_int(rng, -50, 51))
    if model.kind == RingKind.INTEGERS_MOD_M:
        return model.scalar(random_int(rng, 0, model.m))
    if model.kind == RingKind.PRIME_FIELD:
        return model.scalar(random_int(rng, 0, p))
    raw = {}
    for _ in range(terms):
        depth = random_int(rng, 0, model.K + 1)
        e = random_exponent(rng, p, depth, bound)
        if model.kind == RingKind.TRUNC_POLY:
            if e >= model.M:
                continue
            raw[e] = random_int(rng, 0, p)
        elif model.kind == RingKind.WITT_SERIES:
            if e >= model.M:
                continue
            raw[e] = random_padic(rng, p, model.N)
        else:
            raw[e] = random_padic(rng, p, model.N)
    return model.element(raw)


def random_witt(p: int, r: int, base: RingModel, rng: np.random.Generator, terms: int = 2) -> WittVector:
    return WittVector(p, base, tuple(random_ring_element(base, rng, terms) for _ in range(r)))


def random_ainf(
    model: PerfectoidModel,
    rng: np.random.Generator,
    frobenius_reserve: int = 0,
    terms: int = 3,
    bound: int = 2,
) -> AinfElement:
    """Random A_inf element leaving the requested phi^-1 budget.

    Exponents have denominators dividing p^(K - reserve), so the element
    admits `frobenius_reserve` inverse Frobenius steps.
    """
    p = model.p
    reserve = min(frobenius_reserve, model.K)
    depth_cap = model.K - reserve
    raw = {}
    if model.is_fp:
        raw[Exponent.of(p, 0)] = random_padic(rng, p, model.N)
    else:
        for _ in range(terms):
            e = random_exponent(rng, p, random_int(rng, 0, depth_cap + 1), bound)
            raw[e] = raw.get(e, 0) + random_padic(rng, p, model.N)
    ledger = PrecisionLedger(model.N, model.K if model.is_fp else reserve, None)
    return model.element(raw, ledger)


def random_ainf_list(model: PerfectoidModel, rng: np.random.Generator, count: int, **kwargs) -> List[AinfElement]:
    return [random_ainf(model, rng, **kwargs) for _ in range(count)]


def random_tilt(model: PerfectoidModel, rng: np.random.Generator, terms: int = 2, bound: int = 2) -> RingElement:
    """Tilt element whose denominators stay within the root depth K."""
    p = model.p
    if model.is_fp:
        return model.tilt.scalar(random_int(rng, 0, p))
    raw = {}
    for _ in range(terms):
        e = random_exponent(rng, p, random_int(rng, 0, model.K + 1), bound)
        if e < model.M:
            raw[e] = random_int(rng, 0, p)
    return model.tilt.element(raw)


def _drw_function(rng: np.random.Generator, max_exponent: int, variables: int = 1) -> Node:
    """[x]^a, t(x^a) (or their two-variable versions) or an iterated V of one of them."""
    if variables == 1:
        a = Fraction(random_int(rng, 0, max_exponent + 1))
        node: Node = Pow(Sym("[x]"), a) if random_int(rng, 0, 2) else Call("t", Pow(Sym("x"), a))
    else:
        a = Fraction(random_int(rng, 0, max_exponent + 1))
        b = Fraction(random_int(rng, 0, max_exponent + 1))
        if random_int(rng, 0, 2):
            node = Mul(Pow(Sym("[x]"), a), Pow(Sym("[y]"), b))
        else:
            node = Call("t", Mul(Pow(Sym("x"), a), Pow(Sym("y"), b)))
    for _ in range(random_int(rng, 0, 3)):
        node = Call("V", node)
    return node


def random_drw_expression(
    rng: np.random.Generator, terms: int = 2, max_exponent: int = 3, forms: bool = True, variables: int = 1
) -> Node:
    """Random sum of c * f and, with forms, c * f * d(g) for functions f, g in one or two variables."""
    node: Optional[Node] = None
    for _ in range(random_int(rng, 1, terms + 1)):
        term: Node = Mul(Num(random_int(rng, 1, 4)), _drw_function(rng, max_exponent, variables))
        if forms and random_int(rng, 0, 2):
            term = Mul(term, Call("d", _drw_function(rng, max_exponent, variables)))
        node = term if node is None else Add(node, term)
    return node
