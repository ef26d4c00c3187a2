"""
r-Nygaard filtration engine.

Membership is x in N_r^{>=i} iff phi^r(x) is divisible by d~_r^i, where
d~_r = phi(d) phi^2(d) ... phi^r(d). The divided Frobenius is the exact
quotient phi_{r,i}(x) = phi^r(x) / d~_r^i.
"""

from abc import ABC, abstractmethod
from dataclasses import dataclass, field
from typing import Any, Callable, Dict, List, Optional, Tuple

import numpy as np

from ..core.exceptions import (
    ExpressionSyntaxError,
    NotDivisible,
    NotInFiltration,
    NotPerfectBase,
    PrecisionExhausted,
    UnsupportedWeight,
)
from ..core.logging import logger
from ..core.structured_logging import nygaard_logger
from ..models.ainf import AinfElement, PerfectoidKind, PerfectoidModel
from ..models.reports import IsoReport
from ..models.rings import RingElement, RingModel, divide_exact, reduce_modulo
from ..models.witt import WittVector
from ..utils.expressions import Num, Sym, fold, parse_expression, render
from . import ainf as ainf_service
from .sampling import random_ainf, random_ring_element, random_tilt
from .witt import teichmuller, witt_operator


class PrismModel(ABC):
    """A ring with Frobenius and a distinguished generator d."""

    p: int
    invertible: bool = True

    @abstractmethod
    def phi(self, x, k: int = 1):
        """phi^k(x)."""

    @abstractmethod
    def d(self):
        """The distinguished generator."""

    @abstractmethod
    def xi_r(self, r: int):
        """d_r^- = d phi^-1(d) ... phi^-(r-1)(d)."""

    @abstractmethod
    def d_tilde(self, r: int):
        """d~_r = phi(d) ... phi^r(d)."""

    @abstractmethod
    def phi_power_d(self, k: int):
        """phi^k(d)."""

    @abstractmethod
    def divide(self, a, b):
        """Exact quotient or NotDivisible."""

    @abstractmethod
    def reduce(self, a, b):
        """Normal form of a modulo (b)."""

    @abstractmethod
    def scalar(self, c: int):
        """Image of an integer."""

    @abstractmethod
    def sample(self, rng: np.random.Generator, frobenius_reserve: int = 0):
        """Random element."""

    @abstractmethod
    def parse(self, text: str):
        """Element from the expression language."""

    @abstractmethod
    def describe(self) -> Dict[str, Any]:
        """JSON description."""

    def one(self):
        return self.scalar(1)

    def precision(self) -> Optional[int]:
        """p-adic digits carried by the carrier ring."""
        return None

    def divides(self, b, a) -> bool:
        try:
            self.divide(a, b)
            return True
        except NotDivisible:
            return False


class AinfPrism(PrismModel):
    """(A_inf, ker theta) of a perfectoid model."""

    def __init__(self, model: PerfectoidModel):
        self.model = model
        self.p = model.p

    def phi(self, x: AinfElement, k: int = 1) -> AinfElement:
        return ainf_service.frobenius_phi(x, k)

    def d(self) -> AinfElement:
        return ainf_service.xi(self.model)

    def xi_r(self, r: int) -> AinfElement:
        return ainf_service.xi_r(self.model, r)

    def d_tilde(self, r: int) -> AinfElement:
        return ainf_service.xi_tilde_r(self.model, r)

    def phi_power_d(self, k: int) -> AinfElement:
        return ainf_service.phi_power_xi(self.model, k)

    def divide(self, a: AinfElement, b: AinfElement) -> AinfElement:
        return AinfElement(self.model, divide_exact(a.series, b.series))

    def reduce(self, a: AinfElement, b: AinfElement) -> AinfElement:
        return AinfElement(self.model, reduce_modulo(a.series, b.series))

    def scalar(self, c: int) -> AinfElement:
        return self.model.scalar(c)

    def sample(self, rng: np.random.Generator, frobenius_reserve: int = 0) -> AinfElement:
        return random_ainf(self.model, rng, frobenius_reserve=frobenius_reserve)

    def parse(self, text: str) -> AinfElement:
        return ainf_service.parse_element(text, self.model)

    def describe(self) -> Dict[str, Any]:
        return {"prism": "A_inf", "model": self.model.to_json(), "d": str(self.d())}

    def precision(self) -> Optional[int]:
        return self.model.N


class ScalarPrism(PrismModel):
    """(Z_p, (p)) with the identity Frobenius, on PMonoidAlg(p, N, 0)."""

    def __init__(self, p: int, N: int):
        self.p = p
        self.N = N
        self.ring = RingModel.pmonoid_alg(p, N, 0)

    def phi(self, x: RingElement, k: int = 1) -> RingElement:
        return x

    def d(self) -> RingElement:
        return self.ring.scalar(self.p)

    def xi_r(self, r: int) -> RingElement:
        return self.ring.scalar(self.p ** r)

    def d_tilde(self, r: int) -> RingElement:
        return self.ring.scalar(self.p ** r)

    def phi_power_d(self, k: int) -> RingElement:
        return self.d()

    def divide(self, a: RingElement, b: RingElement) -> RingElement:
        return divide_exact(a, b)

    def reduce(self, a: RingElement, b: RingElement) -> RingElement:
        return reduce_modulo(a, b)

    def scalar(self, c: int) -> RingElement:
        return self.ring.scalar(c)

    def sample(self, rng: np.random.Generator, frobenius_reserve: int = 0) -> RingElement:
        return random_ring_element(self.ring, rng, terms=1)

    def parse(self, text: str) -> RingElement:
        """Integers and p only; the base has no other named elements."""

        def leaf(node):
            if isinstance(node, Num):
                return self.ring.scalar(node.value)
            if isinstance(node, Sym) and node.name == "p":
                return self.ring.scalar(self.p)
            raise ExpressionSyntaxError(text, 0, f"unknown symbol in Z_p: {render(node)}")

        return fold(parse_expression(text), leaf, text=text)

    def describe(self) -> Dict[str, Any]:
        return {"prism": "Z_p", "model": self.ring.to_json(), "d": str(self.d())}

    def precision(self) -> Optional[int]:
        return self.N


def _agree(a, b) -> bool:
    return a.agrees_with(b)


# Membership and divided Frobenius

def _filtration_divisor(prism: PrismModel, i: int, r: int):
    """d~_r^i; PrecisionExhausted when it vanishes at the working precision."""
    divisor = prism.d_tilde(r) ** i
    if divisor.is_zero():
        raise PrecisionExhausted("n", f"d~_{r}^{i} != 0", prism.precision())
    return divisor


def nygaard_member(prism: PrismModel, x, i: int, r: int) -> bool:
    """x in N_r^{>=i}: phi^r(x) divisible by d~_r^i; every x for i <= 0."""
    if r < 1:
        raise ValueError("level must be at least 1")
    if i <= 0:
        return True
    return prism.divides(_filtration_divisor(prism, i, r), prism.phi(x, r))


def divided_frobenius(prism: PrismModel, x, i: int, r: int):
    """phi_{r,i}(x) = phi^r(x) / d~_r^i, re-checked against phi^r(x)."""
    image = prism.phi(x, r)
    if i < 0:
        return image * prism.d_tilde(r) ** (-i)
    divisor = _filtration_divisor(prism, i, r)
    try:
        quotient = prism.divide(image, divisor)
    except NotDivisible as exc:
        raise NotInFiltration(i, r, x) from exc
    if not _agree(divisor * quotient, image):
        raise ArithmeticError("divided Frobenius identity failed")
    nygaard_logger.debug("divided_frobenius", i=i, r=r)
    return quotient


@dataclass
class NygaardTuple:
    """(x_1, ..., x_r) with x_{k+1} = phi(x_k) / d~_1^i."""

    r: int
    i: int
    coordinates: List[Any]

    def to_json(self) -> Dict[str, Any]:
        return {"r": self.r, "i": self.i, "coordinates": [str(x) for x in self.coordinates]}


def nygaard_tuple(prism: PrismModel, x, i: int, r: int) -> NygaardTuple:
    """Iterated-pullback coordinates of a filtration member."""
    if not nygaard_member(prism, x, i, r):
        raise NotInFiltration(i, r, x)
    coords = [x]
    for _ in range(r - 1):
        coords.append(divided_frobenius(prism, coords[-1], i, 1))
    for c in coords:
        if not nygaard_member(prism, c, i, 1):
            raise NotInFiltration(i, 1, c)
    return NygaardTuple(r, i, coords)


# Graded pieces and Hodge-Tate classes

@dataclass
class GrPiece:
    """N_r^i = xi_r^i A / xi_r^(i+1) A as a cyclic A/xi_r-module."""

    prism: PrismModel
    i: int
    r: int

    @property
    def is_zero(self) -> bool:
        return self.i < 0

    @property
    def generator(self):
        return self.prism.xi_r(self.r) ** max(self.i, 0)

    @property
    def annihilator(self):
        return self.prism.xi_r(self.r)

    def reduce(self, y):
        """Coordinate of y on the generator, in normal form modulo xi_r."""
        if self.is_zero:
            return self.prism.scalar(0)
        try:
            q = self.prism.divide(y, self.generator)
        except NotDivisible as exc:
            raise NotInFiltration(self.i, self.r, y) from exc
        return self.prism.reduce(q, self.annihilator)

    def to_json(self) -> Dict[str, Any]:
        data = {
            "i": self.i,
            "r": self.r,
            "twist": self.i,
            "zero": self.is_zero,
            "generator": "0" if self.is_zero else f"xi_{self.r}^{self.i}",
            "generator_value": str(self.generator),
            "annihilator": str(self.annihilator),
        }
        if isinstance(self.prism, AinfPrism) and self.prism.model.is_fp:
            data["annihilator_order"] = str(self.prism.p ** self.r)
        return data


def gr_piece(prism: PrismModel, i: int, r: int) -> GrPiece:
    return GrPiece(prism, i, r)


@dataclass
class HodgeTateClass:
    """Class of an element in A / d~_r."""

    prism: PrismModel
    r: int
    representative: Any

    def _wrap(self, value) -> "HodgeTateClass":
        return hodge_tate_r(self.prism, value, self.r)

    def __add__(self, other: "HodgeTateClass"):
        return self._wrap(self.representative + other.representative)

    def __sub__(self, other: "HodgeTateClass"):
        return self._wrap(self.representative - other.representative)

    def __mul__(self, other: "HodgeTateClass"):
        return self._wrap(self.representative * other.representative)

    def is_zero(self) -> bool:
        return self.representative.is_zero()

    def __eq__(self, other):
        if not isinstance(other, HodgeTateClass):
            return NotImplemented
        return self.r == other.r and _agree(self.representative, other.representative)

    def __str__(self):
        return f"[{self.representative}] mod d~_{self.r}"


def hodge_tate_r(prism: PrismModel, x, r: int) -> HodgeTateClass:
    """Normal form of x modulo d~_r."""
    return HodgeTateClass(prism, r, prism.reduce(x, prism.d_tilde(r)))


# gr^0 and W_r

def _require_perfect(prism: PrismModel) -> AinfPrism:
    if not isinstance(prism, AinfPrism) or prism.model.kind != PerfectoidKind.CHAR_P:
        model = prism.model if isinstance(prism, AinfPrism) else prism.describe()["model"]
        raise NotPerfectBase(model)
    return prism


GR0_FORMULA = "sum_i p^i [y_i] mod p^r  ->  (y_0, y_1^p, ..., y_{r-1}^(p^(r-1)))"


def gr0_witt_iso(prism: PrismModel, r: int, rng: np.random.Generator, samples: int = 10) -> IsoReport:
    """A/xi_r = W(R)/p^r -> W_r(R) through theta_r, checked on samples."""
    prism = _require_perfect(prism)
    model = prism.model
    p = model.p
    report = IsoReport("gr0_witt_iso", details={"r": r, "formula": GR0_FORMULA, "model": model.to_json()})
    xi_r = prism.xi_r(r)
    for _ in range(samples):
        x, y = prism.sample(rng), prism.sample(rng)
        tx, ty = ainf_service.theta_r(x, r), ainf_service.theta_r(y, r)
        report.record("additive", ainf_service.theta_r(x + y, r).agrees_with(tx + ty), x)
        report.record("multiplicative", ainf_service.theta_r(x * y, r).agrees_with(tx * ty), x)
        report.record("kills_xi_r", ainf_service.theta_r(xi_r * y, r).is_zero(), y)
        back = ainf_service.from_witt(tx, model)
        report.record("injective", prism.reduce(x - back, xi_r).is_zero(), x)
        w = WittVector(p, model.tilt, tuple(random_tilt(model, rng) for _ in range(r)))
        report.record("surjective", ainf_service.theta_r(ainf_service.from_witt(w, model), r).agrees_with(w), w)
        a = random_tilt(model, rng)
        lift = ainf_service.teichmuller_expansion(a, model)
        report.record("teichmuller", ainf_service.theta_r(lift, r).agrees_with(teichmuller(a, r, p)), a)
    if model.is_fp:
        images = {str(ainf_service.theta_r(model.scalar(c), r)) for c in range(p ** r)}
        report.details["enumerated"] = p ** r
        report.record("bijective_on_constants", len(images) == p ** r)
    report.record("p_equals_VF", _p_is_vf(model, r, rng))
    nygaard_logger.event("gr0_checked", r=r, passed=report.passed)
    return report


def _p_is_vf(model: PerfectoidModel, r: int, rng: np.random.Generator) -> bool:
    """p * x = V(F x) in W_{r}(R) for a perfect base, on one sample."""
    if r < 2:
        return True
    from .witt import witt_scale

    w = WittVector(model.p, model.tilt, tuple(random_tilt(model, rng) for _ in range(r)))
    vf = witt_operator(witt_operator(w, "F"), "V")
    return witt_scale(w, model.p).agrees_with(vf)


# Res, F, V between levels

FILTRATION_MAPS = ("Res", "F", "V")


def filtration_maps(prism: PrismModel, x, i: int, r: int, which: str):
    """Res and F from level r+1 to r; V from level r to r+1 (weight 0 only)."""
    if which == "V":
        if i != 0:
            raise UnsupportedWeight("V", i)
        perfect = _require_perfect(prism)
        shifted = witt_operator(ainf_service.theta_r(x, r), "V")
        return ainf_service.from_witt(shifted, perfect.model)
    if which not in ("Res", "F"):
        raise ValueError(f"unknown filtration map {which}")
    if not nygaard_member(prism, x, i, r + 1):
        raise NotInFiltration(i, r + 1, x)
    if which == "Res":
        if not nygaard_member(prism, x, i, r):
            raise ArithmeticError("restriction left the filtration")
        return x
    image = prism.phi(x, 1)
    if prism.invertible and i > 0:
        target = (prism.phi_power_d(1) * prism.xi_r(r)) ** i
        if not prism.divides(target, image):
            raise ArithmeticError("Frobenius image is not in (phi(d) xi_r)^i")
    if not nygaard_member(prism, image, i, r):
        raise ArithmeticError("Frobenius image left the filtration")
    return image


# Identities around the pullback definition

def pullback_step(prism: PrismModel, x, i: int, r: int) -> Dict[str, bool]:
    """x in N_{r+1} iff x in N_r and phi_{r,i}(x) in N_1, both sides computed."""
    lhs = nygaard_member(prism, x, i, r + 1)
    level_r = nygaard_member(prism, x, i, r)
    divided = level_r and nygaard_member(prism, divided_frobenius(prism, x, i, r), i, 1)
    return {"level_r_plus_1": lhs, "level_r": level_r, "divided_in_level_1": bool(divided), "agree": lhs == divided}


def frobenius_compatibility(prism: PrismModel, x, i: int, r: int) -> bool:
    """phi_{r,i}(phi x) = phi^{r+1}(d)^i phi_{r+1,i}(x) for x in N_{r+1}^{>=i}."""
    lhs = divided_frobenius(prism, prism.phi(x, 1), i, r)
    rhs = prism.phi_power_d(r + 1) ** max(i, 0) * divided_frobenius(prism, x, i, r + 1)
    return _agree(lhs, rhs)


def exponent_comparison(prism: PrismModel, x, i: int, r: int) -> Dict[str, Any]:
    """Membership with phi^r against phi^(ri); both verdicts are reported."""
    with_r = nygaard_member(prism, x, i, r)
    if i <= 0:
        with_ri = True
    else:
        with_ri = prism.divides(_filtration_divisor(prism, i, r), prism.phi(x, r * i))
    if with_r != with_ri:
        logger.info(f"Membership exponents disagree at i={i}, r={r}")
    return {"phi_r": with_r, "phi_ri": with_ri, "consistent": with_r == with_ri, "i": i, "r": r}


def graded_frobenius_check(prism: PrismModel, x, y, i: int, r: int) -> bool:
    """x = y mod N_r^{>=i+1} implies equal Hodge-Tate classes of phi_{r,i}."""
    if not nygaard_member(prism, x - y, i + 1, r):
        raise NotInFiltration(i + 1, r, x - y)
    hx = hodge_tate_r(prism, divided_frobenius(prism, x, i, r), r)
    hy = hodge_tate_r(prism, divided_frobenius(prism, y, i, r), r)
    return hx == hy


def certify_distinguished(prism: PrismModel, rng: np.random.Generator, witnesses: int = 5, levels: int = 3) -> bool:
    """d is a non-zero-divisor on witnesses and d~_{r+1} = d~_r phi^{r+1}(d)."""
    d = prism.d()
    for _ in range(witnesses):
        y = prism.sample(rng)
        if not _agree(prism.divide(d * y, d), y):
            return False
    return all(
        _agree(prism.d_tilde(r + 1), prism.d_tilde(r) * prism.phi_power_d(r + 1)) for r in range(levels)
    )
