"""
A_inf service: Teichmüller expansions, the Frobenius, distinguished elements
and the Fontaine maps theta_r, theta~_r with their commutative squares.
"""

from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional

import numpy as np

from ..core.cache import cached_computation
from ..core.exceptions import CapExceeded, ExpressionSyntaxError, NotDivisible, PrecisionExhausted, UnsupportedModel
from ..core.logging import logger
from ..core.structured_logging import ainf_logger
from ..models.ainf import AinfElement, PerfectoidKind, PerfectoidModel
from ..models.rings import Exponent, PrecisionLedger, RingElement, RingModel, divide_exact
from ..models.witt import GhostVector, WittVector
from ..utils.expressions import Num, Pow, Sym, fold, parse_expression
from .witt import unghost, witt_operator


# Teichmüller expansions

def _teichmuller_terms(terms: Dict[Exponent, int], p: int, precision: int, target: RingModel) -> RingElement:
    """[a] mod p^precision for a tilt element a given by its terms."""
    ledger = PrecisionLedger(precision, None, None)
    if not terms:
        return target.element({}, ledger)
    if len(terms) == 1:
        (e, c), = terms.items()
        return target.element({e: pow(c, p ** (precision - 1), p ** precision)}, ledger)
    # lift of a^(1/p^(m-1)) raised back to p^(m-1)
    lifted = target.element({e.scale(-(precision - 1)): c for e, c in terms.items()}, ledger)
    for _ in range(precision - 1):
        lifted = lifted ** p
    return lifted


def teichmuller_expansion(a: RingElement, model: PerfectoidModel) -> AinfElement:
    """The Teichmüller lift [a] of a tilt element."""
    raw = _teichmuller_terms({e: c % model.p for e, c in a.terms}, model.p, model.N, model.scratch)
    return model.element(raw.as_dict(), PrecisionLedger(model.N, _budget(model, a.terms), None))


def _budget(model: PerfectoidModel, terms) -> int:
    depth = max((e.val for e, _ in terms), default=0)
    return max(model.K - depth, 0)


def from_witt(w: WittVector, model: PerfectoidModel) -> AinfElement:
    """sum_i V^i [x_i] = sum_i p^i [x_i^(1/p^i)]."""
    length = w.length
    scratch = model.scratch
    full = PrecisionLedger(length, None, None)
    total = scratch.element({}, full)
    depth = 0
    for i, x in enumerate(w.components):
        if x.is_zero():
            continue
        depth = max(depth, max(e.val for e, _ in x.terms))
        root = {e.scale(-i): c for e, c in x.terms}
        # [root] is only needed mod p^(length - i); p^i carries it back to mod p^length
        lift = _teichmuller_terms(root, model.p, length - i, scratch)
        total = total + scratch.element({e: c * model.p ** i for e, c in lift.terms}, full)
    ledger = PrecisionLedger(length, max(model.K - depth, 0), None)
    return model.element(total.as_dict(), ledger)


def peel_digits(x: AinfElement, count: Optional[int] = None) -> List[Dict[Exponent, int]]:
    """Tilt digits y_i with x = sum_i p^i [y_i]."""
    model = x.model
    p = model.p
    precision = x.ledger.n if x.ledger.n is not None else model.N
    count = precision if count is None else count
    if count > precision:
        raise PrecisionExhausted("n", count, precision)
    scratch = model.scratch
    current = scratch.element(x.series.as_dict(), PrecisionLedger(precision, None, None))
    digits = []
    for i in range(count):
        digit = {e: c % p for e, c in current.terms if c % p}
        digits.append(digit)
        if i == count - 1:
            break
        lift = _teichmuller_terms(digit, p, precision - i, scratch)
        current = divide_exact(current - lift, scratch.scalar(p))
    return digits


def to_witt(x: AinfElement, length: Optional[int] = None) -> WittVector:
    """Witt coordinates x_i = y_i^(p^i) over the tilt."""
    model = x.model
    tilt = model.tilt
    digits = peel_digits(x, length)
    comps = tuple(tilt.element({e.scale(i): c for e, c in digit.items()}) for i, digit in enumerate(digits))
    return WittVector(model.p, tilt, comps)


# Frobenius

def frobenius_phi(x: AinfElement, k: int) -> AinfElement:
    """phi^k on A_inf; negative k spends the Frobenius inverse budget."""
    if k == 0 or all(e == 0 for e, _ in x.series.terms):
        return x
    model = x.model
    budget = model.K if x.ledger.k is None else x.ledger.k
    if k > 0:
        new_budget = min(model.K, budget + k)
    else:
        if budget < -k:
            raise PrecisionExhausted("k", -k, budget)
        new_budget = budget + k
    ledger = PrecisionLedger(x.ledger.n, new_budget, None)
    try:
        series = model.series.element({e.scale(k): c for e, c in x.series.terms}, ledger)
    except CapExceeded as exc:
        if k < 0:
            raise PrecisionExhausted("k", -k, budget) from exc
        raise
    return AinfElement(model, series)


# Distinguished elements

def _with_depth(model: PerfectoidModel, element: AinfElement, depth: int) -> AinfElement:
    if depth > model.K:
        raise PrecisionExhausted("k", depth, model.K)
    return element.with_budget(model.K - depth)


@cached_computation("ainf_xi")
def xi(model: PerfectoidModel) -> AinfElement:
    """Generator of ker(theta): p in characteristic p, [t] - p in mixed characteristic."""
    if model.kind == PerfectoidKind.CHAR_P:
        return model.scalar(model.p)
    return model.teich_t(1) - model.p


@cached_computation("ainf_xi_r")
def xi_r(model: PerfectoidModel, r: int) -> AinfElement:
    """xi_r = xi * phi^-1(xi) * ... * phi^-(r-1)(xi)."""
    if r < 0:
        raise ValueError("level must be non-negative")
    if model.kind == PerfectoidKind.CHAR_P:
        return model.scalar(model.p ** r)
    result = model.one()
    for j in range(r):
        result = result * (model.teich_t(Exponent.of(model.p, 1, j)) - model.p)
    out = _with_depth(model, result, max(r - 1, 0))
    ainf_logger.event("xi_r_built", model=str(model), r=r, terms=len(out.series.terms))
    return out


@cached_computation("ainf_xi_tilde_r")
def xi_tilde_r(model: PerfectoidModel, r: int) -> AinfElement:
    """xi~_r = phi^r(xi_r) = phi(xi) * ... * phi^r(xi)."""
    if model.kind == PerfectoidKind.CHAR_P:
        return model.scalar(model.p ** r)
    result = model.one()
    for k in range(1, r + 1):
        result = result * (model.teich_t(model.p ** k) - model.p)
    return result


def phi_power_xi(model: PerfectoidModel, k: int) -> AinfElement:
    """phi^k(xi) for any integer k."""
    if model.kind == PerfectoidKind.CHAR_P:
        return model.scalar(model.p)
    e = Exponent.of(model.p, 1).scale(k)
    element = model.teich_t(e) - model.p
    return _with_depth(model, element, max(-k, 0)) if k < 0 else element


# Fontaine maps

def tilt_sharp(model: PerfectoidModel, e: Any) -> RingElement:
    """t^e -> p^e in O."""
    if model.kind != PerfectoidKind.MIXED:
        raise UnsupportedModel("tilt_sharp", model)
    if not isinstance(e, Exponent):
        e = Exponent.parse(model.p, str(e))
    if e.val > model.root_cap:
        raise PrecisionExhausted("k", e.val, model.root_cap)
    return model.residue_ring.element({e: 1})


def sharp(a: RingElement, model: PerfectoidModel) -> RingElement:
    """Multiplicative lift a -> a^sharp = theta([a])."""
    return theta(teichmuller_expansion(a, model))


def theta_phi(x: AinfElement, k: int) -> RingElement:
    """theta(phi^k(x)) for k >= 0, computed without forming phi^k(x)."""
    model = x.model
    p = model.p
    n = x.ledger.n if x.ledger.n is not None else model.N
    if model.kind == PerfectoidKind.CHAR_P:
        digit = {e.scale(k): c % p for e, c in x.series.terms if c % p}
        return model.tilt.element(digit)
    ring = model.residue_ring
    # terms with exponent >= n vanish modulo p^n
    terms = {}
    for e, c in x.series.terms:
        scaled = e.scale(k)
        if scaled < n:
            terms[scaled] = c
    return ring.element(terms, PrecisionLedger(n, model.root_cap, None))


def theta(x: AinfElement) -> RingElement:
    """Fontaine's theta: A_inf -> O."""
    return theta_phi(x, 0)


def theta_r(x: AinfElement, r: int) -> WittVector:
    """theta_r: A_inf -> W_r(O), characterized by ghost_k = theta(phi^k x)."""
    model = x.model
    if r == 0:
        return WittVector(model.p, model.residue_ring, ())
    precision = x.ledger.n if x.ledger.n is not None else model.N
    if r > precision:
        raise PrecisionExhausted("n", r, precision)
    if model.kind == PerfectoidKind.CHAR_P:
        return to_witt(x, r)
    ghosts = GhostVector(tuple(theta_phi(x, k) for k in range(r)))
    return unghost(ghosts, model.p)


def theta_tilde_r(x: AinfElement, r: int) -> WittVector:
    """theta~_r = theta_r o phi^-r."""
    return theta_r(frobenius_phi(x, -r), r)


# Diagram checks

SQUARES = ("R_theta", "F_theta", "R_theta_tilde", "F_theta_tilde")


@dataclass
class DiagramReport:
    """Outcome of the four commutative squares on sampled elements."""

    model: PerfectoidModel
    r: int
    samples: int
    checked: Dict[str, int] = field(default_factory=lambda: {name: 0 for name in SQUARES})
    failures: Dict[str, List[str]] = field(default_factory=lambda: {name: [] for name in SQUARES})

    @property
    def passed(self) -> bool:
        return not any(self.failures.values())

    def to_json(self) -> Dict[str, Any]:
        return {
            "model": self.model.to_json(),
            "r": self.r,
            "samples": self.samples,
            "passed": self.passed,
            "squares": {
                name: {"checked": self.checked[name], "failures": self.failures[name]} for name in SQUARES
            },
        }


def check_squares(x: AinfElement, r: int, report: DiagramReport) -> None:
    """Check the four squares at level r on one element."""
    outcomes = {
        "R_theta": lambda: witt_operator(theta_r(x, r + 1), "R").agrees_with(theta_r(x, r)),
        "F_theta": lambda: witt_operator(theta_r(x, r + 1), "F").agrees_with(theta_r(frobenius_phi(x, 1), r)),
        "R_theta_tilde": lambda: witt_operator(theta_tilde_r(x, r + 1), "R").agrees_with(
            theta_tilde_r(frobenius_phi(x, -1), r)
        ),
        "F_theta_tilde": lambda: witt_operator(theta_tilde_r(x, r + 1), "F").agrees_with(theta_tilde_r(x, r)),
    }
    for name in SQUARES:
        report.checked[name] += 1
        if not outcomes[name]():
            report.failures[name].append(str(x))


def check_fontaine_diagrams(
    model: PerfectoidModel, r: int, samples: int, rng: np.random.Generator, extra: Optional[List[AinfElement]] = None
) -> DiagramReport:
    """Verify R/F compatibility of theta_r and theta~_r on random elements."""
    from .sampling import random_ainf

    if r + 1 > model.N:
        raise PrecisionExhausted("n", r + 1, model.N)
    # theta~_{r+1} needs r + 1 inverse Frobenius steps on every sample
    if not model.is_fp and r + 1 > model.K:
        raise PrecisionExhausted("k", r + 1, model.K)
    report = DiagramReport(model, r, samples)
    elements = list(extra or [])
    elements += [random_ainf(model, rng, frobenius_reserve=r + 1) for _ in range(samples)]
    for x in elements:
        check_squares(x, r, report)

    ainf_logger.event("diagram_checked", model=str(model), r=r, samples=len(elements), passed=report.passed)
    if not report.passed:
        logger.warning(f"Fontaine diagram failures at r={r} for {model}")
    return report


def kernel_check(x: AinfElement, r: int) -> bool:
    """In characteristic p, theta_r(x) = 0 exactly when xi_r divides x."""
    if x.model.kind != PerfectoidKind.CHAR_P:
        raise UnsupportedModel("kernel_check", x.model)
    vanishes = theta_r(x, r).is_zero()
    try:
        divide_exact(x.series, xi_r(x.model, r).series)
        divisible = True
    except NotDivisible:
        divisible = False
    return vanishes == divisible


# Element input

def parse_element(text: str, model: PerfectoidModel) -> AinfElement:
    """Evaluate the element language: integers, p, t, t^(a/b), xi, xi_r, xit_r and phi(...)."""

    def leaf(node):
        if isinstance(node, Num):
            return model.scalar(node.value)
        if isinstance(node, Pow):
            if node.base != Sym("t"):
                raise ExpressionSyntaxError(text, 0, "only t takes fractional or negative exponents")
            e = node.exponent
            try:
                return model.teich_t(Exponent.parse(model.p, f"{e.numerator}/{e.denominator}"))
            except ValueError as exc:
                raise ExpressionSyntaxError(text, 0, str(exc)) from exc
        name = node.name
        if name == "p":
            return model.scalar(model.p)
        if name == "t":
            return model.teich_t(1)
        if name == "xi":
            return xi(model)
        for prefix, family in (("xi_", xi_r), ("xit_", xi_tilde_r)):
            if name.startswith(prefix) and name[len(prefix):].isdigit():
                return family(model, int(name[len(prefix):]))
        raise ExpressionSyntaxError(text, 0, f"unknown symbol {name}")

    def call(name, value):
        if name == "phi":
            return frobenius_phi(value, 1)
        raise ExpressionSyntaxError(text, 0, f"function {name} is not available for A_inf elements")

    return fold(parse_expression(text), leaf, call, text)
