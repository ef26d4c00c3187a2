"""
Exact coefficient rings.

Elements are immutable sparse maps from exponents to integer coefficients,
kept in normal form, together with a precision ledger recording how many
p-adic digits, Frobenius inverses and t-degrees of headroom remain.
"""

from dataclasses import dataclass, replace
from enum import Enum
from fractions import Fraction
from functools import total_ordering
from math import gcd
from typing import Any, Dict, Iterable, Mapping, Optional, Tuple, Union

from ..core.exceptions import (
    CapExceeded,
    ConfigError,
    ModelMismatch,
    NotDivisible,
    NotNonZeroDivisor,
    PrecisionExhausted,
)


def is_prime(n: int) -> bool:
    """Trial division primality test for small moduli."""
    if n < 2:
        return False
    f = 2
    while f * f <= n:
        if n % f == 0:
            return False
        f += 1
    return True


def p_valuation(c: int, p: int) -> int:
    """p-adic valuation of a nonzero integer."""
    if c == 0:
        raise ValueError("valuation of zero")
    v = 0
    while c % p == 0:
        c //= p
        v += 1
    return v


@total_ordering
@dataclass(frozen=True)
class Exponent:
    """Exact exponent num / p^val with p not dividing num unless val = 0."""

    num: int
    val: int
    p: int

    @classmethod
    def of(cls, p: int, num: int, val: int = 0) -> "Exponent":
        if num == 0:
            return cls(0, 0, p)
        if val < 0:
            return cls(num * p ** (-val), 0, p)
        while val > 0 and num % p == 0:
            num //= p
            val -= 1
        return cls(num, val, p)

    @classmethod
    def parse(cls, p: int, text: str) -> "Exponent":
        """Parse 'num/p^k', 'num/d' or an integer."""
        text = text.strip()
        if "/p^" in text:
            num, val = text.split("/p^")
            return cls.of(p, int(num), int(val))
        value = Fraction(text)
        den, val = value.denominator, 0
        while den % p == 0:
            den //= p
            val += 1
        if den != 1:
            raise ValueError(f"exponent {text} has a denominator prime to p={p}")
        return cls.of(p, value.numerator, val)

    @property
    def value(self) -> Fraction:
        return Fraction(self.num, self.p ** self.val)

    def _coerce(self, other: Union["Exponent", int]) -> "Exponent":
        if isinstance(other, Exponent):
            if other.p != self.p:
                raise ValueError("exponents over different primes")
            return other
        return Exponent.of(self.p, int(other))

    def __lt__(self, other):
        o = self._coerce(other)
        return self.num * self.p ** o.val < o.num * self.p ** self.val

    def __eq__(self, other):
        if isinstance(other, int):
            return self.val == 0 and self.num == other
        if not isinstance(other, Exponent):
            return NotImplemented
        return (self.num, self.val, self.p) == (other.num, other.val, other.p)

    def __hash__(self):
        return hash((self.num, self.val, self.p))

    def __add__(self, other):
        o = self._coerce(other)
        v = max(self.val, o.val)
        return Exponent.of(self.p, self.num * self.p ** (v - self.val) + o.num * self.p ** (v - o.val), v)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        return self + Exponent(-o.num, o.val, o.p)

    def __mul__(self, k: int):
        return Exponent.of(self.p, self.num * k, self.val)

    __rmul__ = __mul__

    def scale(self, k: int) -> "Exponent":
        """Multiply by p^k (k may be negative)."""
        return Exponent.of(self.p, self.num, self.val - k)

    def floor(self) -> int:
        return self.num // self.p ** self.val

    def ceil(self) -> int:
        return -((-self.num) // self.p ** self.val)

    def is_integral(self) -> bool:
        return self.val == 0

    def __str__(self):
        return f"{self.num}/p^{self.val}"

    def pretty(self) -> str:
        if self.val == 0:
            return str(self.num)
        return f"({self.num}/{self.p ** self.val})"


class RingKind(Enum):
    """Supported coefficient ring models."""

    INTEGERS = "Integers"
    INTEGERS_MOD_M = "IntegersModM"
    PRIME_FIELD = "PrimeField"
    TRUNC_POLY = "TruncPoly"
    PMONOID_ALG = "PMonoidAlg"
    WITT_SERIES = "WittSeries"


SCALAR_KINDS = (RingKind.INTEGERS, RingKind.INTEGERS_MOD_M, RingKind.PRIME_FIELD)


@dataclass(frozen=True)
class PrecisionLedger:
    """Remaining p-adic digits n, Frobenius inverse budget k and t-headroom m.

    None means unbounded.
    """

    n: Optional[int] = None
    k: Optional[int] = None
    m: Optional[Exponent] = None

    def meet(self, other: "PrecisionLedger") -> "PrecisionLedger":
        """Componentwise minimum."""
        return PrecisionLedger(_min(self.n, other.n), _min(self.k, other.k), _min(self.m, other.m))

    def to_json(self) -> Dict[str, Any]:
        return {"n": self.n, "k": self.k, "m": None if self.m is None else str(self.m)}


def _min(a, b):
    if a is None:
        return b
    if b is None:
        return a
    return a if a <= b else b


@dataclass(frozen=True)
class RingModel:
    """A coefficient ring model with its caps."""

    kind: RingKind
    p: Optional[int] = None
    m: Optional[int] = None
    N: Optional[int] = None
    K: Optional[int] = None
    M: Optional[int] = None

    def __post_init__(self):
        if self.kind == RingKind.INTEGERS_MOD_M:
            if self.m is None or self.m < 2:
                raise ConfigError(f"IntegersModM needs modulus >= 2, got {self.m}", key="m")
        if self.kind not in (RingKind.INTEGERS, RingKind.INTEGERS_MOD_M):
            if self.p is None or not is_prime(self.p):
                raise ConfigError(f"{self.kind.value} needs a prime p, got {self.p}", key="p")
        if self.kind in (RingKind.PMONOID_ALG, RingKind.WITT_SERIES) and (self.N is None or self.N < 1):
            raise ConfigError(f"{self.kind.value} needs precision N >= 1", key="N")
        if self.kind in (RingKind.TRUNC_POLY, RingKind.WITT_SERIES) and (self.M is None or self.M < 1):
            raise ConfigError(f"{self.kind.value} needs exponent cap M >= 1", key="M")
        if self.kind in (RingKind.TRUNC_POLY, RingKind.PMONOID_ALG, RingKind.WITT_SERIES):
            if self.K is None or self.K < 0:
                raise ConfigError(f"{self.kind.value} needs denominator cap K >= 0", key="K")

    # Constructors

    @classmethod
    def integers(cls) -> "RingModel":
        return cls(RingKind.INTEGERS)

    @classmethod
    def integers_mod(cls, m: int) -> "RingModel":
        p = None
        for q in range(2, m + 1):
            if m % q == 0:
                p = q
                break
        return cls(RingKind.INTEGERS_MOD_M, p=p if p is not None and _is_prime_power(m, p) else None, m=m)

    @classmethod
    def prime_field(cls, p: int) -> "RingModel":
        return cls(RingKind.PRIME_FIELD, p=p)

    @classmethod
    def trunc_poly(cls, p: int, K: int, M: int) -> "RingModel":
        return cls(RingKind.TRUNC_POLY, p=p, K=K, M=M)

    @classmethod
    def pmonoid_alg(cls, p: int, N: int, K: int) -> "RingModel":
        return cls(RingKind.PMONOID_ALG, p=p, N=N, K=K)

    @classmethod
    def witt_series(cls, p: int, N: int, K: int, M: int) -> "RingModel":
        return cls(RingKind.WITT_SERIES, p=p, N=N, K=K, M=M)

    # Properties

    @property
    def is_scalar(self) -> bool:
        return self.kind in SCALAR_KINDS

    @property
    def is_p_torsion_free(self) -> bool:
        return self.kind == RingKind.INTEGERS

    def default_ledger(self) -> PrecisionLedger:
        if self.kind == RingKind.TRUNC_POLY:
            return PrecisionLedger(None, self.K, Exponent.of(self.p, self.M))
        if self.kind in (RingKind.PMONOID_ALG, RingKind.WITT_SERIES):
            return PrecisionLedger(self.N, self.K, None)
        return PrecisionLedger()

    def coefficient_modulus(self, ledger: PrecisionLedger) -> Optional[int]:
        if self.kind == RingKind.INTEGERS:
            return None
        if self.kind == RingKind.INTEGERS_MOD_M:
            return self.m
        if self.kind in (RingKind.PRIME_FIELD, RingKind.TRUNC_POLY):
            return self.p
        n = self.N if ledger.n is None else ledger.n
        return self.p ** n

    def zero_exponent(self) -> Exponent:
        return Exponent.of(self.p or 1, 0)

    # Element factories

    def element(self, terms: Mapping[Any, int], ledger: Optional[PrecisionLedger] = None) -> "RingElement":
        """Build a normalized element from {exponent: coefficient}."""
        ledger = ledger or self.default_ledger()
        return RingElement(self, _normalize(self, terms, ledger), ledger)

    def scalar(self, c: int, ledger: Optional[PrecisionLedger] = None) -> "RingElement":
        return self.element({self.zero_exponent(): int(c)}, ledger)

    def monomial(self, c: int, e: Union[Exponent, int, str], ledger: Optional[PrecisionLedger] = None) -> "RingElement":
        if not isinstance(e, Exponent):
            e = Exponent.parse(self.p, str(e)) if isinstance(e, str) else Exponent.of(self.p, e)
        return self.element({e: int(c)}, ledger)

    def zero(self) -> "RingElement":
        return self.element({})

    def one(self) -> "RingElement":
        return self.scalar(1)

    # Serialization

    def to_json(self) -> Dict[str, Any]:
        data: Dict[str, Any] = {"kind": self.kind.value}
        for name in ("p", "m", "N", "K", "M"):
            value = getattr(self, name)
            if value is not None:
                data[name] = value
        return data

    @classmethod
    def from_json(cls, data: Mapping[str, Any]) -> "RingModel":
        kind = RingKind(data["kind"])
        return cls(kind, **{k: data[k] for k in ("p", "m", "N", "K", "M") if k in data})

    def __str__(self):
        params = ",".join(f"{k}={v}" for k, v in self.to_json().items() if k != "kind")
        return f"{self.kind.value}({params})"


def _is_prime_power(m: int, p: int) -> bool:
    while m % p == 0:
        m //= p
    return m == 1


def _normalize(model: RingModel, raw: Mapping[Any, int], ledger: PrecisionLedger) -> Tuple[Tuple[Exponent, int], ...]:
    p = model.p
    kind = model.kind
    out: Dict[Exponent, int] = {}
    for e, c in raw.items():
        if c == 0:
            continue
        if not isinstance(e, Exponent):
            e = Exponent.of(p or 1, int(e))
        if kind in SCALAR_KINDS:
            if e != 0:
                raise ValueError(f"{model} has no monomial t^{e.pretty()}")
        else:
            if e < 0:
                raise ValueError(f"negative exponent {e.pretty()} in {model}")
            if e.val > model.K:
                raise CapExceeded("exponent denominator", f"p^{e.val}", f"p^{model.K}")
            if kind == RingKind.PMONOID_ALG:
                whole = e.floor()
                if whole:
                    c *= p ** whole
                    e = e - whole
            elif kind == RingKind.TRUNC_POLY:
                if e >= ledger.m:
                    continue
            elif kind == RingKind.WITT_SERIES and e >= model.M:
                raise CapExceeded("t-exponent", e.pretty(), model.M)
        out[e] = out.get(e, 0) + c

    modulus = model.coefficient_modulus(ledger)
    if modulus is not None:
        out = {e: c % modulus for e, c in out.items()}
    return tuple(sorted((e, c) for e, c in out.items() if c != 0))


@dataclass(frozen=True, eq=False)
class RingElement:
    """Normal-form element of a RingModel."""

    model: RingModel
    terms: Tuple[Tuple[Exponent, int], ...]
    ledger: PrecisionLedger

    # Basic queries

    def as_dict(self) -> Dict[Exponent, int]:
        return dict(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def constant(self) -> int:
        for e, c in self.terms:
            if e == 0:
                return c
        return 0

    def coefficient(self, e: Union[Exponent, int]) -> int:
        return self.as_dict().get(e if isinstance(e, Exponent) else Exponent.of(self.model.p or 1, e), 0)

    def order(self) -> Optional[Exponent]:
        """Lowest exponent present."""
        return self.terms[0][0] if self.terms else None

    def degree(self) -> Optional[Exponent]:
        """Highest exponent present."""
        return self.terms[-1][0] if self.terms else None

    def is_unit(self) -> bool:
        model = self.model
        if model.kind == RingKind.INTEGERS:
            return self.constant() in (1, -1) and len(self.terms) == 1
        if model.kind == RingKind.INTEGERS_MOD_M:
            return gcd(self.constant(), model.m) == 1 and len(self.terms) == 1
        if model.kind == RingKind.WITT_SERIES:
            return len(self.terms) == 1 and self.terms[0][0] == 0 and self.terms[0][1] % model.p != 0
        c = self.constant()
        return c % model.p != 0

    # Arithmetic

    def _check(self, other: "RingElement") -> None:
        if self.model != other.model:
            raise ModelMismatch(self.model, other.model)

    def _lift(self, other) -> "RingElement":
        if isinstance(other, int):
            return self.model.scalar(other)
        self._check(other)
        return other

    def __add__(self, other):
        other = self._lift(other)
        ledger = self.ledger.meet(other.ledger)
        merged = dict(self.terms)
        for e, c in other.terms:
            merged[e] = merged.get(e, 0) + c
        return RingElement(self.model, _normalize(self.model, merged, ledger), ledger)

    __radd__ = __add__

    def __neg__(self):
        return RingElement(self.model, _normalize(self.model, {e: -c for e, c in self.terms}, self.ledger), self.ledger)

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        if isinstance(other, int):
            return RingElement(
                self.model, _normalize(self.model, {e: c * other for e, c in self.terms}, self.ledger), self.ledger
            )
        self._check(other)
        ledger = self.ledger.meet(other.ledger)
        product: Dict[Exponent, int] = {}
        scalar = self.model.is_scalar
        for e1, c1 in self.terms:
            for e2, c2 in other.terms:
                e = e1 if scalar else e1 + e2
                product[e] = product.get(e, 0) + c1 * c2
        return RingElement(self.model, _normalize(self.model, product, ledger), ledger)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative powers are not supported")
        result = self.model.element({self.model.zero_exponent(): 1}, self.ledger)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def __eq__(self, other):
        if isinstance(other, int):
            other = self.model.scalar(other)
        if not isinstance(other, RingElement):
            return NotImplemented
        return self.model == other.model and self.terms == other.terms

    def __hash__(self):
        return hash((self.model, self.terms))

    # Precision

    def with_ledger(self, ledger: PrecisionLedger) -> "RingElement":
        """Reinterpret at a (smaller) ledger, reducing the payload."""
        return RingElement(self.model, _normalize(self.model, self.as_dict(), ledger), ledger)

    def agrees_with(self, other: "RingElement") -> bool:
        """Equality after reducing both sides to the common ledger."""
        self._check(other)
        ledger = self.ledger.meet(other.ledger)
        return self.with_ledger(ledger).terms == other.with_ledger(ledger).terms

    def scale_exponents(self, k: int) -> "RingElement":
        """Substitute t -> t^(p^k); for char p coefficients this is the Frobenius."""
        if self.model.is_scalar or k == 0:
            return self
        return RingElement(
            self.model, _normalize(self.model, {e.scale(k): c for e, c in self.terms}, self.ledger), self.ledger
        )

    def map_terms(self, target: RingModel, ledger: Optional[PrecisionLedger] = None) -> "RingElement":
        """Re-key the same payload in another model."""
        return target.element(self.as_dict(), ledger)

    # Presentation

    def to_json(self) -> Dict[str, Any]:
        return element_to_json(self)

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for e, c in self.terms:
            if e == 0 or self.model.is_scalar:
                parts.append(str(c))
            elif c == 1:
                parts.append(f"t^{e.pretty()}")
            else:
                parts.append(f"{c}*t^{e.pretty()}")
        return " + ".join(parts)

    __repr__ = __str__


def ring_arith(a: RingElement, b: RingElement, op: str) -> RingElement:
    """add, sub or mul of two elements of the same model."""
    a._check(b)
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    raise ValueError(f"unknown ring operation {op}")


# Division

def divide_exact(a: RingElement, d: RingElement) -> RingElement:
    """Return q with q * d = a at the current precision."""
    a._check(d)
    kind = a.model.kind
    if d.is_zero():
        raise NotNonZeroDivisor(d, "zero")
    if kind == RingKind.INTEGERS:
        x, y = a.constant(), d.constant()
        if x % y:
            raise NotDivisible(a, d)
        return a.model.scalar(x // y)
    if kind in (RingKind.INTEGERS_MOD_M, RingKind.PRIME_FIELD):
        modulus = a.model.m if kind == RingKind.INTEGERS_MOD_M else a.model.p
        y = d.constant()
        if gcd(y, modulus) != 1:
            raise NotNonZeroDivisor(d, f"not a unit modulo {modulus}")
        return a.model.scalar(a.constant() * pow(y, -1, modulus))
    if kind == RingKind.TRUNC_POLY:
        return _divide_trunc(a, d)
    if kind == RingKind.PMONOID_ALG:
        return _divide_pmonoid(a, d)
    quotient, remainder, ledger = _divide_series(a, d)
    if remainder:
        raise NotDivisible(a, d)
    return a.model.element(quotient, ledger)


def reduce_modulo(a: RingElement, d: RingElement) -> RingElement:
    """Normal form of a in the quotient by the ideal generated by d."""
    a._check(d)
    model = a.model
    kind = model.kind
    if d.is_zero():
        return a
    if kind == RingKind.INTEGERS:
        return model.scalar(a.constant() % abs(d.constant()))
    if kind == RingKind.INTEGERS_MOD_M:
        return model.scalar(a.constant() % gcd(d.constant(), model.m))
    if kind == RingKind.PRIME_FIELD:
        return model.zero()
    if kind == RingKind.TRUNC_POLY:
        cut = d.order()
        return model.element({e: c for e, c in a.terms if e < cut}, a.ledger)
    if kind == RingKind.PMONOID_ALG:
        cut = min(_term_valuation(e, c, model.p) for e, c in d.terms)
        return model.element({e: c for e, c in a.terms if _term_valuation(e, c, model.p) < cut}, a.ledger)

    # WittSeries: a = q d' + rho with d = p^v d'; normal form (q mod p^v) d' + rho
    p = model.p
    ledger = a.ledger.meet(d.ledger)
    modulus = model.coefficient_modulus(ledger)
    v, dprime = _series_content(d, modulus, p)
    quotient, remainder = _series_divmod(a.as_dict(), dprime, modulus)
    head = {e: c % p ** v for e, c in quotient.items() if c % p ** v}
    product: Dict[Exponent, int] = dict(remainder)
    for e1, c1 in head.items():
        for e2, c2 in dprime.items():
            product[e1 + e2] = product.get(e1 + e2, 0) + c1 * c2
    return model.element(product, ledger)


def _term_valuation(e: Exponent, c: int, p: int) -> Fraction:
    return p_valuation(c, p) + e.value


def _divide_trunc(a: RingElement, d: RingElement) -> RingElement:
    model = a.model
    p = model.p
    ledger = a.ledger.meet(d.ledger)
    e_d, c_d = d.terms[0]
    if ledger.m <= e_d:
        raise PrecisionExhausted("m", e_d.pretty(), ledger.m.pretty())
    quotient_ledger = replace(ledger, m=ledger.m - e_d)
    inverse = pow(c_d, -1, p)
    remainder = a.with_ledger(ledger)
    quotient: Dict[Exponent, int] = {}
    while not remainder.is_zero():
        e_r, c_r = remainder.terms[0]
        if e_r < e_d:
            raise NotDivisible(a, d)
        step = model.element({e_r - e_d: c_r * inverse}, ledger)
        quotient[e_r - e_d] = (quotient.get(e_r - e_d, 0) + c_r * inverse) % p
        remainder = remainder - step * d
    return model.element(quotient, quotient_ledger)


def _divide_pmonoid(a: RingElement, d: RingElement) -> RingElement:
    model = a.model
    p = model.p
    ledger = a.ledger.meet(d.ledger)
    n = model.N if ledger.n is None else ledger.n
    e_d, c_d = min(d.terms, key=lambda term: _term_valuation(term[0], term[1], p))
    v_d = p_valuation(c_d, p)
    val_d = v_d + e_d.value
    loss = -((-val_d.numerator) // val_d.denominator)
    if loss >= n and val_d > 0:
        raise PrecisionExhausted("n", loss, n)
    unit_inverse = pow(c_d // p ** v_d, -1, p ** n)
    remainder = a.with_ledger(ledger)
    quotient: Dict[Exponent, int] = {}
    while not remainder.is_zero():
        e_r, c_r = min(remainder.terms, key=lambda term: _term_valuation(term[0], term[1], p))
        v_r = p_valuation(c_r, p)
        if v_r + e_r.value < val_d:
            raise NotDivisible(a, d)
        coeff = (c_r // p ** v_r) * unit_inverse * p ** (v_r - v_d) if v_r >= v_d else None
        e_q = e_r - e_d
        if e_q < 0:
            # borrow one whole power of p from the coefficient
            e_q = e_q + 1
            coeff = (c_r // p ** v_r) * unit_inverse * p ** (v_r - v_d - 1)
        step = model.element({e_q: coeff}, ledger)
        quotient[e_q] = quotient.get(e_q, 0) + coeff
        remainder = remainder - step * d
    return model.element(quotient, replace(ledger, n=n - loss))


def _series_content(d: RingElement, modulus: int, p: int) -> Tuple[int, Dict[Exponent, int]]:
    """Split d = p^v d' with top coefficient of d' a unit."""
    v = min(p_valuation(c, p) for _, c in d.terms)
    dprime = {e: c // p ** v for e, c in d.terms}
    top = max(dprime)
    if dprime[top] % p == 0:
        raise NotNonZeroDivisor(d, "top coefficient is not a unit after removing the p-content")
    return v, dprime


def _series_divmod(
    a: Mapping[Exponent, int], dprime: Mapping[Exponent, int], modulus: int
) -> Tuple[Dict[Exponent, int], Dict[Exponent, int]]:
    """Long division from the top degree by a divisor with unit top coefficient."""
    top = max(dprime)
    inverse = pow(dprime[top], -1, modulus)
    remainder = {e: c % modulus for e, c in a.items() if c % modulus}
    quotient: Dict[Exponent, int] = {}
    while remainder:
        e = max(remainder)
        if e < top:
            break
        coeff = remainder[e] * inverse % modulus
        shift = e - top
        quotient[shift] = (quotient.get(shift, 0) + coeff) % modulus
        for e2, c2 in dprime.items():
            key = shift + e2
            value = (remainder.get(key, 0) - coeff * c2) % modulus
            if value:
                remainder[key] = value
            else:
                remainder.pop(key, None)
    return quotient, remainder


def _divide_series(a: RingElement, d: RingElement):
    model = a.model
    p = model.p
    ledger = a.ledger.meet(d.ledger)
    n = model.N if ledger.n is None else ledger.n
    v, dprime = _series_content(d, p ** n, p)
    if v >= n:
        raise PrecisionExhausted("n", v, n)
    if any(c % p ** v for _, c in a.with_ledger(ledger).terms):
        raise NotDivisible(a, d)
    reduced_modulus = p ** (n - v)
    shifted = {e: (c // p ** v) % reduced_modulus for e, c in a.with_ledger(ledger).terms}
    dprime = {e: c % reduced_modulus for e, c in dprime.items()}
    quotient, remainder = _series_divmod(shifted, dprime, reduced_modulus)
    return quotient, remainder, replace(ledger, n=n - v)


# Serialization

def element_to_json(x: RingElement) -> Dict[str, Any]:
    """Canonical JSON form {model, terms, ledger}."""
    return {
        "model": x.model.to_json(),
        "terms": [{"exp": str(e), "coeff": str(c)} for e, c in x.terms],
        "ledger": x.ledger.to_json(),
    }


def element_from_json(data: Mapping[str, Any]) -> RingElement:
    """Inverse of element_to_json."""
    model = RingModel.from_json(data["model"])
    p = model.p or 1
    raw = data.get("ledger") or {}
    ledger = model.default_ledger()
    if raw:
        m = raw.get("m")
        ledger = PrecisionLedger(raw.get("n"), raw.get("k"), None if m is None else Exponent.parse(p, m))
    terms = {Exponent.parse(p, t["exp"]) if model.p else 0: int(t["coeff"]) for t in data.get("terms", [])}
    return model.element(terms, ledger)


def integers_like(values: Iterable[int], model: RingModel):
    """Lift a list of integers into a model."""
    return [model.scalar(v) for v in values]
