"""
Normal forms in the de Rham-Witt complex W_r Omega of F_p[x] and F_p[x, y].

Elements are computed weight by weight in the complex of integral forms: a
form of weight k in (Z[1/p]_{>=0})^n and degree q is T^k times an integral
combination alpha of the dlog T_I, |I| = q, such that k ^ alpha is integral
too. On this model d is k ^ -, F sends weight k to pk and V sends weight k to
k/p multiplying alpha by p.

At level r the weight-k piece of degree q is free over Z/p^(r - u(k)), where
p^u(k) is the largest denominator in k, and vanishes once u(k) >= r. A term
is keyed by (q, k, j): coordinate j on the fixed basis of that piece.

    V^u([x]^a*[y]^b)                      degree 0
    [x]^(k-1)*d([x]), d(V^u([x]^m))       degree 1, one variable in the support
    F^j(d([x]^a*[y]^b)), d(V^u(...))      degree 1, primitive direction of k
    V^u([x]^a)*omega_y                    degree 1, second basis form
    omega_x*omega_y                       degree 2
"""

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Any, Dict, Iterable, List, Mapping, Sequence, Tuple

from sympy import Matrix

from ..core.cache import cached_computation
from ..core.exceptions import CapExceeded, ModelMismatch

Weight = Tuple[Fraction, ...]
Key = Tuple[int, Weight, int]
Forms = Dict[Tuple[int, Weight], List[int]]

VARIABLES = ("x", "y")
DEFAULT_WEIGHT_CAP = 64


def valuation(value: Fraction, p: int) -> int:
    """p-adic valuation of a non-zero rational."""
    v = 0
    num, den = value.numerator, value.denominator
    while num % p == 0:
        num //= p
        v += 1
    while den % p == 0:
        den //= p
        v -= 1
    return v


def as_weight(k: Iterable[Any]) -> Weight:
    return tuple(Fraction(c) for c in k)


def denominator_exponent(p: int, k: Weight) -> int:
    """u(k): p^u(k) is the largest denominator among the coordinates of k."""
    return max([0] + [-valuation(c, p) for c in k if c])


def exterior_basis(n: int, q: int) -> List[Tuple[int, ...]]:
    """Index sets I of the dlog T_I in degree q, lexicographic."""
    return list(combinations(range(n), q))


def _monomial_label(exponents: Sequence[int]) -> str:
    parts = []
    for name, e in zip(VARIABLES, exponents):
        if e:
            parts.append(f"[{name}]" if e == 1 else f"[{name}]^{e}")
    return "*".join(parts) if parts else "1"


def _wrap(inner: str, op: str, times: int) -> str:
    for _ in range(times):
        inner = f"{op}({inner})"
    return inner


def _one_form(p: int, n: int, i: int, w: Fraction) -> Tuple[str, int]:
    """Generator of degree one in the single variable i at weight w, with its dlog coefficient."""
    name = f"[{VARIABLES[i]}]"
    if w.denominator == 1:
        e = int(w) - 1
        prefix = "" if e == 0 else (f"{name}*" if e == 1 else f"{name}^{e}*")
        return f"{prefix}d({name})", 1
    u = -valuation(w, p)
    m = int(w * p ** u)
    exponents = [0] * n
    exponents[i] = m
    return f"d({_wrap(_monomial_label(exponents), 'V', u)})", m


@dataclass(frozen=True)
class BasisForm:
    label: str
    alpha: Tuple[int, ...]


@dataclass(frozen=True)
class WeightPiece:
    """Basis of the integral forms of one weight and degree, with the inverse used for coordinates."""

    p: int
    n: int
    q: int
    weight: Weight
    basis: Tuple[BasisForm, ...]
    allowed: Tuple[int, ...]
    adjugate: Tuple[Tuple[int, ...], ...]
    det: int

    @property
    def rank(self) -> int:
        return len(self.basis)

    def coordinates(self, alpha: Sequence[int], modulus: int) -> List[int]:
        """Coordinates of alpha on the basis, modulo `modulus`."""
        for t, a in enumerate(alpha):
            if a and t not in self.allowed:
                raise ValueError(f"not a form on the polynomial ring at weight {self.weight}")
        if not self.basis:
            return []
        restricted = [alpha[t] for t in self.allowed]
        p = self.p
        det, shift = self.det, 1
        while det % p == 0:
            det //= p
            shift *= p
        unit = pow(det, -1, modulus) if modulus > 1 else 0
        coords = []
        for row in self.adjugate:
            value = sum(a * b for a, b in zip(row, restricted))
            if value % shift:
                raise ValueError(f"not an integral de Rham-Witt form at weight {self.weight}")
            coords.append(value // shift * unit % modulus)
        return coords


@cached_computation("drw_basis")
def weight_piece(p: int, n: int, q: int, k: Weight) -> WeightPiece:
    if len(k) != n:
        raise ValueError(f"weight {k} does not have {n} coordinates")
    for c in k:
        den = c.denominator
        while den % p == 0:
            den //= p
        if c < 0 or den != 1:
            raise ValueError(f"weight coordinate {c} is not in Z[1/{p}]_{{>=0}}")
    if not 0 <= q <= n:
        raise ValueError(f"form degree {q} outside 0..{n}")
    wedges = exterior_basis(n, q)
    support = [i for i in range(n) if k[i]]
    allowed = tuple(t for t, I in enumerate(wedges) if set(I) <= set(support))
    order = sorted(support, key=lambda i: (valuation(k[i], p), i))

    def vector(entries: Mapping[Tuple[int, ...], int]) -> Tuple[int, ...]:
        return tuple(entries.get(I, 0) for I in wedges)

    basis: List[BasisForm] = []
    if q == 0:
        u = denominator_exponent(p, k)
        exponents = [int(c * p ** u) for c in k]
        basis.append(BasisForm(_wrap(_monomial_label(exponents), "V", u), (p ** u,)))
    elif q == 1 and len(support) == 1:
        i = support[0]
        label, c = _one_form(p, n, i, k[i])
        basis.append(BasisForm(label, vector({(i,): c})))
    elif q == 1 and len(support) == 2:
        first, second = order
        j = valuation(k[first], p)
        m = [int(c * Fraction(p) ** -j) for c in k]
        inner = _monomial_label(m)
        label = _wrap(f"d({inner})", "F", j) if j >= 0 else f"d({_wrap(inner, 'V', -j)})"
        basis.append(BasisForm(label, vector({(i,): m[i] for i in range(n)})))
        u = max(0, -j)
        exponents = [0] * n
        exponents[first] = int(k[first] * p ** u)
        tail, c = _one_form(p, n, second, k[second])
        head = _wrap(_monomial_label(exponents), "V", u)
        basis.append(BasisForm(f"{head}*{tail}", vector({(second,): p ** u * c})))
    elif q == 2 and len(support) == 2:
        first, second = order
        left, a = _one_form(p, n, first, k[first])
        right, b = _one_form(p, n, second, k[second])
        sign = 1 if first < second else -1
        basis.append(BasisForm(f"{left}*{right}", vector({(0, 1): sign * a * b})))

    if len(basis) != len(allowed):
        raise ArithmeticError(f"basis of rank {len(basis)} for {len(allowed)} coordinates at weight {k}")
    if not basis:
        return WeightPiece(p, n, q, k, (), allowed, (), 1)
    if len(basis) == 1:
        return WeightPiece(p, n, q, k, tuple(basis), allowed, ((1,),), basis[0].alpha[allowed[0]])
    M = Matrix([[b.alpha[t] for b in basis] for t in allowed])
    adjugate = tuple(tuple(int(v) for v in M.adjugate().row(i)) for i in range(len(basis)))
    return WeightPiece(p, n, q, k, tuple(basis), allowed, adjugate, int(M.det()))


def term_label(p: int, n: int, key: Key) -> str:
    """Parseable text of one basis term."""
    q, k, j = key
    return weight_piece(p, n, q, k).basis[j].label


def weight_text(k: Weight) -> str:
    return str(k[0]) if len(k) == 1 else "(" + ", ".join(str(c) for c in k) + ")"


def forms_of_terms(p: int, n: int, items: Iterable[Tuple[Key, int]]) -> Forms:
    """Dlog coefficient vectors of a term dictionary, grouped by (q, k)."""
    forms: Forms = {}
    for (q, k, j), c in items:
        k = as_weight(k)
        piece = weight_piece(p, n, q, k)
        if not 0 <= j < piece.rank:
            raise ValueError(f"not a de Rham-Witt term: {(q, k, j)}")
        alpha = forms.setdefault((q, k), [0] * len(exterior_basis(n, q)))
        for t, a in enumerate(piece.basis[j].alpha):
            alpha[t] += c * a
    return forms


def normalize_forms(p: int, r: int, n: int, forms: Mapping[Tuple[int, Weight], Sequence[int]], cap: int) -> Dict[Key, int]:
    """Coordinates of each weight piece reduced modulo p^(r - u(k))."""
    out: Dict[Key, int] = {}
    for (q, k), alpha in forms.items():
        if not any(alpha):
            continue
        k = as_weight(k)
        piece = weight_piece(p, n, q, k)
        u = denominator_exponent(p, k)
        if u >= r:
            continue
        coords = piece.coordinates(alpha, p ** (r - u))
        if any(coords) and sum(k) > cap:
            raise CapExceeded("weight", sum(k), cap)
        for j, c in enumerate(coords):
            if c:
                out[(q, k, j)] = c
    return out


def _order(item: Tuple[Key, int]) -> Tuple[int, Fraction, Weight, int]:
    q, k, j = item[0]
    return q, sum(k, Fraction(0)), k, j


@dataclass(frozen=True, eq=False)
class DRWElement:
    """Element of W_r Omega of F_p[x] (n = 1) or F_p[x, y] (n = 2) as a normal-form term dictionary."""

    p: int
    r: int
    terms: Mapping[Key, int] = field(default_factory=dict)
    cap: int = DEFAULT_WEIGHT_CAP
    n: int = 1

    def __post_init__(self):
        if self.r < 1:
            raise ValueError("de Rham-Witt level must be at least 1")
        if self.n not in (1, 2):
            raise ValueError("de Rham-Witt complexes are built for one or two variables")
        forms = forms_of_terms(self.p, self.n, self.terms.items())
        normal = normalize_forms(self.p, self.r, self.n, forms, self.cap)
        object.__setattr__(self, "terms", dict(sorted(normal.items(), key=_order)))

    @classmethod
    def scalar(cls, p: int, r: int, c: int, cap: int = DEFAULT_WEIGHT_CAP, n: int = 1) -> "DRWElement":
        return cls(p, r, {(0, (Fraction(0),) * n, 0): c}, cap, n)

    @classmethod
    def zero(cls, p: int, r: int, cap: int = DEFAULT_WEIGHT_CAP, n: int = 1) -> "DRWElement":
        return cls(p, r, {}, cap, n)

    @classmethod
    def monomial(cls, p: int, r: int, exponents: Sequence[int], c: int = 1, cap: int = DEFAULT_WEIGHT_CAP) -> "DRWElement":
        """c times the Teichmüller monomial [x]^a or [x]^a*[y]^b."""
        return cls(p, r, {(0, as_weight(exponents), 0): c}, cap, len(exponents))

    @classmethod
    def from_forms(cls, p: int, r: int, n: int, forms: Forms, cap: int = DEFAULT_WEIGHT_CAP) -> "DRWElement":
        return cls(p, r, normalize_forms(p, r, n, forms, cap), cap, n)

    def like(self, terms: Mapping[Key, int], r: int = None) -> "DRWElement":
        """Element with the same p, n and cap, optionally at another level."""
        return DRWElement(self.p, self.r if r is None else r, terms, self.cap, self.n)

    def like_forms(self, forms: Forms, r: int = None) -> "DRWElement":
        return DRWElement.from_forms(self.p, self.r if r is None else r, self.n, forms, self.cap)

    # Properties

    def is_zero(self) -> bool:
        return not self.terms

    @property
    def degrees(self) -> List[int]:
        return sorted({q for q, _, _ in self.terms})

    def part(self, q: int) -> "DRWElement":
        return self.like({key: c for key, c in self.terms.items() if key[0] == q})

    def modulus(self, key: Key) -> int:
        return self.p ** (self.r - denominator_exponent(self.p, key[1]))

    def max_weight(self) -> Fraction:
        """Largest single coordinate of any weight."""
        return max((max(k) for _, k, _ in self.terms), default=Fraction(0))

    def forms(self) -> Forms:
        return forms_of_terms(self.p, self.n, self.terms.items())

    # Arithmetic

    def _check(self, other: "DRWElement") -> None:
        if self.p != other.p or self.r != other.r or self.n != other.n:
            raise ModelMismatch(
                f"W_{self.r} p={self.p} n={self.n}", f"W_{other.r} p={other.p} n={other.n}"
            )

    def __add__(self, other):
        if isinstance(other, int):
            other = DRWElement.scalar(self.p, self.r, other, self.cap, self.n)
        self._check(other)
        return self.like(_merge(self.terms, other.terms))

    __radd__ = __add__

    def __neg__(self):
        return self.like({key: -c for key, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, int):
            return self.like({key: c * other for key, c in self.terms.items()})
        from ..services.drw import drw_product

        return drw_product(self, other)

    def __rmul__(self, other):
        return self * other

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative powers are not defined")
        result = DRWElement.scalar(self.p, self.r, 1, self.cap, self.n)
        for _ in range(n):
            result = result * self
        return result

    def __eq__(self, other):
        if not isinstance(other, DRWElement):
            return NotImplemented
        return self.p == other.p and self.r == other.r and self.n == other.n and self.terms == other.terms

    def __hash__(self):
        return hash((self.p, self.r, self.n, tuple(self.terms.items())))

    # Output

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for key, c in self.terms.items():
            label = term_label(self.p, self.n, key)
            if label == "1":
                parts.append(str(c))
            else:
                parts.append(label if c == 1 else f"{c}*{label}")
        return " + ".join(parts)

    __repr__ = __str__

    def to_json(self) -> Dict[str, Any]:
        return {
            "p": self.p,
            "r": self.r,
            "n": self.n,
            "degrees": self.degrees,
            "text": str(self),
            "terms": [
                {
                    "label": term_label(self.p, self.n, key),
                    "degree": key[0],
                    "weight": weight_text(key[1]),
                    "coefficient": str(c),
                    "modulus": str(self.modulus(key)),
                }
                for key, c in self.terms.items()
            ],
        }


def _merge(left: Mapping[Key, int], right: Mapping[Key, int]) -> Dict[Key, int]:
    out = dict(left)
    for key, c in right.items():
        out[key] = out.get(key, 0) + c
    return out
