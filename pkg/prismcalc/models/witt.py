"""
Truncated p-typical Witt vectors.
"""

from dataclasses import dataclass, field
from typing import Any, Dict, List, Sequence, Tuple

from ..core.exceptions import ModelMismatch
from .rings import RingElement, RingModel


@dataclass(frozen=True, eq=False)
class WittVector:
    """Length-r Witt vector (x_0, ..., x_{r-1}) over a base ring model."""

    p: int
    base: RingModel
    components: Tuple[RingElement, ...]

    def __post_init__(self):
        for c in self.components:
            if c.model != self.base:
                raise ModelMismatch(self.base, c.model)

    @classmethod
    def of(cls, p: int, base: RingModel, values: Sequence[Any]) -> "WittVector":
        """Build from RingElements or integers."""
        comps = tuple(v if isinstance(v, RingElement) else base.scalar(int(v)) for v in values)
        return cls(p, base, comps)

    @property
    def length(self) -> int:
        return len(self.components)

    def __getitem__(self, index: int) -> RingElement:
        return self.components[index]

    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self.components)

    def __add__(self, other):
        from ..services.witt import witt_arith

        return witt_arith(self, other, "add")

    def __sub__(self, other):
        from ..services.witt import witt_arith

        return witt_arith(self, other, "sub")

    def __mul__(self, other):
        from ..services.witt import witt_arith

        return witt_arith(self, other, "mul")

    def __neg__(self):
        from ..services.witt import witt_neg

        return witt_neg(self)

    def __eq__(self, other):
        if not isinstance(other, WittVector):
            return NotImplemented
        return self.p == other.p and self.base == other.base and self.components == other.components

    def __hash__(self):
        return hash((self.p, self.base, self.components))

    def agrees_with(self, other: "WittVector") -> bool:
        """Componentwise agreement at the common precision."""
        if self.p != other.p or self.length != other.length:
            return False
        return all(a.agrees_with(b) for a, b in zip(self.components, other.components))

    def to_json(self) -> Dict[str, Any]:
        return {
            "p": self.p,
            "r": self.length,
            "base": self.base.to_json(),
            "components": [c.to_json()["terms"] for c in self.components],
            "ledgers": [c.ledger.to_json() for c in self.components],
        }

    def __str__(self):
        return "(" + ", ".join(str(c) for c in self.components) + ")"

    __repr__ = __str__


@dataclass(frozen=True)
class GhostVector:
    """Ghost components w_n = sum_{i<=n} p^i x_i^(p^(n-i))."""

    components: Tuple[RingElement, ...]

    def __add__(self, other: "GhostVector") -> "GhostVector":
        return GhostVector(tuple(a + b for a, b in zip(self.components, other.components)))

    def __mul__(self, other: "GhostVector") -> "GhostVector":
        return GhostVector(tuple(a * b for a, b in zip(self.components, other.components)))

    def __str__(self):
        return "<" + ", ".join(str(c) for c in self.components) + ">"


# A polynomial as a list of (exponent tuple, integer coefficient)
TermList = List[Tuple[Tuple[int, ...], int]]


@dataclass
class WittPolynomialTable:
    """Universal polynomial families for W_r with integer coefficients.

    Families are 'add', 'mul' and 'neg' in variables X_0..X_{r-1}, Y_0..Y_{r-1}
    and 'F' in X_0..X_{r-1} (r-1 polynomials).
    """

    p: int
    r: int
    families: Dict[str, List[TermList]] = field(default_factory=dict)
    printed: Dict[str, List[str]] = field(default_factory=dict)

    def term_count(self, family: str) -> List[int]:
        return [len(poly) for poly in self.families[family]]

    def to_json(self, show_polynomials: bool = True) -> Dict[str, Any]:
        data: Dict[str, Any] = {
            "p": self.p,
            "r": self.r,
            "term_counts": {name: self.term_count(name) for name in sorted(self.families)},
        }
        if show_polynomials:
            data["polynomials"] = {name: self.printed[name] for name in sorted(self.printed)}
        return data
