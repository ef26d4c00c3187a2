"""
Perfectoid ring models and elements of A_inf at finite precision.

An element of A_inf = W(R^flat) is stored through its Teichmüller expansion
sum_i p^i [y_i] as an element of Z/p^N[t^(1/p^K')] (the WittSeries model);
the Witt coordinates over the tilt are a derived view.
"""

from dataclasses import dataclass, replace
from enum import Enum
from typing import Any, Dict, Optional

from ..core.exceptions import ConfigError, ModelMismatch
from .rings import Exponent, PrecisionLedger, RingElement, RingModel


class PerfectoidKind(Enum):
    """Characteristic p base or the mixed characteristic O = Z_p[p^(1/p^oo)]."""

    CHAR_P = "charp"
    MIXED = "mixed"


@dataclass(frozen=True)
class PerfectoidModel:
    """Caps: N p-adic digits, K root depth (Frobenius inverse budget), M tilt exponent cap."""

    kind: PerfectoidKind
    p: int
    N: int
    K: int
    M: int
    label: str = ""

    def __post_init__(self):
        if self.N < 1:
            raise ConfigError("perfectoid model needs N >= 1", key="N")
        if self.K < 0:
            raise ConfigError("perfectoid model needs K >= 0", key="K")
        if self.kind == PerfectoidKind.MIXED and self.M < self.N * self.p ** (self.N - 1):
            raise ConfigError(
                f"mixed characteristic model needs M >= N*p^(N-1) = {self.N * self.p ** (self.N - 1)}", key="M"
            )

    @classmethod
    def fp(cls, p: int, N: int = 24) -> "PerfectoidModel":
        """A_inf(F_p) = Z_p at precision N."""
        return cls(PerfectoidKind.CHAR_P, p, N, 0, 1, label="fp")

    @classmethod
    def char_p(cls, p: int, N: int = 4, K: int = 3, M: int = 4096) -> "PerfectoidModel":
        return cls(PerfectoidKind.CHAR_P, p, N, K, M)

    @classmethod
    def mixed(cls, p: int = 2, N: int = 4, K: int = 2, M: int = 4096) -> "PerfectoidModel":
        return cls(PerfectoidKind.MIXED, p, N, K, M)

    @property
    def is_fp(self) -> bool:
        return self.kind == PerfectoidKind.CHAR_P and self.M == 1

    @property
    def root_cap(self) -> int:
        # the Teichmüller expansion of a depth-K digit needs N - 1 further roots
        return self.K + self.N - 1

    @property
    def tilt(self) -> RingModel:
        return RingModel.trunc_poly(self.p, self.root_cap, self.M)

    @property
    def series(self) -> RingModel:
        return RingModel.witt_series(self.p, self.N, self.root_cap, self.M)

    @property
    def scratch(self) -> RingModel:
        """Series model with room for extra roots during digit peeling."""
        return RingModel.witt_series(self.p, self.N, self.K + 2 * self.N, self.M)

    @property
    def residue_ring(self) -> RingModel:
        """O: the tilt itself in characteristic p, PMonoidAlg in mixed characteristic."""
        if self.kind == PerfectoidKind.CHAR_P:
            return self.tilt
        return RingModel.pmonoid_alg(self.p, self.N, self.root_cap)

    def default_ledger(self) -> PrecisionLedger:
        return PrecisionLedger(self.N, self.K, None)

    def element(self, terms: Dict[Any, int], ledger: Optional[PrecisionLedger] = None) -> "AinfElement":
        return AinfElement(self, self.series.element(terms, ledger or self.default_ledger()))

    def scalar(self, c: int) -> "AinfElement":
        return self.element({Exponent.of(self.p, 0): c})

    def zero(self) -> "AinfElement":
        return self.element({})

    def one(self) -> "AinfElement":
        return self.scalar(1)

    def teich_t(self, e: Any = 1) -> "AinfElement":
        """[t^e]."""
        if not isinstance(e, Exponent):
            e = Exponent.parse(self.p, str(e))
        return self.element({e: 1})

    def to_json(self) -> Dict[str, Any]:
        data = {"kind": self.kind.value, "p": self.p, "N": self.N, "K": self.K, "M": self.M}
        if self.label:
            data["label"] = self.label
        return data

    def __str__(self):
        if self.is_fp:
            return f"fp(p={self.p},N={self.N})"
        return f"{self.kind.value}(p={self.p},N={self.N},K={self.K},M={self.M})"


@dataclass(frozen=True, eq=False)
class AinfElement:
    """Element of A_inf given by its Teichmüller expansion."""

    model: PerfectoidModel
    series: RingElement

    def _lift(self, other) -> "AinfElement":
        if isinstance(other, int):
            return self.model.scalar(other)
        if other.model != self.model:
            raise ModelMismatch(self.model, other.model)
        return other

    def __add__(self, other):
        return AinfElement(self.model, self.series + self._lift(other).series)

    __radd__ = __add__

    def __sub__(self, other):
        return AinfElement(self.model, self.series - self._lift(other).series)

    def __rsub__(self, other):
        return self._lift(other) - self

    def __neg__(self):
        return AinfElement(self.model, -self.series)

    def __mul__(self, other):
        if isinstance(other, int):
            return AinfElement(self.model, self.series * other)
        return AinfElement(self.model, self.series * self._lift(other).series)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        return AinfElement(self.model, self.series ** n)

    def __eq__(self, other):
        if isinstance(other, int):
            other = self.model.scalar(other)
        if not isinstance(other, AinfElement):
            return NotImplemented
        return self.model == other.model and self.series == other.series

    def __hash__(self):
        return hash((self.model, self.series))

    @property
    def ledger(self) -> PrecisionLedger:
        return self.series.ledger

    def with_ledger(self, ledger: PrecisionLedger) -> "AinfElement":
        return AinfElement(self.model, self.series.with_ledger(ledger))

    def with_budget(self, k: int) -> "AinfElement":
        return AinfElement(self.model, self.series.with_ledger(replace(self.ledger, k=k)))

    def is_zero(self) -> bool:
        return self.series.is_zero()

    def agrees_with(self, other: "AinfElement") -> bool:
        return self.series.agrees_with(self._lift(other).series)

    @property
    def witt(self):
        """Witt coordinates over the tilt at the element's precision."""
        from ..services.ainf import to_witt

        return to_witt(self)

    def to_json(self) -> Dict[str, Any]:
        data = self.series.to_json()
        data["model"] = self.model.to_json()
        return data

    def __str__(self):
        return str(self.series)

    __repr__ = __str__
