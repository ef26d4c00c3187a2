"""
Generators-and-relations models of the graded rings pi_* TR^r, (TR^r)^hS1,
TC^- and TP over a perfectoid model.

Normal-form monomials are indexed by an integer key k of degree 2k:
u^k for k > 0, v^(-k) for k < 0 (sigma^k for TP). In A[u, v]/(uv - xi_r)
a product u^a v^b reduces to xi_r^min(a,b) times a single monomial.
"""

from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Dict, List, Optional, Tuple

from .ainf import PerfectoidModel


class GradedKind(Enum):
    """Supported graded homotopy rings."""

    TRR_HS1 = "TRr_hS1"
    TRR = "TRr"
    TCMINUS = "TCminus"
    TP = "TP"

    @classmethod
    def parse(cls, text: str) -> "GradedKind":
        aliases = {
            "trr_hs1": cls.TRR_HS1,
            "hs1": cls.TRR_HS1,
            "trr": cls.TRR,
            "tr": cls.TRR,
            "tcminus": cls.TCMINUS,
            "tc-": cls.TCMINUS,
            "tp": cls.TP,
        }
        key = text.strip().lower()
        if key not in aliases:
            raise ValueError(f"unknown graded kind {text}")
        return aliases[key]


@dataclass(frozen=True)
class GradedPresentation:
    """Generators with degrees and relations of one graded ring."""

    kind: GradedKind
    r: int
    model: PerfectoidModel
    generators: Tuple[Tuple[str, int], ...]
    relations: Tuple[str, ...]

    @property
    def has_negative(self) -> bool:
        return self.kind != GradedKind.TRR

    @property
    def witt_coefficients(self) -> bool:
        return self.kind == GradedKind.TRR

    def monomial(self, key: int) -> str:
        """Printed normal-form monomial of degree 2*key."""
        if key == 0:
            return "1"
        if self.kind == GradedKind.TP:
            return "sigma" if key == 1 else f"sigma^{key}"
        suffix = "" if self.kind == GradedKind.TCMINUS else f"_{self.r}"
        name = f"u{suffix}" if key > 0 else f"v{suffix}"
        power = abs(key)
        return name if power == 1 else f"{name}^{power}"

    def to_json(self) -> Dict[str, Any]:
        return {
            "kind": self.kind.value,
            "r": self.r,
            "model": self.model.to_json(),
            "generators": [{"name": name, "degree": degree} for name, degree in self.generators],
            "relations": list(self.relations),
        }


@dataclass(eq=False)
class GradedElement:
    """Finite sum of coefficient * monomial in normal form."""

    presentation: GradedPresentation
    coeffs: Dict[int, Any] = field(default_factory=dict)

    def __post_init__(self):
        self.coeffs = {k: c for k, c in sorted(self.coeffs.items()) if not c.is_zero()}

    def is_zero(self) -> bool:
        return not self.coeffs

    def degrees(self) -> List[int]:
        return [2 * k for k in self.coeffs]

    def is_homogeneous(self, degree: int) -> bool:
        return all(2 * k == degree for k in self.coeffs)

    def coefficient(self, key: int) -> Optional[Any]:
        return self.coeffs.get(key)

    def __str__(self):
        if not self.coeffs:
            return "0"
        return " + ".join(f"({c})*{self.presentation.monomial(k)}" for k, c in self.coeffs.items())

    __repr__ = __str__


@dataclass
class ValidationReport:
    """Per-relation image check of a structure map."""

    map_name: str
    results: List[Dict[str, Any]] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(item["status"] == "pass" for item in self.results)

    def to_json(self) -> Dict[str, Any]:
        return {"map": self.map_name, "passed": self.passed, "relations": self.results}


@dataclass
class GradedMapSpec:
    """Images of generators plus the coefficient semilinearity of a structure map."""

    name: str
    source: GradedPresentation
    target: GradedPresentation
    semilinearity: str
    images: Dict[str, GradedElement]
    printed: bool = True
    validation: Optional[ValidationReport] = None

    @property
    def valid(self) -> bool:
        return self.validation is not None and self.validation.passed

    def to_json(self) -> Dict[str, Any]:
        return {
            "name": self.name,
            "source": {"kind": self.source.kind.value, "r": self.source.r},
            "target": {"kind": self.target.kind.value, "r": self.target.r},
            "semilinearity": self.semilinearity,
            "images": {gen: str(img) for gen, img in sorted(self.images.items())},
            "printed": self.printed,
            "validation": self.validation.to_json() if self.validation else None,
        }


@dataclass
class ModuleDescriptor:
    """One homogeneous component: base ring, generator monomial, annihilator.

    `factors` are the numeric invariants for the fp model: p-powers for cyclic
    summands and 0 for a copy of Z_p; None when only a symbolic description
    is available.
    """

    degree: int
    base: str
    generator: str
    annihilator: str
    factors: Optional[List[int]] = None
    notes: Dict[str, Any] = field(default_factory=dict)

    @property
    def is_zero(self) -> bool:
        return self.generator == "0" or self.factors == []

    def module_label(self, p: Optional[int] = None) -> str:
        if self.factors is None:
            return "0" if self.generator == "0" else f"{self.base}/({self.annihilator})"
        if not self.factors:
            return "0"
        parts = [f"Z_{p}" if f == 0 else f"Z/{f}" for f in self.factors]
        return " + ".join(parts)

    def to_json(self, p: Optional[int] = None) -> Dict[str, Any]:
        data = {
            "degree": self.degree,
            "module": self.module_label(p),
            "base": self.base,
            "generator": self.generator,
            "annihilator": self.annihilator,
            "factors": None if self.factors is None else [str(f) for f in self.factors],
        }
        if self.notes:
            data["notes"] = self.notes
        return data


@dataclass
class TowerSpec:
    """Tower M_{r0} <- M_{r0+1} <- ... of finitely generated modules.

    Each module is a direct sum of cyclic groups Z/m (m = 0 for a free
    summand); transitions[s] is the integer matrix of M_{s+1} -> M_s.
    """

    degree: int
    levels: List[int]
    transition: str
    modules: Dict[int, List[int]]
    transitions: Dict[int, List[List[int]]]
    precision: int
    p: int
    label: str = ""

    def to_json(self) -> Dict[str, Any]:
        return {
            "degree": self.degree,
            "levels": [self.levels[0], self.levels[-1]],
            "transition": self.transition,
            "label": self.label,
            "precision": self.precision,
            "modules": {str(s): [str(m) for m in self.modules[s]] for s in self.levels},
        }


@dataclass
class TowerLimit:
    """lim and lim^1 of a tower together with the certificate that produced them."""

    tower: TowerSpec
    lim: List[int]
    lim1: List[int]
    certified_level: int
    stable_orders: Dict[int, int]

    def to_json(self) -> Dict[str, Any]:
        p = self.tower.p

        def label(factors: List[int]) -> str:
            if not factors:
                return "0"
            return " + ".join(f"Z/{f}" if f else f"Z_{p}" for f in factors)

        return {
            "tower": self.tower.to_json(),
            "lim": label(self.lim),
            "lim1": label(self.lim1),
            "lim_factors": [str(f) for f in self.lim],
            "certified_level": self.certified_level,
            "stable_orders": {str(s): str(o) for s, o in sorted(self.stable_orders.items())},
        }
