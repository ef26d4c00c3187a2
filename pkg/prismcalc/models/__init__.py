"""
Domain models package - immutable values shared by the services
"""

from .ainf import AinfElement, PerfectoidKind, PerfectoidModel
from .complexes import CohomologyReport, FinComplex
from .drw import DRWElement
from .graded import GradedElement, GradedKind, GradedMapSpec, GradedPresentation, ModuleDescriptor, TowerLimit, TowerSpec
from .reports import IsoReport, RankComparison
from .rings import Exponent, PrecisionLedger, RingElement, RingKind, RingModel
from .witt import GhostVector, WittPolynomialTable, WittVector

__all__ = [
    "AinfElement",
    "CohomologyReport",
    "DRWElement",
    "Exponent",
    "FinComplex",
    "GhostVector",
    "GradedElement",
    "GradedKind",
    "GradedMapSpec",
    "GradedPresentation",
    "IsoReport",
    "ModuleDescriptor",
    "PerfectoidKind",
    "PerfectoidModel",
    "PrecisionLedger",
    "RankComparison",
    "RingElement",
    "RingKind",
    "RingModel",
    "TowerLimit",
    "TowerSpec",
    "WittPolynomialTable",
    "WittVector",
]
