"""
Bounded cochain complexes of finitely generated abelian groups.

Degree i carries Z^{n_i} modulo diagonal relations (one modulus per basis
vector, 0 for a free summand); d^i is an n_{i+1} x n_i integer matrix.
"""

from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Sequence, Tuple

from ..core.exceptions import ModelMismatch
from ..utils.smith import Matrix, QuotientStructure, diagonal_relations, matmul, zeros
from .rings import RingKind, RingModel


def _base_modulus(base: RingModel) -> int:
    return base.m if base.kind == RingKind.INTEGERS_MOD_M else 0


def _divisible(value: int, modulus: int) -> bool:
    return value == 0 if modulus == 0 else value % modulus == 0


@dataclass(frozen=True, eq=False)
class FinComplex:
    """C^lo -> C^{lo+1} -> ... -> C^hi."""

    base: RingModel
    lo: int
    moduli: Tuple[Tuple[int, ...], ...]
    differentials: Tuple[Tuple[Tuple[int, ...], ...], ...]
    comparison: Dict[int, Tuple[int, Matrix]] = field(default_factory=dict)

    def __post_init__(self):
        if len(self.moduli) and len(self.differentials) != len(self.moduli) - 1:
            raise ValueError("need one differential between consecutive degrees")
        for offset, d in enumerate(self.differentials):
            rows, cols = len(self.moduli[offset + 1]), len(self.moduli[offset])
            if len(d) != rows or any(len(row) != cols for row in d):
                raise ValueError(f"differential out of degree {self.lo + offset} is not {rows}x{cols}")
            # d must respect the relations of its source
            for j, m in enumerate(self.moduli[offset]):
                if m and not all(_divisible(d[i][j] * m, self.moduli[offset + 1][i]) for i in range(rows)):
                    raise ValueError(f"differential out of degree {self.lo + offset} is not well defined")
        for offset in range(len(self.differentials) - 1):
            square = self.compose(self.lo + offset)
            target = self.moduli[offset + 2]
            if not all(_divisible(square[i][j], target[i]) for i in range(len(square)) for j in range(len(square[i]))):
                raise ValueError(f"d o d is not zero out of degree {self.lo + offset}")

    @classmethod
    def free(cls, base: RingModel, lo: int, ranks: Sequence[int], differentials: Sequence[Matrix]) -> "FinComplex":
        """Complex of free base-modules of the given ranks."""
        if base.kind not in (RingKind.INTEGERS, RingKind.INTEGERS_MOD_M):
            raise ModelMismatch("Integers or IntegersModM", base)
        m = _base_modulus(base)
        moduli = tuple(tuple(m for _ in range(n)) for n in ranks)
        diffs = tuple(tuple(tuple(int(c) for c in row) for row in d) for d in differentials)
        # empty matrices lose their shape; rebuild them from the ranks
        diffs = tuple(
            d if d else tuple(tuple() for _ in range(ranks[k + 1])) for k, d in enumerate(diffs)
        )
        return cls(base, lo, moduli, diffs)

    @property
    def hi(self) -> int:
        return self.lo + len(self.moduli) - 1

    @property
    def degrees(self) -> List[int]:
        return list(range(self.lo, self.hi + 1))

    @property
    def ranks(self) -> List[int]:
        return [len(m) for m in self.moduli]

    @property
    def is_free(self) -> bool:
        return all(m == 0 for mods in self.moduli for m in mods)

    def rank(self, i: int) -> int:
        return len(self.module(i))

    def module(self, i: int) -> Tuple[int, ...]:
        if i < self.lo or i > self.hi:
            return ()
        return self.moduli[i - self.lo]

    def relations(self, i: int) -> List[List[int]]:
        return diagonal_relations(self.module(i))

    def differential(self, i: int) -> Matrix:
        """d^i : C^i -> C^{i+1}, zero outside the range."""
        if self.lo <= i < self.hi:
            return [list(row) for row in self.differentials[i - self.lo]]
        return zeros(self.rank(i + 1), self.rank(i))

    def compose(self, i: int) -> Matrix:
        return matmul(self.differential(i + 1), self.differential(i), inner=self.rank(i + 1))

    def reduce_mod(self, f: int) -> "FinComplex":
        """C/f for a free complex."""
        base = RingModel.integers_mod(abs(f))
        moduli = tuple(tuple(abs(f) for _ in mods) for mods in self.moduli)
        return FinComplex(base, self.lo, moduli, self.differentials)

    def to_json(self) -> Dict[str, Any]:
        return {
            "base": self.base.to_json(),
            "range": [self.lo, self.hi],
            "ranks": self.ranks,
            "moduli": [[str(m) for m in mods] for mods in self.moduli],
            "differentials": [[[str(c) for c in row] for row in d] for d in self.differentials],
        }


@dataclass
class CohomologyReport:
    """H^i = ker d^i / im d^{i-1} with invariant factors and representative cycles."""

    complex: FinComplex
    groups: Dict[int, QuotientStructure]

    def factors(self, i: int) -> List[int]:
        group = self.groups.get(i)
        return list(group.factors) if group else []

    def free_rank(self, i: int) -> int:
        group = self.groups.get(i)
        return group.free_rank if group else 0

    def is_acyclic(self) -> bool:
        return all(group.is_zero() for group in self.groups.values())

    def length(self, i: int, p: int) -> Optional[int]:
        """Length of the p-primary part of H^i; None when H^i has a free part."""
        group = self.groups.get(i)
        if group is None:
            return 0
        if group.free_rank:
            return None
        total = 0
        for f in group.factors:
            while f % p == 0:
                f //= p
                total += 1
        return total

    def to_json(self) -> Dict[str, Any]:
        out = {}
        for i in sorted(self.groups):
            group = self.groups[i]
            out[str(i)] = {
                "factors": [str(f) for f in group.factors],
                "free_rank": group.free_rank,
                "torsion": [str(f) for f in group.torsion],
                "representatives": [[str(c) for c in g] for g in group.generators],
            }
        return {"range": [self.complex.lo, self.complex.hi], "cohomology": out}
