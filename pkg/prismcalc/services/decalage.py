"""
Décalage service: cohomology of finite complexes, eta_f, Bockstein
complexes, truncations, crystalline complexes of polynomial rings and the
Cartier check.

Everything runs on integer matrices through the Smith normal form engine in
utils.smith; complexes over Z/p^N are handled on integer lifts.
"""

from dataclasses import replace
from itertools import combinations, product
from typing import Any, Dict, List, Optional, Sequence, Tuple

import numpy as np

from ..core.exceptions import NotNonZeroDivisor, TorsionPresent, UnsupportedBase, WindowTooSmall
from ..core.logging import logger
from ..core.structured_logging import complex_logger
from ..models.complexes import CohomologyReport, FinComplex
from ..models.reports import IsoReport
from ..models.rings import RingKind, RingModel
from ..utils.smith import (
    Lattice,
    Matrix,
    columns,
    from_columns,
    invariant_factors,
    is_unimodular,
    kernel_modulo,
    lattice_quotient,
    matmul,
    matvec,
    preimage,
    solve_integral,
    transpose,
)
from .sampling import random_int


def _freeze(matrix: Matrix) -> Tuple[Tuple[int, ...], ...]:
    return tuple(tuple(int(c) for c in row) for row in matrix)


# Cohomology

def cohomology(C: FinComplex) -> CohomologyReport:
    """H^i = (d^i)^-1(relations) / (im d^{i-1} + relations) in every degree."""
    if C.base.kind not in (RingKind.INTEGERS, RingKind.INTEGERS_MOD_M):
        raise UnsupportedBase("cohomology", C.base)
    groups = {}
    for i in C.degrees:
        n = C.rank(i)
        cycles = preimage(C.differential(i), C.rank(i + 1), n, C.relations(i + 1))
        incoming = columns(C.differential(i - 1), C.rank(i - 1))
        groups[i] = lattice_quotient(cycles, incoming + C.relations(i))
    report = CohomologyReport(C, groups)
    complex_logger.event(
        "cohomology_computed", range=[C.lo, C.hi], factors={i: report.factors(i) for i in groups}
    )
    return report


def class_coordinates(report: CohomologyReport, degree: int, cycle: Sequence[int]) -> List[int]:
    """Coordinates of the class of a cycle on the report's generators."""
    if degree not in report.groups:
        raise ValueError(f"degree {degree} is outside the complex")
    return report.groups[degree].class_coordinates(list(cycle))


# Décalage

def _require_torsion_free(C: FinComplex, f: int) -> None:
    if f == 0:
        raise NotNonZeroDivisor(f, "zero is a zero divisor")
    if C.base.kind != RingKind.INTEGERS or not C.is_free:
        raise TorsionPresent(C.base)


def _divisible_kernel(C: FinComplex, i: int, modulus: int) -> List[List[int]]:
    """Basis of {y in C^i : d y in modulus C^{i+1}}."""
    return kernel_modulo(C.differential(i), C.rank(i + 1), C.rank(i), modulus).basis


def eta(C: FinComplex, f: int) -> FinComplex:
    """eta_f C with (eta_f C)^i = f^i K^i, K^i = {y : d y in f C^{i+1}}.

    The new differential is B_{i+1}^-1 (d B_i / f); the comparison map into C
    is recorded per degree as (exponent of f, B_i).
    """
    _require_torsion_free(C, f)
    bases = {i: _divisible_kernel(C, i, abs(f)) for i in C.degrees}
    diffs = []
    for i in C.degrees[:-1]:
        d = C.differential(i)
        images = []
        for b in bases[i]:
            y = matvec(d, b)
            images.append([c // f for c in y])
        diffs.append(solve_integral(bases[i + 1], C.rank(i + 1), images))
    result = FinComplex.free(C.base, C.lo, C.ranks, diffs)
    comparison = {i: (i, from_columns(bases[i], C.rank(i))) for i in C.degrees}
    complex_logger.event("eta_built", f=f, range=[C.lo, C.hi], ranks=C.ranks)
    return replace(result, comparison=comparison)


def bockstein_complex(C: FinComplex, f: int) -> FinComplex:
    """Degrees H^i(C/f) with the Bockstein differential lift, d, divide by f."""
    _require_torsion_free(C, f)
    if abs(f) == 1:
        return FinComplex(RingModel.integers(), C.lo, tuple(() for _ in C.degrees), tuple(() for _ in C.degrees[:-1]))
    mod_f = cohomology(C.reduce_mod(f))
    moduli = tuple(tuple(mod_f.factors(i)) for i in C.degrees)
    diffs = []
    for i in C.degrees[:-1]:
        d = C.differential(i)
        cols = []
        for g in mod_f.groups[i].generators:
            y = [c // f for c in matvec(d, g)]
            cols.append(mod_f.groups[i + 1].class_coordinates(y))
        diffs.append(_freeze(from_columns(cols, len(moduli[i + 1 - C.lo]))))
    # the constructor re-checks beta o beta = 0
    return FinComplex(RingModel.integers_mod(abs(f)), C.lo, moduli, tuple(diffs))


def eta_mod_vs_bockstein(C: FinComplex, f: int) -> IsoReport:
    """Compare H^*(eta_f C / f) with the cohomology of the Bockstein complex."""
    if abs(f) < 2:
        raise ValueError("comparison needs a non-unit f")
    left = cohomology(eta(C, f).reduce_mod(f))
    right = cohomology(bockstein_complex(C, f))
    report = IsoReport(f"eta_mod_vs_bockstein f={f}")
    for i in C.degrees:
        lhs, rhs = left.factors(i), right.factors(i)
        report.record(f"H^{i}", lhs == rhs, f"{lhs} != {rhs}")
        report.details[str(i)] = {"eta_mod_f": [str(x) for x in lhs], "bockstein": [str(x) for x in rhs]}
    if not report.passed:
        logger.error(f"eta mod f and Bockstein cohomology disagree for f={f}: {report.counterexamples}")
    return report


def eta_multiplicativity(C: FinComplex, f: int, g: int) -> IsoReport:
    """eta_f(eta_g C) and eta_{fg} C are the same sublattices of C, compatibly with d."""
    inner = eta(C, g)
    iterated = eta(inner, f)
    direct = eta(C, f * g)
    report = IsoReport(f"eta_multiplicativity f={f} g={g}")
    transforms = {}
    for i in C.degrees:
        n = C.rank(i)
        composite = matmul(inner.comparison[i][1], iterated.comparison[i][1], inner=n)
        target = direct.comparison[i][1]
        same = Lattice(columns(composite, n), n) == Lattice(columns(target, n), n)
        report.record(f"lattice_{i}", same, f"degree {i}")
        if not same:
            continue
        U = solve_integral(columns(target, n), n, columns(composite, n))
        transforms[i] = U
        report.record(f"unimodular_{i}", is_unimodular(U) if n else True, U)
    for i in C.degrees[:-1]:
        if i in transforms and i + 1 in transforms:
            lhs = matmul(transforms[i + 1], iterated.differential(i), inner=C.rank(i + 1))
            rhs = matmul(direct.differential(i), transforms[i], inner=C.rank(i))
            report.record(f"chain_map_{i}", lhs == rhs, f"degree {i}")
    return report


def stage_lattices(C: FinComplex, f: int, i: int) -> Dict[int, Dict[str, Any]]:
    """Lattices f^a C^j cap d^-1(f^b C^{j+1}) with a = max(j, i), b = max(j + 1, i).

    Stage i = lo recovers eta_f C; the lattice is reported as f^a times the
    basis of {y : d y in f^(b-a) C^{j+1}}.
    """
    _require_torsion_free(C, f)
    out = {}
    for j in C.degrees:
        a, b = max(j, i), max(j + 1, i)
        basis = _divisible_kernel(C, j, abs(f) ** (b - a))
        n = C.rank(j)
        index = 1
        for factor in invariant_factors(from_columns(basis, n), n, len(basis)):
            index *= factor
        out[j] = {
            "exponent": a,
            "basis": [[str(c) for c in vec] for vec in basis],
            "relative_index": str(index),
        }
    return out


# Truncations

def _require_integral(C: FinComplex, operation: str) -> None:
    if C.base.kind != RingKind.INTEGERS or not C.is_free:
        raise UnsupportedBase(operation, C.base)


def _kernel_basis(C: FinComplex, i: int) -> List[List[int]]:
    return kernel_modulo(C.differential(i), C.rank(i + 1), C.rank(i), 0).basis


def truncate(C: FinComplex, mode: str, a: int, b: Optional[int] = None) -> FinComplex:
    """tau_leq(a), or window(a, b) = (im d^{a-1} -> C^a -> ... -> ker d^b)."""
    _require_integral(C, "truncate")
    if mode == "tau_leq":
        if a >= C.hi:
            return C
        if a < C.lo:
            return FinComplex(C.base, C.lo, (), ())
        kernel = _kernel_basis(C, a)
        ranks = C.ranks[: a - C.lo] + [len(kernel)]
        diffs = [C.differential(i) for i in range(C.lo, a - 1)]
        if a > C.lo:
            diffs.append(solve_integral(kernel, C.rank(a), columns(C.differential(a - 1), C.rank(a - 1))))
        return FinComplex.free(C.base, C.lo, ranks, diffs)
    if mode == "window":
        if b is None or b < a:
            raise ValueError("window needs a <= b")
        image = Lattice(columns(C.differential(a - 1), C.rank(a - 1)), C.rank(a)).basis
        kernel = _kernel_basis(C, b)
        ranks = [len(image)] + [C.rank(i) for i in range(a, b)] + [len(kernel)]
        if a == b:
            diffs = [solve_integral(kernel, C.rank(b), image)]
        else:
            diffs = [from_columns(image, C.rank(a))]
            diffs += [C.differential(i) for i in range(a, b - 1)]
            diffs.append(solve_integral(kernel, C.rank(b), columns(C.differential(b - 1), C.rank(b - 1))))
        return FinComplex.free(C.base, a - 1, ranks, diffs)
    raise ValueError(f"unknown truncation mode {mode}")


# Crystalline complexes of polynomial rings

Form = Tuple[Tuple[int, ...], Tuple[int, ...]]


def form_weight(form: Form) -> int:
    exponents, wedge = form
    return sum(exponents) + len(wedge)


def form_label(form: Form) -> str:
    exponents, wedge = form
    n = len(exponents)
    names = ["x"] if n == 1 else [f"x{k + 1}" for k in range(n)]
    parts = []
    for k, e in enumerate(exponents):
        if e:
            parts.append(names[k] if e == 1 else f"{names[k]}^{e}")
    if wedge:
        parts.append("^".join(f"d{names[k]}" for k in wedge))
    return " ".join(parts) if parts else "1"


def crystalline_basis(nvars: int, cap: int, weight: Optional[int] = None) -> Dict[int, List[Form]]:
    """Monomial forms x^a dx_I of weight |a| + |I| <= cap, ordered by weight then lexicographically."""
    if nvars not in (1, 2):
        raise ValueError("crystalline complexes support one or two variables")
    if cap < 0:
        raise ValueError("degree cap must be non-negative")
    out: Dict[int, List[Form]] = {}
    for q in range(nvars + 1):
        forms = []
        for wedge in combinations(range(nvars), q):
            for exponents in product(range(cap + 1), repeat=nvars):
                form = (tuple(exponents), tuple(wedge))
                w = form_weight(form)
                if w <= cap and (weight is None or w == weight):
                    forms.append(form)
        out[q] = sorted(forms, key=lambda fm: (form_weight(fm), fm[0], fm[1]))
    return out


def _exterior_derivative(source: List[Form], target: List[Form]) -> Matrix:
    index = {form: row for row, form in enumerate(target)}
    matrix = [[0] * len(source) for _ in target]
    for col, (exponents, wedge) in enumerate(source):
        for k, e in enumerate(exponents):
            if not e or k in wedge:
                continue
            lowered = tuple(x - (1 if t == k else 0) for t, x in enumerate(exponents))
            sign = -1 if sum(1 for t in wedge if t < k) % 2 else 1
            matrix[index[(lowered, tuple(sorted(wedge + (k,))))]][col] += sign * e
    return matrix


def crystalline_complex(
    p: int, nvars: int, cap: int, precision: int, integral: bool = False, weight: Optional[int] = None
) -> FinComplex:
    """de Rham complex of Z_p[x_1..x_n] in weights <= cap, mod p^precision unless integral."""
    basis = crystalline_basis(nvars, cap, weight)
    base = RingModel.integers() if integral else RingModel.integers_mod(p ** precision)
    diffs = [_exterior_derivative(basis[q], basis[q + 1]) for q in range(nvars)]
    complex_logger.event("crystalline_built", p=p, nvars=nvars, cap=cap, ranks=[len(basis[q]) for q in basis])
    return FinComplex.free(base, 0, [len(basis[q]) for q in range(nvars + 1)], diffs)


def _cartier_image(form: Form, p: int) -> Form:
    exponents, wedge = form
    return tuple(p * e + (p - 1 if k in wedge else 0) for k, e in enumerate(exponents)), wedge


def cartier_check(p: int, nvars: int, cap: int) -> IsoReport:
    """Inverse Cartier x^a dx_I -> class of x^{pa} prod x_k^{p-1} dx_I is bijective in the window."""
    if cap < p:
        raise WindowTooSmall(cap, p)
    basis = crystalline_basis(nvars, cap)
    C = crystalline_complex(p, nvars, cap, 1)
    H = cohomology(C)
    report = IsoReport(f"cartier n={nvars} p={p} D={cap}")
    for q in range(nvars + 1):
        index = {form: k for k, form in enumerate(basis[q])}
        sources = [form for form in basis[q] if p * form_weight(form) <= cap]
        coords = []
        for form in sources:
            vector = [0] * len(basis[q])
            vector[index[_cartier_image(form, p)]] = 1
            boundary = matvec(C.differential(q), vector)
            if report.record(f"cycle_{q}", all(c % p == 0 for c in boundary), form_label(form)):
                coords.append(class_coordinates(H, q, vector))
        target_dim = len(H.factors(q))
        report.record(f"dimension_{q}", len(sources) == target_dim, f"{len(sources)} forms vs {target_dim} classes")
        if sources and len(coords) == len(sources) == target_dim:
            diagonal = invariant_factors(from_columns(coords, target_dim), target_dim, len(sources))
            report.record(f"bijective_{q}", all(d % p for d in diagonal), diagonal)
        report.details[str(q)] = {
            "forms": [form_label(form) for form in sources],
            "classes": target_dim,
        }
    return report


# Random complexes for property checks

def random_complex(
    rng: np.random.Generator, ranks: Sequence[int], bound: int = 3, lo: int = 0, scale: int = 1
) -> FinComplex:
    """Random free integer complex; each differential is drawn from the left kernel of the previous one."""
    diffs: List[Matrix] = []
    for k in range(len(ranks) - 1):
        rows, cols = ranks[k + 1], ranks[k]
        if not diffs:
            d = [[scale * random_int(rng, -bound, bound + 1) for _ in range(cols)] for _ in range(rows)]
        else:
            prev = diffs[-1]
            left = kernel_modulo(transpose(prev, ranks[k], ranks[k - 1]), ranks[k - 1], ranks[k], 0).basis
            d = []
            for _ in range(rows):
                coeffs = [scale * random_int(rng, -bound, bound + 1) for _ in left]
                d.append([sum(c * vec[t] for c, vec in zip(coeffs, left)) for t in range(cols)])
        diffs.append(d)
    return FinComplex.free(RingModel.integers(), lo, list(ranks), diffs)
