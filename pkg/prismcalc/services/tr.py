"""
Graded TR service: presentations, structure maps with relation checks,
homotopy groups, TC fibers and towers with lim / lim^1.

Numeric group computations are only available for the fp model, where every
component is a cyclic Z_p-module and maps are multiplications by integers.
"""

from math import gcd
from typing import Any, Callable, Dict, List, Sequence, Tuple

from ..core.exceptions import InvalidMapSpec, NonStabilized, UnsupportedModel
from ..core.logging import logger
from ..core.structured_logging import graded_logger
from ..models.ainf import AinfElement, PerfectoidModel
from ..models.graded import (
    GradedElement,
    GradedKind,
    GradedMapSpec,
    GradedPresentation,
    ModuleDescriptor,
    TowerLimit,
    TowerSpec,
    ValidationReport,
)
from ..models.reports import IsoReport
from ..models.rings import p_valuation
from ..models.witt import WittVector
from ..utils.smith import Lattice, diagonal_relations, identity, lattice_quotient, matmul, preimage
from .ainf import from_witt, frobenius_phi, phi_power_xi, theta_r, xi_r, xi_tilde_r
from .witt import witt_from_integer, witt_operator


MAP_NAMES = ("Res", "F", "can", "phi_hS1", "quotient_by_v", "Res_TR", "F_TR")
TC_VARIANTS = ("TC_r", "TCtilde_r", "TC^r")


# Presentations and arithmetic

def presentation(kind: GradedKind, r: int, model: PerfectoidModel) -> GradedPresentation:
    """Generators, degrees and relations of the graded ring at level r."""
    if r < 0:
        raise ValueError("level must be non-negative")
    if kind == GradedKind.TCMINUS:
        return GradedPresentation(kind, 1, model, (("u", 2), ("v", -2)), ("u*v = xi",))
    if kind == GradedKind.TP:
        return GradedPresentation(kind, r, model, (("sigma", 2), ("sigma^-1", -2)), ())
    if kind == GradedKind.TRR:
        if r < 1:
            raise ValueError("TR needs level >= 1")
        return GradedPresentation(kind, r, model, ((f"u_{r}", 2),), ())
    return GradedPresentation(kind, r, model, ((f"u_{r}", 2), (f"v_{r}", -2)), (f"u_{r}*v_{r} = xi_{r}",))


def _one(pres: GradedPresentation):
    model = pres.model
    if pres.witt_coefficients:
        return witt_from_integer(1, model.p, pres.r, model.residue_ring)
    return model.one()


def _relation_element(pres: GradedPresentation) -> AinfElement:
    return xi_r(pres.model, pres.r)


def monomial(pres: GradedPresentation, key: int, coeff: Any = None) -> GradedElement:
    if key < 0 and not pres.has_negative:
        raise ValueError(f"{pres.kind.value} has no negative degrees")
    return GradedElement(pres, {key: _one(pres) if coeff is None else coeff})


def graded_add(a: GradedElement, b: GradedElement) -> GradedElement:
    coeffs = dict(a.coeffs)
    for k, c in b.coeffs.items():
        coeffs[k] = coeffs[k] + c if k in coeffs else c
    return GradedElement(a.presentation, coeffs)


def graded_neg(a: GradedElement) -> GradedElement:
    return GradedElement(a.presentation, {k: -c for k, c in a.coeffs.items()})


def graded_sub(a: GradedElement, b: GradedElement) -> GradedElement:
    return graded_add(a, graded_neg(b))


def graded_scale(a: GradedElement, c: Any) -> GradedElement:
    return GradedElement(a.presentation, {k: c * x for k, x in a.coeffs.items()})


def graded_mul(a: GradedElement, b: GradedElement) -> GradedElement:
    """Product in normal form; u^a * v^b picks up xi_r^min(a, b)."""
    pres = a.presentation
    out: Dict[int, Any] = {}
    for ka, ca in a.coeffs.items():
        for kb, cb in b.coeffs.items():
            c = ca * cb
            if pres.kind in (GradedKind.TRR_HS1, GradedKind.TCMINUS) and ka * kb < 0:
                c = c * _relation_element(pres) ** min(abs(ka), abs(kb))
            key = ka + kb
            out[key] = out[key] + c if key in out else c
    return GradedElement(pres, out)


def graded_pow(a: GradedElement, n: int) -> GradedElement:
    result = monomial(a.presentation, 0)
    for _ in range(n):
        result = graded_mul(result, a)
    return result


# Structure maps

def _coefficient_map(semilinearity: str) -> Callable[[Any], Any]:
    if semilinearity == "A-linear":
        return lambda c: c
    if semilinearity.startswith("phi^"):
        k = int(semilinearity[4:])
        return lambda c: frobenius_phi(c, k)
    if semilinearity.startswith("theta_"):
        r = int(semilinearity[6:])
        return lambda c: theta_r(c, r)
    if semilinearity in ("R", "F"):
        return lambda c: witt_operator(c, semilinearity)
    raise ValueError(f"unknown semilinearity {semilinearity}")


def apply_map(spec: GradedMapSpec, x: GradedElement) -> GradedElement:
    """Image of a graded element under a semilinear structure map."""
    sigma = _coefficient_map(spec.semilinearity)
    up, down = spec.source.generators[0][0], (spec.source.generators[1][0] if len(spec.source.generators) > 1 else None)
    total = GradedElement(spec.target, {})
    for k, c in x.coeffs.items():
        if k >= 0:
            image = graded_pow(spec.images[up], k)
        else:
            image = graded_pow(spec.images[down], -k)
        total = graded_add(total, graded_scale(image, sigma(c)))
    return total


def validate_relation(spec: GradedMapSpec) -> ValidationReport:
    """Check generator degrees and that every source relation maps to zero."""
    report = ValidationReport(spec.name)
    for gen, degree in spec.source.generators:
        image = spec.images[gen]
        ok = image.is_homogeneous(degree)
        report.results.append(
            {"relation": f"deg {gen} = {degree}", "status": "pass" if ok else "fail", "residue": str(image.degrees())}
        )
    if spec.source.relations:
        (u, _), (v, _) = spec.source.generators
        lhs = graded_mul(spec.images[u], spec.images[v])
        rhs = monomial(spec.target, 0, _coefficient_map(spec.semilinearity)(_relation_element(spec.source)))
        residue = graded_sub(lhs, rhs)
        report.results.append(
            {
                "relation": spec.source.relations[0],
                "status": "pass" if residue.is_zero() else "fail",
                "residue": str(residue),
            }
        )
    return report


def structure_map(name: str, level: int, model: PerfectoidModel, override: bool = False) -> GradedMapSpec:
    """Structure map out of the level-`level` ring, validated on construction.

    Res and F (and their plain TR versions) go to level - 1; can and phi_hS1
    go to TP; quotient_by_v goes to TR at the same level. With `override`,
    phi_hS1 at level >= 2 uses v -> xi~_L sigma^-1 and is marked non-printed.
    """
    if name not in MAP_NAMES:
        raise ValueError(f"unknown structure map {name}; choose from {', '.join(MAP_NAMES)}")
    if level < 1 or (name in ("Res", "F", "Res_TR", "F_TR") and level < 2):
        raise ValueError(f"{name} needs a larger source level, got {level}")
    printed = True
    if name in ("Res", "F"):
        source = presentation(GradedKind.TRR_HS1, level, model)
        target = presentation(GradedKind.TRR_HS1, level - 1, model)
        u, v = monomial(target, 1), monomial(target, -1)
        if name == "Res":
            semilinearity = "A-linear"
            images = {f"u_{level}": graded_scale(u, phi_power_xi(model, -(level - 1))), f"v_{level}": v}
        else:
            semilinearity = "phi^1"
            images = {f"u_{level}": u, f"v_{level}": graded_scale(v, phi_power_xi(model, 1))}
    elif name in ("can", "phi_hS1"):
        source = presentation(GradedKind.TRR_HS1, level, model)
        target = presentation(GradedKind.TP, level, model)
        sigma, sigma_inv = monomial(target, 1), monomial(target, -1)
        if name == "can":
            semilinearity = "A-linear"
            images = {f"u_{level}": graded_scale(sigma, xi_r(model, level)), f"v_{level}": sigma_inv}
        else:
            semilinearity = f"phi^{level}"
            if level == 1:
                factor = phi_power_xi(model, 1)
            elif override:
                factor, printed = xi_tilde_r(model, level), False
            else:
                factor = xi_tilde_r(model, level - 1)
            images = {f"u_{level}": sigma, f"v_{level}": graded_scale(sigma_inv, factor)}
    elif name == "quotient_by_v":
        source = presentation(GradedKind.TRR_HS1, level, model)
        target = presentation(GradedKind.TRR, level, model)
        semilinearity = f"theta_{level}"
        images = {f"u_{level}": monomial(target, 1), f"v_{level}": GradedElement(target, {})}
    else:
        source = presentation(GradedKind.TRR, level, model)
        target = presentation(GradedKind.TRR, level - 1, model)
        u = monomial(target, 1)
        if name == "Res_TR":
            semilinearity = "R"
            images = {f"u_{level}": graded_scale(u, theta_r(phi_power_xi(model, -(level - 1)), level - 1))}
        else:
            semilinearity = "F"
            images = {f"u_{level}": u}

    spec = GradedMapSpec(name, source, target, semilinearity, images, printed=printed)
    spec.validation = validate_relation(spec)
    graded_logger.event("structure_map", map=name, level=level, model=str(model), valid=spec.valid, printed=printed)
    if not spec.valid:
        logger.warning(f"Structure map {name} at level {level} fails relation check over {model}")
    return spec


# Homotopy groups

def _require_fp(operation: str, model: PerfectoidModel) -> None:
    if not model.is_fp:
        raise UnsupportedModel(operation, model)


def _moduli(kind: GradedKind, r: int, degree: int, model: PerfectoidModel) -> List[int]:
    """Cyclic moduli of pi_degree for the fp model (0 = Z_p)."""
    if degree % 2:
        return []
    if kind == GradedKind.TRR:
        return [model.p ** r] if degree >= 0 else []
    return [0]


def homotopy_group(kind: GradedKind, r: int, degree: int, model: PerfectoidModel) -> ModuleDescriptor:
    """Descriptor of pi_degree of the graded ring at level r."""
    pres = presentation(kind, r, model)
    p = model.p
    numeric = model.is_fp
    if degree % 2 or (kind == GradedKind.TRR and degree < 0):
        return ModuleDescriptor(degree, "0", "0", "1", [] if numeric else None)
    i = degree // 2
    factors = _moduli(kind, pres.r, degree, model) if numeric else None
    if kind == GradedKind.TRR:
        notes = {"identification": f"W_{pres.r}(F_{p}) = Z/{p ** pres.r}"} if numeric else {}
        return ModuleDescriptor(degree, f"W_{pres.r}(O)", pres.monomial(i), "0", factors, notes)
    notes: Dict[str, Any] = {}
    if kind != GradedKind.TP:
        if i >= 0:
            notes["embedding"] = f"p^{pres.r * i} Z_{p}" if numeric else f"xi_{pres.r}^{i} A_inf"
        else:
            notes["embedding"] = f"Z_{p}" if numeric else "A_inf"
    return ModuleDescriptor(degree, "A_inf", pres.monomial(i), "0", factors, notes)


# Kernels and cokernels of maps between sums of cyclic groups

def localize(factors: Sequence[int], p: int) -> List[int]:
    """Keep the p-primary part of cyclic invariants; free summands stay free."""
    out = []
    for f in factors:
        if f == 0:
            out.append(0)
            continue
        v = p_valuation(f, p)
        if v:
            out.append(p ** v)
    return sorted(out, key=lambda f: (f == 0, f))


def kernel_cokernel(
    source: Sequence[int], target: Sequence[int], matrix: List[List[int]], p: int
) -> Tuple[List[int], List[int]]:
    """p-local invariants of ker and coker of Z^n/(source) -> Z^m/(target)."""
    n, m = len(source), len(target)
    if n == 0:
        return [], localize(target, p)
    if m == 0:
        return localize(source, p), []
    source_rel = diagonal_relations(source)
    target_rel = diagonal_relations(target)
    kernel = preimage(matrix, m, n, target_rel)
    ker = lattice_quotient(kernel, source_rel)
    image = [[matrix[i][j] for i in range(m)] for j in range(n)] + target_rel
    coker = lattice_quotient(Lattice(identity(m), m, independent=True), image)
    return localize(ker.factors, p), localize(coker.factors, p)


def _as_integer(c: Any, model: PerfectoidModel) -> int:
    if isinstance(c, WittVector):
        if c.length == 0:
            return 0
        return from_witt(c, model).series.constant()
    return c.series.constant()


def map_multiplier(spec: GradedMapSpec, degree: int) -> int:
    """Integer by which a map acts on the generator of pi_degree (fp model)."""
    key = degree // 2
    image = apply_map(spec, monomial(spec.source, key))
    coeff = image.coefficient(key)
    return 0 if coeff is None else _as_integer(coeff, spec.source.model)


def _require_valid(specs: Sequence[GradedMapSpec]) -> None:
    for spec in specs:
        if not spec.valid:
            residues = [item["residue"] for item in spec.validation.results if item["status"] == "fail"]
            raise InvalidMapSpec(spec.name, residues)


def tc_maps(variant: str, r: int, model: PerfectoidModel, override: bool = False) -> Tuple[GradedMapSpec, GradedMapSpec]:
    """The pair of maps whose difference defines the fiber."""
    if variant == "TC_r":
        pair = structure_map("Res_TR", r + 1, model), structure_map("F_TR", r + 1, model)
    elif variant == "TCtilde_r":
        pair = structure_map("Res", r + 1, model), structure_map("F", r + 1, model)
    elif variant == "TC^r":
        pair = structure_map("can", r, model), structure_map("phi_hS1", r, model, override=override)
    else:
        raise ValueError(f"unknown TC variant {variant}; choose from {', '.join(TC_VARIANTS)}")
    _require_valid(pair)
    return pair


def tc_fiber_groups(variant: str, degree: int, r: int, model: PerfectoidModel, override: bool = False) -> ModuleDescriptor:
    """pi_degree of the fiber of (first - second) on graded homotopy.

    pi_2i is the kernel and pi_{2i-1} the cokernel of the difference on pi_2i.
    """
    _require_fp("tc_fiber_groups", model)
    first, second = tc_maps(variant, r, model, override)
    p = model.p
    even = degree if degree % 2 == 0 else degree + 1
    source = _moduli(first.source.kind, first.source.r, even, model)
    target = _moduli(first.target.kind, first.target.r, even, model)
    multiplier = 0
    if source and target:
        multiplier = map_multiplier(first, even) - map_multiplier(second, even)
    matrix = [[multiplier] for _ in target]
    ker, coker = kernel_cokernel(source, target, matrix, p)
    factors = ker if degree % 2 == 0 else coker
    graded_logger.event("tc_fiber", variant=variant, degree=degree, r=r, multiplier=multiplier, factors=factors)
    generator = "0" if not factors else first.source.monomial(even // 2)
    return ModuleDescriptor(
        degree,
        "Z_p",
        generator,
        "0",
        factors,
        {"variant": variant, "multiplier": str(multiplier), "part": "kernel" if degree % 2 == 0 else "cokernel",
         "printed": first.printed and second.printed},
    )


# Towers

def _reduce_tower(tower: TowerSpec) -> Dict[int, List[int]]:
    cap = tower.p ** tower.precision
    return {s: [gcd(m, cap) for m in mods] for s, mods in tower.modules.items()}


def _composite(tower: TowerSpec, s: int, t: int) -> List[List[int]]:
    result = identity(len(tower.modules[s]))
    for level in range(s, t):
        result = matmul(result, tower.transitions[level], inner=len(tower.modules[level]))
    return result


def _image_order(matrix: List[List[int]], moduli: List[int], cols: int) -> Tuple[int, List[int]]:
    dim = len(moduli)
    rel = diagonal_relations(moduli)
    gens = [[matrix[i][j] for i in range(dim)] for j in range(cols)]
    quotient = lattice_quotient(Lattice(gens + rel, dim), rel)
    order = quotient.order()
    return order, quotient.factors


def shift_cokernel(tower: TowerSpec, start: int) -> List[int]:
    """Cokernel of (x_t) -> (x_t - f_t x_{t+1}) on the levels from `start`, p-localized."""
    moduli = _reduce_tower(tower)
    window = [s for s in tower.levels if s >= start]
    offsets: Dict[int, int] = {}
    dim = 0
    for t in window[:-1]:
        offsets[t] = dim
        dim += len(moduli[t])
    if not dim:
        return []
    gens = []
    for t in window:
        for j in range(len(moduli[t])):
            v = [0] * dim
            if t in offsets:
                v[offsets[t] + j] += 1
            if t - 1 in offsets:
                below = tower.transitions[t - 1]
                for i in range(len(moduli[t - 1])):
                    v[offsets[t - 1] + i] -= below[i][j]
            gens.append(v)
    rel = diagonal_relations([m for t in window[:-1] for m in moduli[t]])
    quotient = lattice_quotient(Lattice(identity(dim), dim, independent=True), gens + rel)
    return localize(quotient.factors, tower.p)


def tower_limlim1(tower: TowerSpec) -> TowerLimit:
    """lim and lim^1 from certified image chains of the tower reduced mod p^N.

    A level is certified when its image chain is constant over its last two
    steps; lim is the stable image at the first certified level from which
    the stable orders stay constant. lim^1 is the cokernel of id - shift
    over the certified window.
    """
    moduli = _reduce_tower(tower)
    levels = tower.levels
    last = levels[-1]
    stable: Dict[int, int] = {}
    stable_factors: Dict[int, List[int]] = {}
    for s in levels:
        chain = []
        factors: List[int] = []
        for t in range(s, last + 1):
            order, factors = _image_order(_composite(tower, s, t), moduli[s], len(moduli[t]))
            chain.append(order)
        if len(chain) >= 3 and chain[-1] == chain[-2]:
            stable[s] = chain[-1]
            stable_factors[s] = factors
    certified = sorted(stable)
    for idx, s in enumerate(certified):
        rest = certified[idx:]
        consecutive = rest == list(range(s, s + len(rest)))
        if len(rest) >= 2 and consecutive and all(stable[t] == stable[s] for t in rest):
            lim1 = shift_cokernel(tower, s)
            result = TowerLimit(tower, localize(stable_factors[s], tower.p), lim1, s, stable)
            graded_logger.event("tower_limit", label=tower.label, degree=tower.degree, level=s, lim=result.lim)
            return result
    raise NonStabilized(levels[0], (levels[0], last))


def filtration_tower(kind: str, i: int, levels: Tuple[int, int], model: PerfectoidModel) -> TowerLimit:
    """Towers of Nygaard pieces N_r^{>=i} (free) or N_r^i (Z/p^r), both with transition p^i."""
    _require_fp("filtration_tower", model)
    if i < 0:
        raise ValueError("filtration weight must be non-negative")
    if kind not in ("filtration", "graded"):
        raise ValueError("tower kind must be 'filtration' or 'graded'")
    p = model.p
    span = list(range(levels[0], levels[1] + 1))
    modules = {s: [0] if kind == "filtration" else [p ** s] for s in span}
    transitions = {s: [[p ** i]] for s in span[:-1]}
    tower = TowerSpec(2 * i, span, "Res", modules, transitions, model.N, p, f"{kind} i={i}")
    return tower_limlim1(tower)


def structure_tower(
    kind: GradedKind, degree: int, levels: Tuple[int, int], model: PerfectoidModel, map_name: str = "Res"
) -> TowerLimit:
    """Tower of pi_degree under Res or F of the TR or hS1 ring."""
    _require_fp("structure_tower", model)
    if map_name not in ("Res", "F"):
        raise ValueError("structure towers use Res or F")
    if kind not in (GradedKind.TRR, GradedKind.TRR_HS1):
        raise ValueError("structure towers run over TR or its hS1 fixed points")
    # quotient_by_v intertwines hS1 and plain maps; the hS1 multiplier serves both
    span = list(range(levels[0], levels[1] + 1))
    modules = {s: _moduli(kind, s, degree, model) for s in span}
    transitions = {}
    for s in span[:-1]:
        if not modules[s] or not modules[s + 1]:
            transitions[s] = [[0] * len(modules[s + 1]) for _ in modules[s]]
            continue
        transitions[s] = [[map_multiplier(structure_map(map_name, s + 1, model), degree)]]
    tower = TowerSpec(degree, span, map_name, modules, transitions, model.N, model.p, f"{kind.value} {map_name}")
    return tower_limlim1(tower)


# Reports

def symmetric_power_check(kind: GradedKind, r: int, i: int, model: PerfectoidModel) -> IsoReport:
    """pi_2i is the i-th power of the degree-two generator (v for i < 0)."""
    pres = presentation(kind, r, model)
    report = IsoReport(f"sym_power {kind.value} r={pres.r} i={i}")
    base_key = 1 if i >= 0 else -1
    power = graded_pow(monomial(pres, base_key), abs(i))
    target = monomial(pres, i)
    residue = graded_sub(power, target)
    report.record("power_is_generator", residue.is_zero(), str(residue))
    descriptor = homotopy_group(kind, r, 2 * i, model)
    report.record("descriptor_generator", descriptor.generator == pres.monomial(i), descriptor.generator)
    if model.is_fp:
        first = homotopy_group(kind, r, 2 * base_key, model)
        report.record("same_invariants", descriptor.factors == first.factors, descriptor.factors)
    report.details = {"generator": pres.monomial(i), "degree": 2 * i}
    return report


def table_rows(kind: GradedKind, r: int, degrees: Sequence[int], model: PerfectoidModel) -> List[Dict[str, Any]]:
    rows = []
    for n in degrees:
        descriptor = homotopy_group(kind, r, n, model)
        rows.append(
            {
                "degree": n,
                "module": descriptor.module_label(model.p),
                "generator": descriptor.generator,
                "annihilator": descriptor.annihilator,
            }
        )
    return rows


def render_table(kind: GradedKind, r: int, degrees: Sequence[int], model: PerfectoidModel) -> str:
    """Markdown table of homotopy groups by degree."""
    lines = ["| degree | module | generator | annihilator |", "|---|---|---|---|"]
    for row in table_rows(kind, r, degrees, model):
        lines.append(f"| {row['degree']} | {row['module']} | {row['generator']} | {row['annihilator']} |")
    return "\n".join(lines) + "\n"
