import pytest

from prismcalc.core.exceptions import InvalidMapSpec, NonStabilized, UnsupportedModel
from prismcalc.models.ainf import PerfectoidModel
from prismcalc.models.graded import GradedKind, TowerSpec
from prismcalc.services.ainf import xi_r
from prismcalc.services.tr import (
    MAP_NAMES,
    filtration_tower,
    graded_mul,
    homotopy_group,
    kernel_cokernel,
    localize,
    monomial,
    presentation,
    render_table,
    shift_cokernel,
    structure_map,
    structure_tower,
    symmetric_power_check,
    tc_fiber_groups,
    tower_limlim1,
)


def test_uv_relation(fp2):
    pres = presentation(GradedKind.TRR_HS1, 2, fp2)
    product = graded_mul(monomial(pres, 1), monomial(pres, -1))
    assert product.degrees() == [0]
    assert product.coefficient(0) == xi_r(fp2, 2)


def test_tr_has_no_negative_monomials(fp2):
    pres = presentation(GradedKind.TRR, 2, fp2)
    with pytest.raises(ValueError):
        monomial(pres, -1)


@pytest.mark.parametrize("name", [n for n in MAP_NAMES if n != "phi_hS1"])
def test_structure_maps_validate(name, fp2):
    assert structure_map(name, 2, fp2).valid


def test_printed_phi_fails_at_level_two(fp2):
    printed = structure_map("phi_hS1", 2, fp2)
    assert not printed.valid
    assert printed.printed
    corrected = structure_map("phi_hS1", 2, fp2, override=True)
    assert corrected.valid
    assert not corrected.printed
    assert structure_map("phi_hS1", 1, fp2).valid


def test_homotopy_groups_of_tr(fp2):
    assert homotopy_group(GradedKind.TRR, 2, 4, fp2).factors == [4]
    assert homotopy_group(GradedKind.TRR, 2, 3, fp2).is_zero
    assert homotopy_group(GradedKind.TRR, 2, -2, fp2).is_zero
    group = homotopy_group(GradedKind.TRR_HS1, 2, -4, fp2)
    assert group.factors == [0]
    assert group.generator == "v_2^2"


def test_symmetric_powers(fp2):
    assert symmetric_power_check(GradedKind.TRR_HS1, 2, -3, fp2).passed
    assert symmetric_power_check(GradedKind.TCMINUS, 1, 2, fp2).passed


def test_localize_keeps_p_primary_part():
    assert localize([12, 0, 3], 2) == [4, 0]


def test_kernel_cokernel():
    assert kernel_cokernel([4], [2], [[1]], 2) == ([2], [])
    assert kernel_cokernel([], [8], [], 2) == ([], [8])


def test_tc_fiber_for_fp():
    model = PerfectoidModel.fp(2)
    assert tc_fiber_groups("TC_r", 0, 1, model).factors == [4]
    assert tc_fiber_groups("TC_r", -1, 1, model).factors == [2]
    assert tc_fiber_groups("TC_r", 2, 1, model).factors == [2]
    assert tc_fiber_groups("TC_r", 1, 1, model).factors == []


def test_tc_fiber_needs_valid_maps(fp2):
    with pytest.raises(InvalidMapSpec):
        tc_fiber_groups("TC^r", 0, 2, fp2)
    fiber = tc_fiber_groups("TC^r", 0, 2, fp2, override=True)
    assert fiber.notes["printed"] is False


def test_tc_fiber_rejects_non_fp(charp2):
    with pytest.raises(UnsupportedModel):
        tc_fiber_groups("TC_r", 0, 1, charp2)


def test_graded_nygaard_tower_limit():
    result = filtration_tower("graded", 0, (1, 8), PerfectoidModel.fp(2, 4))
    assert result.lim == [16]
    assert result.lim1 == []
    assert result.certified_level == 4


def test_filtration_tower_with_positive_weight_vanishes():
    result = filtration_tower("filtration", 1, (1, 8), PerfectoidModel.fp(2, 4))
    assert result.lim == []


def test_lim1_of_shrinking_tower():
    levels = list(range(1, 7))
    tower = TowerSpec(0, levels, "Res", {s: [8] for s in levels}, {s: [[2]] for s in levels[:-1]}, 3, 2, "times 2")
    result = tower_limlim1(tower)
    assert result.certified_level == 1
    assert result.lim == []
    assert result.lim1 == []
    assert shift_cokernel(tower, 1) == []
    assert shift_cokernel(tower, 6) == []


def test_short_tower_does_not_stabilize():
    with pytest.raises(NonStabilized):
        filtration_tower("graded", 0, (1, 2), PerfectoidModel.fp(2, 4))


def test_structure_towers():
    model = PerfectoidModel.fp(2, 4)
    assert structure_tower(GradedKind.TRR, 2, (1, 8), model, "F").lim == [16]
    assert structure_tower(GradedKind.TRR, 2, (1, 8), model, "Res").lim == []


def test_render_table(fp2):
    table = render_table(GradedKind.TRR, 2, [0, 1, 2], fp2)
    assert table.startswith("| degree | module | generator | annihilator |")
    assert "| 0 | Z/4 | 1 | 0 |" in table
    assert "| 1 | 0 | 0 | 1 |" in table
    assert "| 2 | Z/4 | u_2 | 0 |" in table
