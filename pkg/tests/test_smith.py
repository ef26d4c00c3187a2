import numpy as np
import pytest
from sympy import Matrix, ZZ
from sympy.matrices.normalforms import smith_normal_form as sympy_snf

from prismcalc.utils.smith import (
    Lattice,
    diagonal_relations,
    invariant_factors,
    is_unimodular,
    kernel_modulo,
    lattice_quotient,
    matmul,
    preimage,
    smith_normal_form,
    solve_integral,
)


def _nonzero(values):
    return sorted(abs(int(v)) for v in values if v)


@pytest.mark.parametrize(
    "matrix",
    [
        [[2, 4, 4], [-6, 6, 12], [10, -4, -16]],
        [[1, 2], [3, 4], [5, 6]],
        [[6, 0], [0, 4]],
        [[0, 0], [0, 0]],
    ],
)
def test_transforms_diagonalize(matrix):
    rows, cols = len(matrix), len(matrix[0])
    snf = smith_normal_form(matrix)
    product = matmul(matmul(snf.U, matrix), snf.V)
    for i in range(rows):
        for j in range(cols):
            expected = snf.diagonal[i] if i == j else 0
            assert product[i][j] == expected
    assert matmul(snf.U, snf.U_inv) == [[int(i == j) for j in range(rows)] for i in range(rows)]
    assert matmul(snf.V, snf.V_inv) == [[int(i == j) for j in range(cols)] for i in range(cols)]


def test_divisibility_chain():
    diagonal = invariant_factors([[2, 0], [0, 3]])
    assert diagonal == [1, 6]


def test_agrees_with_sympy():
    rng = np.random.default_rng(7)
    for _ in range(10):
        matrix = rng.integers(-6, 7, size=(3, 4)).tolist()
        ours = _nonzero(invariant_factors(matrix))
        reference = sympy_snf(Matrix(matrix), domain=ZZ)
        theirs = _nonzero(reference[i, i] for i in range(min(reference.shape)))
        assert ours == theirs


def test_lattice_equality_and_coordinates():
    lattice = Lattice([[2, 0], [2, 2]], 2)
    assert lattice == Lattice([[2, 0], [0, 2]], 2)
    assert lattice.contains([4, 2])
    assert not lattice.contains([1, 0])


def test_quotient_invariants():
    big = Lattice([[1, 0], [0, 1]], 2, independent=True)
    quotient = lattice_quotient(big, [[2, 0], [0, 0]])
    assert quotient.factors == [2, 0]
    assert quotient.free_rank == 1
    assert quotient.order() is None


def test_kernels():
    assert kernel_modulo([[2, 4]], 1, 2, 0).rank == 1
    assert kernel_modulo([[1]], 1, 1, 3).basis == [[3]]
    lattice = preimage([[1]], 1, 1, diagonal_relations([4]))
    assert lattice == Lattice([[4]], 1)


def test_solve_integral():
    assert solve_integral([[2, 0], [0, 3]], 2, [[4, 3]]) == [[2], [1]]
    with pytest.raises(ValueError):
        solve_integral([[2, 0], [0, 3]], 2, [[1, 0]])


def test_unimodular():
    assert is_unimodular([[1, 1], [0, 1]])
    assert not is_unimodular([[2, 0], [0, 1]])
