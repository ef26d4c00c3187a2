"""
Exact integer linear algebra.

Smith normal form with both transforms and their inverses, and the lattice
operations built on it: kernels, images, coordinates in a lattice basis and
invariant factors of lattice quotients.  Matrices are lists of rows of
Python ints.
"""

from dataclasses import dataclass
from math import gcd
from typing import List, Optional, Sequence

Matrix = List[List[int]]
Vector = List[int]


def identity(n: int) -> Matrix:
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def zeros(rows: int, cols: int) -> Matrix:
    return [[0] * cols for _ in range(rows)]


def matmul(a: Matrix, b: Matrix, inner: Optional[int] = None) -> Matrix:
    """Product a @ b; `inner` gives the shared dimension when a has no rows."""
    k = len(b) if inner is None else inner
    cols = len(b[0]) if b else 0
    return [[sum(row[t] * b[t][j] for t in range(k)) for j in range(cols)] for row in a]


def matvec(a: Matrix, x: Sequence[int]) -> Vector:
    return [sum(c * v for c, v in zip(row, x)) for row in a]


def transpose(a: Matrix, rows: int = 0, cols: int = 0) -> Matrix:
    if not a:
        return zeros(cols, rows)
    return [list(col) for col in zip(*a)]


def from_columns(cols: Sequence[Sequence[int]], dim: int) -> Matrix:
    return [[col[i] for col in cols] for i in range(dim)]


def columns(a: Matrix, ncols: int) -> List[Vector]:
    return [[row[j] for row in a] for j in range(ncols)]


def is_zero(a: Matrix) -> bool:
    return all(c == 0 for row in a for c in row)


@dataclass
class SmithForm:
    """U @ A @ V = D with U, V unimodular and d_1 | d_2 | ... on the diagonal."""

    U: Matrix
    V: Matrix
    U_inv: Matrix
    V_inv: Matrix
    diagonal: List[int]
    rows: int
    cols: int

    @property
    def rank(self) -> int:
        return sum(1 for d in self.diagonal if d)


def smith_normal_form(matrix: Matrix, rows: Optional[int] = None, cols: Optional[int] = None) -> SmithForm:
    """Smith normal form by repeated pivoting on the smallest entry."""
    m = len(matrix) if rows is None else rows
    n = (len(matrix[0]) if matrix else 0) if cols is None else cols
    A = [list(row) for row in matrix] if matrix else zeros(m, n)
    U, U_inv, V, V_inv = identity(m), identity(m), identity(n), identity(n)

    def swap_rows(i, j):
        if i != j:
            A[i], A[j] = A[j], A[i]
            U[i], U[j] = U[j], U[i]
            for row in U_inv:
                row[i], row[j] = row[j], row[i]

    def swap_cols(i, j):
        if i != j:
            for row in A:
                row[i], row[j] = row[j], row[i]
            for row in V:
                row[i], row[j] = row[j], row[i]
            V_inv[i], V_inv[j] = V_inv[j], V_inv[i]

    def add_row(target, source, c):
        A[target] = [x + c * y for x, y in zip(A[target], A[source])]
        U[target] = [x + c * y for x, y in zip(U[target], U[source])]
        for row in U_inv:
            row[source] -= c * row[target]

    def add_col(target, source, c):
        for row in A:
            row[target] += c * row[source]
        for row in V:
            row[target] += c * row[source]
        V_inv[source] = [x - c * y for x, y in zip(V_inv[source], V_inv[target])]

    t = 0
    while t < min(m, n):
        pivot = None
        for i in range(t, m):
            for j in range(t, n):
                if A[i][j] and (pivot is None or abs(A[i][j]) < abs(A[pivot[0]][pivot[1]])):
                    pivot = (i, j)
        if pivot is None:
            break
        swap_rows(t, pivot[0])
        swap_cols(t, pivot[1])

        settled = False
        while not settled:
            settled = True
            for i in range(t + 1, m):
                if A[i][t]:
                    add_row(i, t, -(A[i][t] // A[t][t]))
                    if A[i][t]:
                        swap_rows(t, i)
                        settled = False
            for j in range(t + 1, n):
                if A[t][j]:
                    add_col(j, t, -(A[t][j] // A[t][t]))
                    if A[t][j]:
                        swap_cols(t, j)
                        settled = False
            if settled:
                for i in range(t + 1, m):
                    if any(A[i][j] % A[t][t] for j in range(t + 1, n)):
                        add_row(t, i, 1)
                        settled = False
                        break

        if A[t][t] < 0:
            A[t] = [-x for x in A[t]]
            U[t] = [-x for x in U[t]]
            for row in U_inv:
                row[t] = -row[t]
        t += 1

    diagonal = [A[i][i] for i in range(min(m, n))]
    return SmithForm(U, V, U_inv, V_inv, diagonal, m, n)


def invariant_factors(matrix: Matrix, rows: Optional[int] = None, cols: Optional[int] = None) -> List[int]:
    return smith_normal_form(matrix, rows, cols).diagonal


class Lattice:
    """Sublattice of Z^dim spanned by the given generators."""

    def __init__(self, generators: Sequence[Sequence[int]], dim: int, independent: bool = False):
        self.dim = dim
        gens = [list(g) for g in generators if any(g)]
        if independent:
            self.basis: List[Vector] = gens
        else:
            snf = smith_normal_form(from_columns(gens, dim), dim, len(gens))
            # image basis: columns of U^{-1} scaled by the invariant factors
            self.basis = [[snf.U_inv[i][j] * snf.diagonal[j] for i in range(dim)] for j in range(snf.rank)]
        self._snf = smith_normal_form(from_columns(self.basis, dim), dim, len(self.basis))
        if self._snf.rank != len(self.basis):
            raise ValueError("lattice basis vectors are not independent")

    @property
    def rank(self) -> int:
        return len(self.basis)

    def coordinates(self, x: Sequence[int]) -> Optional[Vector]:
        """c with sum c_j basis_j = x, or None when x is outside the lattice."""
        snf = self._snf
        ux = matvec(snf.U, x)
        y = []
        for j in range(self.dim):
            d = snf.diagonal[j] if j < len(snf.diagonal) else 0
            if d == 0:
                if ux[j]:
                    return None
                continue
            if ux[j] % d:
                return None
            y.append(ux[j] // d)
        return matvec(snf.V, y)

    def contains(self, x: Sequence[int]) -> bool:
        return self.coordinates(x) is not None

    def contains_lattice(self, other: "Lattice") -> bool:
        return all(self.contains(b) for b in other.basis)

    def __eq__(self, other):
        if not isinstance(other, Lattice):
            return NotImplemented
        return self.dim == other.dim and self.contains_lattice(other) and other.contains_lattice(self)


@dataclass
class QuotientStructure:
    """Big/small as Z^free + sum Z/torsion with adapted generators."""

    factors: List[int]
    generators: List[Vector]
    transform: Matrix
    big: Lattice

    @property
    def free_rank(self) -> int:
        return sum(1 for f in self.factors if f == 0)

    @property
    def torsion(self) -> List[int]:
        return [f for f in self.factors if f > 1]

    def is_zero(self) -> bool:
        return not self.factors

    def order(self) -> Optional[int]:
        """Group order, None when infinite."""
        if self.free_rank:
            return None
        out = 1
        for f in self.factors:
            out *= f
        return out

    def class_coordinates(self, x: Sequence[int]) -> Vector:
        """Coordinates of the class of x on the adapted generators."""
        c = self.big.coordinates(x)
        if c is None:
            raise ValueError("vector is not in the ambient lattice")
        coords = matvec(self.transform, c)
        return [v % f if f else v for v, f in zip(coords, self.factors)]


def lattice_quotient(big: Lattice, small_generators: Sequence[Sequence[int]]) -> QuotientStructure:
    """Invariants of big / span(small) for small contained in big."""
    k = big.rank
    coords = []
    for g in small_generators:
        c = big.coordinates(g)
        if c is None:
            raise ValueError("sublattice generator is not in the ambient lattice")
        coords.append(c)
    snf = smith_normal_form(from_columns(coords, k), k, len(coords))
    factors, generators, rows = [], [], []
    for j in range(k):
        d = snf.diagonal[j] if j < len(snf.diagonal) else 0
        if d == 1:
            continue
        factors.append(d)
        generators.append([sum(big.basis[t][i] * snf.U_inv[t][j] for t in range(k)) for i in range(big.dim)])
        rows.append(snf.U[j])
    # free summands after torsion
    order = sorted(range(len(factors)), key=lambda t: (factors[t] == 0, t))
    return QuotientStructure(
        [factors[t] for t in order], [generators[t] for t in order], [rows[t] for t in order], big
    )


def kernel_modulo(matrix: Matrix, rows: int, cols: int, modulus: int) -> Lattice:
    """{x in Z^cols : matrix x in modulus Z^rows}; modulus 0 means the plain kernel."""
    snf = smith_normal_form(matrix, rows, cols)
    gens = []
    for j in range(cols):
        d = snf.diagonal[j] if j < len(snf.diagonal) else 0
        if d == 0:
            factor = 1
        elif modulus == 0:
            continue
        else:
            factor = modulus // gcd(modulus, d)
        gens.append([snf.V[i][j] * factor for i in range(cols)])
    return Lattice(gens, cols, independent=True)


def solve_integral(basis: Sequence[Sequence[int]], dim: int, targets: Sequence[Sequence[int]]) -> Matrix:
    """Coordinate matrix of targets in an independent basis; raises if one is outside."""
    lattice = Lattice(basis, dim, independent=True)
    out = []
    for x in targets:
        c = lattice.coordinates(x)
        if c is None:
            raise ValueError("target is not in the lattice")
        out.append(c)
    return from_columns(out, lattice.rank)


def is_unimodular(matrix: Matrix) -> bool:
    n = len(matrix)
    if any(len(row) != n for row in matrix):
        return False
    return all(d == 1 for d in invariant_factors(matrix, n, n))


def diagonal_relations(moduli: Sequence[int]) -> List[Vector]:
    """Relation vectors m_j e_j of Z^n / (m_1, ..., m_n); free summands give none."""
    n = len(moduli)
    return [[m if t == j else 0 for t in range(n)] for j, m in enumerate(moduli) if m]


def preimage(matrix: Matrix, rows: int, cols: int, relations: Sequence[Sequence[int]]) -> Lattice:
    """{x in Z^cols : matrix x in span(relations)}."""
    rel = [list(r) for r in relations if any(r)]
    stacked = [list(matrix[i]) + [r[i] for r in rel] for i in range(rows)]
    pairs = kernel_modulo(stacked, rows, cols + len(rel), 0)
    return Lattice([v[:cols] for v in pairs.basis], cols)
