"""
Right kernels of matrices over the scalar field.

Two routes:

- all entries rational: sympy's sparse ``DomainMatrix`` over QQ;
- otherwise: fraction-free Gauss-Jordan elimination on Scalars, choosing at
  each column the pivot with the fewest terms and dividing each updated row
  by the gcd of its entries.
"""

import logging
from fractions import Fraction
from functools import reduce
from typing import Sequence

from sympy import QQ
from sympy.polys.matrices import DomainMatrix

from models.scalar import ONE, ZERO, Scalar

logger = logging.getLogger(__name__)

Matrix = Sequence[Sequence[Scalar]]


def _unit_basis(columns: int) -> list[list[Scalar]]:
    return [[ONE if i == j else ZERO for j in range(columns)] for i in range(columns)]


def _rational_kernel(matrix: Matrix, columns: int) -> list[list[Scalar]]:
    entries: dict[int, dict[int, object]] = {}
    for i, row in enumerate(matrix):
        nonzero = {}
        for j, value in enumerate(row):
            if value:
                fraction = value.to_fraction()
                nonzero[j] = QQ(fraction.numerator, fraction.denominator)
        if nonzero:
            entries[len(entries)] = nonzero
    if not entries:
        return _unit_basis(columns)
    domain_matrix = DomainMatrix(entries, (len(entries), columns), QQ)
    basis = domain_matrix.nullspace().to_Matrix().tolist()
    return [[Scalar(Fraction(int(v.p), int(v.q))) for v in vector] for vector in basis]


def _primitive(row: list[Scalar]) -> list[Scalar]:
    """Divide a polynomial row by the gcd of its entries."""
    if any(not entry.is_polynomial or entry.discriminant is not None for entry in row if entry):
        return row
    polys = [entry.numerator for entry in row if entry]
    if not polys:
        return row
    content = reduce(lambda a, b: a.gcd(b), polys)
    if content.is_ground:
        return row
    divisor = Scalar(content)
    return [entry / divisor if entry else entry for entry in row]


def _clear_denominators(row: Sequence[Scalar]) -> list[Scalar]:
    denominators = [entry.denominator for entry in row if entry and not entry.is_polynomial]
    if not denominators:
        return list(row)
    common = Scalar(reduce(lambda a, b: a.lcm(b), denominators))
    return [entry * common for entry in row]


def _symbolic_kernel(matrix: Matrix, columns: int) -> list[list[Scalar]]:
    rows = [_primitive(_clear_denominators(row)) for row in matrix if any(row)]
    pivot_columns: list[int] = []
    rank = 0
    for column in range(columns):
        candidates = [i for i in range(rank, len(rows)) if rows[i][column]]
        if not candidates:
            continue
        best = min(candidates, key=lambda i: rows[i][column].term_count)
        rows[rank], rows[best] = rows[best], rows[rank]
        pivot_row = rows[rank]
        pivot = pivot_row[column]
        for i, row in enumerate(rows):
            factor = row[column]
            if i == rank or not factor:
                continue
            rows[i] = _primitive([pivot * a - factor * b for a, b in zip(row, pivot_row)])
        pivot_columns.append(column)
        rank += 1
        if rank == len(rows):
            break

    basis = []
    pivots = dict(zip(pivot_columns, rows[:rank]))
    for free in range(columns):
        if free in pivots:
            continue
        vector = [ZERO] * columns
        vector[free] = ONE
        for column, row in pivots.items():
            if row[free]:
                vector[column] = -row[free] / row[column]
        basis.append(vector)
    return basis


def kernel(matrix: Matrix, columns: int | None = None) -> list[list[Scalar]]:
    """Basis of the right kernel ``{v : matrix · v = 0}``.

    Args:
        matrix: Rows of Scalars, all of the same length.
        columns: Column count, required when ``matrix`` has no rows.

    Returns:
        Basis vectors; an empty list means the kernel is zero.
    """
    if columns is None:
        if not matrix:
            raise ValueError("column count is required for an empty matrix")
        columns = len(matrix[0])
    if any(len(row) != columns for row in matrix):
        raise ValueError("ragged matrix")
    if all(entry.is_constant for row in matrix for entry in row):
        basis = _rational_kernel(matrix, columns)
        route = "rational"
    else:
        basis = _symbolic_kernel(matrix, columns)
        route = "symbolic"
    logger.debug("kernel via %s route: %d x %d -> dim %d", route, len(matrix), columns, len(basis))
    return basis


def apply(matrix: Matrix, vector: Sequence[Scalar]) -> list[Scalar]:
    return [sum((a * b for a, b in zip(row, vector) if a and b), ZERO) for row in matrix]
