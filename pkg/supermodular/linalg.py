"""
Exact matrix helpers over commutative entries.

Entries are either CoeffFns or even Superfunctions; both commute with
everything they are multiplied with here, so the usual determinant and
adjugate formulas apply verbatim.
"""

from __future__ import absolute_import, division, print_function, unicode_literals

import logging
from math import factorial

from . import conf
from .algebra import Superfunction
from .exceptions import DegenerateBody, NeumannSeriesDivergence, NonInvertibleBody, RankMismatch

log = logging.getLogger(__name__)


def shape(matrix):
    rows = len(matrix)
    columns = len(matrix[0]) if rows else 0
    for row in matrix:
        if len(row) != columns:
            raise RankMismatch('ragged matrix')
    return rows, columns


def square_size(matrix):
    rows, columns = shape(matrix)
    if rows != columns:
        raise RankMismatch('expected a square matrix, got {}x{}'.format(rows, columns))
    return rows


def transpose(matrix):
    return [list(column) for column in zip(*matrix)]


def mat_add(left, right):
    return [[a + b for a, b in zip(row_a, row_b)] for row_a, row_b in zip(left, right)]


def mat_sub(left, right):
    return [[a - b for a, b in zip(row_a, row_b)] for row_a, row_b in zip(left, right)]


def mat_mul(left, right, zero):
    """
    Matrix product; ``zero`` seeds every sum.
    """
    inner = len(right)
    columns = len(right[0]) if inner else 0
    product = []
    for row in left:
        out = []
        for column in range(columns):
            total = zero
            for k in range(inner):
                total = total + row[k] * right[k][column]
            out.append(total)
        product.append(out)
    return product


def mat_map(matrix, operation):
    return [[operation(entry) for entry in row] for row in matrix]


def is_zero_matrix(matrix):
    return all(not entry for row in matrix for entry in row)


def identity(size, zero, one):
    return [[one if i == j else zero for j in range(size)] for i in range(size)]


def determinant(matrix, zero, one):
    """
    Laplace expansion along rows, memoized on the set of remaining columns.
    """
    size = square_size(matrix)
    memo = {}

    def minor(row, columns):
        if row == size:
            return one
        if columns in memo:
            return memo[columns]
        total = zero
        sign = 1
        for column in range(size):
            bit = 1 << column
            if not columns & bit:
                continue
            entry = matrix[row][column]
            if entry:
                term = entry * minor(row + 1, columns & ~bit)
                total = total + term if sign > 0 else total - term
            sign = -sign
        memo[columns] = total
        return total

    return minor(0, (1 << size) - 1)


def adjugate(matrix, zero, one):
    """
    Transpose of the cofactor matrix.
    """
    size = square_size(matrix)
    if size == 1:
        return [[one]]
    result = [[zero] * size for _ in range(size)]
    for i in range(size):
        for j in range(size):
            minor = [row[:j] + row[j + 1:] for k, row in enumerate(matrix) if k != i]
            cofactor = determinant(minor, zero, one)
            result[j][i] = cofactor if (i + j) % 2 == 0 else -cofactor
    return result


def inverse(matrix, ring):
    """
    Inverse of a CoeffFn matrix via ``adj(M) / det(M)``; only the determinant is divided by.

    Raises:
        DegenerateBody: when the determinant is not a unit of ``ring``.
    """
    det = determinant(matrix, ring.zero, ring.one)
    try:
        det_inverse = det.inverse()
    except NonInvertibleBody:
        raise DegenerateBody('determinant {} is not invertible in the {} ring'.format(det.to_text(), ring.mode))
    return mat_map(adjugate(matrix, ring.zero, ring.one), lambda entry: entry * det_inverse)


def pfaffian(matrix, zero, one):
    """
    Pfaffian of an antisymmetric matrix of even size (0 for odd size).
    """
    size = square_size(matrix)
    if size % 2:
        return zero

    def expand(indices):
        if not indices:
            return one
        first = indices[0]
        total = zero
        for position in range(1, len(indices)):
            partner = indices[position]
            entry = matrix[first][partner]
            if not entry:
                continue
            rest = indices[1:position] + indices[position + 1:]
            term = entry * expand(rest)
            total = total + term if position % 2 == 1 else total - term
        return total

    return expand(tuple(range(size)))


def top_power_coefficient(matrix, zero, one):
    """
    Coefficient of ``dx1 ^ ... ^ dxd`` in the (d/2)-fold wedge power of the two-form with matrix ``matrix``.
    """
    size = square_size(matrix)
    return pfaffian(matrix, zero, one) * factorial(size // 2)


def body_matrix(matrix):
    """
    Degree-0 parts of a Superfunction matrix, as CoeffFns.
    """
    return mat_map(matrix, lambda entry: entry.body())


def lift_matrix(matrix, ring, rank):
    return mat_map(matrix, lambda entry: Superfunction.constant(ring, rank, entry))


def neumann_inverse(matrix, ring, rank):
    """
    Inverse of an even Superfunction matrix ``T = T0 + N`` with invertible body ``T0`` and nilpotent ``N``.

    ``T^-1 = (sum_k (-T0^-1 N)^k) T0^-1``; the powers of ``T0^-1 N`` vanish after
    at most ``rank // 2 + 1`` steps because every entry of ``N`` has degree >= 2.

    Raises:
        DegenerateBody: when ``T0`` is singular.
        NeumannSeriesDivergence: when the series outlives its bound.
    """
    size = square_size(matrix)
    zero = Superfunction.zero(ring, rank)
    one = Superfunction.one(ring, rank)
    body_inverse = lift_matrix(inverse(body_matrix(matrix), ring), ring, rank)
    nilpotent = mat_map(matrix, lambda entry: entry.soul())
    step = mat_map(mat_mul(body_inverse, nilpotent, zero), lambda entry: -entry)
    bound = rank // 2 + 1
    total = identity(size, zero, one)
    power = identity(size, zero, one)
    order = 0
    while True:
        power = mat_mul(power, step, zero)
        order += 1
        if is_zero_matrix(power):
            break
        if order > bound and conf.get(conf.NEUMANN_GUARD):
            raise NeumannSeriesDivergence('matrix Neumann series exceeded {} terms'.format(bound))
        total = mat_add(total, power)
    log.debug('matrix Neumann series of size %d terminated after %d terms', size, order)
    return mat_mul(total, body_inverse, zero)


def row_times_matrix(vector, matrix, zero):
    """
    Returns ``v . M`` for a row vector ``v``.
    """
    return [sum((vector[k] * matrix[k][column] for k in range(len(vector))), zero)
            for column in range(len(matrix[0]) if matrix else 0)]
