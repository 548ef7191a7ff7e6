"""
Classical data of an even symplectic structure: the symplectic form on the
base, a metric on the dual bundle and a compatible connection.

Index conventions:

* ``omega[a][b]`` is the coefficient of the two-form on ``dx^a, dx^b``.
* ``g[j][k]`` is ``g(eps^j, eps^k)``.
* ``gamma[a][k][j]`` is the coefficient of ``e_k`` in ``nabla_a e_j``; the dual
  connection acts by ``nabla_a eps^j = -Gamma^j_{ak} eps^k`` so compatibility
  reads ``d_a G + Gamma_a G + G Gamma_a^T = 0``.
* curvature ``R_ab = d_a Gamma_b - d_b Gamma_a + [Gamma_a, Gamma_b]`` and its
  raised form ``B_ab = R_ab G``.
"""

from __future__ import absolute_import, division, print_function, unicode_literals

import logging

from sympy import integer_nthroot
from sympy.polys.domains import QQ

from . import linalg
from .coefficients import TORUS, to_rational
from .exceptions import (
    DegenerateBody,
    InexactQuotient,
    IrrationalSqrt,
    NonConstantMetricDeterminant,
    NonInvertibleBody,
    NonUnitVolumeCoefficient,
    RankMismatch,
)
from .reports import Report

log = logging.getLogger(__name__)


class Connection(object):
    """
    Christoffel matrices of a connection on ``E`` over a ``dim``-dimensional base.
    """
    def __init__(self, ring, rank, gamma):
        self.ring = ring
        self.rank = rank
        self.dim = ring.dim
        if len(gamma) != self.dim:
            raise RankMismatch('expected {} Christoffel matrices, got {}'.format(self.dim, len(gamma)))
        self.gamma = []
        for matrix in gamma:
            if linalg.shape(matrix) != (rank, rank):
                raise RankMismatch('Christoffel matrices must be {0}x{0}'.format(rank))
            self.gamma.append([[ring.coerce(entry) for entry in row] for row in matrix])

    @classmethod
    def flat(cls, ring, rank):
        return cls(ring, rank, [[[ring.zero] * rank for _ in range(rank)] for _ in range(ring.dim)])

    def is_flat(self):
        return all(linalg.is_zero_matrix(matrix) for matrix in self.gamma)

    def christoffel(self, a, upper, lower):
        return self.gamma[a][upper][lower]


class SymplecticData(object):
    """
    The triple (omega, g, nabla), plus an optional explicit metric volume scale.
    """
    def __init__(self, ring, rank, omega, g, gamma, volume_scale=None):
        self.ring = ring
        self.rank = rank
        self.dim = ring.dim
        if linalg.shape(omega) != (self.dim, self.dim):
            raise RankMismatch('omega must be {0}x{0}'.format(self.dim))
        if linalg.shape(g) != (rank, rank):
            raise RankMismatch('g must be {0}x{0}'.format(rank))
        self.omega = [[ring.coerce(entry) for entry in row] for row in omega]
        self.g = [[ring.coerce(entry) for entry in row] for row in g]
        self.connection = gamma if isinstance(gamma, Connection) else Connection(ring, rank, gamma)
        self.volume_scale = None if volume_scale is None else to_rational(volume_scale)

    @classmethod
    def flat_model(cls, ring, rank):
        """
        ``omega = dx1^dx2 + dx3^dx4 + ...``, ``G = I`` and ``Gamma = 0``.
        """
        dim = ring.dim
        omega = [[ring.zero] * dim for _ in range(dim)]
        for a in range(0, dim - 1, 2):
            omega[a][a + 1] = ring.one
            omega[a + 1][a] = -ring.one
        g = linalg.identity(rank, ring.zero, ring.one)
        return cls(ring, rank, omega, g, Connection.flat(ring, rank))

    @property
    def gamma(self):
        return self.connection.gamma

    @property
    def mode(self):
        return self.ring.mode


class CurvatureData(object):
    """
    ``R[a][b]`` and ``B[a][b] = R[a][b] G`` as r x r matrices of CoeffFn.
    """
    def __init__(self, R, B):  # pylint: disable=invalid-name
        self.R = R  # pylint: disable=invalid-name
        self.B = B  # pylint: disable=invalid-name

    def is_flat(self):
        return all(linalg.is_zero_matrix(matrix) for row in self.R for matrix in row)


def _antisymmetry_defect(matrix):
    size = len(matrix)
    for i in range(size):
        for j in range(i, size):
            if matrix[i][j] + matrix[j][i]:
                return i, j
    return None


def _symmetry_defect(matrix):
    size = len(matrix)
    for i in range(size):
        for j in range(i + 1, size):
            if matrix[i][j] != matrix[j][i]:
                return i, j
    return None


def _unit_detail(value, ring):
    if ring.mode == TORUS:
        return 'must be a nonzero constant on the torus, got {}'.format(value.to_text())
    return 'must be nonzero, got {}'.format(value.to_text())


def compatibility_defect(sd, a):
    """
    Returns ``d_a G + Gamma_a G + G Gamma_a^T``, zero iff the connection preserves g along ``x^a``.
    """
    zero = sd.ring.zero
    gamma = sd.gamma[a]
    derivative = linalg.mat_map(sd.g, lambda entry: entry.partial(a))
    left = linalg.mat_mul(gamma, sd.g, zero)
    right = linalg.mat_mul(sd.g, linalg.transpose(gamma), zero)
    return linalg.mat_add(linalg.mat_add(derivative, left), right)


def check_data(sd):
    """
    Verify the invariants of SymplecticData; never raises.

    Return Value:
        Report: one check per condition, with the first offending entry as detail.
    """
    report = Report('symplectic data')
    ring = sd.ring
    defect = _antisymmetry_defect(sd.omega)
    report.add('omega-antisymmetric', defect is None,
               '' if defect is None else 'omega[{}][{}]'.format(*defect))
    closed_detail = ''
    for a in range(sd.dim):
        for b in range(a + 1, sd.dim):
            for c in range(b + 1, sd.dim):
                cyclic = sd.omega[b][c].partial(a) + sd.omega[c][a].partial(b) + sd.omega[a][b].partial(c)
                if cyclic and not closed_detail:
                    closed_detail = 'd omega on (x{}, x{}, x{}) = {}'.format(a + 1, b + 1, c + 1, cyclic.to_text())
    report.add('omega-closed', not closed_detail, closed_detail)
    volume = symplectic_volume(sd)
    report.add('omega-nondegenerate', volume.is_unit(), '' if volume.is_unit() else _unit_detail(volume, ring))
    defect = _symmetry_defect(sd.g)
    report.add('g-symmetric', defect is None, '' if defect is None else 'g[{}][{}]'.format(*defect))
    det = linalg.determinant(sd.g, ring.zero, ring.one)
    report.add('g-nondegenerate', det.is_unit(), '' if det.is_unit() else _unit_detail(det, ring))
    compatibility_detail = ''
    for a in range(sd.dim):
        defect_matrix = compatibility_defect(sd, a)
        for j, row in enumerate(defect_matrix):
            for k, entry in enumerate(row):
                if entry and not compatibility_detail:
                    compatibility_detail = 'gamma[{}]: (d G + Gamma G + G Gamma^T)[{}][{}] = {}'.format(
                        a, j, k, entry.to_text())
    report.add('connection-compatible', not compatibility_detail, compatibility_detail)
    log.debug('check_data: %d/%d passed', len(report.checks) - len(report.failures()), len(report.checks))
    return report


def curvature(sd):
    """
    Matrix curvature of the connection and its g-raised bivector form.
    """
    zero = sd.ring.zero
    gamma = sd.gamma
    size = sd.dim
    R = [[None] * size for _ in range(size)]  # pylint: disable=invalid-name
    B = [[None] * size for _ in range(size)]  # pylint: disable=invalid-name
    for a in range(size):
        for b in range(size):
            d_a = linalg.mat_map(gamma[b], lambda entry, a=a: entry.partial(a))
            d_b = linalg.mat_map(gamma[a], lambda entry, b=b: entry.partial(b))
            bracket = linalg.mat_sub(linalg.mat_mul(gamma[a], gamma[b], zero), linalg.mat_mul(gamma[b], gamma[a], zero))
            R[a][b] = linalg.mat_add(linalg.mat_sub(d_a, d_b), bracket)
            B[a][b] = linalg.mat_mul(R[a][b], sd.g, zero)
    return CurvatureData(R, B)


def symplectic_volume(sd):
    """
    Coefficient ``W`` of the top wedge power of omega (no 1/n! normalization).
    """
    return linalg.top_power_coefficient(sd.omega, sd.ring.zero, sd.ring.one)


def _divide_by_volume(value, volume):
    try:
        return value.exact_quotient(volume)
    except InexactQuotient:
        raise NonUnitVolumeCoefficient('the volume coefficient {} is not a unit of the {} ring'.format(
            volume.to_text(), volume.mode))


def volume_log_derivative(volume, a):
    """
    ``d_a W / W``: the divergence of the coordinate field ``d/dx^a`` for the volume ``W``.
    """
    return _divide_by_volume(volume.partial(a), volume)


def classical_divergence(vector, sd, volume=None):
    """
    Divergence of a vector field for the volume ``W dx^1...dx^d``: ``sum_a d_a(W X^a) / W``.

    Parameters:
        vector (list): components ``X^a`` as CoeffFn.
        sd (SymplecticData)
        volume (CoeffFn): volume coefficient; defaults to the symplectic volume.

    Raises:
        NonUnitVolumeCoefficient: when the division leaves the torus ring.
    """
    if len(vector) != sd.dim:
        raise RankMismatch('vector field needs {} components'.format(sd.dim))
    volume = symplectic_volume(sd) if volume is None else volume
    flux = sd.ring.zero
    for a, component in enumerate(vector):
        flux = flux + (volume * sd.ring.coerce(component)).partial(a)
    return _divide_by_volume(flux, volume)


def omega_inverse(sd):
    """
    Raises:
        DegenerateBody: when omega is not invertible in the coefficient ring.
    """
    return linalg.inverse(sd.omega, sd.ring)


def hamiltonian_vector_field_of_form(alpha, sd):
    """
    The vector field ``X`` with ``sum_a X^a omega_ab = alpha_b``.
    """
    inverse = omega_inverse(sd)
    return [sum((sd.ring.coerce(alpha[a]) * inverse[a][b] for a in range(sd.dim)), sd.ring.zero)
            for b in range(sd.dim)]


def hamiltonian_vector_field(function, sd):
    """
    The Hamiltonian vector field of a base function; for ``omega = dx^dy`` it is ``(d_y f, -d_x f)``.
    """
    return hamiltonian_vector_field_of_form([function.partial(a) for a in range(sd.dim)], sd)


def contract_omega(vector, sd):
    """
    ``alpha_b = sum_a X^a omega_ab``.
    """
    return [sum((sd.ring.coerce(vector[a]) * sd.omega[a][b] for a in range(sd.dim)), sd.ring.zero)
            for b in range(sd.dim)]


def classical_bracket(left, right, sd):
    """
    Poisson bracket ``X_left(right)`` of two base functions.
    """
    field = hamiltonian_vector_field(left, sd)
    return sum((field[a] * right.partial(a) for a in range(sd.dim)), sd.ring.zero)


def _inverse_rational_sqrt(value):
    numerator, denominator = int(value.numerator), int(value.denominator)
    if numerator <= 0:
        return None
    root_n, exact_n = integer_nthroot(numerator, 2)
    root_d, exact_d = integer_nthroot(denominator, 2)
    if not (exact_n and exact_d):
        return None
    return QQ(root_d, root_n)


def metric_volume_constant(sd):
    """
    The normalization ``c = det(G)^(-1/2)`` of the metric volume (or the explicit ``volume_scale``).

    Raises:
        NonConstantMetricDeterminant, IrrationalSqrt
    """
    if sd.volume_scale is not None:
        return sd.volume_scale
    det = linalg.determinant(sd.g, sd.ring.zero, sd.ring.one)
    if not det.is_constant():
        raise NonConstantMetricDeterminant('det G = {} is not constant'.format(det.to_text()))
    scale = _inverse_rational_sqrt(det.constant_value())
    if scale is None:
        raise IrrationalSqrt('det G = {} has no rational square root; set volume_scale'.format(det.to_text()))
    return scale


def metric_volume_contract(element, sd):
    """
    Total contraction of the metric volume with a superfunction: ``c`` times its top coefficient.
    """
    if element.rank != sd.rank:
        raise RankMismatch('superfunction of rank {} against a rank {} bundle'.format(element.rank, sd.rank))
    return element.top_coefficient() * metric_volume_constant(sd)


def classical_exterior_derivative(alpha, sd):
    """
    The matrix ``(d alpha)_ab = d_a alpha_b - d_b alpha_a``.
    """
    alpha = [sd.ring.coerce(component) for component in alpha]
    return [[alpha[b].partial(a) - alpha[a].partial(b) for b in range(sd.dim)] for a in range(sd.dim)]


def is_closed_classical(alpha, sd):
    return linalg.is_zero_matrix(classical_exterior_derivative(alpha, sd))


def is_exact_classical(alpha, sd):
    """
    Exactness of a one-form on the base.

    On a chart a closed form is exact; on the torus its periods, the constant
    Fourier coefficients of its components, must vanish as well.
    """
    if not is_closed_classical(alpha, sd):
        return False
    if sd.mode == TORUS:
        return all(not sd.ring.coerce(component).constant_term() for component in alpha)
    return True


def require_invertible_omega(sd):
    """
    Raises DegenerateBody unless omega is invertible.
    """
    volume = symplectic_volume(sd)
    try:
        volume.inverse()
    except NonInvertibleBody:
        raise DegenerateBody('omega is degenerate: W = {}'.format(volume.to_text()))
    return volume
