"""
Tests of the classical symplectic, metric and connection data.
"""

from __future__ import absolute_import, division, print_function, unicode_literals

import unittest

import ddt
import sympy
from sympy.polys.domains import QQ

from .. import geometry
from ..coefficients import CHART, TORUS
from ..exceptions import IrrationalSqrt, NonConstantMetricDeterminant, NonUnitVolumeCoefficient, RankMismatch
from ..expressions import parse_coefficient
from ..geometry import SymplecticData
from ..test_utils import ModelTestMixin


class GeometryTestMixin(ModelTestMixin):
    """
    Build SymplecticData from matrices of expression strings.
    """
    def model(self, omega, g, gamma=None, mode=CHART, dim=2, volume_scale=None):
        ring = self.ring(mode, dim)
        rank = len(g)
        parse = lambda rows: [[parse_coefficient(entry, ring) for entry in row] for row in rows]
        if gamma is None:
            gamma = [[['0'] * rank for _ in range(rank)] for _ in range(dim)]
        return SymplecticData(ring, rank, parse(omega), parse(g), [parse(matrix) for matrix in gamma], volume_scale)


class CheckDataTestCase(GeometryTestMixin, unittest.TestCase):
    """
    Validation reports of symplectic data.
    """
    def test_flat_model_passes(self):
        report = geometry.check_data(self.flat_model())
        self.assertTrue(report.passed)
        self.assertEqual([check.name for check in report.checks], [
            'omega-antisymmetric', 'omega-closed', 'omega-nondegenerate',
            'g-symmetric', 'g-nondegenerate', 'connection-compatible',
        ])

    def test_skew_connection_is_compatible(self):
        self.assertTrue(geometry.check_data(self.curved_model()).passed)
        self.assertTrue(geometry.check_data(self.curved_model(TORUS)).passed)

    def test_incompatible_connection(self):
        sd = self.model([['0', '1'], ['-1', '0']], [['1', '0'], ['0', '1']],
                        [[['1', '0'], ['0', '0']], [['0', '0'], ['0', '0']]])
        report = geometry.check_data(sd)
        check = report.check('connection-compatible')
        self.assertFalse(check.passed)
        self.assertEqual(check.detail, 'gamma[0]: (d G + Gamma G + G Gamma^T)[0][0] = 2')
        self.assertEqual(report.exit_code, 1)

    def test_non_closed_omega(self):
        sd = self.model([['0', 'z', '0'], ['-z', '0', '0'], ['0', '0', '0']], [['1']], dim=3)
        report = geometry.check_data(sd)
        self.assertEqual(report.check('omega-closed').detail, 'd omega on (x1, x2, x3) = 1')
        self.assertFalse(report.check('omega-nondegenerate').passed)
        self.assertTrue(report.check('omega-antisymmetric').passed)

    def test_asymmetric_data(self):
        sd = self.model([['0', '1'], ['1', '0']], [['1', 'x'], ['0', '1']])
        report = geometry.check_data(sd)
        self.assertEqual(report.check('omega-antisymmetric').detail, 'omega[0][1]')
        self.assertEqual(report.check('g-symmetric').detail, 'g[0][1]')

    def test_torus_volume_must_be_constant(self):
        sd = self.model([['0', '2 + cos(x)'], ['-2 - cos(x)', '0']], [['1']], mode=TORUS)
        check = geometry.check_data(sd).check('omega-nondegenerate')
        self.assertFalse(check.passed)
        self.assertEqual(check.detail, 'must be a nonzero constant on the torus, got 2 + cos(x1)')

    def test_shape_errors(self):
        with self.assertRaises(RankMismatch):
            self.model([['0', '1']], [['1']])


class CurvatureTestCase(GeometryTestMixin, unittest.TestCase):
    """
    Matrix curvature and its raised form.
    """
    def test_flat(self):
        self.assertTrue(geometry.curvature(self.flat_model()).is_flat())

    def test_curved_model(self):
        data = geometry.curvature(self.curved_model())
        self.assertFalse(data.is_flat())
        self.assertEqual(data.R[0][1], [[0, 1], [-1, 0]])
        self.assertEqual(data.R[1][0], [[0, -1], [1, 0]])
        self.assertEqual(data.B[0][1][0][1], 1)
        self.assertEqual(data.R[0][0], [[0, 0], [0, 0]])

    def test_curvature_scales_with_metric(self):
        sd = self.model([['0', '1'], ['-1', '0']], [['4', '0'], ['0', '4']],
                        [[['0', '-y'], ['y', '0']], [['0', '0'], ['0', '0']]])
        self.assertEqual(geometry.curvature(sd).B[0][1], [[0, 4], [-4, 0]])


@ddt.ddt
class VectorFieldTestCase(GeometryTestMixin, unittest.TestCase):
    """
    Divergences, Hamiltonian vector fields and exactness on the base.
    """
    @ddt.data(
        (['1', '0'], '0'),
        (['x', '0'], '1'),
        (['x', 'y'], '2'),
        (['x*y', '-y^2/2'], '0'),
    )
    @ddt.unpack
    def test_classical_divergence(self, vector, expected):
        sd = self.flat_model()
        value = geometry.classical_divergence([self.function(text) for text in vector], sd)
        self.assertEqual(value, self.function(expected))

    def test_divergence_with_volume(self):
        sd = self.model([['0', '1 + x^2'], ['-1 - x^2', '0']], [['1']])
        value = geometry.classical_divergence([self.function('1'), self.function('0')], sd)
        self.assertEqual(value, self.function('2*x/(1 + x^2)'))

    def test_divergence_leaving_the_torus_ring(self):
        sd = self.model([['0', '2 + cos(x)'], ['-2 - cos(x)', '0']], [['1']], mode=TORUS)
        with self.assertRaises(NonUnitVolumeCoefficient):
            geometry.classical_divergence([self.ring(TORUS).one, self.ring(TORUS).zero], sd)

    @ddt.data(
        ('x', ['0', '-1']),
        ('3', ['0', '0']),
        ('x^2/2', ['0', '-x']),
        ('x*y', ['x', '-y']),
    )
    @ddt.unpack
    def test_hamiltonian_vector_field(self, function, expected):
        field = geometry.hamiltonian_vector_field(self.function(function), self.flat_model())
        self.assertEqual(field, [self.function(text) for text in expected])

    def test_hamiltonian_fields_are_divergence_free(self):
        sd = self.flat_model()
        field = geometry.hamiltonian_vector_field(self.function('x^3*y - y^2 + x'), sd)
        self.assertFalse(geometry.classical_divergence(field, sd))
        self.assertEqual(geometry.contract_omega(field, sd), [self.function('3*x^2*y + 1'),
                                                               self.function('x^3 - 2*y')])

    def test_classical_bracket(self):
        sd = self.flat_model()
        self.assertEqual(geometry.classical_bracket(self.function('x'), self.function('y'), sd), -1)
        self.assertEqual(geometry.classical_bracket(self.function('y'), self.function('x'), sd), 1)

    @ddt.data(
        (CHART, ['x', '0'], True),
        (CHART, ['y', '0'], False),
        (CHART, ['y', 'x'], True),
        (TORUS, ['1', '0'], False),
        (TORUS, ['cos(x)', '0'], True),
        (TORUS, ['sin(y)', '0'], False),
    )
    @ddt.unpack
    def test_is_exact_classical(self, mode, alpha, exact):
        sd = self.flat_model(mode)
        self.assertEqual(geometry.is_exact_classical([self.function(text, mode) for text in alpha], sd), exact)


@ddt.ddt
class MetricVolumeTestCase(GeometryTestMixin, unittest.TestCase):
    """
    The normalized total contraction with the metric volume.
    """
    def test_identity_metric(self):
        sd = self.flat_model()
        self.assertEqual(geometry.metric_volume_contract(self.section('x*y*e[1]^e[2] + e[1]'), sd),
                         self.function('x*y'))
        self.assertFalse(geometry.metric_volume_contract(self.section('1 + x*e[2]'), sd))

    def test_scaled_metric(self):
        sd = self.model([['0', '1'], ['-1', '0']], [['4', '0'], ['0', '4']])
        self.assertEqual(geometry.metric_volume_contract(self.section('x*e[1]^e[2]'), sd), self.function('x/4'))

    @ddt.data(
        ([['2', '0'], ['0', '1']], IrrationalSqrt),
        ([['1 + x^2', '0'], ['0', '1']], NonConstantMetricDeterminant),
        ([['-1', '0'], ['0', '1']], IrrationalSqrt),
    )
    @ddt.unpack
    def test_unsupported_determinants(self, g, error):
        with self.assertRaises(error):
            geometry.metric_volume_constant(self.model([['0', '1'], ['-1', '0']], g))

    @ddt.data(
        ([['4', '0'], ['0', '1']], QQ(1, 2)),
        ([['9/4', '0'], ['0', '1']], QQ(2, 3)),
        ([['1', '1/5'], ['1/5', '26/25']], QQ(1)),
    )
    @ddt.unpack
    def test_rational_square_roots(self, g, scale):
        sd = self.model([['0', '1'], ['-1', '0']], g)
        self.assertEqual(geometry.metric_volume_constant(sd), scale)

    def test_square_root_comes_from_public_sympy(self):
        self.assertIs(geometry.integer_nthroot, sympy.integer_nthroot)

    def test_explicit_scale(self):
        sd = self.model([['0', '1'], ['-1', '0']], [['2', '0'], ['0', '1']], volume_scale=3)
        self.assertEqual(geometry.metric_volume_contract(self.section('e[1]^e[2]'), sd), 3)

    def test_rank_mismatch(self):
        with self.assertRaises(RankMismatch):
            geometry.metric_volume_contract(self.section('e[1]', rank=3), self.flat_model())
