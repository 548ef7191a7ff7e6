"""
Tests of the even symplectic form, Hamiltonian fields and the Poisson bracket.
"""

from __future__ import absolute_import, division, print_function, unicode_literals

import unittest

import ddt
import mock

from ..coefficients import TORUS
from ..derivations import GradedDerivation, apply, d_graded
from ..exceptions import BackSubstitutionFailure, DegenerateBody
from ..geometry import classical_bracket
from ..symplectic import (
    back_substitution_residual,
    build_rothstein,
    coordinate_form,
    hamiltonian_field,
    hamiltonian_field_of_form,
    insert,
    poisson_bracket,
    theta_pair,
)
from ..test_utils import ModelTestMixin


class RothsteinFormTestCase(ModelTestMixin, unittest.TestCase):
    """
    Gram blocks of the form.
    """
    def test_flat_blocks(self):
        theta = build_rothstein(self.flat_model())
        self.assertEqual(theta.W, [[0, 1], [-1, 0]])
        self.assertEqual(theta.G, [[1, 0], [0, 1]])
        self.assertEqual(theta.nilpotent_order, 1)
        souls, _ = theta.higher_part()
        self.assertEqual(souls, [[0, 0], [0, 0]])

    def test_curvature_enters_the_nabla_block(self):
        theta = build_rothstein(self.curved_model())
        self.assertSuperfunctionEqual(theta.W[0][1], '1 + e[1]^e[2]')
        self.assertSuperfunctionEqual(theta.W[1][0], '-1 - e[1]^e[2]')
        self.assertEqual(theta.degree_zero_part(), [[0, 1], [-1, 0]])
        self.assertEqual(theta.nilpotent_order, 2)

    def test_nabla_block_inverse(self):
        theta = build_rothstein(self.curved_model())
        self.assertSuperfunctionEqual(theta.W_inverse[0][1], '-1 + e[1]^e[2]')
        self.assertSuperfunctionEqual(theta.W_inverse[1][0], '1 - e[1]^e[2]')

    def test_degenerate_omega(self):
        with self.assertRaises(DegenerateBody):
            build_rothstein(self.curved_model(omega='0'))

    def test_degenerate_metric(self):
        sd = self.flat_model()
        sd.g = [[sd.ring.one, sd.ring.one], [sd.ring.one, sd.ring.one]]
        with self.assertRaises(DegenerateBody):
            build_rothstein(sd)

    def test_torus_volume_must_be_constant(self):
        with self.assertRaises(DegenerateBody):
            build_rothstein(self.curved_model(TORUS, omega='2 + cos(x)'))


class ThetaPairTestCase(ModelTestMixin, unittest.TestCase):
    """
    Evaluation of the form on derivations.
    """
    def setUp(self):
        super(ThetaPairTestCase, self).setUp()
        self.theta = build_rothstein(self.flat_model())
        connection = self.theta.connection
        self.nabla_x = GradedDerivation.nabla_basis(connection, 0)
        self.nabla_y = GradedDerivation.nabla_basis(connection, 1)
        self.i_1 = GradedDerivation.contraction_basis(connection, 0)

    def test_frame_values(self):
        self.assertSuperfunctionEqual(theta_pair(self.nabla_x, self.nabla_y, self.theta), '1')
        self.assertSuperfunctionEqual(theta_pair(self.nabla_y, self.nabla_x, self.theta), '-1')
        self.assertSuperfunctionEqual(theta_pair(self.i_1, self.i_1, self.theta), '1')
        self.assertSuperfunctionEqual(theta_pair(self.nabla_x, self.i_1, self.theta), '0')

    def test_coefficients_pass_frame_elements_with_a_sign(self):
        odd = self.section('e[2]')
        left = GradedDerivation(self.theta.connection, None, [odd, self.section('0')])
        right = GradedDerivation(self.theta.connection, None, [odd, self.section('0')])
        # <e2 i1, e2 i1> = (-1)^{|e2||i1|} e2 e2 <i1, i1> = 0
        self.assertSuperfunctionEqual(theta_pair(left, right, self.theta), '0')
        right = GradedDerivation(self.theta.connection, None, [self.section('x*e[1]'), self.section('0')])
        self.assertSuperfunctionEqual(theta_pair(left, right, self.theta), 'x*e[1]^e[2]')

    def test_insertion_of_frame_elements(self):
        form = insert(self.nabla_x, self.theta)
        self.assertEqual(form.nabla, [0, 1])
        self.assertEqual(form.contraction, [0, 0])
        self.assertEqual(insert(self.i_1, self.theta).contraction, [1, 0])


@ddt.ddt
class HamiltonianFieldTestCase(ModelTestMixin, unittest.TestCase):
    """
    Solving ``i_D Theta = d s``.
    """
    def test_flat_coordinate_fields(self):
        theta = build_rothstein(self.flat_model())
        field = hamiltonian_field(self.section('x'), theta)
        self.assertEqual(field, -GradedDerivation.nabla_basis(theta.connection, 1))
        self.assertSuperfunctionEqual(poisson_bracket(self.section('x'), self.section('y'), theta), '-1')

    def test_flat_base_function(self):
        theta = build_rothstein(self.flat_model())
        field = hamiltonian_field(self.section('x^2/2'), theta)
        self.assertEqual(field, GradedDerivation(theta.connection, [0, self.section('-x')]))
        self.assertFalse(any(field.beta))

    def test_flat_generator(self):
        theta = build_rothstein(self.flat_model())
        field = hamiltonian_field(self.generator(0), theta)
        self.assertEqual(field, GradedDerivation.contraction_basis(theta.connection, 0))
        self.assertSuperfunctionEqual(poisson_bracket(self.generator(0), self.generator(0), theta), '1')
        self.assertSuperfunctionEqual(poisson_bracket(self.generator(0), self.generator(1), theta), '0')

    def test_curved_coordinate_field_has_higher_terms(self):
        theta = build_rothstein(self.curved_model())
        field = hamiltonian_field(self.section('x'), theta)
        self.assertSuperfunctionEqual(field.alpha[1], '-1 + e[1]^e[2]')
        self.assertFalse(field.alpha[0])
        self.assertFalse(back_substitution_residual(field, d_graded(theta.connection, self.section('x')), theta))
        self.assertSuperfunctionEqual(poisson_bracket(self.section('x'), self.section('y'), theta), '-1 + e[1]^e[2]')
        self.assertSuperfunctionEqual(poisson_bracket(self.section('y'), self.section('x'), theta), '1 - e[1]^e[2]')

    @ddt.data('x*y', 'e[1]', 'y*e[2] + x^2*e[1]', 'x + e[1]^e[2]', 'e[1] + x*e[1]^e[2]')
    def test_back_substitution(self, text):
        theta = build_rothstein(self.curved_model())
        s = self.section(text)
        field = hamiltonian_field(s, theta)
        self.assertEqual(insert(field, theta), d_graded(theta.connection, s))

    @ddt.data(('x', 'y'), ('x^2*y', 'x + y'), ('x*y^2', 'y^3'))
    @ddt.unpack
    def test_bracket_of_base_functions_is_classical(self, left, right):
        sd = self.flat_model()
        theta = build_rothstein(sd)
        bracket = poisson_bracket(self.section(left), self.section(right), theta)
        self.assertEqual(bracket, classical_bracket(self.function(left), self.function(right), sd))

    @ddt.data(('e[1]', 'x*e[2]'), ('x*y', 'e[1]^e[2]'), ('y*e[1]', 'e[1] + e[2]'))
    @ddt.unpack
    def test_bracket_is_graded_antisymmetric(self, left, right):
        theta = build_rothstein(self.curved_model())
        s, t = self.section(left), self.section(right)
        sign = -1 if s.parity() * t.parity() else 1
        self.assertEqual(poisson_bracket(s, t, theta), -poisson_bracket(t, s, theta).scale(sign))

    def test_bracket_is_a_derivation(self):
        theta = build_rothstein(self.curved_model())
        s, t, u = self.section('x*e[1]'), self.section('y'), self.section('e[2] + x*e[1]')
        left = poisson_bracket(s, t * u, theta)
        right = poisson_bracket(s, t, theta) * u + t * poisson_bracket(s, u, theta)
        self.assertEqual(left, right)

    def test_torus_coordinate_form(self):
        theta = build_rothstein(self.torus_model(curved=True))
        field = hamiltonian_field_of_form(coordinate_form(theta, 0), theta)
        self.assertSuperfunctionEqual(field.alpha[1], '-1 - sin(y)*e[1]^e[2]', mode=TORUS)
        self.assertEqual(insert(field, theta), coordinate_form(theta, 0))

    def test_verification_failure(self):
        theta = build_rothstein(self.flat_model())
        residual = d_graded(theta.connection, self.section('y'))
        with mock.patch('supermodular.symplectic.back_substitution_residual', return_value=residual):
            with self.assertRaises(BackSubstitutionFailure):
                hamiltonian_field(self.section('x'), theta)
        field = hamiltonian_field(self.section('x'), theta, verify=False)
        self.assertEqual(apply(field, self.section('y')), -1)
