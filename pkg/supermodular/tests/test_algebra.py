"""
Tests of the Grassmann algebra of superfunctions.
"""

from __future__ import absolute_import, division, print_function, unicode_literals

import unittest
from fractions import Fraction

import ddt
import mock
from hypothesis import given, settings
from hypothesis import strategies as st

from .. import algebra
from ..algebra import Superfunction, exp_even, grade_project, invert_even, log_even, parity_part, wedge
from ..coefficients import TORUS, chart_ring
from ..exceptions import (
    BodyNotOne,
    BodyNotZero,
    ModeMismatch,
    NeumannSeriesDivergence,
    NonInvertibleBody,
    OddElement,
    RankMismatch,
)
from ..test_utils import ModelTestMixin

RANK = 4
RING = chart_ring(2)

rationals = st.fractions(min_value=-4, max_value=4, max_denominator=3)


@st.composite
def superfunctions(draw, degrees=None):
    """
    Superfunctions of rank 4 with constant coefficients, optionally restricted to some Z-degrees.
    """
    masks = [mask for mask in range(1 << RANK) if degrees is None or algebra.popcount(mask) in degrees]
    terms = draw(st.dictionaries(st.sampled_from(masks), rationals, max_size=5))
    return Superfunction(RING, RANK, terms)


def even_units():
    return st.tuples(rationals.filter(bool), superfunctions(degrees=(2, 4))).map(
        lambda pair: pair[1] + pair[0])


@ddt.ddt
class WedgeTestCase(ModelTestMixin, unittest.TestCase):
    """
    Products of generators and their signs.
    """
    def test_repeated_generator_vanishes(self):
        self.assertFalse(wedge(self.generator(0), self.generator(0)))

    def test_coefficients_multiply(self):
        product = wedge(self.section('x*e[1]'), self.section('y*e[2]'))
        self.assertSuperfunctionEqual(product, 'x*y*e[1]^e[2]')

    def test_odd_generators_anticommute(self):
        self.assertSuperfunctionEqual(wedge(self.generator(1), self.generator(0)), '-e[1]^e[2]')

    @ddt.data(
        ((0, 1, 2), 1),
        ((2, 1, 0), -1),
        ((1, 0, 2), -1),
        ((2, 0, 1), 1),
    )
    @ddt.unpack
    def test_monomial_ordering_sign(self, indices, sign):
        monomial = Superfunction.monomial(self.ring(), 3, 1, indices)
        self.assertEqual(monomial.coefficient(0b111), sign)

    def test_rank_mismatch(self):
        with self.assertRaises(RankMismatch):
            wedge(self.generator(0, rank=2), self.generator(0, rank=3))

    def test_mode_mismatch(self):
        with self.assertRaises(ModeMismatch):
            wedge(self.generator(0), self.generator(0, mode=TORUS))

    def test_unknown_generator(self):
        with self.assertRaises(RankMismatch):
            Superfunction.generator(self.ring(), 2, 2)

    def test_printing(self):
        self.assertEqual(self.section('e[1]^e[2]*2 + 1').to_text(), '1 + 2*e[1]^e[2]')
        self.assertEqual(self.section('(x + 1)*e[2] - e[1]').to_text(), '-e[1] + (x1 + 1)*e[2]')
        self.assertEqual(Superfunction.zero(self.ring(), 2).to_text(), '0')


@ddt.ddt
class GradingTestCase(ModelTestMixin, unittest.TestCase):
    """
    Z-degree and parity projections.
    """
    @ddt.data(
        ('1 + e[1]^e[2]', 0, '1'),
        ('1 + e[1]^e[2]', 2, 'e[1]^e[2]'),
        ('e[1]', 2, '0'),
        ('x + y*e[1] + e[2]', 1, 'y*e[1] + e[2]'),
    )
    @ddt.unpack
    def test_grade_project(self, text, degree, expected):
        self.assertSuperfunctionEqual(grade_project(self.section(text), degree), expected)

    def test_grade_out_of_range(self):
        with self.assertRaises(ValueError):
            grade_project(self.section('1'), 3)

    def test_parity(self):
        mixed = self.section('1 + e[1] + e[1]^e[2]')
        self.assertIsNone(mixed.parity())
        self.assertIsNone(mixed.degree())
        self.assertSuperfunctionEqual(parity_part(mixed, 0), '1 + e[1]^e[2]')
        self.assertSuperfunctionEqual(parity_part(mixed, 1), 'e[1]')
        self.assertEqual(Superfunction.zero(self.ring(), 2).parity(), 0)


@ddt.ddt
class NilpotentSeriesTestCase(ModelTestMixin, unittest.TestCase):
    """
    Finite inverse, logarithm and exponential series.
    """
    def test_invert_even(self):
        self.assertSuperfunctionEqual(invert_even(self.section('1 + e[1]^e[2]')), '1 - e[1]^e[2]')
        self.assertSuperfunctionEqual(invert_even(self.section('2')), '1/2')
        self.assertSuperfunctionEqual(invert_even(self.section('x + e[1]^e[2]')), '1/x - 1/x^2*e[1]^e[2]')

    @ddt.data(
        ('e[1]^e[2]', NonInvertibleBody),
        ('1 + e[1]', OddElement),
    )
    @ddt.unpack
    def test_invert_even_errors(self, text, error):
        with self.assertRaises(error):
            invert_even(self.section(text))

    def test_torus_body_must_be_constant(self):
        with self.assertRaises(NonInvertibleBody):
            invert_even(self.section('1 + cos(x) + e[1]^e[2]', mode=TORUS))

    def test_log_even(self):
        self.assertSuperfunctionEqual(log_even(self.section('1 + e[1]^e[2]')), 'e[1]^e[2]')
        self.assertSuperfunctionEqual(log_even(self.section('1')), '0')
        with self.assertRaises(BodyNotOne):
            log_even(self.section('2 + e[1]^e[2]'))

    def test_log_of_rank_four_element(self):
        nu = self.section('e[1]^e[2] + e[3]^e[4]', rank=4)
        self.assertSuperfunctionEqual(log_even(1 + nu), 'e[1]^e[2] + e[3]^e[4] - e[1]^e[2]^e[3]^e[4]', rank=4)

    def test_exp_even(self):
        self.assertSuperfunctionEqual(exp_even(self.section('e[1]^e[2]')), '1 + e[1]^e[2]')
        with self.assertRaises(BodyNotZero):
            exp_even(self.section('1 + e[1]^e[2]'))
        with self.assertRaises(OddElement):
            exp_even(self.section('e[1]'))

    def test_guard_stops_runaway_series(self):
        with mock.patch('supermodular.algebra._series_bound', return_value=0):
            with self.assertRaises(NeumannSeriesDivergence):
                invert_even(self.section('1 + e[1]^e[2] + e[3]^e[4]', rank=4))

    def test_guard_can_be_disabled(self):
        with mock.patch('supermodular.algebra._series_bound', return_value=0):
            with mock.patch('supermodular.conf.get', return_value=False):
                inverse = invert_even(self.section('1 + e[1]^e[2]'))
        self.assertSuperfunctionEqual(inverse, '1 - e[1]^e[2]')


class AlgebraLawsTestCase(unittest.TestCase):
    """
    Ring laws on random constant-coefficient superfunctions of rank 4.
    """
    @settings(max_examples=40, deadline=None)
    @given(superfunctions(), superfunctions(), superfunctions())
    def test_associative(self, a, b, c):
        self.assertEqual(wedge(wedge(a, b), c), wedge(a, wedge(b, c)))

    @settings(max_examples=40, deadline=None)
    @given(superfunctions(), superfunctions(), superfunctions())
    def test_distributive(self, a, b, c):
        self.assertEqual(wedge(a, b + c), wedge(a, b) + wedge(a, c))

    @settings(max_examples=40, deadline=None)
    @given(st.sampled_from(range(RANK + 1)), st.sampled_from(range(RANK + 1)), st.data())
    def test_graded_commutative(self, p, q, data):
        a = data.draw(superfunctions(degrees=(p,)))
        b = data.draw(superfunctions(degrees=(q,)))
        sign = -1 if p * q % 2 else 1
        self.assertEqual(wedge(a, b), wedge(b, a).scale(sign))

    @settings(max_examples=40, deadline=None)
    @given(even_units())
    def test_inverse_is_two_sided(self, element):
        one = Superfunction.one(RING, RANK)
        self.assertEqual(wedge(element, invert_even(element)), one)
        self.assertEqual(wedge(invert_even(element), element), one)

    @settings(max_examples=40, deadline=None)
    @given(superfunctions(degrees=(2, 4)))
    def test_exp_inverts_log(self, nilpotent):
        element = nilpotent + 1
        self.assertEqual(exp_even(log_even(element)), element)

    @settings(max_examples=40, deadline=None)
    @given(superfunctions(degrees=(2, 4)), superfunctions(degrees=(2, 4)))
    def test_log_of_product(self, left, right):
        product = wedge(left + 1, right + 1)
        self.assertEqual(log_even(product), log_even(left + 1) + log_even(right + 1))

    def test_fractions_are_exact(self):
        value = Superfunction.constant(RING, RANK, Fraction(1, 3))
        self.assertEqual(value.scale(3), Superfunction.one(RING, RANK))
