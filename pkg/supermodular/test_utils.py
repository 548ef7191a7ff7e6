"""
Common functionality to support writing tests around supermodular.
"""

from __future__ import absolute_import, division, print_function, unicode_literals

import os

from .algebra import Superfunction
from .coefficients import CHART, TORUS, ring_for
from .expressions import parse_coefficient, parse_superfunction
from .geometry import SymplecticData

MANIFEST_DIR = os.path.join(os.path.dirname(__file__), 'tests', 'manifests')


def manifest_path(name):
    """
    Path of one of the sample manifests shipped with the tests.
    """
    return os.path.join(MANIFEST_DIR, name)


class ModelTestMixin(object):
    """
    Builders for the small models the tests share.

    The curved models use ``Gamma_x = a J``, ``Gamma_y = 0`` with
    ``J = [[0, -1], [1, 0]]`` and ``G = I``: skew, so compatible and traceless.
    """
    def ring(self, mode=CHART, dim=2):
        return ring_for(mode, dim)

    def section(self, text, mode=CHART, rank=2):
        """
        Parse a superfunction literal in the 2-dimensional ring of ``mode``.
        """
        return parse_superfunction(text, self.ring(mode), rank)

    def function(self, text, mode=CHART):
        return parse_coefficient(text, self.ring(mode))

    def generator(self, index, mode=CHART, rank=2):
        return Superfunction.generator(self.ring(mode), rank, index)

    def flat_model(self, mode=CHART, rank=2):
        return SymplecticData.flat_model(self.ring(mode), rank)

    def curved_model(self, mode=CHART, coefficient=None, omega=None, rank=2):
        """
        ``Gamma_x = a J`` with ``a = y`` on a chart and ``a = cos(y)`` on the torus by default.
        """
        ring = self.ring(mode)
        if coefficient is None:
            coefficient = 'y' if mode == CHART else 'cos(y)'
        a = parse_coefficient(coefficient, ring)
        zero, one = ring.zero, ring.one
        gamma_x = [[zero] * rank for _ in range(rank)]
        gamma_x[0][1] = -a
        gamma_x[1][0] = a
        gamma = [gamma_x, [[zero] * rank for _ in range(rank)]]
        omega_12 = one if omega is None else parse_coefficient(omega, ring)
        g = [[one if j == k else zero for k in range(rank)] for j in range(rank)]
        return SymplecticData(ring, rank, [[zero, omega_12], [-omega_12, zero]], g, gamma)

    def torus_model(self, curved=False, rank=2):
        if curved:
            return self.curved_model(TORUS, rank=rank)
        return self.flat_model(TORUS, rank)

    def assertSuperfunctionEqual(self, actual, expected_text, mode=CHART, rank=2):  # pylint: disable=invalid-name
        """
        Compare against a literal, reporting both sides in the mini-language.
        """
        expected = self.section(expected_text, mode, rank)
        self.assertEqual(actual, expected, '{} != {}'.format(actual.to_text(), expected.to_text()))
