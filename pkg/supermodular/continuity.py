"""
The graded continuity equation for densities depending on an even time ``t``
and, to first order, an odd parameter ``sigma``.

A density ``rho = rho0(t) + sigma rho1(t)`` is stored as two lists of
superfunctions indexed by the power of ``t``.  ``d/dt + d/dsigma`` acts as
``(d_t rho0 + rho1) + sigma d_t rho1``.
"""

from __future__ import absolute_import, division, print_function, unicode_literals

import logging

from . import geometry
from .algebra import Superfunction, parity_split, wedge
from .berezin import berezin_integral, divergence
from .coefficients import TORUS, TorusIntegral
from .derivations import GradedDerivation, apply
from .exceptions import ChartModeUnsupported, InconsistentResidual, NonzeroResidual, RankMismatch
from .reports import Report, statement_of

log = logging.getLogger(__name__)


def _trim(polynomial):
    polynomial = list(polynomial)
    while polynomial and not polynomial[-1]:
        polynomial.pop()
    return polynomial


def _add(left, right, zero):
    size = max(len(left), len(right))
    left = list(left) + [zero] * (size - len(left))
    right = list(right) + [zero] * (size - len(right))
    return [a + b for a, b in zip(left, right)]


def _time_derivative(polynomial):
    return [value.scale(power) for power, value in enumerate(polynomial)][1:]


class TimeDependentSection(object):
    """
    ``rho0(t) + sigma rho1(t)``; ``sigma^2 = 0`` because only the first order is stored.

    Parameters:
        rho0 (list): superfunctions, the n-th multiplying ``t^n``.
        rho1 (list): likewise for the ``sigma`` component.
    """
    def __init__(self, ring, rank, rho0=None, rho1=None):
        self.ring = ring
        self.rank = rank
        self.rho0 = _trim(self._lift(rho0 or []))
        self.rho1 = _trim(self._lift(rho1 or []))

    def _lift(self, values):
        lifted = []
        for value in values:
            if not isinstance(value, Superfunction):
                value = Superfunction.constant(self.ring, self.rank, value)
            elif value.rank != self.rank:
                raise RankMismatch('density component of rank {} in rank {}'.format(value.rank, self.rank))
            lifted.append(value)
        return lifted

    @property
    def zero(self):
        return Superfunction.zero(self.ring, self.rank)

    def __eq__(self, other):
        if not isinstance(other, TimeDependentSection):
            return NotImplemented
        return self.rho0 == other.rho0 and self.rho1 == other.rho1

    def __ne__(self, other):
        return not self == other

    def __bool__(self):
        return bool(self.rho0 or self.rho1)

    __nonzero__ = __bool__

    def __add__(self, other):
        return TimeDependentSection(self.ring, self.rank,
                                    _add(self.rho0, other.rho0, self.zero), _add(self.rho1, other.rho1, self.zero))

    def __sub__(self, other):
        return self + other.scale(-1)

    def scale(self, factor):
        return TimeDependentSection(self.ring, self.rank,
                                    [value.scale(factor) for value in self.rho0],
                                    [value.scale(factor) for value in self.rho1])

    def map_components(self, first, second):
        """
        Apply ``first`` to every rho0 coefficient and ``second`` to every rho1 coefficient.
        """
        return TimeDependentSection(self.ring, self.rank,
                                    [first(value) for value in self.rho0], [second(value) for value in self.rho1])

    def parity(self):
        """
        Total parity (sigma counts as odd); None when mixed.
        """
        parities = set()
        for value in self.rho0:
            parities.update(degree % 2 for degree in value.degrees())
        for value in self.rho1:
            parities.update((degree + 1) % 2 for degree in value.degrees())
        if not parities:
            return 0
        return parities.pop() if len(parities) == 1 else None

    def flow_derivative(self):
        """
        ``(d/dt + d/dsigma) rho``.
        """
        return TimeDependentSection(
            self.ring, self.rank,
            _add(_time_derivative(self.rho0), self.rho1, self.zero),
            _time_derivative(self.rho1),
        )

    def to_text(self):
        def polynomial_text(polynomial):
            pieces = ['({})*t^{}'.format(value.to_text(), power) for power, value in enumerate(polynomial) if value]
            return ' + '.join(pieces) if pieces else '0'
        return 'rho0 = {}; rho1 = {}'.format(polynomial_text(self.rho0), polynomial_text(self.rho1))

    def __repr__(self):
        return '<TimeDependentSection {}>'.format(self.to_text())


class ContinuityResidual(object):
    """
    Divergence and Lie forms of the continuity residual.
    """
    def __init__(self, divergence_form, lie_form, divergence_free):
        self.divergence_form = divergence_form
        self.lie_form = lie_form
        self.divergence_free = divergence_free

    @property
    def forms_agree(self):
        return self.divergence_form == self.lie_form

    @property
    def vanishes(self):
        return not self.divergence_form


def _signed_divergence(element, derivation, parity_shift, operator):
    """
    ``sum over parity parts P of (-1)^{|D||P|} div(P ^ D)``, with ``|P|`` shifted by ``parity_shift``.
    """
    derivation_parity = derivation.require_parity()
    result = Superfunction.zero(element.ring, element.rank)
    for parity, part in parity_split(element):
        value = divergence(derivation.left_multiply(part), operator)
        if derivation_parity * ((parity + parity_shift) % 2):
            result = result - value
        else:
            result = result + value
    return result


def continuity_residual(density, derivation, operator):
    """
    ``(d/dt + d/dsigma) rho + (-1)^{|D||rho|} div(rho D)`` together with the Lie form
    ``(d/dt + d/dsigma) rho + D(rho)``.

    Raises:
        InhomogeneousDerivation: when ``D`` has no definite parity.
        InconsistentResidual: when ``div(D) = 0`` but the two forms differ.
    """
    parity = derivation.require_parity()
    flow = density.flow_derivative()
    divergence_term = density.map_components(
        lambda value: _signed_divergence(value, derivation, 0, operator),
        lambda value: _signed_divergence(value, derivation, 1, operator),
    )
    lie_term = density.map_components(
        lambda value: apply(derivation, value),
        lambda value: apply(derivation, value).scale(-1 if parity else 1),
    )
    result = ContinuityResidual(flow + divergence_term, flow + lie_term, not divergence(derivation, operator))
    if result.divergence_free and not result.forms_agree:
        raise InconsistentResidual('residual forms disagree for a divergence-free derivation')
    return result


def _integrals(polynomial, volume):
    return [berezin_integral(value, volume) for value in polynomial]


def _polynomial_derivative(integrals):
    return [TorusIntegral(value.coefficient * power, value.power) for power, value in enumerate(integrals) if power]


def conservation_check(density, derivation, operator):
    """
    Verify ``(d/dt + d/dsigma) int rho = 0`` componentwise as polynomials in ``t``.

    Raises:
        ChartModeUnsupported: outside torus mode.
        NonzeroResidual: when the density does not solve the continuity equation.
    """
    if operator.sd.mode != TORUS:
        raise ChartModeUnsupported('conservation is checked through the torus integral')
    residual = continuity_residual(density, derivation, operator)
    if not residual.vanishes:
        raise NonzeroResidual('continuity residual is {}'.format(residual.divergence_form.to_text()))
    volume = operator.volume
    first = _integrals(density.rho0, volume)
    second = _integrals(density.rho1, volume)
    zero = TorusIntegral(0, operator.sd.dim)
    even_law = _trim(_add(_polynomial_derivative(first), second, zero))
    odd_law = _trim(_polynomial_derivative(second))
    report = Report('conservation')
    report.values['integral rho0'] = ', '.join(value.to_text() for value in first) or '0'
    report.values['integral rho1'] = ', '.join(value.to_text() for value in second) or '0'
    report.add('conserved-even-part', not even_law, ', '.join(value.to_text() for value in even_law),
               label=statement_of('continuity'))
    report.add('conserved-odd-part', not odd_law, ', '.join(value.to_text() for value in odd_law),
               label=statement_of('continuity'))
    return report


def transport_derivation(vector, sd):
    """
    The even derivation acting as the Lie derivative ``L_X`` when ``E = T*M`` and ``e_j = dx^j``.

    ``beta^j = sum_a d_a X^j e_a - sum_a X^a Gamma_a e_j`` so that ``D(e_j) = d X^j``.
    """
    if sd.rank != sd.dim:
        raise RankMismatch('the classical reduction identifies E with T*M; rank {} != dim {}'.format(
            sd.rank, sd.dim))
    ring, rank = sd.ring, sd.rank
    vector = [ring.coerce(component) for component in vector]
    flat = GradedDerivation(sd.connection, vector)
    beta = []
    for j in range(rank):
        differential = Superfunction(ring, rank, {1 << a: vector[j].partial(a) for a in range(sd.dim)})
        beta.append(differential - flat.generator_value(j))
    return GradedDerivation(sd.connection, vector, beta)


def classical_reduction_demo(density, vector, operator):
    """
    Compare the graded residual of ``f e_1...e_d`` transported by ``L_X`` with ``(d_t f + div(f X)) e_1...e_d``.

    Parameters:
        density (list): ``f`` as CoeffFns indexed by the power of ``t``.
        vector (list): the vector field ``X``.

    Return Value:
        Report with the residual, the expected value and their equality.
    """
    sd = operator.sd
    ring, rank = sd.ring, sd.rank
    for a in range(sd.dim):
        trace = sum((sd.gamma[a][j][j] for j in range(rank)), ring.zero)
        if trace:
            raise ValueError('the reduction needs traceless Christoffel matrices; tr Gamma_{} = {}'.format(
                a + 1, trace.to_text()))
    derivation = transport_derivation(vector, sd)
    top = Superfunction(ring, rank, {(1 << rank) - 1: ring.one})
    coefficients = [ring.coerce(value) for value in density]
    section = TimeDependentSection(ring, rank, [wedge(Superfunction.constant(ring, rank, value), top)
                                                for value in coefficients])
    residual = continuity_residual(section, derivation, operator).divergence_form
    expected_terms = []
    for power in range(len(coefficients)):
        flux = [coefficients[power] * component.body() for component in derivation.alpha]
        value = geometry.classical_divergence(flux, sd, operator.volume.coefficient)
        if power + 1 < len(coefficients):
            value = value + coefficients[power + 1] * (power + 1)
        expected_terms.append(wedge(Superfunction.constant(ring, rank, value), top))
    expected = TimeDependentSection(ring, rank, expected_terms)
    report = Report('classical reduction')
    report.values['residual'] = residual.to_text()
    report.values['expected'] = expected.to_text()
    report.add('reduces-to-classical-continuity', residual == expected, label=statement_of('continuity'))
    return report
