"""
Berezinian volumes, their divergence operators and the modular vector field.

The symplectic Berezinian integrates ``s`` as ``int_M c * top(s) * W dx``, with
``W`` the coefficient of the top power of omega and ``c`` the metric volume
normalization.  Its divergence is assembled in closed form on the frame:

    div(sum alpha^a nabla_a + sum beta^j i_j)
        = sum_a [alpha^a d_a W / W + nabla_a(alpha^a)] + sum_j (-1)^{|beta^j|} i_j(beta^j)

and a rescaled volume ``xi * sbar`` adds ``sbar^-1 D(sbar)``.
"""

from __future__ import absolute_import, division, print_function, unicode_literals

import logging

from . import geometry
from .algebra import Superfunction, invert_even, log_even, parity_split, wedge
from .coefficients import TORUS, torus_integral
from .derivations import (
    GradedDerivation,
    apply,
    closedness_defects,
    contract,
    d_graded,
    nabla,
    pair,
)
from .exceptions import ChartModeUnsupported, InexactQuotient, NonInvertibleBody, NotLocallyHamiltonian, OddElement
from .symplectic import coordinate_form, hamiltonian_field, hamiltonian_field_of_form, insert

log = logging.getLogger(__name__)


class BerezinianVolume(object):
    """
    The symplectic Berezinian of ``sd``, optionally rescaled by an even invertible ``rescale``.

    Parameters:
        sd (SymplecticData)
        rescale (Superfunction): defaults to 1.
        coefficient (CoeffFn): base volume coefficient; defaults to the symplectic volume ``W``.
            Passing a user-supplied coefficient gives the canonical Berezinian of that identification.
    """
    def __init__(self, sd, rescale=None, coefficient=None):
        self.sd = sd
        self.coefficient = geometry.symplectic_volume(sd) if coefficient is None else sd.ring.coerce(coefficient)
        if rescale is not None:
            if not rescale.is_even():
                raise OddElement('a Berezinian can only be rescaled by an even element')
            self.rescale_inverse = invert_even(rescale)
        else:
            self.rescale_inverse = None
        self.rescale = rescale

    @property
    def is_rescaled(self):
        return self.rescale is not None

    def rescaled(self, rescale):
        """
        Returns ``self * rescale``.
        """
        combined = rescale if self.rescale is None else wedge(self.rescale, rescale)
        return BerezinianVolume(self.sd, combined, self.coefficient)

    def integrate(self, element):
        return berezin_integral(element, self)


class DivergenceOperator(object):
    """
    The divergence operator induced by a Berezinian volume.
    """
    def __init__(self, volume):
        self.volume = volume
        self.sd = volume.sd
        self.connection = volume.sd.connection
        self._basic = None

    @classmethod
    def symplectic(cls, sd, rescale=None):
        return cls(BerezinianVolume(sd, rescale))

    def basic_divergences(self):
        """
        ``div(nabla_a) = d_a W / W`` for every coordinate direction.
        """
        if self._basic is None:
            self._basic = [geometry.volume_log_derivative(self.volume.coefficient, a) for a in range(self.sd.dim)]
        return self._basic

    def __call__(self, derivation):
        return divergence(derivation, self)


def berezin_integral(element, volume):
    """
    ``int_{xi sbar} s = int_M c * top(sbar s) * W``.

    Return Value:
        TorusIntegral

    Raises:
        ChartModeUnsupported: outside torus mode.
    """
    sd = volume.sd
    if sd.mode != TORUS:
        raise ChartModeUnsupported('Berezin integration needs torus mode')
    if volume.rescale is not None:
        element = wedge(volume.rescale, element)
    density = geometry.metric_volume_contract(element, sd) * volume.coefficient
    return torus_integral(density)


def _unscaled_divergence(derivation, operator):
    connection = operator.connection
    ring, rank = connection.ring, connection.rank
    basic = operator.basic_divergences()
    result = Superfunction.zero(ring, rank)
    for a, component in enumerate(derivation.alpha):
        if not component:
            continue
        if basic[a]:
            result = result + component.scale(basic[a])
        result = result + nabla(connection, a, component)
    for j, component in enumerate(derivation.beta):
        for parity, part in parity_split(component):
            contracted = contract(j, part)
            result = result - contracted if parity else result + contracted
    return result


def divergence(derivation, operator):
    """
    ``div(D)`` for the operator's Berezinian, including the rescaling correction.
    """
    result = _unscaled_divergence(derivation, operator)
    volume = operator.volume
    if volume.rescale is not None:
        result = result + wedge(volume.rescale_inverse, apply(derivation, volume.rescale))
    return result


def divergence_rescaled(derivation, rescale, operator):
    """
    ``div(D) + sbar^-1 D(sbar)``: the divergence of the Berezinian rescaled by ``sbar``.

    Raises:
        NonInvertibleBody, OddElement
    """
    return divergence(derivation, operator) + wedge(invert_even(rescale), apply(derivation, rescale))


def divergence_rescaled_log(derivation, rescale, operator):
    """
    ``div(D) + <D; d log sbar>``, defined when the body of ``sbar`` is 1.

    Raises:
        BodyNotOne
    """
    logarithm = log_even(rescale)
    return divergence(derivation, operator) + pair(derivation, d_graded(operator.connection, logarithm))


def modular_field(theta, operator):
    """
    The even derivation ``Z(u) = div(D_u)``.

    ``Z`` is assembled from its values: on ``x^b`` through the closed form
    ``d x^b`` (so it also works on the torus) and on the generators ``e_k``.
    """
    connection = theta.connection
    alpha = [divergence(hamiltonian_field_of_form(coordinate_form(theta, b), theta), operator)
             for b in range(theta.dim)]
    partial_field = GradedDerivation(connection, alpha)
    beta = []
    for k in range(theta.rank):
        generator = Superfunction.generator(theta.ring, theta.rank, k)
        value = divergence(hamiltonian_field(generator, theta), operator)
        beta.append(value - partial_field.generator_value(k))
    field = GradedDerivation(connection, alpha, beta)
    log.debug('modular field: %s', field.to_text())
    return field


def modular_field_mismatches(field, theta, operator, samples):
    """
    Returns the samples ``u`` for which ``Z(u) != div(D_u)``.
    """
    return [sample for sample in samples
            if apply(field, sample) != divergence(hamiltonian_field(sample, theta, verify=False), operator)]


def classical_part(field):
    """
    The degree-0 part of the nabla components: a vector field on the base.
    """
    return [component.body() for component in field.alpha]


def is_locally_hamiltonian(field, theta):
    """
    ``i_D Theta`` is closed.
    """
    return not closedness_defects(insert(field, theta))


class ModularClass(object):
    """
    Verdict on the modular class with its certificate.
    """
    def __init__(self, trivial, certificate, field, locally_hamiltonian):
        self.trivial = trivial
        self.certificate = certificate
        self.field = field
        self.locally_hamiltonian = locally_hamiltonian

    def __bool__(self):
        return self.trivial

    __nonzero__ = __bool__

    def certificate_text(self):
        return '({})'.format(', '.join(component.to_text() for component in self.certificate))


def modular_class_trivial(theta, operator, field=None):
    """
    Decide whether the modular class vanishes.

    Only the classical part ``X_Z`` of the modular field matters: the class is
    trivial iff ``alpha = i_{X_Z} omega`` is exact on the base.

    Return Value:
        ModularClass: ``trivial`` plus ``alpha`` as certificate.

    Raises:
        NotLocallyHamiltonian: when ``alpha`` is not closed.
    """
    sd = theta.sd
    field = modular_field(theta, operator) if field is None else field
    alpha = geometry.contract_omega(classical_part(field), sd)
    if not geometry.is_closed_classical(alpha, sd):
        raise NotLocallyHamiltonian('i_X omega is not closed for X = ({})'.format(
            ', '.join(component.to_text() for component in classical_part(field))))
    trivial = geometry.is_exact_classical(alpha, sd)
    return ModularClass(trivial, alpha, field, is_locally_hamiltonian(field, theta))


def rescaling_difference(theta, rescale):
    """
    ``-sbar^-1 D_sbar``: what rescaling the Berezinian by ``sbar`` adds to the modular field.
    """
    field = hamiltonian_field(rescale, theta)
    return -field.left_multiply(invert_even(rescale))


class CanonicalComparison(object):
    """
    ``e^f = W / W_hat`` and the divergence operators of both Berezinians.
    """
    def __init__(self, ratio, symplectic, canonical):
        self.ratio = ratio
        self.symplectic = symplectic
        self.canonical = canonical

    def defect(self, derivation):
        """
        ``e^f (div_symp - div_can)(D) - D(e^f)``; zero when the two operators differ by ``d f``.
        """
        difference = self.symplectic(derivation) - self.canonical(derivation)
        return wedge(self.ratio, difference) - apply(derivation, self.ratio)

    def rescaled_canonical(self):
        """
        The canonical Berezinian rescaled by ``e^f``; it induces the symplectic divergence.
        """
        return DivergenceOperator(self.canonical.volume.rescaled(self.ratio))


def canonical_comparison(canonical_volume, sd):
    """
    Compare the symplectic Berezinian with the canonical one fixed by the base volume ``W_hat``.

    Raises:
        InexactQuotient: when ``W / W_hat`` leaves the coefficient ring.
    """
    canonical_volume = sd.ring.coerce(canonical_volume)
    volume = geometry.symplectic_volume(sd)
    try:
        ratio = volume.exact_quotient(canonical_volume)
    except (InexactQuotient, NonInvertibleBody):
        raise InexactQuotient('W / W_hat = ({}) / ({}) is not exact'.format(
            volume.to_text(), canonical_volume.to_text()))
    return CanonicalComparison(
        Superfunction.constant(sd.ring, sd.rank, ratio),
        DivergenceOperator(BerezinianVolume(sd)),
        DivergenceOperator(BerezinianVolume(sd, coefficient=canonical_volume)),
    )


def canonical_integral(element, canonical_volume, sd):
    """
    ``int_can s = int_M c * top(s) * W_hat``, so that ``int_xi s = int_can e^f s``.
    """
    return berezin_integral(element, BerezinianVolume(sd, coefficient=canonical_volume))
