"""
The even symplectic form built from (omega, g, nabla) and its Poisson calculus.

The form is stored through its Gram matrix on the frame::

    <nabla_a, nabla_b> = W_ab = omega_ab + 1/2 sum_jk B_ab^jk e_j e_k
    <nabla_a, i_j>     = 0
    <i_j, i_k>         = G^jk

Pairings extend to arbitrary derivations by
``<alpha X, gamma Y> = (-1)^{|gamma||X|} alpha gamma <X, Y>``.  Inserting a
derivation uses ``<nabla_b; i_D Theta> = <D, nabla_b>`` and
``<i_k; i_D Theta> = (-1)^{|D|+1} <D, i_k>``; with that choice the Hamiltonian
field of ``s`` satisfies ``i_{D_s} Theta = d s``.
"""

from __future__ import absolute_import, division, print_function, unicode_literals

import logging

from sympy.polys.domains import QQ

from . import geometry, linalg
from .algebra import Superfunction, parity_part, wedge
from .derivations import GradedDerivation, GradedOneForm, apply, d_graded
from .exceptions import BackSubstitutionFailure, DegenerateBody, NonInvertibleBody

log = logging.getLogger(__name__)


class RothsteinForm(object):
    """
    Gram blocks of the even symplectic form together with their inverses.
    """
    def __init__(self, sd, curvature, W, G, W_inverse, G_inverse, nilpotent_order):  # pylint: disable=invalid-name
        self.sd = sd
        self.curvature = curvature
        self.W = W  # pylint: disable=invalid-name
        self.G = G  # pylint: disable=invalid-name
        self.W_inverse = W_inverse  # pylint: disable=invalid-name
        self.G_inverse = G_inverse  # pylint: disable=invalid-name
        self.nilpotent_order = nilpotent_order

    @property
    def connection(self):
        return self.sd.connection

    @property
    def ring(self):
        return self.sd.ring

    @property
    def rank(self):
        return self.sd.rank

    @property
    def dim(self):
        return self.sd.dim

    def degree_zero_part(self):
        """
        The bidegree (2, 0) part: the omega block alone.
        """
        return [[entry.body() for entry in row] for row in self.W]

    def higher_part(self):
        """
        The curvature part of the nabla block and the g block, which raise degree by 2.
        """
        return [[entry.soul() for entry in row] for row in self.W], self.G

    def gram(self, left, right):
        """
        Pairing of two frame elements, each given as ``('nabla', a)`` or ``('i', j)``.
        """
        kind_l, index_l = left
        kind_r, index_r = right
        if kind_l == 'nabla' and kind_r == 'nabla':
            return self.W[index_l][index_r]
        if kind_l == 'i' and kind_r == 'i':
            return Superfunction.constant(self.ring, self.rank, self.G[index_l][index_r])
        return Superfunction.zero(self.ring, self.rank)

    def zero(self):
        return Superfunction.zero(self.ring, self.rank)


def _nilpotent_order(matrix, rank):
    """
    Smallest k with (soul part)^k = 0.
    """
    zero = Superfunction.zero(matrix[0][0].ring, rank) if matrix else None
    soul = linalg.mat_map(matrix, lambda entry: entry.soul())
    power = soul
    order = 1
    while not linalg.is_zero_matrix(power):
        power = linalg.mat_mul(power, soul, zero)
        order += 1
    return order


def build_rothstein(sd):
    """
    Populate the Gram blocks of the even symplectic form of ``sd``.

    Raises:
        DegenerateBody: when omega or g is singular in the coefficient ring.
    """
    ring, rank = sd.ring, sd.rank
    geometry.require_invertible_omega(sd)
    curvature = geometry.curvature(sd)
    half = ring.const(QQ(1, 2))
    W = []  # pylint: disable=invalid-name
    for a in range(sd.dim):
        row = []
        for b in range(sd.dim):
            entry = Superfunction.constant(ring, rank, sd.omega[a][b])
            bivector = curvature.B[a][b]
            for j in range(rank):
                for k in range(j + 1, rank):
                    coefficient = (bivector[j][k] - bivector[k][j]) * half
                    if coefficient:
                        entry = entry + Superfunction.monomial(ring, rank, coefficient, [j, k])
            row.append(entry)
        W.append(row)
    try:
        G_inverse = linalg.inverse(sd.g, ring)  # pylint: disable=invalid-name
    except (DegenerateBody, NonInvertibleBody):
        raise DegenerateBody('g is degenerate')
    W_inverse = linalg.neumann_inverse(W, ring, rank)  # pylint: disable=invalid-name
    order = _nilpotent_order(W, rank)
    log.debug('built even symplectic form: dim=%d rank=%d nilpotent order=%d', sd.dim, rank, order)
    return RothsteinForm(sd, curvature, W, [list(row) for row in sd.g], W_inverse, G_inverse, order)


def _frame_terms(derivation):
    """
    ``[(frame element, frame parity, coefficient part, coefficient parity)]`` of a derivation.
    """
    terms = []
    for a, component in enumerate(derivation.alpha):
        for parity in (0, 1):
            part = parity_part(component, parity)
            if part:
                terms.append((('nabla', a), 0, part, parity))
    for j, component in enumerate(derivation.beta):
        for parity in (0, 1):
            part = parity_part(component, parity)
            if part:
                terms.append((('i', j), 1, part, parity))
    return terms


def theta_pair(left, right, theta):
    """
    Evaluate the even symplectic form on two derivations.
    """
    result = theta.zero()
    right_terms = _frame_terms(right)
    for frame_l, parity_frame_l, coefficient_l, _ in _frame_terms(left):
        for frame_r, _, coefficient_r, parity_coefficient_r in right_terms:
            gram = theta.gram(frame_l, frame_r)
            if not gram:
                continue
            term = wedge(wedge(coefficient_l, coefficient_r), gram)
            result = result - term if parity_coefficient_r * parity_frame_l else result + term
    return result


def insert(derivation, theta):
    """
    The one-form ``i_D Theta``; inhomogeneous derivations are inserted part by part.
    """
    nabla_slots = [theta.zero()] * theta.dim
    contraction_slots = [theta.zero()] * theta.rank
    for parity, part in derivation.parity_split():
        for b in range(theta.dim):
            nabla_slots[b] = nabla_slots[b] + theta_pair(part, GradedDerivation.nabla_basis(theta.connection, b), theta)
        for k in range(theta.rank):
            value = theta_pair(part, GradedDerivation.contraction_basis(theta.connection, k), theta)
            contraction_slots[k] = contraction_slots[k] + (value if parity else -value)
    return GradedOneForm(theta.connection, nabla_slots, contraction_slots)


def hamiltonian_field_of_form(form, theta):
    """
    The derivation ``D`` with ``i_D Theta = form``.

    For each parity part ``p`` this solves ``alpha = form_nabla . W^-1`` and
    ``beta = (-1)^{p+1} form_i . G^-1``; ``W^-1`` comes from the terminating
    Neumann series of the nabla block.
    """
    zero = theta.zero()
    result = GradedDerivation.zero(theta.connection)
    g_inverse = linalg.lift_matrix(theta.G_inverse, theta.ring, theta.rank)
    for parity in (0, 1):
        part = form.parity_part(parity)
        if not part:
            continue
        alpha = linalg.row_times_matrix(part.nabla, theta.W_inverse, zero)
        beta = linalg.row_times_matrix(part.contraction, g_inverse, zero)
        if not parity:
            beta = [-component for component in beta]
        result = result + GradedDerivation(theta.connection, alpha, beta)
    return result


def back_substitution_residual(derivation, form, theta):
    """
    ``i_D Theta - form``; zero for a correctly solved field.
    """
    return insert(derivation, theta) - form


def hamiltonian_field(element, theta, verify=True):
    """
    The graded Hamiltonian field ``D_s`` of a superfunction.

    Raises:
        BackSubstitutionFailure: when ``verify`` is set and ``i_{D_s} Theta != d s``.
    """
    differential = d_graded(theta.connection, element)
    field = hamiltonian_field_of_form(differential, theta)
    if verify and back_substitution_residual(field, differential, theta):
        raise BackSubstitutionFailure('i_D Theta != d s for s = {}'.format(element.to_text()))
    return field


def poisson_bracket(left, right, theta):
    """
    The even Poisson bracket ``[[s, t]] = D_s(t)``.
    """
    return apply(hamiltonian_field(left, theta, verify=False), right)


def coordinate_form(theta, b):
    """
    The closed one-form ``d x^b``; it makes sense on the torus even though ``x^b`` does not.
    """
    nabla_slots = [Superfunction.constant(theta.ring, theta.rank, 1 if a == b else 0) for a in range(theta.dim)]
    return GradedOneForm(theta.connection, nabla_slots)
