"""
Graded derivations of the exterior algebra in the frame ``{nabla_a} u {i_j}``.

A derivation is stored as ``D = sum_a alpha^a nabla_a + sum_j beta^j i_j`` with
the superfunction coefficients acting from the left.  ``nabla_a`` is even and
differentiates coefficients along ``x^a`` while moving generators with the
connection; ``i_j`` is odd, kills coefficients and contracts ``e_j``.
"""

from __future__ import absolute_import, division, print_function, unicode_literals

import logging

from .algebra import Superfunction, mask_indices, parity_part, popcount, wedge
from .exceptions import InhomogeneousDerivation, RankMismatch

log = logging.getLogger(__name__)


def _check_connection(left, right):
    if left is not right:
        if left.rank != right.rank or left.dim != right.dim or left.ring is not right.ring:
            raise RankMismatch('derivations over different bundles')


def nabla_generator(connection, a, index):
    """
    ``nabla_a e_index = sum_k Gamma^k_{a,index} e_k``.
    """
    ring, rank = connection.ring, connection.rank
    terms = {}
    for k in range(rank):
        coefficient = connection.gamma[a][k][index]
        if coefficient:
            terms[1 << k] = coefficient
    return Superfunction(ring, rank, terms)


def nabla(connection, a, element):
    """
    Apply the frame derivation ``nabla_a`` to a superfunction.
    """
    if not 0 <= a < connection.dim:
        raise ValueError('no coordinate direction {}'.format(a))
    ring, rank = connection.ring, connection.rank
    result = Superfunction(ring, rank, {mask: c.partial(a) for mask, c in element.terms.items()})
    if connection.is_flat():
        return result
    moved = {index: nabla_generator(connection, a, index) for index in range(rank)}
    for mask, coefficient in element.terms.items():
        indices = mask_indices(mask)
        for position, index in enumerate(indices):
            if not moved[index]:
                continue
            factor = Superfunction.constant(ring, rank, coefficient)
            for other_position, other in enumerate(indices):
                if other_position == position:
                    factor = wedge(factor, moved[index])
                else:
                    factor = wedge(factor, Superfunction.generator(ring, rank, other))
            result = result + factor
    return result


def contract(index, element):
    """
    Apply the odd frame derivation ``i_index`` (0-based) to a superfunction.
    """
    rank = element.rank
    if not 0 <= index < rank:
        raise RankMismatch('no contraction i[{}] in rank {}'.format(index + 1, rank))
    bit = 1 << index
    terms = {}
    for mask, coefficient in element.terms.items():
        if not mask & bit:
            continue
        below = popcount(mask & (bit - 1))
        terms[mask & ~bit] = -coefficient if below % 2 else coefficient
    return Superfunction(element.ring, rank, terms)


class GradedDerivation(object):
    """
    An immutable graded derivation.

    Parameters:
        connection: the Connection fixing the action of ``nabla_a``.
        nabla_components (list): ``alpha^a`` for a = 1..d.
        contraction_components (list): ``beta^j`` for j = 1..r.
    """
    def __init__(self, connection, nabla_components=None, contraction_components=None):
        ring, rank = connection.ring, connection.rank
        self.connection = connection
        self.alpha = self._components(nabla_components, connection.dim, ring, rank)
        self.beta = self._components(contraction_components, rank, ring, rank)

    @staticmethod
    def _components(values, size, ring, rank):
        if values is None:
            return [Superfunction.zero(ring, rank)] * size
        if len(values) != size:
            raise RankMismatch('expected {} components, got {}'.format(size, len(values)))
        lifted = []
        for value in values:
            if isinstance(value, Superfunction):
                if value.rank != rank:
                    raise RankMismatch('component of rank {} in a rank {} derivation'.format(value.rank, rank))
                lifted.append(value)
            else:
                lifted.append(Superfunction.constant(ring, rank, value))
        return lifted

    @classmethod
    def nabla_basis(cls, connection, a):
        """
        The frame derivation ``nabla_a`` (0-based ``a``).
        """
        components = [0] * connection.dim
        components[a] = 1
        return cls(connection, components)

    @classmethod
    def contraction_basis(cls, connection, index):
        """
        The frame derivation ``i_index`` (0-based).
        """
        components = [0] * connection.rank
        components[index] = 1
        return cls(connection, None, components)

    @classmethod
    def zero(cls, connection):
        return cls(connection)

    @property
    def ring(self):
        return self.connection.ring

    @property
    def rank(self):
        return self.connection.rank

    def frame_parities(self):
        parities = set()
        for component in self.alpha:
            parities.update(degree % 2 for degree in component.degrees())
        for component in self.beta:
            parities.update((degree + 1) % 2 for degree in component.degrees())
        return parities

    def parity(self):
        """
        Returns 0 or 1 for parity-homogeneous derivations (zero is even), None otherwise.
        """
        parities = self.frame_parities()
        if not parities:
            return 0
        if len(parities) == 1:
            return parities.pop()
        return None

    def require_parity(self):
        parity = self.parity()
        if parity is None:
            raise InhomogeneousDerivation('derivation mixes even and odd parts')
        return parity

    def degree(self):
        """
        Returns the Z-degree k of a homogeneous derivation, or None.
        """
        degrees = set()
        for component in self.alpha:
            degrees.update(component.degrees())
        for component in self.beta:
            degrees.update(degree - 1 for degree in component.degrees())
        if not degrees:
            return 0
        if len(degrees) == 1:
            return degrees.pop()
        return None

    def parity_part(self, parity):
        return GradedDerivation(
            self.connection,
            [parity_part(component, parity) for component in self.alpha],
            [parity_part(component, 1 - parity) for component in self.beta],
        )

    def parity_split(self):
        """
        Returns the nonzero ``(parity, derivation)`` parts.
        """
        return [(parity, part) for parity, part in ((0, self.parity_part(0)), (1, self.parity_part(1))) if part]

    def __bool__(self):
        return any(self.alpha) or any(self.beta)

    __nonzero__ = __bool__

    def __eq__(self, other):
        if not isinstance(other, GradedDerivation):
            return NotImplemented
        return self.alpha == other.alpha and self.beta == other.beta

    def __ne__(self, other):
        return not self == other

    def __hash__(self):
        return hash((tuple(self.alpha), tuple(self.beta)))

    def _combine(self, other, operation):
        _check_connection(self.connection, other.connection)
        return GradedDerivation(
            self.connection,
            [operation(a, b) for a, b in zip(self.alpha, other.alpha)],
            [operation(a, b) for a, b in zip(self.beta, other.beta)],
        )

    def __add__(self, other):
        return self._combine(other, lambda a, b: a + b)

    def __sub__(self, other):
        return self._combine(other, lambda a, b: a - b)

    def __neg__(self):
        return GradedDerivation(self.connection, [-a for a in self.alpha], [-b for b in self.beta])

    def left_multiply(self, element):
        """
        The derivation ``element ^ D``.
        """
        return GradedDerivation(
            self.connection,
            [wedge(element, a) for a in self.alpha],
            [wedge(element, b) for b in self.beta],
        )

    def __rmul__(self, element):
        if isinstance(element, Superfunction):
            return self.left_multiply(element)
        return self.left_multiply(Superfunction.constant(self.ring, self.rank, element))

    def __call__(self, element):
        return apply(self, element)

    def generator_value(self, index):
        """
        ``D(e_index) = sum_a alpha^a Gamma_a e_index + beta^index``.
        """
        value = self.beta[index]
        for a, component in enumerate(self.alpha):
            if component:
                value = value + wedge(component, nabla_generator(self.connection, a, index))
        return value

    def to_text(self):
        pieces = []
        for a, component in enumerate(self.alpha):
            if component:
                pieces.append('({})*nabla[{}]'.format(component.to_text(), a + 1))
        for j, component in enumerate(self.beta):
            if component:
                pieces.append('({})*i[{}]'.format(component.to_text(), j + 1))
        return ' + '.join(pieces) if pieces else '0'

    def __repr__(self):
        return '<GradedDerivation {}>'.format(self.to_text())


def apply(derivation, element):
    """
    Act with a derivation on a superfunction.

    Raises:
        RankMismatch: when the superfunction lives over another bundle.
    """
    if element.rank != derivation.rank or element.ring is not derivation.ring:
        raise RankMismatch('superfunction and derivation live over different bundles')
    connection = derivation.connection
    result = Superfunction.zero(element.ring, element.rank)
    for a, component in enumerate(derivation.alpha):
        if component:
            result = result + wedge(component, nabla(connection, a, element))
    for j, component in enumerate(derivation.beta):
        if component:
            result = result + wedge(component, contract(j, element))
    return result


def commutator(left, right):
    """
    Graded commutator ``[D, E] = D E - (-1)^{|D||E|} E D``, re-expressed in the frame.

    The result is assembled from its values on the coordinates (the ``alpha``
    components) and on the generators.

    Raises:
        InhomogeneousDerivation: unless both inputs have a definite parity.
    """
    _check_connection(left.connection, right.connection)
    sign = -1 if left.require_parity() * right.require_parity() else 1

    def graded(first, second):
        return first - second if sign > 0 else first + second

    connection = left.connection
    alpha = [graded(apply(left, right.alpha[b]), apply(right, left.alpha[b])) for b in range(connection.dim)]
    result = GradedDerivation(connection, alpha)
    beta = []
    for k in range(connection.rank):
        value = graded(apply(left, right.generator_value(k)), apply(right, left.generator_value(k)))
        beta.append(value - result.generator_value(k))
    return GradedDerivation(connection, alpha, beta)


class GradedOneForm(object):
    """
    A graded one-form given by its values on the frame.
    """
    def __init__(self, connection, nabla_covector=None, contraction_covector=None):
        ring, rank = connection.ring, connection.rank
        self.connection = connection
        self.nabla = GradedDerivation._components(nabla_covector, connection.dim, ring, rank)
        self.contraction = GradedDerivation._components(contraction_covector, rank, ring, rank)

    def __eq__(self, other):
        if not isinstance(other, GradedOneForm):
            return NotImplemented
        return self.nabla == other.nabla and self.contraction == other.contraction

    def __ne__(self, other):
        return not self == other

    def __bool__(self):
        return any(self.nabla) or any(self.contraction)

    __nonzero__ = __bool__

    def __sub__(self, other):
        return GradedOneForm(
            self.connection,
            [a - b for a, b in zip(self.nabla, other.nabla)],
            [a - b for a, b in zip(self.contraction, other.contraction)],
        )

    def __add__(self, other):
        return GradedOneForm(
            self.connection,
            [a + b for a, b in zip(self.nabla, other.nabla)],
            [a + b for a, b in zip(self.contraction, other.contraction)],
        )

    def parity(self):
        """
        Parity of a homogeneous form (that of ``d s`` is ``|s|``), or None.
        """
        parities = set()
        for component in self.nabla:
            parities.update(degree % 2 for degree in component.degrees())
        for component in self.contraction:
            parities.update((degree + 1) % 2 for degree in component.degrees())
        if not parities:
            return 0
        return parities.pop() if len(parities) == 1 else None

    def parity_part(self, parity):
        return GradedOneForm(
            self.connection,
            [parity_part(component, parity) for component in self.nabla],
            [parity_part(component, 1 - parity) for component in self.contraction],
        )

    def to_text(self):
        nabla_text = ', '.join(component.to_text() for component in self.nabla)
        contraction_text = ', '.join(component.to_text() for component in self.contraction)
        return 'nabla: ({}); i: ({})'.format(nabla_text, contraction_text)

    def __repr__(self):
        return '<GradedOneForm {}>'.format(self.to_text())


def d_graded(connection, element):
    """
    The graded differential, fixed by ``<D; d s> = D(s)``.
    """
    return GradedOneForm(
        connection,
        [nabla(connection, a, element) for a in range(connection.dim)],
        [contract(j, element) for j in range(connection.rank)],
    )


def pair(derivation, form):
    """
    ``<D; lambda> = sum_a alpha^a lambda_nabla[a] + sum_j beta^j lambda_i[j]``.
    """
    _check_connection(derivation.connection, form.connection)
    result = Superfunction.zero(derivation.ring, derivation.rank)
    for component, value in zip(derivation.alpha, form.nabla):
        if component and value:
            result = result + wedge(component, value)
    for component, value in zip(derivation.beta, form.contraction):
        if component and value:
            result = result + wedge(component, value)
    return result


def frame(connection):
    """
    Returns ``[(name, parity, derivation)]`` for every frame derivation.
    """
    elements = []
    for a in range(connection.dim):
        elements.append(('nabla[{}]'.format(a + 1), 0, GradedDerivation.nabla_basis(connection, a)))
    for j in range(connection.rank):
        elements.append(('i[{}]'.format(j + 1), 1, GradedDerivation.contraction_basis(connection, j)))
    return elements


def exterior_derivative(form, left, right):
    """
    ``(d lambda)(D, E) = D<E; lambda> - (-1)^{|D||E|} E<D; lambda> - <[D, E]; lambda>`` for homogeneous D, E.
    """
    sign = -1 if left.require_parity() * right.require_parity() else 1
    first = apply(left, pair(right, form))
    second = apply(right, pair(left, form))
    graded = first - second if sign > 0 else first + second
    return graded - pair(commutator(left, right), form)


def closedness_defects(form):
    """
    Returns ``[(name_D, name_E, value)]`` for every frame pair where ``d lambda`` does not vanish.
    """
    defects = []
    elements = frame(form.connection)
    for position, (left_name, _, left) in enumerate(elements):
        for right_name, _, right in elements[position:]:
            value = exterior_derivative(form, left, right)
            if value:
                defects.append((left_name, right_name, value))
    return defects


def is_closed(form):
    return not closedness_defects(form)


def is_zero_on_frame_values(derivation):
    """
    A derivation vanishes iff it kills every coordinate and every generator.
    """
    return not any(derivation.alpha) and not any(
        derivation.generator_value(k) for k in range(derivation.rank))
