"""
The Grassmann algebra of superfunctions over an exact coefficient ring.

A superfunction of fiber rank ``r`` maps fiber multi-indices ``J`` (stored as
bitmasks, bit ``j-1`` standing for the generator ``e_j``) to nonzero
coefficient functions.  Multi-indices are always read in ascending order and
every Koszul sign comes from counting transpositions against that order.
"""

from __future__ import absolute_import, division, print_function, unicode_literals

import logging
from math import factorial

from sympy.polys.domains import QQ

from . import conf
from .coefficients import CoeffFn
from .exceptions import (
    BodyNotOne,
    BodyNotZero,
    ModeMismatch,
    NeumannSeriesDivergence,
    NonInvertibleBody,
    OddElement,
    RankMismatch,
)

log = logging.getLogger(__name__)


def popcount(mask):
    return bin(mask).count('1')


def mask_indices(mask):
    """
    Returns the 0-based generator indices of a bitmask, ascending.
    """
    indices = []
    index = 0
    while mask:
        if mask & 1:
            indices.append(index)
        mask >>= 1
        index += 1
    return indices


def wedge_sign(left, right):
    """
    Sign of ``e_left ^ e_right`` against ``e_(left|right)``; 0 when the masks overlap.
    """
    if left & right:
        return 0
    swaps = 0
    for index in mask_indices(right):
        swaps += popcount(left >> (index + 1))
    return -1 if swaps % 2 else 1


class Superfunction(object):
    """
    An immutable section of the exterior algebra bundle.

    Parameters:
        ring: the CoeffRing of the coefficients.
        rank (int): fiber rank ``r``.
        terms (dict): bitmask -> CoeffFn; zero coefficients are dropped.
    """
    __slots__ = ('ring', 'rank', 'terms', '_hash')

    def __init__(self, ring, rank, terms=None):
        if rank < 1:
            raise RankMismatch('fiber rank must be positive, got {}'.format(rank))
        self.ring = ring
        self.rank = rank
        self.terms = {}
        for mask, coefficient in (terms or {}).items():
            if mask >> rank:
                raise RankMismatch('generator index beyond rank {}'.format(rank))
            coefficient = ring.coerce(coefficient)
            if coefficient:
                self.terms[mask] = coefficient
        self._hash = None

    @classmethod
    def constant(cls, ring, rank, value):
        return cls(ring, rank, {0: ring.coerce(value)})

    @classmethod
    def zero(cls, ring, rank):
        return cls(ring, rank)

    @classmethod
    def one(cls, ring, rank):
        return cls.constant(ring, rank, 1)

    @classmethod
    def generator(cls, ring, rank, index):
        """
        Returns ``e_{index+1}``.
        """
        if not 0 <= index < rank:
            raise RankMismatch('generator e[{}] does not exist in rank {}'.format(index + 1, rank))
        return cls(ring, rank, {1 << index: ring.one})

    @classmethod
    def monomial(cls, ring, rank, coefficient, indices):
        """
        Returns ``coefficient * e_{i1} ^ e_{i2} ^ ...`` for 0-based ``indices`` in any order.
        """
        result = cls(ring, rank, {0: ring.coerce(coefficient)})
        for index in indices:
            result = result * cls.generator(ring, rank, index)
        return result

    @property
    def top_mask(self):
        return (1 << self.rank) - 1

    def _check(self, other):
        if not isinstance(other, Superfunction):
            raise TypeError('expected a Superfunction, got {!r}'.format(other))
        if other.rank != self.rank:
            raise RankMismatch('fiber ranks {} and {} do not match'.format(self.rank, other.rank))
        if other.ring is not self.ring:
            if other.ring.mode != self.ring.mode:
                raise ModeMismatch('{} superfunction mixed with {} superfunction'.format(
                    self.ring.mode, other.ring.mode))
            raise RankMismatch('base dimensions {} and {} do not match'.format(self.ring.dim, other.ring.dim))

    def _lift(self, other):
        if isinstance(other, Superfunction):
            self._check(other)
            return other
        return Superfunction.constant(self.ring, self.rank, other)

    def __eq__(self, other):
        if isinstance(other, Superfunction):
            return self.ring is other.ring and self.rank == other.rank and self.terms == other.terms
        if isinstance(other, (CoeffFn, int)):
            return self == self._lift(other)
        return NotImplemented

    def __ne__(self, other):
        return not self == other

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ring.mode, self.ring.dim, self.rank, frozenset(self.terms.items())))
        return self._hash

    def __bool__(self):
        return bool(self.terms)

    __nonzero__ = __bool__

    def __add__(self, other):
        other = self._lift(other)
        terms = dict(self.terms)
        for mask, coefficient in other.terms.items():
            terms[mask] = terms[mask] + coefficient if mask in terms else coefficient
        return Superfunction(self.ring, self.rank, terms)

    __radd__ = __add__

    def __neg__(self):
        return Superfunction(self.ring, self.rank, {mask: -c for mask, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        if isinstance(other, Superfunction):
            return wedge(self, other)
        return self.scale(other)

    def __rmul__(self, other):
        return self.scale(other)

    def scale(self, factor):
        """
        Multiply every coefficient by a scalar or CoeffFn (an even degree-0 factor).
        """
        factor = self.ring.coerce(factor)
        return Superfunction(self.ring, self.rank, {mask: factor * c for mask, c in self.terms.items()})

    def __pow__(self, exponent):
        if not isinstance(exponent, int) or exponent < 0:
            raise ValueError('superfunction powers must be non-negative integers')
        result = Superfunction.one(self.ring, self.rank)
        for _ in range(exponent):
            result = wedge(result, self)
        return result

    def map_coefficients(self, operation):
        """
        Apply a coefficient-level map (e.g. a partial derivative) to every term.
        """
        return Superfunction(self.ring, self.rank, {mask: operation(c) for mask, c in self.terms.items()})

    def coefficient(self, mask):
        return self.terms.get(mask, self.ring.zero)

    def degrees(self):
        return {popcount(mask) for mask in self.terms}

    def degree(self):
        """
        Returns the Z-degree of a homogeneous superfunction, 0 for zero, None if mixed.
        """
        degrees = self.degrees()
        if not degrees:
            return 0
        if len(degrees) == 1:
            return degrees.pop()
        return None

    def parity(self):
        """
        Returns 0 or 1 for parity-homogeneous superfunctions (zero is even), None otherwise.
        """
        parities = {degree % 2 for degree in self.degrees()}
        if not parities:
            return 0
        if len(parities) == 1:
            return parities.pop()
        return None

    def is_even(self):
        return self.parity() == 0

    def body(self):
        return self.coefficient(0)

    def soul(self):
        return Superfunction(self.ring, self.rank, {m: c for m, c in self.terms.items() if m})

    def top_coefficient(self):
        return self.coefficient(self.top_mask)

    def to_text(self):
        """
        Render in the expression mini-language, e.g. ``2*e[1]^e[2] + x1``.
        """
        if not self.terms:
            return '0'
        chunks = []
        for mask in sorted(self.terms, key=lambda m: (popcount(m), m)):
            coefficient = self.terms[mask]
            generators = '^'.join('e[{}]'.format(index + 1) for index in mask_indices(mask))
            text = coefficient.to_text()
            if not mask:
                chunks.append(text if ' ' not in text else '({})'.format(text))
            elif coefficient.is_one():
                chunks.append(generators)
            elif coefficient.is_constant() and coefficient.constant_value() == QQ(-1):
                chunks.append('-' + generators)
            else:
                if ' ' in text or '/' in text:
                    text = '({})'.format(text)
                chunks.append('{}*{}'.format(text, generators))
        joined = chunks[0]
        for chunk in chunks[1:]:
            joined += ' - ' + chunk[1:] if chunk.startswith('-') else ' + ' + chunk
        return joined

    def __repr__(self):
        return '<Superfunction r={} {}>'.format(self.rank, self.to_text())

    def __str__(self):
        return self.to_text()


def wedge(left, right):
    """
    Graded-commutative product of two superfunctions.

    Raises:
        RankMismatch, ModeMismatch: when the operands live over different data.
    """
    left._check(right)
    terms = {}
    for mask_a, coeff_a in left.terms.items():
        for mask_b, coeff_b in right.terms.items():
            sign = wedge_sign(mask_a, mask_b)
            if not sign:
                continue
            product = coeff_a * coeff_b
            if sign < 0:
                product = -product
            mask = mask_a | mask_b
            terms[mask] = terms[mask] + product if mask in terms else product
    return Superfunction(left.ring, left.rank, terms)


def grade_project(element, degree):
    """
    Returns the part of Z-degree ``degree``.
    """
    if not 0 <= degree <= element.rank:
        raise ValueError('degree {} outside 0..{}'.format(degree, element.rank))
    return Superfunction(element.ring, element.rank,
                         {m: c for m, c in element.terms.items() if popcount(m) == degree})


def parity_part(element, parity):
    """
    Returns the even (``parity=0``) or odd (``parity=1``) part.
    """
    return Superfunction(element.ring, element.rank,
                         {m: c for m, c in element.terms.items() if popcount(m) % 2 == parity})


def parity_split(element):
    """
    Returns the nonzero ``(parity, part)`` pairs of a superfunction.
    """
    return [(parity, part) for parity, part in ((0, parity_part(element, 0)), (1, parity_part(element, 1))) if part]


def body(element):
    return element.body()


def soul(element):
    return element.soul()


def _series_bound(rank):
    return rank // 2 + 1


def _nilpotent_series(nilpotent, weights, what):
    """
    Sum ``weights(k) * nilpotent^k`` for k >= 0 until the powers vanish.
    """
    bound = _series_bound(nilpotent.rank)
    result = Superfunction.zero(nilpotent.ring, nilpotent.rank)
    power = Superfunction.one(nilpotent.ring, nilpotent.rank)
    order = 0
    while power:
        if order > bound and conf.get(conf.NEUMANN_GUARD):
            raise NeumannSeriesDivergence('{} did not terminate after {} terms'.format(what, bound))
        weight = weights(order)
        if weight:
            result = result + power.scale(weight)
        power = wedge(power, nilpotent)
        order += 1
    log.debug('%s terminated after %d terms', what, order)
    return result


def invert_even(element):
    """
    Two-sided inverse of an even superfunction with invertible body.

    The soul is nilpotent, so ``(b(1 + nu))^-1 = (sum (-nu)^k) b^-1`` is a finite sum.

    Raises:
        OddElement: when ``element`` has an odd component.
        NonInvertibleBody: when the body is not a unit of the coefficient ring.
    """
    if not element.is_even():
        raise OddElement('only even superfunctions are invertible here: {}'.format(element.to_text()))
    body_inverse = element.body().inverse()
    nilpotent = element.soul().scale(body_inverse)
    series = _nilpotent_series(nilpotent, lambda k: QQ(-1) ** k, 'inverse series')
    return series.scale(body_inverse)


def log_even(element):
    """
    Logarithm of an even superfunction with body 1, as the finite series of log(1 + nu).

    Raises:
        OddElement, BodyNotOne
    """
    if not element.is_even():
        raise OddElement('log of an odd superfunction')
    if not element.body().is_one():
        raise BodyNotOne('log needs body 1, got {}'.format(element.body().to_text()))
    nilpotent = element.soul()
    return _nilpotent_series(nilpotent, lambda k: QQ((-1) ** (k + 1), k) if k else QQ(0), 'log series')


def exp_even(element):
    """
    Exponential of an even nilpotent superfunction (body 0); inverse of ``log_even``.

    Raises:
        OddElement, BodyNotZero
    """
    if not element.is_even():
        raise OddElement('exp of an odd superfunction')
    if element.body():
        raise BodyNotZero('exp needs body 0, got {}'.format(element.body().to_text()))
    return _nilpotent_series(element, lambda k: QQ(1, factorial(k)), 'exp series')


def top_coefficient(element):
    return element.top_coefficient()
