"""
Exact coefficient rings for superfunctions.

Two modes are supported:

* ``chart``: rational functions with rational coefficients in the coordinates
  ``x1..xd`` of a chart, backed by :func:`sympy.polys.fields.field`.  Every
  nonzero element is invertible and there is no integral.
* ``torus``: finite Fourier series ``c*cos(k.x)`` / ``c*sin(k.x)`` with rational
  ``c`` and integer frequency vectors ``k`` on the flat torus.  Only nonzero
  constants are invertible and the integral over the torus is exact.

Both modes expose the same small interface (arithmetic, ``partial``,
``is_constant``/``constant_value``, ``inverse``, ``exact_quotient``, ``to_text``)
so the Grassmann algebra on top never needs to know which one it holds.
"""

from __future__ import absolute_import, division, print_function, unicode_literals

import logging
from functools import lru_cache

import sympy
from sympy.polys.domains import QQ
from sympy.polys.fields import field

from .exceptions import ChartModeUnsupported, InexactQuotient, ModeMismatch, NonInvertibleBody, RankMismatch

log = logging.getLogger(__name__)

CHART = 'chart'
TORUS = 'torus'
MODES = (CHART, TORUS)


def to_rational(value):
    """
    Convert an int, a ``fractions.Fraction`` or a ``QQ`` element to ``QQ``.

    Raises:
        TypeError: for floats and anything else without an exact value.
    """
    if isinstance(value, bool) or isinstance(value, float):
        raise TypeError('inexact scalar {!r}'.format(value))
    if isinstance(value, int):
        return QQ(value)
    try:
        return QQ(int(value.numerator), int(value.denominator))
    except AttributeError:
        raise TypeError('not an exact rational: {!r}'.format(value))


def rational_text(value):
    """
    Render a ``QQ`` element as ``p`` or ``p/q``.
    """
    numerator, denominator = int(value.numerator), int(value.denominator)
    if denominator == 1:
        return str(numerator)
    return '{}/{}'.format(numerator, denominator)


def coordinate_names(dim):
    return ['x{}'.format(a + 1) for a in range(dim)]


@lru_cache(maxsize=None)
def chart_ring(dim):
    """
    Returns the (shared) rational function ring on a ``dim``-dimensional chart.
    """
    return ChartRing(dim)


@lru_cache(maxsize=None)
def torus_ring(dim):
    """
    Returns the (shared) trigonometric polynomial ring on the ``dim``-torus.
    """
    return TorusRing(dim)


def ring_for(mode, dim):
    """
    Returns the coefficient ring of the given mode and base dimension.
    """
    if mode == CHART:
        return chart_ring(dim)
    if mode == TORUS:
        return torus_ring(dim)
    raise ValueError('unknown coefficient mode {!r}'.format(mode))


class CoeffRing(object):
    """
    Common behaviour of the two coefficient rings.
    """
    mode = None

    def __init__(self, dim):
        if dim < 1:
            raise ValueError('base dimension must be positive, got {}'.format(dim))
        self.dim = dim
        self.names = coordinate_names(dim)

    def __repr__(self):
        return '{}({})'.format(type(self).__name__, self.dim)

    def check_compatible(self, other):
        """
        Raise unless ``other`` is the same ring.
        """
        if other.mode != self.mode:
            raise ModeMismatch('{} coefficients mixed with {} coefficients'.format(self.mode, other.mode))
        if other.dim != self.dim:
            raise RankMismatch('base dimension {} mixed with {}'.format(self.dim, other.dim))

    @property
    def zero(self):
        return self.const(0)

    @property
    def one(self):
        return self.const(1)

    def coerce(self, value):
        """
        Lift a scalar into the ring; coefficient functions pass through after a compatibility check.
        """
        if isinstance(value, CoeffFn):
            self.check_compatible(value.ring)
            return value
        return self.const(value)

    def const(self, value):
        raise NotImplementedError

    def integral(self, function):
        raise ChartModeUnsupported('the {} ring has no exact integral'.format(self.mode))


class CoeffFn(object):
    """
    An exact scalar function on the base; immutable.
    """
    __slots__ = ('ring',)

    @property
    def mode(self):
        return self.ring.mode

    def _lift(self, other):
        return self.ring.coerce(other)

    def __radd__(self, other):
        return self + other

    def __rsub__(self, other):
        return -self + other

    def __rmul__(self, other):
        return self * other

    def __pow__(self, exponent):
        if not isinstance(exponent, int) or exponent < 0:
            raise ValueError('only non-negative integer powers are exact, got {!r}'.format(exponent))
        result = self.ring.one
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    def __ne__(self, other):
        return not self == other

    def __repr__(self):
        return '<{} {}>'.format(self.mode, self.to_text())

    def __str__(self):
        return self.to_text()

    def is_zero(self):
        return not self

    def is_one(self):
        return self.is_constant() and self.constant_value() == QQ(1)


class ChartRing(CoeffRing):
    """
    Rational functions over QQ in the chart coordinates.
    """
    mode = CHART

    def __init__(self, dim):
        super(ChartRing, self).__init__(dim)
        generated = field(self.names, QQ)
        self.field = generated[0]
        self.gens = generated[1:]

    def const(self, value):
        return ChartFunction(self, self.field.ground_new(to_rational(value)))

    def coordinate(self, index):
        """
        Returns the coordinate function ``x{index+1}``.
        """
        return ChartFunction(self, self.gens[index])

    def wrap(self, element):
        return ChartFunction(self, element)


class ChartFunction(CoeffFn):
    """
    A rational function on a chart, stored in sympy's canonical cancelled form.
    """
    __slots__ = ('value',)

    def __init__(self, ring, value):
        self.ring = ring
        self.value = value

    def __bool__(self):
        return bool(self.value)

    __nonzero__ = __bool__

    def __eq__(self, other):
        if isinstance(other, ChartFunction):
            return self.ring is other.ring and self.value == other.value
        if isinstance(other, CoeffFn):
            return False
        try:
            return self.value == self.ring.const(other).value
        except TypeError:
            return NotImplemented

    def __hash__(self):
        return hash((CHART, self.ring.dim, self.value))

    def __add__(self, other):
        return ChartFunction(self.ring, self.value + self._lift(other).value)

    def __sub__(self, other):
        return ChartFunction(self.ring, self.value - self._lift(other).value)

    def __mul__(self, other):
        return ChartFunction(self.ring, self.value * self._lift(other).value)

    def __neg__(self):
        return ChartFunction(self.ring, -self.value)

    def partial(self, index):
        return ChartFunction(self.ring, self.value.diff(self.ring.gens[index]))

    def is_constant(self):
        return self.value.numer.is_ground and self.value.denom.is_ground

    def constant_value(self):
        """
        Returns the value of a constant function as a ``QQ`` element.

        Raises:
            ValueError: when the function is not constant.
        """
        if not self.is_constant():
            raise ValueError('{} is not constant'.format(self.to_text()))
        return self.value.numer.LC / self.value.denom.LC

    def is_unit(self):
        return bool(self)

    def inverse(self):
        if not self:
            raise NonInvertibleBody('zero has no inverse')
        return ChartFunction(self.ring, 1 / self.value)

    def exact_quotient(self, other):
        other = self._lift(other)
        if not other:
            raise InexactQuotient('division of {} by zero'.format(self.to_text()))
        return ChartFunction(self.ring, self.value / other.value)

    def constant_term(self):
        raise ChartModeUnsupported('constant Fourier term requested in chart mode')

    def to_text(self):
        """
        ``-1/3*x1^2 + 1/2`` for a polynomial, ``(x1 + 1)/(x1^2 + 1)`` otherwise.
        """
        numer, denom = self.value.numer, self.value.denom
        if denom.is_ground:
            return _polynomial_text(self.ring.names, numer.quo_ground(denom.LC))
        numer_text = _polynomial_text(self.ring.names, numer)
        denom_text = _polynomial_text(self.ring.names, denom)
        if len(numer.terms()) > 1 or '/' in numer_text:
            numer_text = '({})'.format(numer_text)
        if len(denom.terms()) > 1 or '*' in denom_text or '/' in denom_text or denom_text.startswith('-'):
            denom_text = '({})'.format(denom_text)
        return '{}/{}'.format(numer_text, denom_text)


def _monomial_text(names, exponents):
    factors = []
    for name, power in zip(names, exponents):
        if power == 1:
            factors.append(name)
        elif power > 1:
            factors.append('{}^{}'.format(name, power))
    return '*'.join(factors)


def _join_terms(pieces):
    """
    Join ``(coefficient, factor_text)`` pairs into a signed sum.
    """
    if not pieces:
        return '0'
    chunks = []
    for coefficient, factor in pieces:
        negative = coefficient < 0
        magnitude = -coefficient if negative else coefficient
        if not factor:
            body = rational_text(magnitude)
        elif magnitude == 1:
            body = factor
        else:
            body = '{}*{}'.format(rational_text(magnitude), factor)
        if not chunks:
            chunks.append('-' + body if negative else body)
        else:
            chunks.append(('- ' if negative else '+ ') + body)
    return ' '.join(chunks)


def _polynomial_text(names, poly):
    return _join_terms([(coefficient, _monomial_text(names, monom)) for monom, coefficient in poly.terms()])


COS = 'cos'
SIN = 'sin'


class TorusRing(CoeffRing):
    """
    Trigonometric polynomials with rational coefficients on the flat torus ``(R/2piZ)^d``.
    """
    mode = TORUS

    def __init__(self, dim):
        super(TorusRing, self).__init__(dim)
        self.zero_frequency = (0,) * dim

    def const(self, value):
        return TorusFunction.from_modes(self, [(COS, self.zero_frequency, to_rational(value))])

    def cos(self, frequency):
        return TorusFunction.from_modes(self, [(COS, self._frequency(frequency), QQ(1))])

    def sin(self, frequency):
        return TorusFunction.from_modes(self, [(SIN, self._frequency(frequency), QQ(1))])

    def coordinate(self, index):
        raise ModeMismatch('x{} is not a periodic function on the torus'.format(index + 1))

    def _frequency(self, frequency):
        frequency = tuple(int(k) for k in frequency)
        if len(frequency) != self.dim:
            raise RankMismatch('frequency vector {} on a {}-torus'.format(frequency, self.dim))
        return frequency

    def integral(self, function):
        self.check_compatible(function.ring)
        return TorusIntegral(function.constant_term(), self.dim)


def _canonical_mode(kind, frequency, coefficient):
    """
    Normalize one Fourier mode so the first nonzero frequency entry is positive.

    Returns None for modes that vanish identically (``sin(0)``).
    """
    for entry in frequency:
        if entry > 0:
            return kind, frequency, coefficient
        if entry < 0:
            flipped = tuple(-k for k in frequency)
            return kind, flipped, (-coefficient if kind == SIN else coefficient)
    if kind == SIN:
        return None
    return kind, frequency, coefficient


class TorusFunction(CoeffFn):
    """
    A finite real Fourier series; ``modes`` maps ``(kind, frequency)`` to a nonzero rational.
    """
    __slots__ = ('modes', '_hash')

    def __init__(self, ring, modes):
        self.ring = ring
        self.modes = modes
        self._hash = None

    @classmethod
    def from_modes(cls, ring, triples):
        """
        Build a normalized function from ``(kind, frequency, coefficient)`` triples.
        """
        modes = {}
        for kind, frequency, coefficient in triples:
            canonical = _canonical_mode(kind, frequency, coefficient)
            if canonical is None:
                continue
            kind, frequency, coefficient = canonical
            key = (kind, frequency)
            total = modes.get(key, QQ(0)) + coefficient
            if total:
                modes[key] = total
            else:
                modes.pop(key, None)
        return cls(ring, modes)

    def __bool__(self):
        return bool(self.modes)

    __nonzero__ = __bool__

    def __eq__(self, other):
        if isinstance(other, TorusFunction):
            return self.ring is other.ring and self.modes == other.modes
        if isinstance(other, CoeffFn):
            return False
        try:
            return self.modes == self.ring.const(other).modes
        except TypeError:
            return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((TORUS, self.ring.dim, frozenset(self.modes.items())))
        return self._hash

    def _triples(self):
        return [(kind, frequency, coefficient) for (kind, frequency), coefficient in self.modes.items()]

    def __add__(self, other):
        other = self._lift(other)
        return TorusFunction.from_modes(self.ring, self._triples() + other._triples())

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __neg__(self):
        return TorusFunction(self.ring, {key: -coefficient for key, coefficient in self.modes.items()})

    def __mul__(self, other):
        other = self._lift(other)
        half = QQ(1, 2)
        triples = []
        for (kind_a, freq_a), coeff_a in self.modes.items():
            for (kind_b, freq_b), coeff_b in other.modes.items():
                plus = tuple(p + q for p, q in zip(freq_a, freq_b))
                minus = tuple(p - q for p, q in zip(freq_a, freq_b))
                weight = half * coeff_a * coeff_b
                if kind_a == COS and kind_b == COS:
                    triples += [(COS, minus, weight), (COS, plus, weight)]
                elif kind_a == SIN and kind_b == SIN:
                    triples += [(COS, minus, weight), (COS, plus, -weight)]
                elif kind_a == SIN:
                    triples += [(SIN, plus, weight), (SIN, minus, weight)]
                else:
                    triples += [(SIN, plus, weight), (SIN, minus, -weight)]
        return TorusFunction.from_modes(self.ring, triples)

    def partial(self, index):
        triples = []
        for (kind, frequency), coefficient in self.modes.items():
            rate = frequency[index]
            if not rate:
                continue
            if kind == COS:
                triples.append((SIN, frequency, -rate * coefficient))
            else:
                triples.append((COS, frequency, rate * coefficient))
        return TorusFunction.from_modes(self.ring, triples)

    def is_constant(self):
        return all(frequency == self.ring.zero_frequency for _, frequency in self.modes)

    def constant_term(self):
        """
        Returns the mean value over the torus as a ``QQ`` element.
        """
        return self.modes.get((COS, self.ring.zero_frequency), QQ(0))

    def constant_value(self):
        if not self.is_constant():
            raise ValueError('{} is not constant'.format(self.to_text()))
        return self.constant_term()

    def is_unit(self):
        return bool(self) and self.is_constant()

    def inverse(self):
        if not self.is_unit():
            raise NonInvertibleBody('{} is not a nonzero constant on the torus'.format(self.to_text()))
        return self.ring.const(1 / self.constant_term())

    def exact_quotient(self, other):
        other = self._lift(other)
        if not self:
            return self
        if not other.is_unit():
            raise InexactQuotient('{} / {} is not a trigonometric polynomial'.format(self.to_text(), other.to_text()))
        return self * other.inverse()

    def to_text(self):
        pieces = []
        for (kind, frequency), coefficient in sorted(self.modes.items(), key=lambda item: (item[0][1], item[0][0])):
            if frequency == self.ring.zero_frequency:
                pieces.append((coefficient, ''))
            else:
                pieces.append((coefficient, '{}({})'.format(kind, _frequency_text(self.ring.names, frequency))))
        return _join_terms(pieces)


def _frequency_text(names, frequency):
    return _join_terms([(QQ(k), name) for name, k in zip(names, frequency) if k])


class TorusIntegral(object):
    """
    The exact value ``coefficient * (2*pi)**power`` of an integral over the torus.
    """
    __slots__ = ('coefficient', 'power')

    def __init__(self, coefficient, power):
        self.coefficient = to_rational(coefficient)
        self.power = power

    def __eq__(self, other):
        if isinstance(other, TorusIntegral):
            if not self.coefficient and not other.coefficient:
                return True
            return self.coefficient == other.coefficient and self.power == other.power
        return NotImplemented

    def __ne__(self, other):
        return not self == other

    def __hash__(self):
        return hash((self.coefficient, self.power if self.coefficient else 0))

    def __add__(self, other):
        if self.power != other.power and self.coefficient and other.coefficient:
            raise RankMismatch('integrals over tori of dimension {} and {}'.format(self.power, other.power))
        return TorusIntegral(self.coefficient + other.coefficient, max(self.power, other.power))

    def __neg__(self):
        return TorusIntegral(-self.coefficient, self.power)

    def __sub__(self, other):
        return self + (-other)

    def __bool__(self):
        return bool(self.coefficient)

    __nonzero__ = __bool__

    def as_expr(self):
        """
        Returns the value as a sympy expression, e.g. ``8*pi**2``.
        """
        coefficient = sympy.Rational(int(self.coefficient.numerator), int(self.coefficient.denominator))
        return coefficient * (2 * sympy.pi) ** self.power

    def to_text(self):
        if not self.coefficient:
            return '0'
        return '{}*(2*pi)^{}'.format(rational_text(self.coefficient), self.power)

    def __repr__(self):
        return '<TorusIntegral {}>'.format(self.to_text())


def partial(function, index):
    """
    Exact partial derivative of ``function`` in the coordinate ``x{index+1}``.
    """
    if not 0 <= index < function.ring.dim:
        raise ValueError('coordinate index {} out of range for dimension {}'.format(index, function.ring.dim))
    return function.partial(index)


def torus_integral(function):
    """
    Integrate a coefficient function over the torus.

    Return Value:
        TorusIntegral: ``(2*pi)^d`` times the constant Fourier coefficient.

    Raises:
        ChartModeUnsupported: for chart-mode functions.
    """
    return function.ring.integral(function)
