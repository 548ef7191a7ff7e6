"""
Parser and printer for the expression mini-language.

Grammar (whitespace insensitive)::

    expr    := sum
    atom    := integer | x<n> | x | y | z | e[<n>] | sin(linear) | cos(linear) | (expr)
    ^       binds tightest; it is a power when the right operand is an integer
            constant and a wedge product otherwise
    unary - then * /  then + -, all left associative

``/`` divides by an even invertible element.  Printing goes through
``to_text`` on coefficients and superfunctions and parses back to the same
value.
"""

from __future__ import absolute_import, division, print_function, unicode_literals

import logging

import pyparsing as pp
from sympy.polys.domains import QQ

from .algebra import Superfunction, invert_even, wedge
from .coefficients import CHART, TORUS, CoeffFn
from .exceptions import ExpressionSyntaxError, SupermodularError

log = logging.getLogger(__name__)

pp.ParserElement.enable_packrat()


class Node(object):
    """
    A parsed expression node; ``loc`` is the offset of its first character.
    """
    __slots__ = ('kind', 'value', 'loc', 'children')

    def __init__(self, kind, value, loc, children=()):
        self.kind = kind
        self.value = value
        self.loc = loc
        self.children = list(children)

    def __repr__(self):
        return 'Node({!r}, {!r}, {})'.format(self.kind, self.value, self.children)


def _leaf(kind, convert):
    def action(_, loc, tokens):
        return Node(kind, convert(tokens[0]), loc)
    return action


def _binary(_, loc, tokens):
    group = tokens[0]
    node = group[0]
    for position in range(1, len(group), 2):
        node = Node('binary', group[position], loc, [node, group[position + 1]])
    return node


def _unary(_, loc, tokens):
    operator, operand = tokens[0]
    if operator == '+':
        return operand
    return Node('neg', None, loc, [operand])


def _call(_, loc, tokens):
    return Node('call', tokens[0], loc, [tokens[1]])


COORDINATE_ALIASES = {'x': 1, 'y': 2, 'z': 3}


def _coordinate_index(text):
    if text in COORDINATE_ALIASES:
        return COORDINATE_ALIASES[text]
    return int(text[1:])


def _build_grammar():
    expression = pp.Forward()
    integer = pp.Regex(r'\d+').set_parse_action(_leaf('num', int))
    coordinate = pp.Regex(r'x[0-9]+|[xyz](?![A-Za-z0-9_\[])').set_parse_action(_leaf('coord', _coordinate_index))
    generator = pp.Regex(r'e\[\s*[0-9]+\s*\]').set_parse_action(
        _leaf('gen', lambda text: int(text[2:-1].strip())))
    call = ((pp.Keyword('sin') | pp.Keyword('cos')) + pp.Suppress('(') + expression + pp.Suppress(')'))
    call.set_parse_action(_call)
    atom = call | generator | coordinate | integer
    expression <<= pp.infix_notation(atom, [
        (pp.Literal('^'), 2, pp.OpAssoc.LEFT, _binary),
        (pp.one_of('+ -'), 1, pp.OpAssoc.RIGHT, _unary),
        (pp.one_of('* /'), 2, pp.OpAssoc.LEFT, _binary),
        (pp.one_of('+ -'), 2, pp.OpAssoc.LEFT, _binary),
    ])
    return expression


GRAMMAR = _build_grammar()


def parse_tree(text, field=None):
    """
    Parse ``text`` into a Node tree.

    Raises:
        ExpressionSyntaxError: with the 1-based line and column of the failure.
    """
    try:
        return GRAMMAR.parse_string(text, parse_all=True)[0]
    except pp.ParseBaseException as error:
        raise ExpressionSyntaxError(error.msg, error.lineno, error.col, field)


RATIONAL, FUNCTION, SECTION = 0, 1, 2


class Evaluator(object):
    """
    Evaluate a Node tree to a ``QQ`` rational, a CoeffFn or a Superfunction.

    Parameters:
        ring: the CoeffRing; its mode decides whether coordinates or sin/cos are allowed.
        rank (int): fiber rank, or None when generators are not allowed.
    """
    def __init__(self, ring, rank, text, field=None):
        self.ring = ring
        self.rank = rank
        self.text = text
        self.field = field

    def error(self, node, message):
        return ExpressionSyntaxError(message, pp.lineno(node.loc, self.text), pp.col(node.loc, self.text), self.field)

    @staticmethod
    def level(value):
        if isinstance(value, Superfunction):
            return SECTION
        if isinstance(value, CoeffFn):
            return FUNCTION
        return RATIONAL

    def lift(self, value, level):
        current = self.level(value)
        if current >= level:
            return value
        if level == FUNCTION:
            return self.ring.const(value)
        return Superfunction.constant(self.ring, self.rank, value)

    def evaluate(self, node):
        try:
            return getattr(self, 'evaluate_' + node.kind)(node)
        except ExpressionSyntaxError:
            raise
        except SupermodularError as error:
            raise self.error(node, str(error))

    def evaluate_num(self, node):
        return QQ(node.value)

    def evaluate_coord(self, node):
        index = node.value
        if not 1 <= index <= self.ring.dim:
            raise self.error(node, 'unknown coordinate x{} in dimension {}'.format(index, self.ring.dim))
        if self.ring.mode == TORUS:
            raise self.error(node, 'non-periodic expression in torus mode: x{}'.format(index))
        return self.ring.coordinate(index - 1)

    def evaluate_gen(self, node):
        if self.rank is None:
            raise self.error(node, 'generators are not allowed in a coefficient')
        if not 1 <= node.value <= self.rank:
            raise self.error(node, 'unknown generator e[{}] in rank {}'.format(node.value, self.rank))
        return Superfunction.generator(self.ring, self.rank, node.value - 1)

    def evaluate_neg(self, node):
        return -self.evaluate(node.children[0])

    def evaluate_call(self, node):
        if self.ring.mode == CHART:
            raise self.error(node, '{} is only available in torus mode'.format(node.value))
        frequency = self.frequency(node.children[0])
        if node.value == 'sin':
            return self.ring.sin(frequency)
        return self.ring.cos(frequency)

    def evaluate_binary(self, node):
        operator = node.value
        left_node, right_node = node.children
        left = self.evaluate(left_node)
        right = self.evaluate(right_node)
        if operator == '^':
            return self.caret(node, left, right)
        if operator == '/':
            return self.divide(node, left, right)
        level = max(self.level(left), self.level(right))
        left, right = self.lift(left, level), self.lift(right, level)
        if operator == '+':
            return left + right
        if operator == '-':
            return left - right
        if level == SECTION:
            return wedge(left, right)
        return left * right

    def caret(self, node, left, right):
        if self.level(right) == RATIONAL:
            if right.denominator != 1 or right < 0:
                raise self.error(node, 'exponent must be a non-negative integer')
            return left ** int(right.numerator)
        if self.rank is None:
            raise self.error(node, 'wedge products are not allowed in a coefficient')
        return wedge(self.lift(left, SECTION), self.lift(right, SECTION))

    def divide(self, node, left, right):
        level = self.level(right)
        if not right:
            raise self.error(node, 'division by zero')
        if level == RATIONAL:
            if self.level(left) == RATIONAL:
                return left / right
            return left * self.ring.const(1 / right) if self.level(left) == FUNCTION else left.scale(1 / right)
        if level == FUNCTION:
            inverse = right.inverse()
            if self.level(left) == SECTION:
                return left.scale(inverse)
            return self.lift(left, FUNCTION) * inverse
        return wedge(self.lift(left, SECTION), invert_even(right))

    def frequency(self, node):
        """
        Read an integer linear combination of coordinates, e.g. ``x1 - 2*x2``.
        """
        weights, constant = self.linear(node)
        if constant:
            raise self.error(node, 'trigonometric arguments must not have a constant term')
        vector = []
        for index in range(1, self.ring.dim + 1):
            weight = weights.get(index, QQ(0))
            if weight.denominator != 1:
                raise self.error(node, 'frequencies must be integers')
            vector.append(int(weight.numerator))
        return vector

    def linear(self, node):
        if node.kind == 'num':
            return {}, QQ(node.value)
        if node.kind == 'coord':
            if not 1 <= node.value <= self.ring.dim:
                raise self.error(node, 'unknown coordinate x{} in dimension {}'.format(node.value, self.ring.dim))
            return {node.value: QQ(1)}, QQ(0)
        if node.kind == 'neg':
            weights, constant = self.linear(node.children[0])
            return {k: -v for k, v in weights.items()}, -constant
        if node.kind == 'binary' and node.value in '+-*':
            left_weights, left_constant = self.linear(node.children[0])
            right_weights, right_constant = self.linear(node.children[1])
            if node.value == '*':
                if left_weights and right_weights:
                    raise self.error(node, 'trigonometric arguments must be linear')
                if left_weights:
                    return {k: v * right_constant for k, v in left_weights.items()}, left_constant * right_constant
                return {k: v * left_constant for k, v in right_weights.items()}, left_constant * right_constant
            sign = 1 if node.value == '+' else -1
            weights = dict(left_weights)
            for key, value in right_weights.items():
                weights[key] = weights.get(key, QQ(0)) + sign * value
            return weights, left_constant + sign * right_constant
        raise self.error(node, 'trigonometric arguments must be integer combinations of coordinates')


def parse_superfunction(text, ring, rank, field=None):
    """
    Parse a superfunction literal such as ``2*x1*e[1]^e[2] + 1``.
    """
    text = str(text)
    evaluator = Evaluator(ring, rank, text, field)
    value = evaluator.evaluate(parse_tree(text, field))
    return evaluator.lift(value, SECTION)


def parse_coefficient(text, ring, field=None):
    """
    Parse a coefficient function; generators are rejected.
    """
    text = str(text)
    evaluator = Evaluator(ring, None, text, field)
    value = evaluator.evaluate(parse_tree(text, field))
    return evaluator.lift(value, FUNCTION)


def to_text(value):
    """
    Print a CoeffFn, Superfunction or rational in the mini-language.
    """
    if hasattr(value, 'to_text'):
        return value.to_text()
    return str(value)
