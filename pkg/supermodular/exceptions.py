"""
Errors raised by the supermodular kernel.

Argument problems subclass ``ValueError``; refusals to leave an exact ring
subclass ``ArithmeticError``.  Everything derives from ``SupermodularError`` so
the command layer can map kernel failures to exit code 2 in one place.
"""

from __future__ import absolute_import, division, print_function, unicode_literals


class SupermodularError(Exception):
    """
    Base class for every error raised by this package.
    """


class RankMismatch(SupermodularError, ValueError):
    """
    Operands live over fiber bundles (or bases) of different rank.
    """


class ModeMismatch(SupermodularError, ValueError):
    """
    Operands mix chart-mode and torus-mode coefficients.
    """


class OddElement(SupermodularError, ValueError):
    """
    An even superfunction was required.
    """


class NonInvertibleBody(SupermodularError, ArithmeticError):
    """
    The body of a superfunction is not a unit of its coefficient ring.
    """


class BodyNotOne(SupermodularError, ValueError):
    pass


class BodyNotZero(SupermodularError, ValueError):
    pass


class ChartModeUnsupported(SupermodularError, ValueError):
    """
    Integration was requested over a chart; only the torus has an exact integral.
    """


class NonUnitVolumeCoefficient(SupermodularError, ArithmeticError):
    """
    Dividing by the symplectic volume coefficient would leave the torus ring.
    """


class NonConstantMetricDeterminant(SupermodularError, ValueError):
    pass


class IrrationalSqrt(SupermodularError, ArithmeticError):
    """
    det(G) has no rational square root and no explicit volume scale was given.
    """


class DegenerateBody(SupermodularError, ArithmeticError):
    """
    The body of a Gram matrix is singular.
    """


class InhomogeneousDerivation(SupermodularError, ValueError):
    """
    A parity-homogeneous derivation was required.
    """


class InexactQuotient(SupermodularError, ArithmeticError):
    pass


class NotLocallyHamiltonian(SupermodularError, ValueError):
    """
    The classical one-form extracted from a derivation is not closed.
    """


class NonzeroResidual(SupermodularError, ValueError):
    """
    A density does not satisfy the continuity equation.
    """


class NeumannSeriesDivergence(SupermodularError, ArithmeticError):
    """
    A nilpotent series failed to terminate within its structural bound.
    """


class PositionedError(SupermodularError, ValueError):
    """
    Error carrying a 1-based line and column, and optionally a manifest field path.
    """
    def __init__(self, message, line=None, column=None, field=None):
        self.message = message
        self.line = line
        self.column = column
        self.field = field
        super(PositionedError, self).__init__(self.describe())

    def describe(self):
        """
        Render the message prefixed with its provenance.
        """
        where = []
        if self.field:
            where.append(self.field)
        if self.line is not None:
            where.append('line {}, column {}'.format(self.line, self.column))
        if where:
            return '{}: {}'.format(', '.join(where), self.message)
        return self.message


class ExpressionSyntaxError(PositionedError):
    pass


class ManifestSyntaxError(PositionedError):
    pass


class BackSubstitutionFailure(SupermodularError, ArithmeticError):
    """
    A solved Hamiltonian field does not reproduce its one-form.
    """


class InconsistentResidual(SupermodularError, ArithmeticError):
    """
    The divergence and Lie forms of a continuity residual disagree for a divergence-free field.
    """
