"""
Manifest ingestion.

A manifest is a JSON document describing one model (see docs/manifest.rst).
Syntax errors raise ManifestSyntaxError with a line and column; expression
errors raise ExpressionSyntaxError with the field path and column; semantic
errors raise ``django.core.exceptions.ValidationError`` keyed by field path.
"""

from __future__ import absolute_import, division, print_function, unicode_literals

import io
import json
import logging
import re
from collections import OrderedDict

from django.core.exceptions import ValidationError

from .berezin import DivergenceOperator
from .coefficients import MODES, rational_text, ring_for
from .continuity import TimeDependentSection
from .derivations import GradedDerivation
from .exceptions import ManifestSyntaxError
from .expressions import parse_coefficient, parse_superfunction
from .geometry import SymplecticData
from .symplectic import build_rothstein, hamiltonian_field

log = logging.getLogger(__name__)

BUILTIN_DERIVATION = re.compile(r'^\s*(nabla|i)\[\s*(\d+)\s*\]\s*$')
HAMILTONIAN_DERIVATION = re.compile(r'^\s*ham\((.*)\)\s*$')


class Manifest(object):
    """
    A parsed model: symplectic data plus named sections, derivations and densities.
    """
    def __init__(self, mode, base_dim, fiber_rank, sd, sections, derivations, rescale=None,
                 canonical_volume=None, densities=None, source=None):
        self.mode = mode
        self.base_dim = base_dim
        self.fiber_rank = fiber_rank
        self.sd = sd
        self.sections = sections
        self.derivations = derivations
        self.rescale = rescale
        self.canonical_volume = canonical_volume
        self.densities = densities or OrderedDict()
        self.source = source
        self._theta = None

    @property
    def ring(self):
        return self.sd.ring

    @property
    def connection(self):
        return self.sd.connection

    @property
    def theta(self):
        if self._theta is None:
            self._theta = build_rothstein(self.sd)
        return self._theta

    def divergence_operator(self, rescaled=True):
        """
        The symplectic divergence, rescaled by the manifest's ``rescale`` when present and asked for.
        """
        return DivergenceOperator.symplectic(self.sd, self.rescale if rescaled else None)

    def section(self, reference, field='operand'):
        """
        A named section, or an inline expression.
        """
        if reference in self.sections:
            return self.sections[reference]
        return parse_superfunction(reference, self.ring, self.fiber_rank, field)

    def derivation(self, reference, field='operand'):
        """
        A named derivation, a frame element ``nabla[a]`` / ``i[j]``, or ``ham(<section>)``.
        """
        if reference in self.derivations:
            return self.derivations[reference]
        builtin = BUILTIN_DERIVATION.match(reference)
        if builtin:
            kind, index = builtin.group(1), int(builtin.group(2))
            size = self.base_dim if kind == 'nabla' else self.fiber_rank
            if not 1 <= index <= size:
                raise ValidationError({field: ['{} has no index {}'.format(kind, index)]})
            if kind == 'nabla':
                return GradedDerivation.nabla_basis(self.connection, index - 1)
            return GradedDerivation.contraction_basis(self.connection, index - 1)
        hamiltonian = HAMILTONIAN_DERIVATION.match(reference)
        if hamiltonian:
            return hamiltonian_field(self.section(hamiltonian.group(1).strip(), field), self.theta)
        raise ValidationError({field: ['unknown derivation {!r}'.format(reference)]})

    def density(self, reference, field='operand'):
        if reference in self.densities:
            return self.densities[reference]
        raise ValidationError({field: ['unknown density {!r}'.format(reference)]})

    def to_dict(self):
        """
        Print the manifest back; parsing the result gives an equal manifest.
        """
        sd = self.sd
        data = OrderedDict([
            ('mode', self.mode),
            ('base_dim', self.base_dim),
            ('fiber_rank', self.fiber_rank),
            ('omega', [[entry.to_text() for entry in row] for row in sd.omega]),
            ('g', [[entry.to_text() for entry in row] for row in sd.g]),
            ('gamma', [[[entry.to_text() for entry in row] for row in matrix] for matrix in sd.gamma]),
        ])
        if sd.volume_scale is not None:
            data['volume_scale'] = rational_text(sd.volume_scale)
        data['sections'] = OrderedDict((name, value.to_text()) for name, value in self.sections.items())
        data['derivations'] = OrderedDict(
            (name, OrderedDict([
                ('nabla', [component.to_text() for component in value.alpha]),
                ('contraction', [component.to_text() for component in value.beta]),
            ])) for name, value in self.derivations.items())
        if self.rescale is not None:
            data['rescale'] = self.rescale.to_text()
        if self.canonical_volume is not None:
            data['canonical_volume'] = self.canonical_volume.to_text()
        if self.densities:
            data['densities'] = OrderedDict(
                (name, OrderedDict([
                    ('rho0', [value.to_text() for value in density.rho0]),
                    ('rho1', [value.to_text() for value in density.rho1]),
                ])) for name, density in self.densities.items())
        return data

    def to_json(self):
        return json.dumps(self.to_dict(), indent=2)


class _Reader(object):
    """
    Collects semantic errors by field path while reading the raw document.
    """
    def __init__(self, raw):
        self.raw = raw
        self.errors = OrderedDict()

    def fail(self, field, message):
        self.errors.setdefault(field, []).append(message)

    def raise_errors(self):
        if self.errors:
            raise ValidationError(dict(self.errors))

    def positive_int(self, key):
        value = self.raw.get(key)
        if isinstance(value, bool) or not isinstance(value, int) or value < 1:
            self.fail(key, 'must be a positive integer, got {!r}'.format(value))
            return None
        return value

    def matrix(self, value, rows, columns, field, parse):
        if not isinstance(value, list) or len(value) != rows or any(
                not isinstance(row, list) or len(row) != columns for row in value):
            self.fail(field, 'must be a {}x{} matrix'.format(rows, columns))
            return None
        return [[parse(entry, '{}[{}][{}]'.format(field, i, j)) for j, entry in enumerate(row)]
                for i, row in enumerate(value)]

    def vector(self, value, size, field, parse):
        if value is None:
            return None
        if not isinstance(value, list) or len(value) != size:
            self.fail(field, 'must be a list of {} expressions'.format(size))
            return None
        return [parse(entry, '{}[{}]'.format(field, index)) for index, entry in enumerate(value)]

    def mapping(self, key):
        value = self.raw.get(key, OrderedDict())
        if not isinstance(value, dict):
            self.fail(key, 'must be an object')
            return OrderedDict()
        return value


def parse_manifest_text(text, source=None, mode_override=None):
    """
    Parse a manifest from JSON text.

    Parameters:
        text (str): the JSON document.
        source (str): where it came from, for diagnostics.
        mode_override (str): evaluate the model in this coefficient mode instead of its own.

    Raises:
        ManifestSyntaxError, ExpressionSyntaxError, ValidationError
    """
    try:
        raw = json.loads(text, object_pairs_hook=OrderedDict)
    except ValueError as error:
        raise ManifestSyntaxError(getattr(error, 'msg', str(error)), getattr(error, 'lineno', None),
                                  getattr(error, 'colno', None), source)
    if not isinstance(raw, dict):
        raise ValidationError({'': ['a manifest must be a JSON object']})
    reader = _Reader(raw)
    mode = mode_override or raw.get('mode')
    if mode not in MODES:
        reader.fail('mode', 'must be one of {}, got {!r}'.format(', '.join(MODES), mode))
    dim = reader.positive_int('base_dim')
    rank = reader.positive_int('fiber_rank')
    reader.raise_errors()
    ring = ring_for(mode, dim)

    def coefficient(entry, field):
        return parse_coefficient(entry, ring, field)

    def section(entry, field):
        return parse_superfunction(entry, ring, rank, field)

    omega = reader.matrix(raw.get('omega'), dim, dim, 'omega', coefficient)
    g = reader.matrix(raw.get('g'), rank, rank, 'g', coefficient)
    if 'gamma' in raw:
        gamma_raw = raw['gamma']
        if not isinstance(gamma_raw, list) or len(gamma_raw) != dim:
            reader.fail('gamma', 'must be a list of {} matrices'.format(dim))
            gamma = None
        else:
            gamma = [reader.matrix(matrix, rank, rank, 'gamma[{}]'.format(a), coefficient)
                     for a, matrix in enumerate(gamma_raw)]
    else:
        gamma = [[[ring.zero] * rank for _ in range(rank)] for _ in range(dim)]
    reader.raise_errors()

    for i in range(dim):
        for j in range(i, dim):
            if omega[i][j] + omega[j][i]:
                reader.fail('omega[{}][{}]'.format(i, j), 'omega is not antisymmetric: omega[{0}][{1}] = {2}, '
                            'omega[{1}][{0}] = {3}'.format(i, j, omega[i][j].to_text(), omega[j][i].to_text()))
    for i in range(rank):
        for j in range(i + 1, rank):
            if g[i][j] != g[j][i]:
                reader.fail('g[{}][{}]'.format(i, j), 'g is not symmetric')
    volume_scale = None
    if raw.get('volume_scale') is not None:
        scale = parse_coefficient(raw['volume_scale'], ring, 'volume_scale')
        if not scale.is_constant() or not scale:
            reader.fail('volume_scale', 'must be a nonzero rational constant')
        else:
            volume_scale = scale.constant_value()
    reader.raise_errors()
    sd = SymplecticData(ring, rank, omega, g, gamma, volume_scale)

    sections = OrderedDict()
    for name, entry in reader.mapping('sections').items():
        sections[name] = section(entry, 'sections.{}'.format(name))

    derivations = OrderedDict()
    for name, spec in reader.mapping('derivations').items():
        field = 'derivations.{}'.format(name)
        if not isinstance(spec, dict):
            reader.fail(field, 'must be an object with "nabla" and "contraction" lists')
            continue
        alpha = reader.vector(spec.get('nabla'), dim, field + '.nabla', section)
        beta = reader.vector(spec.get('contraction'), rank, field + '.contraction', section)
        derivations[name] = GradedDerivation(sd.connection, alpha, beta)

    rescale = None
    if raw.get('rescale') is not None:
        rescale = section(raw['rescale'], 'rescale')
        if not rescale.is_even():
            reader.fail('rescale', 'must be even')

    canonical_volume = None
    if raw.get('canonical_volume') is not None:
        canonical_volume = coefficient(raw['canonical_volume'], 'canonical_volume')

    densities = OrderedDict()
    for name, spec in reader.mapping('densities').items():
        field = 'densities.{}'.format(name)
        if not isinstance(spec, dict):
            reader.fail(field, 'must be an object with "rho0" and "rho1" lists')
            continue
        parts = []
        for key in ('rho0', 'rho1'):
            values = spec.get(key, [])
            if not isinstance(values, list):
                reader.fail('{}.{}'.format(field, key), 'must be a list indexed by the power of t')
                values = []
            parts.append([section(value, '{}.{}[{}]'.format(field, key, power)) for power, value in enumerate(values)])
        densities[name] = TimeDependentSection(ring, rank, parts[0], parts[1])
    reader.raise_errors()

    log.debug('parsed %s manifest %s: d=%d r=%d', mode, source or '<text>', dim, rank)
    return Manifest(mode, dim, rank, sd, sections, derivations, rescale, canonical_volume, densities, source)


def parse_manifest(path, mode_override=None):
    """
    Read and parse the manifest at ``path``.
    """
    with io.open(path, encoding='utf-8') as handle:
        return parse_manifest_text(handle.read(), source=path, mode_override=mode_override)
