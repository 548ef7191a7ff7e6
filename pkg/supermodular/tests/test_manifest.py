"""
Tests of manifest parsing, references and printing.
"""

from __future__ import absolute_import, division, print_function, unicode_literals

import json
from collections import OrderedDict

import ddt
from django.core.exceptions import ValidationError
from django.test import SimpleTestCase
from sympy.polys.domains import QQ

from ..coefficients import CHART, TORUS
from ..derivations import GradedDerivation
from ..exceptions import ExpressionSyntaxError, ManifestSyntaxError
from ..manifest import parse_manifest, parse_manifest_text
from ..test_utils import ModelTestMixin, manifest_path


def manifest_text(**overrides):
    """
    A flat rank 2 chart manifest with some keys replaced.
    """
    raw = OrderedDict([
        ('mode', CHART),
        ('base_dim', 2),
        ('fiber_rank', 2),
        ('omega', [['0', '1'], ['-1', '0']]),
        ('g', [['1', '0'], ['0', '1']]),
    ])
    raw.update(overrides)
    return json.dumps(raw)


@ddt.ddt
class ParseManifestTestCase(ModelTestMixin, SimpleTestCase):
    """
    Reading manifests from disk and from text.
    """
    def test_flat_chart(self):
        manifest = parse_manifest(manifest_path('flat_chart.json'))
        self.assertEqual((manifest.mode, manifest.base_dim, manifest.fiber_rank), (CHART, 2, 2))
        self.assertEqual(manifest.source, manifest_path('flat_chart.json'))
        self.assertTrue(manifest.connection.is_flat())
        self.assertEqual(manifest.sections['s'], self.section('x*e[1]^e[2]'))
        self.assertEqual(manifest.derivations['radial'],
                         GradedDerivation(manifest.connection, [self.section('x'), self.section('0')]))

    def test_curved_torus(self):
        manifest = parse_manifest(manifest_path('curved_torus.json'))
        expected = self.torus_model(curved=True)
        self.assertEqual(manifest.mode, TORUS)
        self.assertEqual(manifest.sd.gamma, expected.gamma)
        self.assertEqual(manifest.rescale, self.section('1 + sin(x)*e[1]^e[2]', TORUS))
        self.assertTrue(manifest.divergence_operator().volume.is_rescaled)
        self.assertFalse(manifest.divergence_operator(rescaled=False).volume.is_rescaled)

    def test_densities(self):
        manifest = parse_manifest(manifest_path('flat_torus.json'))
        density = manifest.density('rho')
        self.assertEqual(density.rho0, [self.section('e[1]^e[2]', TORUS)])
        self.assertEqual(density.rho1, [])
        self.assertEqual(manifest.canonical_volume, self.function('2', TORUS))

    def test_mode_override(self):
        text = manifest_text(sections={'u': 'e[1] + 2*e[2]'})
        manifest = parse_manifest_text(text, mode_override=TORUS)
        self.assertEqual(manifest.mode, TORUS)
        self.assertEqual(manifest.sections['u'], self.section('e[1] + 2*e[2]', TORUS))

    def test_volume_scale(self):
        manifest = parse_manifest_text(manifest_text(volume_scale='1/2'))
        self.assertEqual(manifest.sd.volume_scale, QQ(1, 2))
        self.assertEqual(parse_manifest_text(manifest.to_json()).sd.volume_scale, QQ(1, 2))

    @ddt.data('flat_chart.json', 'curved_chart.json', 'flat_torus.json', 'curved_torus.json')
    def test_printing_round_trip(self, name):
        manifest = parse_manifest(manifest_path(name))
        printed = parse_manifest_text(manifest.to_json())
        self.assertEqual(printed.to_dict(), manifest.to_dict())
        self.assertEqual(printed.sd.omega, manifest.sd.omega)
        self.assertEqual(printed.sd.gamma, manifest.sd.gamma)
        self.assertEqual(printed.sections, manifest.sections)
        self.assertEqual(printed.derivations, manifest.derivations)
        self.assertEqual(printed.rescale, manifest.rescale)


@ddt.ddt
class ManifestErrorTestCase(SimpleTestCase):
    """
    Syntax errors carry positions; semantic errors are keyed by field.
    """
    def assertFieldErrors(self, text, fields):  # pylint: disable=invalid-name
        with self.assertRaises(ValidationError) as context:
            parse_manifest_text(text)
        self.assertEqual(sorted(context.exception.message_dict), sorted(fields))
        return context.exception.message_dict

    def test_json_syntax(self):
        path = manifest_path('syntax_error.json')
        with self.assertRaises(ManifestSyntaxError) as context:
            parse_manifest(path)
        error = context.exception
        self.assertEqual((error.line, error.column), (4, 16))
        self.assertEqual(error.message, "Expecting ':' delimiter")
        self.assertTrue(error.describe().startswith(path))

    def test_expression_position(self):
        with self.assertRaises(ExpressionSyntaxError) as context:
            parse_manifest(manifest_path('torus_x_squared.json'))
        error = context.exception
        self.assertEqual(error.field, 'omega[0][1]')
        self.assertEqual((error.line, error.column), (1, 1))
        self.assertEqual(error.message, 'non-periodic expression in torus mode: x1')

    def test_expression_syntax_in_section(self):
        with self.assertRaises(ExpressionSyntaxError) as context:
            parse_manifest_text(manifest_text(sections={'broken': 'x +* e[1]'}))
        self.assertEqual(context.exception.field, 'sections.broken')

    def test_omega_antisymmetry(self):
        with self.assertRaises(ValidationError) as context:
            parse_manifest(manifest_path('bad_omega.json'))
        self.assertEqual(list(context.exception.message_dict), ['omega[0][1]'])
        self.assertIn('omega is not antisymmetric', context.exception.message_dict['omega[0][1]'][0])

    def test_header(self):
        messages = self.assertFieldErrors(manifest_text(mode='cylinder', base_dim=0), ['mode', 'base_dim'])
        self.assertEqual(messages['base_dim'], ['must be a positive integer, got 0'])

    @ddt.data(
        ({'g': [['1', '0']]}, ['g']),
        ({'gamma': [[['0']]]}, ['gamma']),
        ({'g': [['1', '2'], ['3', '1']]}, ['g[0][1]']),
        ({'rescale': 'e[1]'}, ['rescale']),
        ({'volume_scale': 'x'}, ['volume_scale']),
        ({'derivations': {'bad': ['x']}}, ['derivations.bad']),
        ({'derivations': {'short': {'nabla': ['x']}}}, ['derivations.short.nabla']),
        ({'densities': {'rho': {'rho0': 'e[1]'}}}, ['densities.rho.rho0']),
        ({'sections': ['x']}, ['sections']),
    )
    @ddt.unpack
    def test_semantic_errors(self, overrides, fields):
        self.assertFieldErrors(manifest_text(**overrides), fields)

    def test_not_an_object(self):
        self.assertFieldErrors('[1, 2]', [''])


@ddt.ddt
class ReferenceTestCase(ModelTestMixin, SimpleTestCase):
    """
    Operands name sections, derivations and densities or spell them inline.
    """
    def setUp(self):
        super(ReferenceTestCase, self).setUp()
        self.manifest = parse_manifest(manifest_path('flat_chart.json'))

    def test_named_and_inline_sections(self):
        self.assertEqual(self.manifest.section('u'), self.section('e[1]'))
        self.assertEqual(self.manifest.section('e[1] + e[2]'), self.section('e[1] + e[2]'))

    def test_inline_section_errors_name_the_operand(self):
        with self.assertRaises(ExpressionSyntaxError) as context:
            self.manifest.section('e[3]', 'operands[1]')
        self.assertEqual(context.exception.field, 'operands[1]')

    @ddt.data(
        ('nabla[1]', 'nabla', 0),
        (' nabla[ 2 ] ', 'nabla', 1),
        ('i[2]', 'i', 1),
    )
    @ddt.unpack
    def test_frame_references(self, reference, kind, index):
        connection = self.manifest.connection
        if kind == 'nabla':
            expected = GradedDerivation.nabla_basis(connection, index)
        else:
            expected = GradedDerivation.contraction_basis(connection, index)
        self.assertEqual(self.manifest.derivation(reference), expected)

    def test_hamiltonian_reference(self):
        expected = GradedDerivation(self.manifest.connection, [self.section('0'), self.section('-1')])
        self.assertEqual(self.manifest.derivation('ham(x)'), expected)
        self.assertEqual(self.manifest.derivation('ham( u )'),
                         GradedDerivation(self.manifest.connection, None, [self.section('1'), self.section('0')]))

    @ddt.data(
        ('nabla[3]', 'nabla has no index 3'),
        ('i[0]', 'i has no index 0'),
        ('flow', "unknown derivation 'flow'"),
    )
    @ddt.unpack
    def test_bad_derivation_references(self, reference, message):
        with self.assertRaises(ValidationError) as context:
            self.manifest.derivation(reference, 'operands[0]')
        self.assertEqual(context.exception.message_dict, {'operands[0]': [message]})

    def test_unknown_density(self):
        with self.assertRaises(ValidationError) as context:
            self.manifest.density('rho')
        self.assertEqual(context.exception.message_dict, {'operand': ["unknown density 'rho'"]})
