"""
Command dispatch: every command-line action turns a manifest and its operands into a Report.
"""

from __future__ import absolute_import, division, print_function, unicode_literals

import logging
from collections import OrderedDict

from django.core.exceptions import ValidationError
from django.utils.translation import gettext as _

from . import conf, geometry
from .algebra import Superfunction
from .berezin import (
    berezin_integral,
    canonical_comparison,
    canonical_integral,
    classical_part,
    is_locally_hamiltonian,
    modular_class_trivial,
    modular_field,
    modular_field_mismatches,
)
from .coefficients import TORUS
from .continuity import TimeDependentSection, classical_reduction_demo, conservation_check, continuity_residual
from .derivations import d_graded, frame
from .exceptions import ChartModeUnsupported
from .expressions import parse_coefficient
from .properties import SUITES, Model, run_suite, run_suites
from .reports import Report, statement_of
from .symplectic import back_substitution_residual, hamiltonian_field, poisson_bracket

log = logging.getLogger(__name__)

COMMANDS = OrderedDict()


class Command(object):
    """
    One action with its operand arity: ``(minimum, maximum)``, maximum None for unbounded.
    """
    def __init__(self, name, function, arity, usage):
        self.name = name
        self.function = function
        self.arity = arity
        self.usage = usage

    def validate(self, operands):
        minimum, maximum = self.arity
        if len(operands) < minimum or (maximum is not None and len(operands) > maximum):
            raise ValidationError({'operands': [_('usage: {name} {usage}').format(name=self.name, usage=self.usage)]})


def command(name, arity=(0, 0), usage=''):
    def register(function):
        COMMANDS[name] = Command(name, function, arity, usage)
        return function
    return register


def _operand_field(index):
    return 'operands[{}]'.format(index)


def _matrix_text(matrix):
    return '[{}]'.format('; '.join(', '.join(entry.to_text() for entry in row) for row in matrix))


@command('check')
def check(manifest, context):
    """
    Geometry invariants of (omega, g, nabla).
    """
    return geometry.check_data(manifest.sd)


@command('show')
def show(manifest, context):
    """
    The manifest as parsed, printed back in manifest syntax.
    """
    report = Report('manifest')
    report.values['manifest'] = manifest.to_json()
    return report


@command('theta')
def theta(manifest, context):
    """
    Gram blocks of the even symplectic form and its bidegree split.
    """
    form = manifest.theta
    report = Report('even symplectic form')
    report.values['<nabla, nabla>'] = _matrix_text(form.W)
    report.values['<i, i>'] = _matrix_text(form.G)
    report.values['degree 0 part'] = _matrix_text(form.degree_zero_part())
    report.values['curvature part'] = _matrix_text(form.higher_part()[0])
    report.values['nilpotent order'] = form.nilpotent_order
    return report


@command('bracket', (2, 2), '<s> <t>')
def bracket(manifest, context):
    left = manifest.section(context.operands[0], _operand_field(0))
    right = manifest.section(context.operands[1], _operand_field(1))
    report = Report('even Poisson bracket')
    report.values['[[s, t]]'] = poisson_bracket(left, right, manifest.theta).to_text()
    return report


@command('ham', (1, 1), '<s>')
def ham(manifest, context):
    element = manifest.section(context.operands[0], _operand_field(0))
    field = hamiltonian_field(element, manifest.theta, verify=False)
    residual = back_substitution_residual(field, d_graded(manifest.connection, element), manifest.theta)
    report = Report('Hamiltonian field')
    report.values['D_s'] = field.to_text()
    report.add('back-substitution', not residual, '' if not residual else residual.to_text(),
               label=statement_of('hamiltonian-field'))
    return report


@command('div', (1, 1), '<derivation>')
def div(manifest, context):
    derivation = manifest.derivation(context.operands[0], _operand_field(0))
    operator = manifest.divergence_operator()
    report = Report('divergence')
    report.values['D'] = derivation.to_text()
    report.values['div(D)'] = operator(derivation).to_text()
    return report


@command('modular')
def modular(manifest, context):
    """
    The modular vector field, checked against ``div(D_u)`` on the generators and the named sections.
    """
    form = manifest.theta
    operator = manifest.divergence_operator()
    field = modular_field(form, operator)
    samples = [Superfunction.generator(manifest.ring, manifest.fiber_rank, k) for k in range(manifest.fiber_rank)]
    samples.extend(manifest.sections.values())
    mismatches = modular_field_mismatches(field, form, operator, samples)
    report = Report('modular vector field')
    report.values['Z'] = field.to_text()
    report.values['classical part'] = '({})'.format(', '.join(value.to_text() for value in classical_part(field)))
    report.add('modular-field-values', not mismatches, ', '.join(sample.to_text() for sample in mismatches),
               label=statement_of('modular-field'))
    report.add('locally-hamiltonian', is_locally_hamiltonian(field, form), label=statement_of('modular-field'))
    return report


@command('class')
def modular_class(manifest, context):
    verdict = modular_class_trivial(manifest.theta, manifest.divergence_operator())
    report = Report('modular class')
    report.values['verdict'] = 'trivial' if verdict.trivial else 'nontrivial'
    report.values['certificate'] = verdict.certificate_text()
    report.add('modular-class-trivial', verdict.trivial, 'certificate alpha = {}'.format(verdict.certificate_text()),
               label=statement_of('unimodularity'))
    return report


@command('integrate', (1, 1), '<s>')
def integrate(manifest, context):
    """
    Berezin integral of a section for the manifest's (possibly rescaled) Berezinian.
    """
    element = manifest.section(context.operands[0], _operand_field(0))
    volume = manifest.divergence_operator().volume
    value = berezin_integral(element, volume)
    report = Report('Berezin integral')
    report.values['integral'] = value.to_text()
    report.values['value'] = str(value.as_expr())
    if manifest.canonical_volume is not None:
        report.values['canonical integral'] = canonical_integral(
            element, manifest.canonical_volume, manifest.sd).to_text()
    return report


@command('canonical')
def canonical(manifest, context):
    """
    Compare the symplectic and canonical Berezinians on every frame derivation.
    """
    if manifest.canonical_volume is None:
        raise ValidationError({'canonical_volume': [_('the canonical command needs canonical_volume')]})
    comparison = canonical_comparison(manifest.canonical_volume, manifest.sd)
    report = Report('canonical Berezinian')
    report.values['e^f'] = comparison.ratio.to_text()
    for name, _parity, derivation in frame(manifest.connection):
        defect = comparison.defect(derivation)
        report.add('canonical-relation {}'.format(name), not defect, defect.to_text() if defect else '',
                   label=statement_of('canonical-comparison'))
    return report


@command('continuity', (2, 2), '<rho> <derivation>')
def continuity(manifest, context):
    """
    Continuity residual; on the torus a vanishing residual is followed by the conservation check.
    """
    reference = context.operands[0]
    if reference in manifest.densities:
        density = manifest.density(reference, _operand_field(0))
    else:
        density = TimeDependentSection(manifest.ring, manifest.fiber_rank,
                                       [manifest.section(reference, _operand_field(0))])
    derivation = manifest.derivation(context.operands[1], _operand_field(1))
    operator = manifest.divergence_operator()
    residual = continuity_residual(density, derivation, operator)
    report = Report('continuity equation')
    report.values['residual'] = residual.divergence_form.to_text()
    report.values['Lie form'] = residual.lie_form.to_text()
    if residual.divergence_free:
        report.add('forms-agree', residual.forms_agree, label=statement_of('continuity'))
    if residual.vanishes and manifest.mode == TORUS:
        report.extend(conservation_check(density, derivation, operator))
    return report


@command('reduce', (2, None), '<X1> ... <Xd> <f0> [<f1> ...]')
def reduce(manifest, context):
    """
    Classical reduction: ``X`` components first, then the coefficients of ``f`` by power of t.
    """
    dim = manifest.base_dim
    operands = context.operands
    if len(operands) <= dim:
        raise ValidationError({'operands': [_('reduce needs {dim} vector components and at least one density '
                                              'coefficient').format(dim=dim)]})
    values = [parse_coefficient(text, manifest.ring, _operand_field(index)) for index, text in enumerate(operands)]
    return classical_reduction_demo(values[dim:], values[:dim], manifest.divergence_operator(rescaled=False))


@command('oracle')
def oracle(manifest, context):
    """
    The integral characterization of the divergence for the manifest's (possibly rescaled) Berezinian.
    """
    if manifest.mode != TORUS:
        raise ChartModeUnsupported('the integral oracle needs a torus manifest')
    model = Model.from_manifest(manifest, rescaled=True)
    report = run_suite('integral-characterization', context.seed, context.cases, model)
    report.title = 'integral oracle (seed {})'.format(context.seed)
    return report


@command('props', (0, None), '[<suite> ...]')
def props(manifest, context):
    unknown = [name for name in context.operands if name not in SUITES]
    if unknown:
        raise ValidationError({'operands': [_('unknown suite {name}; known: {known}').format(
            name=name, known=', '.join(SUITES)) for name in unknown]})
    return run_suites(context.operands or None, context.seed, context.cases, Model.from_manifest(manifest))


class Context(object):
    def __init__(self, operands=(), seed=None, cases=None):
        self.operands = list(operands)
        self.seed = seed
        self.cases = cases


def run_command(action, manifest, operands=(), seed=None, cases=None):
    """
    Run one action against a parsed manifest.

    Parameters:
        action (str): a key of COMMANDS.
        manifest (Manifest)
        operands (list): action operands; sections, derivations and densities by name or inline expression.
        seed (int), cases (int): property-suite controls; None falls back to the settings, and cases
            then to the count each suite registers.

    Return Value:
        Report

    Raises:
        django.core.exceptions.ValidationError: unknown action or bad operands.
        SupermodularError: whatever the computation refuses.
    """
    if action not in COMMANDS:
        raise ValidationError({'action': [_('unknown action {action}; known: {known}').format(
            action=action, known=', '.join(COMMANDS))]})
    selected = COMMANDS[action]
    selected.validate(list(operands))
    seed = conf.get(conf.DEFAULT_SEED) if seed is None else seed
    log.info('running %s on %s', action, manifest.source or '<manifest>')
    return selected.function(manifest, Context(operands, seed, cases))
