"""
Seeded randomized property suites.

Every case draws its inputs from ``random.Random('<seed>:<suite>:<index>')``,
so a case can be replayed on its own and reports do not depend on the order in
which cases finish.  A suite case returns an empty string when its identity
holds and a short description of the mismatch otherwise.
"""

from __future__ import absolute_import, division, print_function, unicode_literals

import logging
import random
from collections import OrderedDict
from concurrent.futures import ThreadPoolExecutor
from operator import itemgetter

from sympy.polys.domains import QQ

from . import conf, geometry, linalg
from .algebra import Superfunction, grade_project, log_even, popcount, wedge
from .berezin import (
    BerezinianVolume,
    DivergenceOperator,
    berezin_integral,
    canonical_comparison,
    canonical_integral,
    divergence_rescaled,
    divergence_rescaled_log,
    is_locally_hamiltonian,
    modular_class_trivial,
    modular_field,
    modular_field_mismatches,
    rescaling_difference,
)
from .coefficients import CHART, MODES, TORUS, ring_for
from .continuity import TimeDependentSection, classical_reduction_demo, conservation_check, continuity_residual
from .derivations import GradedDerivation, apply, commutator
from .exceptions import SupermodularError
from .geometry import SymplecticData
from .reports import Report, statement_of
from .symplectic import build_rothstein, hamiltonian_field, poisson_bracket

log = logging.getLogger(__name__)

FUZZ_DIM = 2


def _sign(left, right):
    return -1 if (left * right) % 2 else 1


def _mismatch(what, left, right):
    if left == right:
        return ''
    return '{}: {} != {}'.format(what, left.to_text(), right.to_text())


def _first(*details):
    for detail in details:
        if detail:
            return detail
    return ''


class Fuzzer(object):
    """
    Draws small exact inputs from a seeded ``random.Random``.
    """
    def __init__(self, rng):
        self.rng = rng

    def coin(self):
        return self.rng.random() < 0.5

    def parity(self):
        return self.rng.randint(0, 1)

    def choice(self, values):
        return self.rng.choice(values)

    def rational(self, bound=3, nonzero=False):
        while True:
            value = QQ(self.rng.randint(-bound, bound), self.rng.randint(1, bound))
            if value or not nonzero:
                return value

    def coefficient(self, ring):
        """
        A low-degree polynomial on a chart, a short Fourier series on the torus.
        """
        value = ring.const(self.rational())
        if ring.mode == CHART:
            monomial = ring.const(self.rational(nonzero=True)) * ring.coordinate(self.rng.randrange(ring.dim))
            if self.coin():
                monomial = monomial * ring.coordinate(self.rng.randrange(ring.dim))
            return value + monomial
        frequency = [0] * ring.dim
        while not any(frequency):
            frequency = [self.rng.randint(-1, 1) for _ in range(ring.dim)]
        mode = ring.cos(frequency) if self.coin() else ring.sin(frequency)
        return value + mode * self.rational(nonzero=True)

    def unit_coefficient(self, ring):
        """
        An invertible coefficient: any nonzero chart function, a nonzero constant on the torus.
        """
        if ring.mode == TORUS:
            return ring.const(self.rational(nonzero=True))
        square = ring.coordinate(self.rng.randrange(ring.dim)) ** 2
        return ring.const(self.rng.randint(1, 3)) + square * self.rng.randint(0, 2)

    def superfunction(self, ring, rank, parity=None, degree=None, terms=2):
        """
        A random homogeneous superfunction; the parity is drawn when not given.
        """
        if parity is None and degree is None:
            parity = self.parity()
        masks = [mask for mask in range(1 << rank)
                 if (degree is None or popcount(mask) == degree)
                 and (parity is None or popcount(mask) % 2 == parity)]
        chosen = self.rng.sample(masks, min(terms, len(masks)))
        return Superfunction(ring, rank, {mask: self.coefficient(ring) for mask in chosen})

    def even_invertible(self, ring, rank, unit_body=False):
        body = ring.one if unit_body else self.unit_coefficient(ring)
        soul = self.superfunction(ring, rank, degree=2, terms=1)
        return Superfunction.constant(ring, rank, body) + soul

    def derivation(self, connection, parity):
        """
        A homogeneous derivation: even (odd) nabla coefficients and odd (even) contraction coefficients.
        """
        ring, rank = connection.ring, connection.rank
        alpha = [self.superfunction(ring, rank, parity, terms=1) if self.coin() else 0
                 for _ in range(connection.dim)]
        beta = [self.superfunction(ring, rank, 1 - parity, terms=1) if self.coin() else 0
                for _ in range(rank)]
        return GradedDerivation(connection, alpha, beta)

    def gamma(self, ring, rank):
        """
        Unconstrained Christoffel matrices.
        """
        return [[[self.coefficient(ring) if self.coin() else ring.zero for _ in range(rank)]
                 for _ in range(rank)] for _ in range(ring.dim)]

    def symplectic_data(self, mode, rank, curved):
        """
        A valid (omega, g, nabla) on a 2-dimensional base.

        ``G = c^2 M M^T`` with ``M`` unit upper triangular keeps ``det G`` a
        rational square; ``Gamma_a = A_a G^-1`` with ``A_a`` antisymmetric is
        compatible with ``G`` and traceless.
        """
        ring = ring_for(mode, FUZZ_DIM)
        zero, one = ring.zero, ring.one
        omega_12 = self.unit_coefficient(ring)
        omega = [[zero, omega_12], [-omega_12, zero]]
        upper = [[one if j == k else (ring.const(self.rational()) if k > j else zero) for k in range(rank)]
                 for j in range(rank)]
        scale = ring.const(self.rational(nonzero=True))
        g = linalg.mat_map(linalg.mat_mul(upper, linalg.transpose(upper), zero), lambda entry: entry * scale * scale)
        g_inverse = linalg.inverse(g, ring)
        gamma = []
        for _ in range(ring.dim):
            antisymmetric = [[zero] * rank for _ in range(rank)]
            if curved:
                for j in range(rank):
                    for k in range(j + 1, rank):
                        if self.coin():
                            entry = self.coefficient(ring)
                            antisymmetric[j][k] = entry
                            antisymmetric[k][j] = -entry
            gamma.append(linalg.mat_mul(antisymmetric, g_inverse, zero))
        return SymplecticData(ring, rank, omega, g, gamma)

    def model(self, mode=None, rank=None, curved=None):
        mode = self.choice(MODES) if mode is None else mode
        rank = self.choice((2, 4)) if rank is None else rank
        curved = self.coin() if curved is None else curved
        return Model(self.symplectic_data(mode, rank, curved))


class Model(object):
    """
    Symplectic data with its even symplectic form and divergence operator, built on demand.

    The operator is the unrescaled symplectic one unless an explicit operator is given.
    """
    def __init__(self, sd, theta=None, operator=None):
        self.sd = sd
        self._theta = theta
        self._operator = operator

    @classmethod
    def from_manifest(cls, manifest, rescaled=False):
        """
        The manifest's model; ``rescaled`` keeps the manifest's ``rescale`` in the operator.
        """
        operator = manifest.divergence_operator() if rescaled else None
        return cls(manifest.sd, manifest.theta, operator)

    @property
    def ring(self):
        return self.sd.ring

    @property
    def rank(self):
        return self.sd.rank

    @property
    def mode(self):
        return self.sd.mode

    @property
    def connection(self):
        return self.sd.connection

    @property
    def theta(self):
        if self._theta is None:
            self._theta = build_rothstein(self.sd)
        return self._theta

    @property
    def operator(self):
        if self._operator is None:
            self._operator = DivergenceOperator.symplectic(self.sd)
        return self._operator

    def prepare(self):
        """
        Build every lazy part up front so the model can be shared between threads.
        """
        self.operator.basic_divergences()
        return self.theta


class Suite(object):
    """
    A named property with the kind of model its cases need.

    Parameters:
        mode (str): the coefficient mode the property needs, or None for any.
        fresh (bool): draw a new model per case even when a shared one is given.
        rank (int): fiber rank of drawn models; random in {2, 4} when None.
        curved (bool): force curved (True) or flat (False) drawn models; random when None.
        cases (int): cases run when neither the caller nor the DEFAULT_CASES setting gives a count.
    """
    def __init__(self, name, function, mode=None, fresh=False, rank=None, curved=None, cases=50):
        self.name = name
        self.function = function
        self.mode = mode
        self.fresh = fresh
        self.rank = rank
        self.curved = curved
        self.cases = cases

    @property
    def label(self):
        return statement_of(self.name)

    def model_for(self, fuzzer, shared=None):
        if shared is not None and not self.fresh and self.mode in (None, shared.mode):
            return shared
        return fuzzer.model(self.mode, self.rank, self.curved)


SUITES = OrderedDict()


def suite(name, **options):
    def register(function):
        SUITES[name] = Suite(name, function, **options)
        return function
    return register


def _axiom_defect(fuzzer, model, operator):
    p, q = fuzzer.parity(), fuzzer.parity()
    element = fuzzer.superfunction(model.ring, model.rank, p)
    derivation = fuzzer.derivation(model.connection, q)
    left = operator(derivation.left_multiply(element))
    right = wedge(element, operator(derivation)) + apply(derivation, element).scale(_sign(p, q))
    return _mismatch('div(sD) vs s div(D) + (-1)^|s||D| D(s)', left, right)


def _integral_defect(fuzzer, model, volume, operator):
    derivation = fuzzer.derivation(model.connection, fuzzer.parity())
    element = fuzzer.superfunction(model.ring, model.rank)
    left = -berezin_integral(apply(derivation, element), volume)
    right = berezin_integral(wedge(operator(derivation), element), volume)
    return _mismatch('-int D(s) vs int div(D) s', left, right)


@suite('divergence-axiom', cases=200)
def divergence_axiom(fuzzer, model):
    return _axiom_defect(fuzzer, model, model.operator)


@suite('integral-characterization', mode=TORUS, cases=100)
def integral_characterization(fuzzer, model):
    return _integral_defect(fuzzer, model, model.operator.volume, model.operator)


@suite('leibniz-rule', cases=100)
def leibniz_rule(fuzzer, model):
    rescale = fuzzer.even_invertible(model.ring, model.rank)
    return _axiom_defect(fuzzer, model, DivergenceOperator(model.operator.volume.rescaled(rescale)))


@suite('rescaling-rule', cases=100)
def rescaling_rule(fuzzer, model):
    rescale = fuzzer.even_invertible(model.ring, model.rank, unit_body=fuzzer.coin())
    base = model.operator
    rescaled = DivergenceOperator(base.volume.rescaled(rescale))
    derivation = fuzzer.derivation(model.connection, fuzzer.parity())
    value = rescaled(derivation)
    detail = _mismatch('rescaled divergence', value, divergence_rescaled(derivation, rescale, base))
    if not detail and rescale.body().is_one():
        detail = _mismatch('log form', value, divergence_rescaled_log(derivation, rescale, base))
    if not detail and model.mode == TORUS:
        detail = _integral_defect(fuzzer, model, rescaled.volume, rescaled)
    return detail


@suite('basic-divergences', fresh=True, cases=10)
def basic_divergences(fuzzer, model):
    sd, operator = model.sd, model.operator
    for j in range(sd.rank):
        value = operator(GradedDerivation.contraction_basis(sd.connection, j))
        if value:
            return 'div(i[{}]) = {}'.format(j + 1, value.to_text())
    for a in range(sd.dim):
        unit = [sd.ring.one if b == a else sd.ring.zero for b in range(sd.dim)]
        expected = Superfunction.constant(sd.ring, sd.rank, geometry.classical_divergence(unit, sd))
        detail = _mismatch('div(nabla[{}])'.format(a + 1), operator(GradedDerivation.nabla_basis(sd.connection, a)),
                           expected)
        if detail:
            return detail
    return ''


@suite('bracket-laws', curved=True, cases=100)
def bracket_laws(fuzzer, model):
    theta, ring, rank = model.theta, model.ring, model.rank

    def bracket(left, right):
        return poisson_bracket(left, right, theta)

    p, q = fuzzer.parity(), fuzzer.parity()
    first = fuzzer.superfunction(ring, rank, p, terms=1)
    second = fuzzer.superfunction(ring, rank, q, terms=1)
    third = fuzzer.superfunction(ring, rank, terms=1)
    sign = _sign(p, q)
    f, h = fuzzer.coefficient(ring), fuzzer.coefficient(ring)
    body_bracket = bracket(Superfunction.constant(ring, rank, f), Superfunction.constant(ring, rank, h)).body()
    return _first(
        _mismatch('antisymmetry', bracket(first, second), -bracket(second, first).scale(sign)),
        _mismatch('Leibniz', bracket(first, wedge(second, third)),
                  wedge(bracket(first, second), third) + wedge(second, bracket(first, third)).scale(sign)),
        _mismatch('Jacobi', bracket(first, bracket(second, third)),
                  bracket(bracket(first, second), third) + bracket(second, bracket(first, third)).scale(sign)),
        _mismatch('classical bracket', body_bracket, geometry.classical_bracket(f, h, model.sd)),
    )


@suite('unimodularity', fresh=True, cases=20)
def unimodularity(fuzzer, model):
    theta, ring, rank = model.theta, model.ring, model.rank
    verdict = modular_class_trivial(theta, model.operator)
    if not verdict.trivial:
        return 'modular class not trivial, certificate {}'.format(verdict.certificate_text())
    for _ in range(2):
        base = Superfunction.constant(ring, rank, fuzzer.coefficient(ring))
        classical = grade_project(apply(verdict.field, base), 0)
        if classical:
            return 'degree 0 part of Z({}) = {}'.format(base.to_text(), classical.to_text())
    sample = fuzzer.superfunction(ring, rank, terms=1)
    if modular_field_mismatches(verdict.field, theta, model.operator, [sample]):
        return 'Z({}) != div(D_s)'.format(sample.to_text())
    return ''


@suite('class-invariance', cases=20)
def class_invariance(fuzzer, model):
    theta, ring, rank = model.theta, model.ring, model.rank
    rescale = fuzzer.even_invertible(ring, rank, unit_body=fuzzer.coin())
    base = model.operator
    rescaled = DivergenceOperator(base.volume.rescaled(rescale))
    field = modular_field(theta, base)
    rescaled_field = modular_field(theta, rescaled)
    difference = rescaled_field - field
    detail = _mismatch('Z\' - Z', difference, rescaling_difference(theta, rescale))
    if detail:
        return detail
    body = rescale.body()
    if body.is_constant():
        normalized = rescale.scale(ring.const(1 / body.constant_value()))
        expected = -hamiltonian_field(log_even(normalized), theta)
        detail = _mismatch('Hamiltonian difference', difference, expected)
    elif not is_locally_hamiltonian(difference, theta):
        detail = 'Z\' - Z is not locally Hamiltonian'
    if detail:
        return detail
    before = modular_class_trivial(theta, base, field).trivial
    after = modular_class_trivial(theta, rescaled, rescaled_field).trivial
    if before != after:
        return 'class verdict changed from {} to {}'.format(before, after)
    return ''


@suite('continuity', rank=2)
def continuity(fuzzer, model):
    ring, rank, sd = model.ring, model.rank, model.sd
    hamiltonian = fuzzer.superfunction(ring, rank, 0)
    field = hamiltonian_field(hamiltonian, model.theta)
    density = TimeDependentSection(
        ring, rank,
        [fuzzer.superfunction(ring, rank, terms=1), fuzzer.superfunction(ring, rank, terms=1)],
        [fuzzer.superfunction(ring, rank, terms=1)],
    )
    residual = continuity_residual(density, field, model.operator)
    # D_h is even, so the two forms differ by rho ^ div(D_h) in both components
    field_divergence = model.operator(field)
    expected = density.map_components(lambda value: wedge(value, field_divergence),
                                      lambda value: wedge(value, field_divergence))
    if residual.divergence_form - residual.lie_form != expected:
        return 'divergence and Lie forms differ by more than rho div(D) for {}'.format(density.to_text())
    traceless = not any(sum((gamma[j][j] for j in range(rank)), ring.zero) for gamma in sd.gamma)
    if rank == sd.dim and traceless:
        report = classical_reduction_demo([fuzzer.coefficient(ring), fuzzer.coefficient(ring)],
                                          [fuzzer.coefficient(ring), fuzzer.coefficient(ring)], model.operator)
        if not report.passed:
            return 'classical reduction: {} != {}'.format(report.values['residual'], report.values['expected'])
    if model.mode == TORUS and residual.divergence_free:
        constant = Superfunction.constant(ring, rank, fuzzer.rational(nonzero=True))
        transported = TimeDependentSection(ring, rank, [hamiltonian, -constant], [constant])
        report = conservation_check(transported, field, model.operator)
        if not report.passed:
            return 'conservation: {}'.format('; '.join(check.detail for check in report.failures()))
    return ''


@suite('curvature-oracle', fresh=True, curved=True, cases=10)
def curvature_oracle(fuzzer, model):
    ring, rank = model.ring, model.rank
    sd = SymplecticData(ring, rank, model.sd.omega, model.sd.g, fuzzer.gamma(ring, rank))
    curvature = geometry.curvature(sd)
    for a in range(sd.dim):
        for b in range(a + 1, sd.dim):
            bracket = commutator(GradedDerivation.nabla_basis(sd.connection, a),
                                 GradedDerivation.nabla_basis(sd.connection, b))
            for j in range(rank):
                expected = Superfunction(ring, rank, {1 << k: curvature.R[a][b][k][j] for k in range(rank)})
                detail = _mismatch('[nabla[{}], nabla[{}]] e[{}]'.format(a + 1, b + 1, j + 1),
                                   bracket.generator_value(j), expected)
                if detail:
                    return detail
    return ''


@suite('derivation-laws')
def derivation_laws(fuzzer, model):
    ring, rank, connection = model.ring, model.rank, model.connection
    p, q = fuzzer.parity(), fuzzer.parity()
    left, right = fuzzer.derivation(connection, p), fuzzer.derivation(connection, q)
    r = fuzzer.parity()
    first = fuzzer.superfunction(ring, rank, r, terms=1)
    second = fuzzer.superfunction(ring, rank, terms=1)
    bracket = commutator(left, right)
    operator = model.operator
    return _first(
        _mismatch('Leibniz', apply(left, wedge(first, second)),
                  wedge(apply(left, first), second) + wedge(first, apply(left, second)).scale(_sign(p, r))),
        _mismatch('commutator', apply(bracket, first),
                  apply(left, apply(right, first)) - apply(right, apply(left, first)).scale(_sign(p, q))),
        _mismatch('divergence cocycle', operator(bracket),
                  apply(left, operator(right)) - apply(right, operator(left)).scale(_sign(p, q))),
    )


@suite('canonical-comparison')
def canonical(fuzzer, model):
    ring, rank, sd = model.ring, model.rank, model.sd
    canonical_volume = fuzzer.unit_coefficient(ring)
    comparison = canonical_comparison(canonical_volume, sd)
    derivation = fuzzer.derivation(model.connection, fuzzer.parity())
    detail = _first(
        _mismatch('e^f (div_symp - div_can)(D) - D(e^f)', comparison.defect(derivation),
                  Superfunction.zero(ring, rank)),
        _mismatch('rescaled canonical divergence', comparison.rescaled_canonical()(derivation),
                  comparison.symplectic(derivation)),
    )
    if not detail and model.mode == TORUS:
        element = fuzzer.superfunction(ring, rank)
        detail = _mismatch('int_xi s vs int_can e^f s', berezin_integral(element, BerezinianVolume(sd)),
                           canonical_integral(wedge(comparison.ratio, element), canonical_volume, sd))
    return detail


def case_seed(seed, name, index):
    return '{}:{}:{}'.format(seed, name, index)


def run_case(suite_, seed, index, shared=None):
    """
    Run one case; returns ``(index, detail)`` with an empty detail on success.
    """
    fuzzer = Fuzzer(random.Random(case_seed(seed, suite_.name, index)))
    try:
        return index, suite_.function(fuzzer, suite_.model_for(fuzzer, shared))
    except SupermodularError as error:
        return index, '{}: {}'.format(type(error).__name__, error)


def run_suite(name, seed=None, cases=None, shared=None):
    """
    Run ``cases`` seeded cases of a suite.

    Parameters:
        name (str): a key of SUITES.
        seed (int): defaults to the DEFAULT_SEED setting.
        cases (int): defaults to the DEFAULT_CASES setting, then to the suite's own count.
        shared (Model): model to use for suites that do not draw their own.

    Return Value:
        Report: one check named after the suite, labelled with its statement, counting passed cases.
    """
    suite_ = SUITES[name]
    seed = conf.get(conf.DEFAULT_SEED) if seed is None else seed
    if cases is None:
        cases = conf.get(conf.DEFAULT_CASES)
    if cases is None:
        cases = suite_.cases
    workers = conf.get(conf.WORKERS)
    if shared is not None:
        shared.prepare()
    log.debug('running %s: seed=%s cases=%d workers=%d', name, seed, cases, workers)
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(lambda index: run_case(suite_, seed, index, shared), range(cases)))
    else:
        results = [run_case(suite_, seed, index, shared) for index in range(cases)]
    results.sort(key=itemgetter(0))
    failures = [(index, detail) for index, detail in results if detail]
    for index, detail in failures:
        log.warning('%s case %d (seed %s) failed: %s', name, index, seed, detail)
    passed = cases - len(failures)
    detail = '{}/{} cases passed'.format(passed, cases)
    if failures:
        detail += '; first failure: case {}: {}'.format(*failures[0])
    report = Report(name)
    report.values[name] = '{}/{}'.format(passed, cases)
    report.add(name, not failures, detail, label=suite_.label)
    return report


def run_suites(names=None, seed=None, cases=None, shared=None):
    """
    Run several suites (all of them by default) into one report.
    """
    seed = conf.get(conf.DEFAULT_SEED) if seed is None else seed
    report = Report('properties (seed {})'.format(seed))
    for name in names or SUITES:
        report.extend(run_suite(name, seed, cases, shared))
    return report
