"""
Report objects shared by the report-style operations and the command line.
"""

from __future__ import absolute_import, division, print_function, unicode_literals

import json
from collections import OrderedDict

# The statement each kind of check certifies, keyed by property name.
LABELS = OrderedDict([
    ('divergence-axiom', 'div(s D) = s div(D) + (-1)^(|s||D|) D(s)'),
    ('integral-characterization', '-int D(s) = int div(D) s'),
    ('leibniz-rule', 'div(s D) = s div(D) + (-1)^(|s||D|) D(s) for every rescaled Berezinian'),
    ('rescaling-rule', 'div^(xi s) = div^xi + s^-1 D(s)'),
    ('basic-divergences', 'div(i[j]) = 0 and div(nabla[a]) = div_omega(d_a)'),
    ('bracket-laws', '[[s, t]] is a graded Poisson bracket'),
    ('hamiltonian-field', 'd s = i(D_s) Theta'),
    ('modular-field', 'Z(u) = div(D_u)'),
    ('unimodularity', 'every even symplectic form is unimodular'),
    ('class-invariance', 'Z(xi s) - Z(xi) is Hamiltonian'),
    ('continuity', 'd_t rho + div(rho D) = 0'),
    ('curvature-oracle', '[nabla[a], nabla[b]] = R(a, b)'),
    ('derivation-laws', 'div([D, E]) = D div(E) - (-1)^(|D||E|) E div(D)'),
    ('canonical-comparison', 'div_symp = div_can + e^-f D(e^f)'),
])


def statement_of(name):
    """
    The certified statement of a property, or the name itself when none is registered.
    """
    return LABELS.get(name, name)


class Check(object):
    """
    One verified condition.

    Parameters:
        name (str): short machine-friendly name, e.g. ``omega-antisymmetric``.
        passed (bool)
        detail (str): the offending entry or a short explanation.
        label (str): the statement this check certifies, see LABELS.
    """
    def __init__(self, name, passed, detail='', label=''):
        self.name = name
        self.passed = bool(passed)
        self.detail = detail
        self.label = label

    def to_dict(self):
        return OrderedDict([
            ('name', self.name),
            ('passed', self.passed),
            ('label', self.label),
            ('detail', self.detail),
        ])

    def __repr__(self):
        return '<Check {} {}>'.format(self.name, 'pass' if self.passed else 'FAIL')


class Report(object):
    """
    An ordered collection of checks and computed values.
    """
    def __init__(self, title, checks=None, values=None):
        self.title = title
        self.checks = list(checks or [])
        self.values = OrderedDict(values or [])

    @property
    def passed(self):
        return all(check.passed for check in self.checks)

    @property
    def exit_code(self):
        return 0 if self.passed else 1

    def add(self, name, passed, detail='', label=''):
        check = Check(name, passed, detail, label)
        self.checks.append(check)
        return check

    def extend(self, other):
        """
        Append the checks and values of another report.
        """
        self.checks.extend(other.checks)
        for key, value in other.values.items():
            self.values[key] = value
        return self

    def failures(self):
        return [check for check in self.checks if not check.passed]

    def check(self, name):
        for check in self.checks:
            if check.name == name:
                return check
        raise KeyError(name)

    def to_dict(self):
        return OrderedDict([
            ('title', self.title),
            ('passed', self.passed),
            ('checks', [check.to_dict() for check in self.checks]),
            ('values', self.values),
        ])

    def to_json(self):
        return json.dumps(self.to_dict(), indent=2)

    def to_text(self):
        lines = [self.title]
        for key, value in self.values.items():
            lines.append('  {} = {}'.format(key, value))
        for check in self.checks:
            status = 'pass' if check.passed else 'FAIL'
            label = ' [{}]'.format(check.label) if check.label else ''
            detail = ': {}'.format(check.detail) if check.detail else ''
            lines.append('  {} {}{}{}'.format(status, check.name, label, detail))
        summary = '{}/{} checks passed'.format(len(self.checks) - len(self.failures()), len(self.checks))
        lines.append(summary)
        return '\n'.join(lines)
