"""
Management command running one supermodular action against a manifest.

    ./manage.py supermodular class --manifest flat.json
    ./manage.py supermodular oracle --manifest torus.json --seed 7 --cases 50 --json

Exit status: 0 when every check passes, 1 when a check fails, 2 on input errors.
"""

from __future__ import absolute_import, division, print_function, unicode_literals

import logging

from django.core.exceptions import ValidationError
from django.core.management.base import BaseCommand, CommandError
from django.utils.translation import gettext as _

from supermodular.coefficients import MODES
from supermodular.commands import COMMANDS, run_command
from supermodular.exceptions import PositionedError, SupermodularError
from supermodular.manifest import parse_manifest

log = logging.getLogger(__name__)

INPUT_ERROR = 2
CHECK_FAILED = 1


def describe_validation_error(error):
    """
    Flatten a ValidationError into ``field: message`` lines.
    """
    if hasattr(error, 'error_dict'):
        return '\n'.join('{}: {}'.format(field or 'manifest', ' '.join(messages))
                         for field, messages in sorted(error.message_dict.items()))
    return ' '.join(error.messages)


class Command(BaseCommand):
    """
    Dispatch to supermodular.commands.run_command and map the outcome to an exit status.
    """
    help = 'Run a graded-geometry computation or property check on a model manifest.'

    def add_arguments(self, parser):
        parser.add_argument('action', help='one of: {}'.format(', '.join(COMMANDS)))
        parser.add_argument('operands', nargs='*', help='sections, derivations or densities, by name or expression')
        parser.add_argument('--manifest', required=True, help='path of the JSON model manifest')
        parser.add_argument('--json', action='store_true', dest='as_json', help='print the report as JSON')
        parser.add_argument('--seed', type=int, default=None, help='seed of the property fuzzer')
        parser.add_argument('--cases', type=int, default=None,
                            help='cases per property suite; each suite runs its own count by default')
        parser.add_argument('--mode-override', choices=MODES, default=None,
                            help='evaluate the manifest in another coefficient mode')

    def handle(self, *args, **options):
        try:
            manifest = parse_manifest(options['manifest'], options['mode_override'])
            report = run_command(options['action'], manifest, options['operands'], options['seed'], options['cases'])
        except PositionedError as error:
            raise CommandError(error.describe(), returncode=INPUT_ERROR)
        except ValidationError as error:
            raise CommandError(describe_validation_error(error), returncode=INPUT_ERROR)
        except SupermodularError as error:
            raise CommandError('{}: {}'.format(type(error).__name__, error), returncode=INPUT_ERROR)
        except (IOError, OSError) as error:
            raise CommandError(_('cannot read manifest: {error}').format(error=error), returncode=INPUT_ERROR)

        self.stdout.write(report.to_json() if options['as_json'] else report.to_text())
        if report.exit_code:
            failed = ', '.join(check.name for check in report.failures())
            log.info('%s: failed checks %s', options['action'], failed)
            raise CommandError(_('failed checks: {failed}').format(failed=failed), returncode=CHECK_FAILED)
