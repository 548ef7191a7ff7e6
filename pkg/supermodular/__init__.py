"""
Exact graded geometry kernel: superfunctions, graded derivations, even symplectic forms and modular classes.
"""

from __future__ import unicode_literals


__version__ = '0.1.0'

default_app_config = 'supermodular.apps.SupermodularAppConfig'  # pylint: disable=invalid-name
