# -*- coding: utf-8 -*-
# pylint: disable=invalid-name
"""
supermodular documentation build configuration file.
"""

from __future__ import absolute_import, unicode_literals

import os
import re
import sys
from subprocess import check_call

import django
from django.conf import settings


def get_version(*file_paths):
    """
    Extract the version string from the file at the given relative path fragments.
    """
    filename = os.path.join(os.path.dirname(__file__), *file_paths)
    with open(filename) as version_file:
        version_match = re.search(r"^__version__ = ['\"]([^'\"]*)['\"]", version_file.read(), re.M)
    if version_match:
        return version_match.group(1)
    raise RuntimeError('Unable to find version string.')


REPO_ROOT = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))
sys.path.append(REPO_ROOT)

VERSION = get_version('../supermodular', '__init__.py')

# autodoc imports the management command, which needs configured settings.
settings.configure(INSTALLED_APPS=['supermodular'])
django.setup()

extensions = [
    'sphinx.ext.autodoc',
    'sphinx.ext.doctest',
    'sphinx.ext.intersphinx',
    'sphinx.ext.mathjax',
    'sphinx.ext.napoleon',
]

templates_path = ['_templates']
source_suffix = '.rst'
master_doc = 'index'

project = 'supermodular'
copyright = 'supermodular contributors'  # pylint: disable=redefined-builtin
author = 'supermodular contributors'
version = VERSION
release = VERSION

language = 'en'
exclude_patterns = ['_build', 'Thumbs.db', '.DS_Store']
pygments_style = 'sphinx'

html_theme = 'alabaster'
html_static_path = []
htmlhelp_basename = 'supermodulardoc'

latex_documents = [
    (master_doc, 'supermodular.tex', 'supermodular Documentation', author, 'manual'),
]

man_pages = [
    (master_doc, 'supermodular', 'supermodular Documentation', [author], 1),
]

intersphinx_mapping = {
    'python': ('https://docs.python.org/3', None),
    'django': ('https://docs.djangoproject.com/en/3.2/', 'https://docs.djangoproject.com/en/3.2/_objects/'),
    'sympy': ('https://docs.sympy.org/latest/', None),
}


def on_init(app):  # pylint: disable=unused-argument
    """
    Run sphinx-apidoc after Sphinx initialization.

    Read the Docs won't run tox or custom shell commands, so we need this to
    avoid checking in the generated reStructuredText files.
    """
    docs_path = os.path.abspath(os.path.dirname(__file__))
    root_path = os.path.abspath(os.path.join(docs_path, '..'))
    apidoc_path = os.path.join(os.path.dirname(sys.executable), 'sphinx-apidoc')
    check_call([apidoc_path, '-o', docs_path, os.path.join(root_path, 'supermodular'),
                os.path.join(root_path, 'supermodular/tests')])


def setup(app):
    """Sphinx extension: run sphinx-apidoc."""
    app.connect('builder-inited', on_init)
