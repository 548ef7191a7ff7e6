#!/usr/bin/env python
# -*- coding: utf-8 -*-
# pylint: disable=C0111,W6005,W6100
from __future__ import absolute_import, print_function

import os
import re
import sys

from setuptools import setup


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


def load_requirements(*requirements_paths):
    """
    Load the unpinned names of the requirement files, skipping comments.
    """
    requirements = []
    for path in requirements_paths:
        with open(os.path.join(os.path.dirname(__file__), path)) as handle:
            requirements.extend(
                line.split('#')[0].strip() for line in handle
                if line.strip() and not line.startswith(('#', '-'))
            )
    return requirements


VERSION = get_version('supermodular', '__init__.py')

if sys.argv[-1] == 'tag':
    print("Tagging the version on github:")
    os.system("git tag -a %s -m 'version %s'" % (VERSION, VERSION))
    os.system("git push --tags")
    sys.exit()

README = open(os.path.join(os.path.dirname(__file__), 'README.rst')).read()
CHANGELOG = open(os.path.join(os.path.dirname(__file__), 'CHANGELOG.rst')).read()

setup(
    name='supermodular',
    version=VERSION,
    description="""Exact symbolic kernel for divergences, modular classes and continuity on even symplectic
graded manifolds.""",
    long_description=README + '\n\n' + CHANGELOG,
    packages=[
        'supermodular',
        'supermodular.management',
        'supermodular.management.commands',
    ],
    include_package_data=True,
    install_requires=load_requirements('requirements/base.txt'),
    entry_points={
        'console_scripts': [
            'supermodular = supermodular.__main__:main',
        ],
    },
    license="AGPL 3.0",
    zip_safe=False,
    keywords='Django graded-geometry supermanifold symplectic',
    classifiers=[
        'Development Status :: 3 - Alpha',
        'Framework :: Django',
        'Framework :: Django :: 3.2',
        'Framework :: Django :: 4.2',
        'Intended Audience :: Science/Research',
        'License :: OSI Approved :: GNU Affero General Public License v3 or later (AGPLv3+)',
        'Natural Language :: English',
        'Programming Language :: Python :: 3',
        'Programming Language :: Python :: 3.8',
        'Programming Language :: Python :: 3.10',
        'Topic :: Scientific/Engineering :: Mathematics',
    ],
)
