# -*- coding: utf-8 -*-
#
# Copyright (c) 2026, CayleyIsing developers
#
# This software is licensed as described in the file COPYING, which
# you should have received as part of this distribution.
#

from setuptools import find_packages, setup

setup(
    name='CayleyIsing',
    version='0.1.0',
    description='Splitting Gibbs measures of the Ising model on Cayley '
                'trees near the critical external field',
    license='3-Clause BSD',
    packages=find_packages(exclude=['*.tests*']),
    python_requires='>=3.7',
    install_requires=[
        'Trac>=1.6',
        'numpy>=1.17',
        'scipy>=1.4',
    ],
    extras_require={
        'test': 'hypothesis',
    },
    entry_points={
        'trac.plugins': [
            'cayleyising.admin = cayleyising.admin',
            'cayleyising.classifier = cayleyising.classifier',
            'cayleyising.formatters = cayleyising.formatters',
            'cayleyising.oracle = cayleyising.oracle',
            'cayleyising.perturbation = cayleyising.perturbation',
        ],
        'console_scripts': [
            'cayley-ising = cayleyising.console:main',
        ],
    },
    test_suite='cayleyising.tests.test_suite',
    tests_require=['hypothesis'],
)
