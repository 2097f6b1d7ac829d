# -*- coding: utf-8 -*-
import pathlib

from pkg_resources import VersionConflict, require

try:
    require('setuptools>=38.3')
except VersionConflict:
    import sys

    print('Error: version of setuptools is too old (<38.3)!')
    sys.exit(1)

from setuptools import setup, find_namespace_packages

with open('requirements.txt') as f:
    requirements = f.read().splitlines()

# The text of the README file
README = (pathlib.Path(__file__).parent / 'README.md').read_text()

if __name__ == '__main__':
    setup(
        name='cmpl',
        version='0.1.0',
        description='Period relations, bi-Qbar-structures and certified period identities of CM points',
        long_description=README,
        long_description_content_type='text/markdown',
        license='MIT',
        classifiers=[
            'License :: OSI Approved :: MIT License',
            'Programming Language :: Python :: 3',
            'Programming Language :: Python :: 3.8',
            'Topic :: Scientific/Engineering :: Mathematics'
        ],
        packages=['cmpl'] + find_namespace_packages(include=['cmpl.*']),
        python_requires='>=3.8',
        include_package_data=True,
        install_requires=requirements,
        extras_require={
            'test': ['pytest', 'mpmath']
        },
        entry_points={
            'console_scripts': ['cmpl=cmpl.cli:main']
        },
        keywords=['complex multiplication', 'periods', 'mumford-tate', 'lll', 'ball arithmetic']
    )
