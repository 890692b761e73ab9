"""
imatch setup

Template via https://github.com/noahp/python-packaging
"""
from setuptools import setup
import tests


setup(
    name='imatch',
    version='0.1.0',
    description='Induced matching hardness reductions and verification '
                'campaigns.',
    python_requires='>=3.10',

    packages=['imatch'],
    test_suite='tests.init_test_suite',

    # Installed on PATH; must stay executable with a python3 shebang.
    scripts=['imatch/bin/imatch-cli.py'],

    # For scripts, this corrects shebang replacement, from:
    #  https://github.com/pybuilder/pybuilder/issues/168
    options={'build_scripts': {'executable': '/usr/bin/env python3'}},
)
