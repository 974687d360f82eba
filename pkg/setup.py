# pylint: disable=missing-module-docstring

from setuptools import setup, find_packages

__version__ = '0.1.0'

setup(
    name='perceptsim',
    description='Likert composites, synthetic cohorts, OLS diagnostics and '
                'SUS scoring from published questionnaire statistics',
    version=__version__,
    packages=find_packages(),
    data_files=[('share/perceptsim', ['data/veras2024.json'])],
    entry_points={
        'console_scripts': [
            'perceptsim = perceptsim.main:main'
        ]
    },
    install_requires=[
        'cached_property',
        'configargparse',
        'fuzzywuzzy',
        'numpy',
        'pandas>=1.5',
        'python-Levenshtein',
        'pyyaml',
        'rich',
        'scipy',
    ],
    python_requires='>=3.8'
)
