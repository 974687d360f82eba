"""Utility functions for other tests"""

import json
import os
from fractions import Fraction
from typing import Sequence

import numpy as np

from perceptsim._study import StudySpec, parse_study_spec

_HERE = os.path.dirname(os.path.abspath(__file__))
_DATA_DIR = os.path.join(_HERE, '..', '..', 'data')

VERAS_STUDY_FILE = os.path.realpath(os.path.join(_DATA_DIR,
                                                 'veras2024.json'))

# Theme parameters of the published simulation run.
PUBLISHED_PARAMETERS = (('T1', 4.1169, 0.2709),
                        ('T2', 4.1240, 0.0910),
                        ('T3', 3.7100, 0.2160))

# Seeds of the statistical acceptance battery.
SEED_BATTERY = range(100)


def veras_raw() -> bytes:
    """Bytes of the reference study file."""
    with open(VERAS_STUDY_FILE, 'rb') as handle:
        return handle.read()


def veras_spec() -> StudySpec:
    """The reference study, parsed."""
    return parse_study_spec(veras_raw())


def veras_document() -> dict:
    """The reference study as a plain JSON document, for mutation."""
    return json.loads(veras_raw().decode('utf-8'))


def study_bytes(document: dict) -> bytes:
    """Encode a study document."""
    return json.dumps(document).encode('utf-8')


def minimal_document(mean=3.0, sd=1.0) -> dict:
    """Smallest valid study: one item in one theme."""
    return {
        'scale': {'min': 1, 'max': 5},
        'items': [{'id': 'Q1', 'mean': mean, 'sd': sd, 'reverse': False}],
        'themes': [{'id': 'T1', 'name': 'Only theme', 'items': ['Q1']}],
    }


def two_theme_document() -> dict:
    """Small valid study whose themes all have two items."""
    return {
        'scale': {'min': 1, 'max': 5},
        'items': [
            {'id': 'A1', 'mean': 4.0, 'sd': 0.5, 'reverse': False},
            {'id': 'A2', 'mean': 2.0, 'sd': 0.8, 'reverse': True},
            {'id': 'B1', 'mean': 3.5, 'sd': 0.6, 'reverse': False},
            {'id': 'B2', 'mean': 3.9, 'sd': 0.7, 'reverse': False},
        ],
        'themes': [
            {'id': 'A', 'name': 'First', 'items': ['A1', 'A2']},
            {'id': 'B', 'name': 'Second', 'items': ['B1', 'B2']},
        ],
    }


#
# oracles
#

def _determinant(matrix):
    """Cofactor expansion over exact fractions."""
    size = len(matrix)
    if size == 1:
        return matrix[0][0]
    total = Fraction(0)
    for col in range(size):
        minor = [row[:col] + row[col + 1:] for row in matrix[1:]]
        sign = -1 if col % 2 else 1
        total += sign * matrix[0][col] * _determinant(minor)
    return total


def _cofactor_inverse(matrix):
    size = len(matrix)
    det = _determinant(matrix)
    if size == 1:
        return [[1 / det]]
    inverse = [[Fraction(0)] * size for _ in range(size)]
    for i in range(size):
        for j in range(size):
            minor = [row[:j] + row[j + 1:]
                     for k, row in enumerate(matrix) if k != i]
            sign = -1 if (i + j) % 2 else 1
            # adjugate is the transposed cofactor matrix
            inverse[j][i] = sign * _determinant(minor) / det
    return inverse


def normal_equations_oracle(design, response):
    """
    Brute-force least squares: (X^T X)^-1 X^T y with the inverse formed by
    cofactor expansion in exact rational arithmetic.

    Returns:
        (coefficients, r_squared) as floats
    """
    rows = [[Fraction(float(v)) for v in row] for row in np.asarray(design)]
    y = [Fraction(float(v)) for v in np.asarray(response)]
    width = len(rows[0])

    xtx = [[sum(row[i] * row[j] for row in rows) for j in range(width)]
           for i in range(width)]
    xty = [sum(row[i] * yv for row, yv in zip(rows, y)) for i in range(width)]
    inverse = _cofactor_inverse(xtx)
    beta = [sum(inverse[i][j] * xty[j] for j in range(width))
            for i in range(width)]

    mean = sum(y) / len(y)
    sse = sum((yv - sum(b * x for b, x in zip(beta, row))) ** 2
              for row, yv in zip(rows, y))
    sst = sum((yv - mean) ** 2 for yv in y)
    return [float(b) for b in beta], float(1 - sse / sst)


def bessel_sd_oracle(means: Sequence[float], sds: Sequence[float]) -> float:
    """
    Term-by-term weighted SD over exact fractions:
    sum(w (x - xbar)^2) / (((M - 1) / M) * sum(w)), w = 1/sd^2.
    """
    weights = [1 / Fraction(sd) ** 2 for sd in sds]
    values = [Fraction(m) for m in means]
    total = sum(weights)
    xbar = sum(w * x for w, x in zip(weights, values)) / total
    count = len(values)
    variance = sum(w * (x - xbar) ** 2 for w, x in zip(weights, values)) \
        / (Fraction(count - 1, count) * total)
    return float(variance) ** 0.5
