"""
Descriptive statistics and moment-based shape measures of a numeric vector.

Quantiles use linear interpolation between closest ranks (numpy's default
"linear" method). The sample SD uses the n - 1 denominator, while skewness
and kurtosis use population (n denominator) moments and kurtosis is
reported as Pearson kurtosis, so a normal sample lands near 3.
"""

from dataclasses import dataclass, asdict
from typing import Dict, Tuple

import numpy as np

from perceptsim._exceptions import DomainError
from perceptsim._logging import get_rich_logger

_LOGGER = get_rich_logger(__name__)


@dataclass(frozen=True)
class DescriptiveSummary:
    """Count, mean, sample SD and the five-number summary of a vector."""
    count: int
    mean: float
    sd: float
    min: float
    q25: float
    median: float
    q75: float
    max: float

    def to_dict(self) -> Dict[str, float]:
        """JSON-ready representation."""
        return asdict(self)


def _as_finite_vector(values, minimum: int = 1) -> np.ndarray:
    """
    Coerce `values` into a 1-D float array with at least `minimum` finite
    entries.

    Raises:
        DomainError: on too few values or on any NaN/inf.
    """
    array = np.asarray(values, dtype=float).ravel()
    if array.size < minimum:
        raise DomainError(f'need at least {minimum} value(s), '
                          f'got {array.size}')
    if not np.all(np.isfinite(array)):
        raise DomainError('values must all be finite')
    return array


def describe(values) -> DescriptiveSummary:
    """
    Summarize a vector.

    A single value has no sample variance; its SD is reported as 0 and a
    warning is logged.

    Raises:
        DomainError: on an empty vector or non-finite values.
    """
    array = _as_finite_vector(values)
    count = int(array.size)

    low = float(array.min())
    high = float(array.max())

    if count == 1:
        _LOGGER.warning('Summary of a single value: sd is undefined and is '
                        'reported as 0')

    if low == high:
        return DescriptiveSummary(count=count, mean=low, sd=0.0, min=low,
                                  q25=low, median=low, q75=low, max=high)

    q25, median, q75 = np.percentile(array, [25.0, 50.0, 75.0])

    # interpolation and summation can stray past the extremes by an ulp
    q25, median, q75 = (min(max(float(q), low), high)
                        for q in (q25, median, q75))
    mean = min(max(float(np.mean(array)), low), high)

    return DescriptiveSummary(count=count,
                              mean=mean,
                              sd=float(np.std(array, ddof=1)),
                              min=low,
                              q25=q25,
                              median=median,
                              q75=q75,
                              max=high)


def _central_moments(values) -> Tuple[float, float, float]:
    """Population central moments m2, m3, m4 of a vector of n >= 3."""
    array = _as_finite_vector(values, minimum=3)
    if np.ptp(array) == 0.0:
        raise DomainError('shape moments of a zero-variance vector are '
                          'undefined')
    deviations = array - array.mean()
    squared = deviations * deviations
    m2 = float(np.mean(squared))
    m3 = float(np.mean(squared * deviations))
    m4 = float(np.mean(squared * squared))
    return m2, m3, m4


def skewness(values) -> float:
    """
    Moment skewness m3 / m2^(3/2).

    Raises:
        DomainError: for fewer than 3 values or zero variance.
    """
    m2, m3, _ = _central_moments(values)
    return m3 / m2 ** 1.5


def kurtosis(values) -> float:
    """
    Pearson (non-excess) kurtosis m4 / m2^2.

    Raises:
        DomainError: for fewer than 3 values or zero variance.
    """
    m2, _, m4 = _central_moments(values)
    return m4 / (m2 * m2)
