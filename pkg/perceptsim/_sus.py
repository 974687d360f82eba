"""
System Usability Scale scoring on the 0-100 range and its qualitative
bands.

Two scorings are offered. The items-based score applies the usual SUS
polarity handling to item means: positively worded items contribute
(mean - min), reverse-worded items (max - mean), and the total is scaled to
0-100. For the ten-item 1-5 questionnaire this is the familiar x2.5 rule.
The composite-linear score maps a single raw-scale mean linearly onto
0-100.
"""

import enum
import math
from dataclasses import dataclass
from typing import Dict, Optional, Sequence, Tuple

from perceptsim._exceptions import DomainError
from perceptsim._study import LikertScale, StudySpec
from perceptsim._util import display_number

ITEMS_BASED = 'items-based'
COMPOSITE_LINEAR = 'composite-linear'


class SusBand(str, enum.Enum):
    """Qualitative usability bands."""
    POOR = 'Poor'
    MARGINAL = 'Marginal'
    ACCEPTABLE = 'Acceptable'
    GOOD = 'Good'
    EXCELLENT = 'Excellent'


# Inclusive upper edge of each band; every band but the first is open at its
# lower edge.
_BAND_UPPER_EDGES = (
    (50.0, SusBand.POOR),
    (69.0, SusBand.MARGINAL),
    (79.0, SusBand.ACCEPTABLE),
    (89.0, SusBand.GOOD),
    (100.0, SusBand.EXCELLENT),
)


@dataclass(frozen=True)
class SusResult:
    """A 0-100 usability score, its band and how it was obtained."""
    score: float
    band: SusBand
    method: str

    @property
    def line(self) -> str:
        """One human-readable summary line."""
        return (f'SUS ({self.method}): {display_number(self.score, 2)} '
                f'- {self.band.value}')

    def to_dict(self) -> Dict[str, object]:
        """JSON-ready representation."""
        return {'score': self.score, 'band': self.band.value,
                'method': self.method}


def sus_band(score: float) -> SusBand:
    """
    Band of a 0-100 score: Poor [0, 50], Marginal (50, 69],
    Acceptable (69, 79], Good (79, 89], Excellent (89, 100].

    Raises:
        DomainError: if the score is outside [0, 100].
    """
    if not (math.isfinite(score) and 0.0 <= score <= 100.0):
        raise DomainError(f'SUS score must be within [0, 100], got {score!r}')
    for upper, band in _BAND_UPPER_EDGES:
        if score <= upper:
            return band
    return SusBand.EXCELLENT


def _bounded_score(score: float) -> float:
    return min(max(score, 0.0), 100.0)


def sus_from_items(spec: StudySpec) -> SusResult:
    """
    Items-based SUS score over every item of a study, themed or not.

    Raises:
        DomainError: if the study has no items or an item mean lies outside
            the scale.
    """
    if not spec.items:
        raise DomainError('SUS scoring needs at least one item')

    scale = spec.scale
    contributions = []
    for item in spec.items:
        if not (math.isfinite(item.mean) and scale.contains(item.mean)):
            raise DomainError(f'item {item.id} mean {item.mean!r} is outside '
                              f'the scale [{scale.min}, {scale.max}]')
        if item.reverse:
            contributions.append(scale.max - item.mean)
        else:
            contributions.append(item.mean - scale.min)

    score = _bounded_score(100.0 * math.fsum(contributions)
                           / (len(contributions) * scale.span))
    return SusResult(score=score, band=sus_band(score), method=ITEMS_BASED)


def sus_from_composite(mean: float, scale: LikertScale) -> SusResult:
    """
    Linear SUS equivalent of a raw-scale mean: 100 (mean - min) / (max - min).

    Raises:
        DomainError: if the mean lies outside the scale.
    """
    if not (math.isfinite(mean) and scale.contains(mean)):
        raise DomainError(f'composite mean {mean!r} is outside the scale '
                          f'[{scale.min}, {scale.max}]')
    score = _bounded_score(100.0 * (mean - scale.min) / scale.span)
    return SusResult(score=score, band=sus_band(score),
                     method=COMPOSITE_LINEAR)


def published_range_check(
    results: Sequence[SusResult],
    published_range: Optional[Tuple[float, float]],
) -> Optional[Dict[str, object]]:
    """
    Report whether any computed score falls inside a published SUS range.

    Returns:
        None if no range was published, else {range, reproduced}.
    """
    if published_range is None:
        return None
    low, high = sorted(published_range)
    reproduced = any(low <= result.score <= high for result in results)
    return {'range': [low, high], 'reproduced': reproduced}
