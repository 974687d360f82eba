"""
Theme composition: reverse-coding, inverse-variance weights, the weighted
theme mean and the Bessel-corrected weighted standard deviation.

Weights stay unnormalized (w_i = 1/sd_i^2) everywhere in this module. The
fixed-effect convention means every item in a theme is assumed to measure
the same latent construct; no between-item heterogeneity is modeled.
"""

import math
from dataclasses import dataclass, asdict
from typing import Dict, List, Optional, Sequence

from perceptsim._config import _PUBLISHED_TOLERANCE
from perceptsim._exceptions import DomainError
from perceptsim._logging import get_rich_logger
from perceptsim._study import LikertScale, StudySpec, ThemeSpec

_LOGGER = get_rich_logger(__name__)


@dataclass(frozen=True)
class CodedItem:
    """
    An item aligned to the positive direction, with its inverse-variance
    weight. `sd` is the source item's SD, untouched by reverse-coding.
    """
    id: str
    mean: float
    sd: float
    weight: float


@dataclass(frozen=True)
class ThemeComposite:
    """Weighted mean and Bessel-corrected weighted SD of one theme."""
    theme_id: str
    weighted_mean: float
    weighted_sd: float
    total_weight: float
    item_count: int

    def to_dict(self) -> Dict[str, float]:
        """JSON-ready representation."""
        return asdict(self)


@dataclass(frozen=True)
class ErratumNote:
    """Divergence between a computed composite and a published one."""
    theme_id: str
    computed_mean: float
    computed_sd: float
    published_mean: float
    published_sd: float

    @property
    def message(self) -> str:
        """Human-readable description holding both value pairs."""
        return (f'theme {self.theme_id}: computed '
                f'({self.computed_mean:.4f}, {self.computed_sd:.4f}) '
                f'differs from published '
                f'({self.published_mean:.4f}, {self.published_sd:.4f})')

    def to_dict(self) -> Dict[str, object]:
        """JSON-ready representation."""
        obj = asdict(self)
        obj['message'] = self.message
        return obj


def reverse_code(mean: float, scale: LikertScale) -> float:
    """
    Reflect a value about the scale midpoint: x' = min + max - x. For a 1-k
    scale this is the familiar k + 1 - x.

    Raises:
        DomainError: if `mean` lies outside the scale.
    """
    if not (math.isfinite(mean) and scale.contains(mean)):
        raise DomainError(f'value {mean!r} is outside the scale '
                          f'[{scale.min}, {scale.max}]')
    return (scale.min + scale.max) - mean


def inverse_weight(sd: float) -> float:
    """
    Inverse-variance weight 1/sd^2.

    Raises:
        DomainError: if sd is not a positive finite number.
    """
    if not (math.isfinite(sd) and sd > 0):
        raise DomainError(f'sd must be positive and finite, got {sd!r}')
    return 1.0 / (sd * sd)


def code_item(mean: float, sd: float, reverse: bool, scale: LikertScale,
              item_id: str = '') -> CodedItem:
    """Build a CodedItem from raw item statistics."""
    coded_mean = reverse_code(mean, scale) if reverse else mean
    if not reverse and not scale.contains(mean):
        raise DomainError(f'item {item_id} mean {mean!r} is outside the scale')
    return CodedItem(id=item_id, mean=coded_mean, sd=sd,
                     weight=inverse_weight(sd))


def weighted_mean(items: Sequence[CodedItem]) -> float:
    """
    Inverse-variance weighted mean sum(w_i x_i) / sum(w_i).

    Raises:
        DomainError: if `items` is empty.
    """
    if not items:
        raise DomainError('weighted mean of an empty item list')

    total_weight = math.fsum(item.weight for item in items)
    result = math.fsum(item.weight * item.mean for item in items) / total_weight

    # Rounding can push the quotient a hair outside the convex hull.
    lowest = min(item.mean for item in items)
    highest = max(item.mean for item in items)
    return min(max(result, lowest), highest)


def bessel_weighted_sd(items: Sequence[CodedItem], mean: float) -> float:
    """
    Bessel-corrected weighted standard deviation:

        s^2 = sum(w_i (x_i - mean)^2) / (((M - 1) / M) * sum(w_i))

    Raises:
        DomainError: if fewer than two items are given.
    """
    count = len(items)
    if count < 2:
        raise DomainError(
            f'weighted SD needs at least 2 items, got {count}')

    total_weight = math.fsum(item.weight for item in items)
    squares = math.fsum(item.weight * (item.mean - mean) ** 2
                        for item in items)
    variance = squares / (((count - 1) / count) * total_weight)
    return math.sqrt(variance)


def coded_items(spec: StudySpec, theme: ThemeSpec) -> List[CodedItem]:
    """Reverse-code and weight the members of a theme, in theme order."""
    coded = []
    for item_id in theme.item_ids:
        try:
            item = spec.item(item_id)
        except KeyError as err:
            raise DomainError(
                f'theme {theme.id} references unknown item "{item_id}"') \
                from err
        coded_item = code_item(item.mean, item.sd, item.reverse, spec.scale,
                               item_id=item.id)
        _LOGGER.debug('%s/%s: mean %.4f (reverse=%s) sd %.4f weight %.4f',
                      theme.id, item.id, coded_item.mean, item.reverse,
                      coded_item.sd, coded_item.weight)
        coded.append(coded_item)
    return coded


def compose_theme(spec: StudySpec, theme: ThemeSpec) -> ThemeComposite:
    """
    Compute the composite of one theme from its item statistics.

    Raises:
        DomainError: on out-of-range means, non-positive SDs or themes with
            fewer than two items.
    """
    items = coded_items(spec, theme)
    mean = weighted_mean(items)
    composite = ThemeComposite(
        theme_id=theme.id,
        weighted_mean=mean,
        weighted_sd=bessel_weighted_sd(items, mean),
        total_weight=math.fsum(item.weight for item in items),
        item_count=len(items))

    _LOGGER.debug('Theme %s composite: mean %.4f sd %.4f (M=%d)',
                  theme.id, composite.weighted_mean, composite.weighted_sd,
                  composite.item_count)
    return composite


def compose_study(spec: StudySpec) -> List[ThemeComposite]:
    """Compose every theme of a study, in file order."""
    return [compose_theme(spec, theme) for theme in spec.themes]


def compare_published(composite: ThemeComposite, theme: ThemeSpec,
                      tolerance: float = _PUBLISHED_TOLERANCE
                      ) -> Optional[ErratumNote]:
    """
    Compare a computed composite against the values published for its theme.

    Returns:
        An ErratumNote if the theme carries published values and either the
        mean or the SD differs by more than `tolerance`; otherwise None.
    """
    if theme.published is None:
        return None

    published = theme.published
    if (abs(composite.weighted_mean - published.mean) <= tolerance
            and abs(composite.weighted_sd - published.sd) <= tolerance):
        return None

    note = ErratumNote(theme_id=composite.theme_id,
                       computed_mean=composite.weighted_mean,
                       computed_sd=composite.weighted_sd,
                       published_mean=published.mean,
                       published_sd=published.sd)
    _LOGGER.warning('Erratum: %s', note.message)
    return note
