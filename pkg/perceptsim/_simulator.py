"""
Monte Carlo cohort synthesis.

Every theme k is drawn independently as T_k ~ N(mu_k, sigma_k). A
respondent's success score is the inverse-variance weighted combination of
their theme draws, normalized by the weight total, plus N(0, noise_sd)
noise, clamped to [clip_min, clip_max]:

    success_j = sum(w_k T_kj) / sum(w_k) + e_j,    w_k = 1 / sigma_k^2

Random numbers come from a single PCG64 stream seeded with the config seed.
Uniform doubles are turned into standard normals with the basic Box-Muller
transform. The stream is consumed in a fixed order: n draws for theme 1,
then theme 2, ..., then the n noise draws. The noise vector is drawn even
when noise_sd is 0 so the layout only depends on n and K.
"""

import math
import numbers
from dataclasses import dataclass, field, asdict
from typing import Dict, Sequence, Tuple, Union

import numpy as np

from perceptsim._composer import ThemeComposite, inverse_weight
from perceptsim._config import (
    _DEFAULT_COHORT_SIZE,
    _DEFAULT_NOISE_SD,
    _DEFAULT_SEED,
)
from perceptsim._containers import ThemeOverride
from perceptsim._exceptions import DomainError
from perceptsim._logging import get_rich_logger

_LOGGER = get_rich_logger(__name__)
_MAX_SEED = 2 ** 64 - 1


@dataclass(frozen=True)
class ThemeParameters:
    """Normal-distribution parameters of one theme, as fed to the draws."""
    theme_id: str
    mean: float
    sd: float

    @property
    def weight(self) -> float:
        """Inverse-variance weight 1/sd^2."""
        return inverse_weight(self.sd)

    def to_dict(self) -> Dict[str, float]:
        """JSON-ready representation, weight included."""
        obj = asdict(self)
        obj['weight'] = self.weight
        return obj


@dataclass(frozen=True)
class SimulationConfig:
    """
    Cohort size, noise, clip bounds, seed and optional theme overrides.

    Raises:
        DomainError: if n < 1, noise_sd < 0, clip_min >= clip_max or the
            seed is not an unsigned 64-bit integer.
    """
    n: int = _DEFAULT_COHORT_SIZE
    noise_sd: float = _DEFAULT_NOISE_SD
    clip_min: float = 1.0
    clip_max: float = 5.0
    seed: int = _DEFAULT_SEED
    overrides: Tuple[ThemeOverride, ...] = field(default_factory=tuple)

    def __post_init__(self):
        if isinstance(self.n, bool) or not isinstance(self.n,
                                                      numbers.Integral):
            raise DomainError(f'cohort size must be an integer, '
                              f'got {self.n!r}')
        if self.n < 1:
            raise DomainError(f'cohort size must be >= 1, got {self.n}')
        if not (math.isfinite(self.noise_sd) and self.noise_sd >= 0):
            raise DomainError(f'noise sd must be finite and >= 0, '
                              f'got {self.noise_sd!r}')
        if not (math.isfinite(self.clip_min) and math.isfinite(self.clip_max)
                and self.clip_min < self.clip_max):
            raise DomainError(f'clip bounds must satisfy min < max, got '
                              f'[{self.clip_min}, {self.clip_max}]')
        if (isinstance(self.seed, bool)
                or not isinstance(self.seed, numbers.Integral)
                or not 0 <= self.seed <= _MAX_SEED):
            raise DomainError(f'seed must be an integer in [0, 2^64), '
                              f'got {self.seed!r}')
        object.__setattr__(self, 'overrides', tuple(self.overrides))

    def to_dict(self) -> Dict[str, object]:
        """JSON-ready representation."""
        obj = asdict(self)
        obj['overrides'] = [override._asdict() for override in self.overrides]
        return obj


@dataclass(frozen=True, eq=False)
class Cohort:
    """
    A synthetic cohort. `theme_scores` is n x K (column k holds theme k's
    draws in respondent order) and `success` has length n. Both arrays are
    read-only.
    """
    theme_ids: Tuple[str, ...]
    theme_scores: np.ndarray
    success: np.ndarray
    config: SimulationConfig
    parameters: Tuple[ThemeParameters, ...]

    @property
    def n(self) -> int:
        """Number of respondents."""
        return int(self.success.shape[0])

    @property
    def k(self) -> int:
        """Number of themes."""
        return int(self.theme_scores.shape[1])


def standard_normals(generator: np.random.Generator, size: int) -> np.ndarray:
    """
    Draw `size` standard normal variates with the basic Box-Muller
    transform.

    ceil(size / 2) uniform pairs are consumed: the first half of the uniform
    block supplies the radii, the second half the angles. The cosine branch
    fills the first half of the output and the sine branch the second; an
    odd trailing variate is dropped.
    """
    pairs = (size + 1) // 2
    uniforms = generator.random(2 * pairs)

    # (0, 1] keeps the logarithm finite
    u1 = 1.0 - uniforms[:pairs]
    u2 = uniforms[pairs:]

    radius = np.sqrt(-2.0 * np.log(u1))
    angle = 2.0 * np.pi * u2
    return np.concatenate((radius * np.cos(angle),
                           radius * np.sin(angle)))[:size]


def _as_parameters(theme: Union[ThemeComposite, ThemeParameters]
                   ) -> ThemeParameters:
    if isinstance(theme, ThemeParameters):
        return theme
    if isinstance(theme, ThemeComposite):
        return ThemeParameters(theme_id=theme.theme_id,
                               mean=theme.weighted_mean,
                               sd=theme.weighted_sd)
    raise TypeError(f'expected ThemeComposite or ThemeParameters, '
                    f'got {type(theme).__name__}')


def resolve_parameters(
    themes: Sequence[Union[ThemeComposite, ThemeParameters]],
    overrides: Sequence[ThemeOverride] = (),
) -> Tuple[ThemeParameters, ...]:
    """
    Turn composites into simulation parameters, replacing the mean and SD of
    every overridden theme. When a theme is overridden more than once the
    last override wins.

    Raises:
        DomainError: if an override names a theme that is not present, or if
            any resulting SD is not positive.
    """
    parameters = [_as_parameters(theme) for theme in themes]
    positions = {p.theme_id: i for i, p in enumerate(parameters)}

    for override in overrides:
        if override.theme_id not in positions:
            raise DomainError(f'override for unknown theme '
                              f'"{override.theme_id}"')
        _LOGGER.debug('Overriding theme %s with mean %s sd %s',
                      override.theme_id, override.mean, override.sd)
        parameters[positions[override.theme_id]] = ThemeParameters(
            theme_id=override.theme_id, mean=override.mean, sd=override.sd)

    for parameter in parameters:
        if not (math.isfinite(parameter.mean)
                and math.isfinite(parameter.sd) and parameter.sd > 0):
            raise DomainError(f'theme {parameter.theme_id} needs a finite '
                              f'mean and a positive sd, got '
                              f'({parameter.mean!r}, {parameter.sd!r})')
    return tuple(parameters)


def normalized_weights(
    themes: Sequence[Union[ThemeComposite, ThemeParameters]]
) -> np.ndarray:
    """
    Weights w_k / sum(w) of the success score. Invariant under scaling every
    theme SD by the same factor.
    """
    weights = np.array([_as_parameters(theme).weight for theme in themes])
    return weights / math.fsum(weights)


def expected_success_moments(
    themes: Sequence[Union[ThemeComposite, ThemeParameters]],
    noise_sd: float,
) -> Tuple[float, float]:
    """
    Pre-clipping mean and SD of the success score:

        mean = sum(w_k mu_k) / sum(w_k)
        sd   = sqrt(1 / sum(w_k) + noise_sd^2)

    Raises:
        DomainError: if there are no themes, an SD is not positive or the
            noise SD is negative.
    """
    if not themes:
        raise DomainError('expected moments need at least one theme')
    if not (math.isfinite(noise_sd) and noise_sd >= 0):
        raise DomainError(f'noise sd must be finite and >= 0, '
                          f'got {noise_sd!r}')

    parameters = [_as_parameters(theme) for theme in themes]
    total_weight = math.fsum(p.weight for p in parameters)
    mean = math.fsum(p.weight * p.mean for p in parameters) / total_weight
    sd = math.sqrt(1.0 / total_weight + noise_sd * noise_sd)
    return mean, sd


def run_simulation(
    themes: Sequence[Union[ThemeComposite, ThemeParameters]],
    config: SimulationConfig,
) -> Cohort:
    """
    Generate a cohort. Identical themes and config produce bit-identical
    arrays.

    Arguments:
        themes -- composites (or ready-made parameters), one per theme, in
            draw order.
        config -- cohort size, noise, clip bounds, seed and overrides.

    Raises:
        DomainError: on an empty theme list, a non-positive SD or an override
            for an unknown theme.
    """
    if not themes:
        raise DomainError('a simulation needs at least one theme')

    parameters = resolve_parameters(themes, config.overrides)
    n = int(config.n)
    _LOGGER.info('Simulating %d respondents over %d theme(s) (seed %d)',
                 n, len(parameters), config.seed)

    generator = np.random.Generator(np.random.PCG64(config.seed))

    columns = []
    for parameter in parameters:
        draws = parameter.mean + parameter.sd * standard_normals(generator, n)
        columns.append(draws)
    noise = standard_normals(generator, n)

    # explicit accumulation keeps the summation order fixed
    weights = [parameter.weight for parameter in parameters]
    total_weight = math.fsum(weights)
    weighted = np.zeros(n)
    for weight, column in zip(weights, columns):
        weighted += weight * column
    success = weighted / total_weight + config.noise_sd * noise

    clipped = int(np.count_nonzero((success < config.clip_min)
                                   | (success > config.clip_max)))
    if clipped:
        _LOGGER.debug('Clipped %d success score(s) to [%s, %s]', clipped,
                      config.clip_min, config.clip_max)
    success = np.clip(success, config.clip_min, config.clip_max)

    theme_scores = np.column_stack(columns)
    theme_scores.flags.writeable = False
    success.flags.writeable = False

    return Cohort(theme_ids=tuple(p.theme_id for p in parameters),
                  theme_scores=theme_scores,
                  success=success,
                  config=config,
                  parameters=parameters)
