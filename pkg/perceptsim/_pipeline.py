"""
Pipeline stages shared by the commands: loading a study, building the
simulation config from parsed options, and the full
compose -> simulate -> describe -> regress -> sus run.

Every stage runs inside `stage(name)`, which tags escaping perceptsim
errors with the stage name so the command layer can report where a run
failed.
"""

import contextlib
import os
from typing import Iterator, List, Optional, Sequence, Tuple

from configargparse import Namespace

from perceptsim._composer import (
    ErratumNote,
    ThemeComposite,
    compare_published,
    compose_study,
)
from perceptsim._config import (
    _DEFAULT_NOISE_SD,
    _REPLICATION_CLIP,
    _REPLICATION_NOISE_SD,
    _REPLICATION_OVERRIDES,
    _VERSION,
)
from perceptsim._containers import ThemeOverride
from perceptsim._exceptions import (
    CommandError,
    DomainError,
    PerceptsimError,
    ValidationFailed,
)
from perceptsim._logging import get_rich_logger
from perceptsim._regression import OlsFit, design_matrix, fit_ols
from perceptsim._report import Bin, RunReport, histogram
from perceptsim._simulator import (
    Cohort,
    SimulationConfig,
    expected_success_moments,
    run_simulation,
)
from perceptsim._stats import describe
from perceptsim._study import StudySpec, parse_study_spec, validate_study
from perceptsim._sus import (
    published_range_check,
    sus_from_composite,
    sus_from_items,
)
from perceptsim._util import iso_now, sha256_digest

_LOGGER = get_rich_logger(__name__)


@contextlib.contextmanager
def stage(name: str) -> Iterator[None]:
    """Tag perceptsim errors raised inside the block with a stage name."""
    try:
        yield
    except PerceptsimError as err:
        if err.stage is None:
            err.stage = name
        raise


def read_study(path: str) -> Tuple[StudySpec, bytes]:
    """
    Read and parse a study file.

    Raises:
        OSError: if the file cannot be read.
        StudyParseError: if it is not a valid study document.
    """
    with open(path, 'rb') as handle:
        raw = handle.read()
    _LOGGER.debug('Read %d bytes from %s', len(raw), path)
    return parse_study_spec(raw), raw


def load_valid_study(path: str) -> Tuple[StudySpec, bytes]:
    """
    Read, parse and validate a study file.

    Raises:
        ValidationFailed: if the study violates any invariant.
    """
    with stage('parse'):
        spec, raw = read_study(path)
    with stage('validate'):
        findings = validate_study(spec)
        if findings:
            raise ValidationFailed(findings)
    return spec, raw


def study_echo(path: str, raw: bytes, spec: StudySpec) -> dict:
    """Provenance block of a report: file name, digest and metadata."""
    metadata = spec.metadata
    return {
        'file': os.path.basename(path),
        'sha256': sha256_digest(raw),
        'source': metadata.source,
        'notes': metadata.notes,
        'published_sus_range': metadata.published_sus_range,
        'item_count': len(spec.items),
        'theme_count': len(spec.themes),
    }


def compose_with_errata(spec: StudySpec
                        ) -> Tuple[List[ThemeComposite], List[ErratumNote]]:
    """Compose every theme and compare against any published composites."""
    with stage('compose'):
        composites = compose_study(spec)
        errata = []
        for composite in composites:
            note = compare_published(composite, spec.theme(composite.theme_id))
            if note is not None:
                errata.append(note)
    return composites, errata


def effective_overrides(options: Namespace) -> Tuple[ThemeOverride, ...]:
    """
    Overrides in application order: the replication set first (when
    requested), then the user's, so a user override always wins.
    """
    overrides = []
    if getattr(options, 'replicate_paper', False):
        overrides.extend(ThemeOverride(*values)
                         for values in _REPLICATION_OVERRIDES)
    overrides.extend(getattr(options, 'override_theme', None) or [])
    return tuple(overrides)


def check_overrides(spec: StudySpec,
                    overrides: Sequence[ThemeOverride]) -> None:
    """
    Raises:
        CommandError: if an override names a theme the study lacks.
    """
    for override in overrides:
        if override.theme_id not in spec.theme_index:
            raise CommandError(
                f'--override-theme names unknown theme '
                f'"{override.theme_id}" (known: '
                f'{", ".join(t.id for t in spec.themes)})')


def simulation_config(options: Namespace, spec: StudySpec) -> SimulationConfig:
    """
    Build the simulation config from parsed options. Unset clip bounds and
    noise fall back to the replication values with --replicate-paper, and to
    the study scale and the default noise otherwise.
    """
    replicate = getattr(options, 'replicate_paper', False)
    clip_min, clip_max = (_REPLICATION_CLIP if replicate
                          else (spec.scale.min, spec.scale.max))
    if options.clip_min is not None:
        clip_min = options.clip_min
    if options.clip_max is not None:
        clip_max = options.clip_max

    noise_sd = options.noise_sd
    if noise_sd is None:
        noise_sd = _REPLICATION_NOISE_SD if replicate else _DEFAULT_NOISE_SD

    overrides = effective_overrides(options)
    with stage('simulate'):
        check_overrides(spec, overrides)
        return SimulationConfig(n=options.n,
                                noise_sd=float(noise_sd),
                                clip_min=float(clip_min),
                                clip_max=float(clip_max),
                                seed=options.seed,
                                overrides=overrides)


def config_echo(options: Namespace, config: SimulationConfig) -> dict:
    """The effective configuration as it is echoed into reports."""
    echo = config.to_dict()
    echo.update({
        'replicate_paper': bool(getattr(options, 'replicate_paper', False)),
        'bins': options.bins,
        'format': options.format,
        'svg': bool(options.svg),
    })
    return echo


def regress_cohort(cohort: Cohort) -> OlsFit:
    """Fit success on the theme columns of a cohort, intercept included."""
    with stage('regress'):
        return fit_ols(design_matrix(cohort.theme_scores), cohort.success,
                       names=('const',) + cohort.theme_ids)


def run_pipeline(
    path: str,
    raw: bytes,
    spec: StudySpec,
    options: Namespace,
) -> Tuple[RunReport, Cohort, List[Bin], Optional[OlsFit],
           Optional[DomainError]]:
    """
    Run every stage on a validated study.

    A regression failure (e.g. a cohort too small to fit) does not abort
    the run; the report carries a null regression block and the error is
    returned for the caller to raise once the artifacts are written.

    Returns:
        (report, cohort, histogram bins, fit or None, regression error or
        None)
    """
    # pylint: disable=too-many-locals
    composites, errata = compose_with_errata(spec)
    config = simulation_config(options, spec)

    with stage('simulate'):
        cohort = run_simulation(composites, config)
        expected_mean, expected_sd = expected_success_moments(
            cohort.parameters, config.noise_sd)

    with stage('describe'):
        summary = describe(cohort.success)
        theme_summaries = {
            theme_id: describe(cohort.theme_scores[:, k]).to_dict()
            for k, theme_id in enumerate(cohort.theme_ids)}
        bins = histogram(cohort.success, options.bins)

    fit = None
    regression_error = None
    try:
        fit = regress_cohort(cohort)
    except DomainError as err:
        _LOGGER.error('%s', err)
        regression_error = err

    with stage('sus'):
        items_based = sus_from_items(spec)
        composite_based = sus_from_composite(summary.mean, spec.scale)
        sus = {
            'items': items_based.to_dict(),
            'composite': composite_based.to_dict(),
            'published_range': published_range_check(
                (items_based, composite_based),
                spec.metadata.published_sus_range),
        }
        for result in (items_based, composite_based):
            _LOGGER.info(result.line)

    report = RunReport(
        tool_version=_VERSION,
        timestamp=None if options.no_timestamp else iso_now(),
        study=study_echo(path, raw, spec),
        config=config_echo(options, config),
        composites=[c.to_dict() for c in composites],
        errata=[note.to_dict() for note in errata],
        simulation={
            'parameters': [p.to_dict() for p in cohort.parameters],
            'expected_mean': expected_mean,
            'expected_sd': expected_sd,
        },
        cohort_summary=summary.to_dict(),
        theme_summaries=theme_summaries,
        histogram=[b.to_dict() for b in bins],
        ols=fit.to_dict() if fit is not None else None,
        sus=sus)

    return report, cohort, bins, fit, regression_error
