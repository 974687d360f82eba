"""Sus command implementation"""

import sys

import pandas as pd

from perceptsim._command import Command
from perceptsim._config import _PROG
from perceptsim._help import Help
from perceptsim._logging import get_rich_logger
from perceptsim._pipeline import (
    compose_with_errata,
    effective_overrides,
    check_overrides,
    load_valid_study,
    stage,
)
from perceptsim._report import frame_csv, report_json
from perceptsim._simulator import expected_success_moments, resolve_parameters
from perceptsim._sus import (
    published_range_check,
    sus_from_composite,
    sus_from_items,
)


_LOGGER = get_rich_logger(__name__)
_HELP = Help(
    name='sus',
    brief='Score a study on the System Usability Scale',
    synopsis=f'{_PROG} sus <study.json> [--replicate-paper]',
    description='This command reports two 0-100 usability scores with '
                'their bands (Poor, Marginal, Acceptable, Good, Excellent). '
                'The items-based score applies the SUS polarity rule to '
                'every item mean. The composite-linear score maps the '
                'expected success score (the weighted theme means, after '
                'any overrides) linearly onto 0-100. A SUS range published '
                'with the study is checked against both.',
    options='[keyword]--format json[/] (default) or [keyword]--format csv[/].',
    notes='Bands: Poor [0, 50], Marginal (50, 69], Acceptable '
          '(69, 79], Good (79, 89], Excellent (89, 100].'
)


class SusCommand(Command):
    """
    The SusCommand class defines the "sus" command. This class
    inherits from the base Command class.
    """
    def __init__(self, name, aliases=None):
        super().__init__(name, _HELP, aliases=aliases or [])

    def run(self, *args, **kwargs):
        """Print both SUS scores."""
        self.apply_log_level(_LOGGER)
        path, = self.expect_args(1)
        options = Command.main_options

        spec, _ = load_valid_study(path)
        composites, _ = compose_with_errata(spec)
        overrides = effective_overrides(options)

        with stage('sus'):
            check_overrides(spec, overrides)
            parameters = resolve_parameters(composites, overrides)
            expected_mean, _ = expected_success_moments(parameters, 0.0)
            results = (sus_from_items(spec),
                       sus_from_composite(expected_mean, spec.scale))
            published = published_range_check(
                results, spec.metadata.published_sus_range)

        for result in results:
            _LOGGER.info(result.line)
        if published is not None and not published['reproduced']:
            _LOGGER.warning('Published SUS range %s is not reproduced',
                            published['range'])

        if options.format == 'csv':
            frame = pd.DataFrame([r.to_dict() for r in results])
            sys.stdout.write(frame_csv(frame))
        else:
            sys.stdout.write(report_json({
                'items': results[0].to_dict(),
                'composite': results[1].to_dict(),
                'published_range': published,
            }))


#
# Create the SusCommand instance
#
sus_command = SusCommand(name='sus', aliases=['sus'])
