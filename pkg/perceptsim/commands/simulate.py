"""Simulate command implementation"""

import sys

from perceptsim._command import Command
from perceptsim._config import _PROG
from perceptsim._help import Help
from perceptsim._logging import get_rich_logger
from perceptsim._pipeline import (
    compose_with_errata,
    load_valid_study,
    simulation_config,
    stage,
)
from perceptsim._report import (
    COHORT_FILE,
    cohort_frame,
    frame_csv,
    output_path,
    report_json,
    write_cohort_csv,
)
from perceptsim._simulator import expected_success_moments, run_simulation
from perceptsim._stats import describe


_LOGGER = get_rich_logger(__name__)
_HELP = Help(
    name='simulate',
    brief='Generate a synthetic cohort',
    synopsis=f'{_PROG} simulate <study.json> --seed <seed> --n <count>\n'
             f'{_PROG} simulate <study.json> --replicate-paper\n'
             f'{_PROG} simulate <study.json> --override-theme T3=3.71,0.216',
    description='This command composes the study\'s themes and draws a '
                'cohort of virtual respondents: every theme score is normal '
                'with the composite mean and SD, and each success score is '
                'the inverse-variance weighted combination of the theme '
                'scores plus normal noise, clipped to the clip bounds. The '
                f'cohort is written to [path]<out>/{COHORT_FILE}[/].',
    options='[keyword]--seed[/] (default 42, or $PERCEPTSIM_SEED), '
            '[keyword]--n[/] cohort size, [keyword]--noise-sd[/], '
            '[keyword]--clip-min[/]/[keyword]--clip-max[/] (default: the '
            'study scale), [keyword]--override-theme ID=MEAN,SD[/] '
            '(repeatable), [keyword]--replicate-paper[/] (the published '
            'simulation parameters), [keyword]--out DIR[/].\n\n'
            '[keyword]--format json[/] (default) prints the config, the '
            'theme parameters, the expected moments and a summary of the '
            'success scores; [keyword]--format csv[/] prints the cohort '
            'itself.'
)


class SimulateCommand(Command):
    """
    The SimulateCommand class defines the "simulate" command. This class
    inherits from the base Command class.
    """
    def __init__(self, name, aliases=None):
        super().__init__(name, _HELP, aliases=aliases or [])

    def run(self, *args, **kwargs):
        """Draw the cohort, write it and print a summary."""
        self.apply_log_level(_LOGGER)
        path, = self.expect_args(1)
        options = Command.main_options

        spec, _ = load_valid_study(path)
        composites, _ = compose_with_errata(spec)
        config = simulation_config(options, spec)

        with stage('simulate'):
            cohort = run_simulation(composites, config)
            expected_mean, expected_sd = expected_success_moments(
                cohort.parameters, config.noise_sd)

        cohort_path = write_cohort_csv(output_path(options.out, COHORT_FILE),
                                       cohort)
        _LOGGER.info('Cohort written to %s', cohort_path)

        if options.format == 'csv':
            sys.stdout.write(frame_csv(cohort_frame(cohort)))
            return

        with stage('describe'):
            summary = describe(cohort.success)
        sys.stdout.write(report_json({
            'config': config.to_dict(),
            'parameters': [p.to_dict() for p in cohort.parameters],
            'expected_mean': expected_mean,
            'expected_sd': expected_sd,
            'summary': summary.to_dict(),
            'cohort_file': cohort_path,
        }))


#
# Create the SimulateCommand instance
#
simulate_command = SimulateCommand(name='simulate',
                                   aliases=['simulate', 'sim'])
