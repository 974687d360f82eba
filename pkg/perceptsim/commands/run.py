"""Run command implementation"""

from perceptsim._command import Command
from perceptsim._config import _PROG
from perceptsim._help import Help
from perceptsim._logging import get_rich_logger
from perceptsim._pipeline import load_valid_study, run_pipeline
from perceptsim._regression import render_ols_table
from perceptsim._report import (
    COHORT_FILE,
    HISTOGRAM_FILE,
    HISTOGRAM_SVG_FILE,
    OLS_FILE,
    REPORT_FILE,
    output_path,
    write_cohort_csv,
    write_histogram_csv,
    write_histogram_svg,
    write_json,
    write_ols_table,
)


_LOGGER = get_rich_logger(__name__)
_HELP = Help(
    name='run',
    brief='Run the whole pipeline on a study',
    synopsis=f'{_PROG} run <study.json> --seed 7 --n 10000 --replicate-paper'
             f'\n{_PROG} run <study.json> --out results --svg --no-timestamp',
    description='This command composes the themes of a study, simulates a '
                'cohort, summarizes the success scores, fits the regression '
                'and scores usability, then writes '
                f'[path]{REPORT_FILE}[/], [path]{COHORT_FILE}[/], '
                f'[path]{HISTOGRAM_FILE}[/] and [path]{OLS_FILE}[/] (plus '
                f'[path]{HISTOGRAM_SVG_FILE}[/] with [keyword]--svg[/]) into '
                'the output directory and prints their paths.',
    options='Every simulation option of [example]simulate[/] applies, plus '
            '[keyword]--bins[/], [keyword]--svg[/] and '
            '[keyword]--no-timestamp[/] (leaves the report timestamp null so '
            'identical runs produce identical bytes).',
    notes='A cohort too small to regress still gets its report '
          '(with a null regression block); the command then '
          'exits with status 3.'
)


class RunCommand(Command):
    """
    The RunCommand class defines the "run" command. This class
    inherits from the base Command class.
    """
    def __init__(self, name, aliases=None):
        super().__init__(name, _HELP, aliases=aliases or [])

    def run(self, *args, **kwargs):
        """Run every stage and write the artifacts."""
        self.apply_log_level(_LOGGER)
        path, = self.expect_args(1)
        options = Command.main_options

        spec, raw = load_valid_study(path)
        report, cohort, bins, fit, regression_error = run_pipeline(
            path, raw, spec, options)

        written = [
            write_json(output_path(options.out, REPORT_FILE),
                       report.to_dict()),
            write_cohort_csv(output_path(options.out, COHORT_FILE), cohort),
            write_histogram_csv(output_path(options.out, HISTOGRAM_FILE),
                                bins),
        ]
        if fit is not None:
            written.append(write_ols_table(
                output_path(options.out, OLS_FILE), render_ols_table(fit)))
        if options.svg:
            written.append(write_histogram_svg(
                output_path(options.out, HISTOGRAM_SVG_FILE), bins))

        for artifact in written:
            print(artifact)

        if regression_error is not None:
            raise regression_error


#
# Create the RunCommand instance
#
run_command = RunCommand(name='run', aliases=['run'])
