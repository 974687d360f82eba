"""Regress command implementation"""

import sys

import pandas as pd

from perceptsim._command import Command
from perceptsim._config import _PROG
from perceptsim._help import Help
from perceptsim._logging import get_rich_logger
from perceptsim._pipeline import stage
from perceptsim._regression import design_matrix, fit_ols, render_ols_table
from perceptsim._report import (
    OLS_FILE,
    frame_csv,
    output_path,
    read_cohort_csv,
    report_json,
    write_ols_table,
)


_LOGGER = get_rich_logger(__name__)
_HELP = Help(
    name='regress',
    brief='Fit OLS on a cohort',
    synopsis=f'{_PROG} regress <cohort.csv> [--format json|csv]',
    description='This command reads a cohort CSV (columns '
                '[example]theme_1..theme_K, success[/]) and fits the success '
                'score on the theme scores with an intercept by least '
                'squares. The fit comes with standard errors, t and p '
                'values, 95% confidence intervals, R-squared, the F test, '
                'Durbin-Watson, Jarque-Bera, residual skew and kurtosis, '
                'the condition number of the design, the log-likelihood, '
                f'AIC and BIC. The text table is also written to '
                f'[path]<out>/{OLS_FILE}[/].',
    options='Without [keyword]--format[/] the text table is printed; '
            '[keyword]--format json[/] prints every statistic and '
            '[keyword]--format csv[/] the coefficient table.'
)


class RegressCommand(Command):
    """
    The RegressCommand class defines the "regress" command. This class
    inherits from the base Command class.
    """
    def __init__(self, name, aliases=None):
        super().__init__(name, _HELP, aliases=aliases or [])

    def run(self, *args, **kwargs):
        """Fit the cohort and print the result."""
        self.apply_log_level(_LOGGER)
        path, = self.expect_args(1)
        options = Command.main_options

        with stage('parse'):
            theme_columns, theme_scores, success = read_cohort_csv(path)

        with stage('regress'):
            fit = fit_ols(design_matrix(theme_scores), success,
                          names=('const',) + theme_columns)

        table = render_ols_table(fit)
        table_path = write_ols_table(output_path(options.out, OLS_FILE),
                                     table)
        _LOGGER.info('Regression table written to %s', table_path)

        if options.format == 'json':
            sys.stdout.write(report_json(fit.to_dict()))
        elif options.format == 'csv':
            frame = pd.DataFrame(fit.to_dict()['coefficients'])
            sys.stdout.write(frame_csv(frame))
        else:
            sys.stdout.write(table)


#
# Create the RegressCommand instance
#
regress_command = RegressCommand(name='regress',
                                 aliases=['regress', 'ols'])
