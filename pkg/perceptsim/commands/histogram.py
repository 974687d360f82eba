"""Histogram command implementation"""

import sys

from perceptsim._command import Command
from perceptsim._config import _PROG
from perceptsim._help import Help
from perceptsim._logging import get_rich_logger
from perceptsim._pipeline import stage
from perceptsim._report import (
    HISTOGRAM_FILE,
    HISTOGRAM_SVG_FILE,
    frame_csv,
    histogram,
    histogram_frame,
    output_path,
    read_cohort_csv,
    report_json,
    write_histogram_csv,
    write_histogram_svg,
)


_LOGGER = get_rich_logger(__name__)
_HELP = Help(
    name='histogram',
    brief='Bin the success scores of a cohort',
    synopsis=f'{_PROG} histogram <cohort.csv> --bins <count> [--svg]',
    description='This command splits the range between the smallest and '
                'the largest success score of a cohort CSV into equal-width '
                'bins and counts the respondents in each. The bins are '
                f'written to [path]<out>/{HISTOGRAM_FILE}[/] '
                '([example]bin_lower,bin_upper,count[/]) and, with '
                f'[keyword]--svg[/], drawn to '
                f'[path]<out>/{HISTOGRAM_SVG_FILE}[/].',
    options='[keyword]--bins[/] (default 50). [keyword]--format csv[/] '
            '(default) prints the bins as CSV, [keyword]--format json[/] '
            'as a JSON list.'
)


class HistogramCommand(Command):
    """
    The HistogramCommand class defines the "histogram" command. This class
    inherits from the base Command class.
    """
    def __init__(self, name, aliases=None):
        super().__init__(name, _HELP, aliases=aliases or [])

    def run(self, *args, **kwargs):
        """Bin the cohort, write the artifacts and print the bins."""
        self.apply_log_level(_LOGGER)
        path, = self.expect_args(1)
        options = Command.main_options

        with stage('parse'):
            _, _, success = read_cohort_csv(path)

        with stage('histogram'):
            bins = histogram(success, options.bins)

        csv_path = write_histogram_csv(
            output_path(options.out, HISTOGRAM_FILE), bins)
        _LOGGER.info('Histogram written to %s', csv_path)
        if options.svg:
            svg_path = write_histogram_svg(
                output_path(options.out, HISTOGRAM_SVG_FILE), bins)
            _LOGGER.info('Histogram drawing written to %s', svg_path)

        if options.format == 'json':
            sys.stdout.write(report_json([b.to_dict() for b in bins]))
        else:
            sys.stdout.write(frame_csv(histogram_frame(bins)))


#
# Create the HistogramCommand instance
#
histogram_command = HistogramCommand(name='histogram',
                                     aliases=['histogram', 'hist'])
