"""Compose command implementation"""

import sys

import pandas as pd

from perceptsim._command import Command
from perceptsim._config import _PROG
from perceptsim._help import Help
from perceptsim._logging import get_rich_logger
from perceptsim._pipeline import compose_with_errata, load_valid_study
from perceptsim._report import frame_csv, report_json


_LOGGER = get_rich_logger(__name__)
_HELP = Help(
    name='compose',
    brief='Compute theme composites',
    synopsis=f'{_PROG} compose <study.json> [--format json|csv]',
    description='This command reverse-codes the flagged items, weights each '
                'item by its inverse variance and prints every theme\'s '
                'weighted mean and Bessel-corrected weighted SD. Themes that '
                'carry published values are compared against them; '
                'divergences are reported as errata.',
    options='[keyword]--format json[/] (default) prints '
            '[example]{composites, errata}[/]; [keyword]--format csv[/] '
            'prints one row per theme.'
)


class ComposeCommand(Command):
    """
    The ComposeCommand class defines the "compose" command. This class
    inherits from the base Command class.
    """
    def __init__(self, name, aliases=None):
        super().__init__(name, _HELP, aliases=aliases or [])

    def run(self, *args, **kwargs):
        """Print the composites of every theme."""
        self.apply_log_level(_LOGGER)
        path, = self.expect_args(1)

        spec, _ = load_valid_study(path)
        composites, errata = compose_with_errata(spec)

        if Command.main_options.format == 'csv':
            frame = pd.DataFrame([c.to_dict() for c in composites])
            sys.stdout.write(frame_csv(frame))
        else:
            sys.stdout.write(report_json({
                'composites': [c.to_dict() for c in composites],
                'errata': [note.to_dict() for note in errata],
            }))


#
# Create the ComposeCommand instance
#
compose_command = ComposeCommand(name='compose', aliases=['compose'])
