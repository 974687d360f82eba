"""Version command implementation"""

import sys

import numpy
import pandas
import scipy

from perceptsim._command import Command
from perceptsim._config import _PROG, _VERSION
from perceptsim._help import Help
from perceptsim._logging import get_rich_logger


_LOGGER = get_rich_logger(__name__)
_HELP = Help(
    name='version',
    brief=f'print the {_PROG} version',
    synopsis=f'{_PROG} version\n'
             f'{_PROG} -V | --version',
    description='Prints the bare version string, the same one stamped into '
                'the [example]tool_version[/] field of every run report. '
                'Cohorts depend on the numeric stack as well as on the seed, '
                'so [keyword]--verbose[/] also logs the numpy, scipy and '
                'pandas versions to stderr.',
)


class VersionCommand(Command):
    """The "version" command: one line on stdout, library versions logged."""
    def __init__(self, name, aliases=None):
        super().__init__(name, _HELP, aliases=aliases or [])

    def run(self, *args, **kwargs):
        """Print the version; log the numeric stack at debug level."""
        self.apply_log_level(_LOGGER)
        sys.stdout.write(f'{_VERSION}\n')
        _LOGGER.debug('numpy %s, scipy %s, pandas %s', numpy.__version__,
                      scipy.__version__, pandas.__version__)


version_command = VersionCommand(name='version', aliases=['version', 'v'])
