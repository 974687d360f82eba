"""Validate command implementation"""

from perceptsim._command import Command
from perceptsim._config import _PROG
from perceptsim._exceptions import ExitStatus
from perceptsim._help import Help
from perceptsim._logging import get_rich_logger
from perceptsim._pipeline import read_study, stage
from perceptsim._study import validate_study


_LOGGER = get_rich_logger(__name__)
_HELP = Help(
    name='validate',
    brief='Check a study file',
    synopsis=f'{_PROG} validate <study.json>\n\n'
             f'[h2]aliases[/]: {_PROG} check',
    description='This command parses a study file and checks every '
                'invariant of its scale, items and themes. Each violation '
                'is printed to stdout as one tab-separated line: '
                '[example]severity, path, message[/].',
    notes='Exit status is 0 for a valid study, 1 when findings '
          'were printed and 2 when the file cannot be read or '
          'parsed.'
)


class ValidateCommand(Command):
    """
    The ValidateCommand class defines the "validate" command. This class
    inherits from the base Command class.
    """
    def __init__(self, name, aliases=None):
        super().__init__(name, _HELP, aliases=aliases or [])

    def run(self, *args, **kwargs):
        """Print every finding of the study, one per line."""
        self.apply_log_level(_LOGGER)
        path, = self.expect_args(1)

        with stage('parse'):
            spec, _ = read_study(path)

        findings = validate_study(spec)
        for finding in findings:
            print(finding)

        if findings:
            _LOGGER.error('%d finding(s) in %s', len(findings), path)
            return ExitStatus.FINDINGS

        _LOGGER.info('%s is a valid study', path)
        return ExitStatus.SUCCESS


#
# Create the ValidateCommand instance
#
validate_command = ValidateCommand(name='validate',
                                   aliases=['validate', 'check'])
